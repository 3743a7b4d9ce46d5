"""Acceptance criteria, shared by the test suite and ``flowroots verify-paper``.

Each criterion returns a :class:`Criterion` with a pass flag, a one-line
detail string and its wall time; none of them raise on failure.
"""
from __future__ import annotations

import subprocess
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .analyzer import coefficient_audit, gamma_bound_audit, screen_corpus, structural_bounds_audit, structural_profile
from .corpus import load_corpus
from .flow import FlowEngine, flow_count, flow_poly, verify_two_block_identity, wakelin_audit
from .multigraph import MultiGraph, contract_edge, delete_edge, vertex_splits
from .polynomial import IntPolynomial, count_real_roots
from .theta import cross_validate_phi_theta, enumerate_theta
from .xi import xi

# published constants (10 significant digits) with their cubic factors
XI_CONSTANTS = {
    3: (Fraction("1.430159709"), IntPolynomial((-7, 10, -5, 1))),
    4: (Fraction("1.361103081"), IntPolynomial((-6, 8, -4, 1))),
    5: (Fraction("1.317672196"), IntPolynomial((-9, 13, -6, 1))),
}
XI_TOLERANCE = Fraction(1, 10**9)

PHI5_PRODUCTS = [
    IntPolynomial((-1, 1)) * IntPolynomial((-9, 13, -6, 1)) * IntPolynomial((9, -16, 12, -5, 1)),
    IntPolynomial((-1, 1)) * IntPolynomial((-2, 1)) * IntPolynomial((41, -112, 132, -89, 37, -9, 1)),
]

K4 = MultiGraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@dataclass
class Criterion:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    limit: float | None = None

    @property
    def in_time(self) -> bool:
        return self.limit is None or self.seconds < self.limit

    @property
    def ok(self) -> bool:
        return self.passed and self.in_time

    def line(self) -> str:
        flag = "PASS" if self.ok else "FAIL"
        limit = f" (limit {self.limit:.0f}s)" if self.limit else ""
        return f"[{flag}] criterion {self.number} {self.name}: {self.detail} [{self.seconds:.1f}s{limit}]"

    def to_json(self) -> dict:
        return {"criterion": self.number, "name": self.name, "passed": self.ok,
                "detail": self.detail, "seconds": round(self.seconds, 3)}


@lru_cache(maxsize=None)
def oracle_corpus() -> tuple:
    """Every connected bridgeless multigraph with at most 9 edges (loops allowed)."""
    return tuple(load_corpus("e9"))


@lru_cache(maxsize=None)
def audit_corpus() -> tuple:
    """The oracle corpus together with the default screening corpus."""
    graphs = {g.code: g for g in oracle_corpus()}
    for g in load_corpus("default"):
        graphs.setdefault(g.code, g)
    return tuple(graphs[c] for c in sorted(graphs))


def _timed(number, name, limit, fn) -> Criterion:
    t0 = time.perf_counter()
    passed, detail = fn()
    return Criterion(number, name, passed, detail, time.perf_counter() - t0, limit)


# --------------------------------------------------------------------------

def _xi_constants():
    parts, ok = [], True
    for k, (value, cubic) in XI_CONSTANTS.items():
        cert = xi(k)
        lo, hi = cert.isolating_interval
        close = abs(lo - value) <= XI_TOLERANCE and abs(hi - value) <= XI_TOLERANCE
        same = cert.minimal_factor == cubic
        ok &= close and same
        parts.append(f"xi{k}={cert.value_approx}{'' if close and same else '!'}")
    low = [xi(k) for k in range(0, 3)]
    ok &= all(c.exact and c.eta.low == 2 for c in low)
    return ok, " ".join(parts)


def criterion_1() -> Criterion:
    return _timed(1, "xi constants", 10, _xi_constants)


def _family_counts():
    counts = {k: len(enumerate_theta(k)) for k in range(2, 6)}
    ok = counts == {2: 1, 3: 1, 4: 1, 5: 2}
    polys = sorted((flow_poly(r.graph).coeffs for r in enumerate_theta(5)))
    ok &= polys == sorted(p.coeffs for p in PHI5_PRODUCTS)
    cv = cross_validate_phi_theta(5)
    ok &= cv.passed
    return ok, f"counts={counts} phi5_products={'match' if ok else 'differ'} cross_validate(5)={cv.passed}"


def criterion_2() -> Criterion:
    return _timed(2, "family counts", 60, _family_counts)


def _oracle():
    eng = FlowEngine()
    bad = []
    graphs = oracle_corpus()
    for g in graphs:
        p = eng.polynomial(g)
        for k in (2, 3, 4, 5):
            if p(k) != flow_count(g, k):
                bad.append((g.code, k))
    return not bad, f"{len(graphs)} graphs x 4 values, {len(bad)} mismatches"


def criterion_3() -> Criterion:
    return _timed(3, "oracle equivalence", 600, _oracle)


def _identities():
    fast, plain = FlowEngine(), FlowEngine(shortcuts=False)
    dc = dc_bad = tb = tb_bad = co = co_bad = 0
    for g in audit_corpus():
        f = fast.polynomial(g)
        for e in range(g.m):
            if g.is_loop(e):
                continue
            dc += 1
            dc_bad += f != plain.polynomial(contract_edge(g, e)) - plain.polynomial(delete_edge(g, e))
        if g.n <= 5:
            for split in vertex_splits(g):
                tb += 1
                tb_bad += not verify_two_block_identity(g, split, fast)
        rep = coefficient_audit(g, f)
        if rep.status != "n/a":
            co += 1
            co_bad += rep.status != "pass"
    ok = dc_bad == tb_bad == co_bad == 0
    return ok, (f"deletion-contraction {dc - dc_bad}/{dc}, two-block {tb - tb_bad}/{tb}, "
                f"coefficients {co - co_bad}/{co}")


def criterion_4() -> Criterion:
    return _timed(4, "identity suite", None, _identities)


def _wakelin():
    graphs = audit_corpus()
    bad = [g.code for g in graphs if not wakelin_audit(g).passed]
    return not bad, f"{len(graphs)} graphs, 8 sample points each, {len(bad)} failures"


def criterion_5() -> Criterion:
    return _timed(5, "wakelin audit", None, _wakelin)


def _zero_free():
    bounds = {k: xi(k).eta.low for k in range(0, 5)}
    checked = bad = 0
    for g in audit_corpus():
        w = sum(1 for d in g.degrees if d > 3)
        p = flow_poly(g)
        for k in range(w, 5):
            checked += 1
            bad += count_real_roots(p, (1, bounds[k])) != 0
    return bad == 0, f"{checked} (graph, k) pairs with |W| <= k <= 4, {bad} roots found"


def criterion_6() -> Criterion:
    return _timed(6, "zero-free intervals", None, _zero_free)


def _screen():
    graphs = load_corpus("default")
    _, summary = screen_corpus(graphs)
    k4_case = structural_bounds_audit(K4).details.get("case")
    gb = gamma_bound_audit(K4)
    sp = structural_profile(K4)
    strict = gb.status == "pass" and gb.details["strict"] and sp.gamma == 4 and gb.details["bound"] == "15/4"
    ok = summary.passed and k4_case == "i" and strict
    return ok, (f"{summary.graphs} graphs, {summary.all_real} all-real, "
                f"{summary.counterexamples} violations, {summary.audit_failures} audit failures, "
                f"K4 case {k4_case}, K4 gamma 4 > 15/4: {strict}")


def criterion_7() -> Criterion:
    return _timed(7, "screening", 600, _screen)


def run_screen_cli(jobs: int, corpus: str = "default", seed: int = 42) -> bytes:
    cmd = [sys.executable, "-m", "flowroots.cli", "screen", "--corpus", corpus,
           "--jobs", str(jobs), "--seed", str(seed)]
    return subprocess.run(cmd, capture_output=True, check=False).stdout


def _determinism():
    one = run_screen_cli(1)
    many = run_screen_cli(8)
    same = sorted(one.splitlines()) == sorted(many.splitlines()) and bool(one)
    return same, f"{len(one.splitlines())} lines, jobs 8 {'==' if same else '!='} jobs 1"


def criterion_8() -> Criterion:
    return _timed(8, "determinism", None, _determinism)


CRITERIA = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
    5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8,
}


def run_all(which=None) -> list:
    return [CRITERIA[i]() for i in sorted(which or CRITERIA)]


__all__ = ["CRITERIA", "Criterion", "XI_CONSTANTS", "audit_corpus", "oracle_corpus", "run_all"]
