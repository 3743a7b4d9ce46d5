"""Root-reality profiles and structural audits for bridgeless graphs.

For a bridgeless graph G with flow polynomial F = sum b_i x^i:

* R(G) is the multiset of flow roots in (1, 2), t = |R(G)| and
  omega(G) = sum over R(G) of (2 - u);
* with no 2-edge-cut, b_r = 1, b_{r-1} = -|E| and b_{r-2} = C(|E|, 2) - gamma,
  where r = |E| - |V| + 1 and gamma counts 3-edge-cuts;
* with all roots real as well, gamma >= (|E| - r)(|E| - 1) / (2(r - 1)).

The remaining audits concern nonseparable graphs with no 2-edge-cut and no
proper 3-edge-cut, whose all-real flow polynomials are heavily constrained.
"""
from __future__ import annotations

import json
import math
import multiprocessing as mp
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .flow import flow_poly, wakelin_audit
from .multigraph import (
    MultiGraph,
    edge_cuts,
    has_bridge,
    is_connected,
    is_nonseparable,
)
from .polynomial import (
    DEFAULT_TOLERANCE,
    IntPolynomial,
    _digits_for,
    _frac_str,
    all_roots_real,
    decimal_string,
    isolate_and_refine,
    strip_integer_roots,
)

FALLBACK_XI = Fraction(32, 27)
PASS, FAIL, NA = "pass", "fail", "n/a"


# --------------------------------------------------------------------------
# roots

@dataclass
class RootProfile:
    degree: int
    all_real: bool
    roots_in_open_12: list
    t: int
    omega: Fraction
    omega_error: Fraction
    subset_123: bool
    multiplicities: dict
    real_root_count: int  # distinct-with-multiplicity count of all real roots

    @property
    def complex_count(self) -> int:
        return self.degree - self.real_root_count

    def omega_string(self, digits: int = 12) -> str:
        return decimal_string(self.omega, digits)

    def to_json(self, digits: int = 12) -> dict:
        return {
            "all_real": self.all_real,
            "subset_123": self.subset_123,
            "t": self.t,
            "omega": self.omega_string(digits),
            "omega_error": _frac_str(self.omega_error),
            "roots_12": [r.to_json() for r in self.roots_in_open_12],
            "mult": {str(k): v for k, v in sorted(self.multiplicities.items())},
        }


def roots_profile(g: MultiGraph, tolerance: Fraction = DEFAULT_TOLERANCE,
                  poly: Optional[IntPolynomial] = None) -> RootProfile:
    if has_bridge(g):
        raise ValueError("root profiles need a bridgeless graph")
    p = flow_poly(g) if poly is None else poly
    return profile_of_polynomial(p, tolerance)


def profile_of_polynomial(p: IntPolynomial, tolerance: Fraction = DEFAULT_TOLERANCE) -> RootProfile:
    tolerance = Fraction(tolerance)
    mults, rem = strip_integer_roots(p, (1, 2, 3))
    real = isolate_and_refine(p, tolerance=tolerance)
    inner = [r for r in real if r.low > 1 and r.high < 2]
    t = sum(r.multiplicity for r in inner)
    omega = sum((r.multiplicity * (2 - r.midpoint) for r in inner), Fraction(0))
    err = sum((r.multiplicity * (r.high - r.low) / 2 for r in inner), Fraction(0))
    return RootProfile(
        degree=p.degree,
        all_real=all_roots_real(p),
        roots_in_open_12=inner,
        t=t,
        omega=omega,
        omega_error=err,
        subset_123=rem.degree == 0,
        multiplicities=mults,
        real_root_count=sum(r.multiplicity for r in real),
    )


# --------------------------------------------------------------------------
# structure

@dataclass
class StructuralProfile:
    n: int
    m: int
    r: int
    alpha: int
    v_counts: dict
    gamma: int
    k: int
    nonseparable: bool
    two_cuts: int
    proper_three_cuts: int

    @property
    def hypothesis_ok(self) -> bool:
        return self.nonseparable and self.two_cuts == 0 and self.proper_three_cuts == 0 and self.n >= 3

    def to_json(self) -> dict:
        return {
            "r": self.r, "alpha": self.alpha, "gamma": self.gamma, "k": self.k,
            "v": {str(d): c for d, c in sorted(self.v_counts.items())},
            "hypothesis_ok": self.hypothesis_ok,
        }


def structural_profile(g: MultiGraph) -> StructuralProfile:
    if not is_connected(g):
        raise ValueError("structural profiles need a connected graph")
    deg = g.degrees
    vc = Counter(deg)
    cuts3 = edge_cuts(g, 3)
    return StructuralProfile(
        n=g.n,
        m=g.m,
        r=g.m - g.n + 1,
        alpha=sum((d - 3) * c for d, c in vc.items() if d >= 3),
        v_counts=dict(vc),
        gamma=len(cuts3),
        k=sum(1 for d in deg if d > 3),
        nonseparable=is_nonseparable(g),
        two_cuts=len(edge_cuts(g, 2)),
        proper_three_cuts=sum(1 for c in cuts3 if c.proper),
    )


# --------------------------------------------------------------------------
# audits

@dataclass
class AuditReport:
    status: str
    reason: str = ""
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.reason:
            out["reason"] = self.reason
        out.update(self.details)
        return out


def coefficient_audit(g: MultiGraph, poly: Optional[IntPolynomial] = None,
                      sp: Optional[StructuralProfile] = None) -> AuditReport:
    """Leading three coefficients against |E| and the 3-edge-cut count."""
    if has_bridge(g) or not is_connected(g):
        return AuditReport(NA, "needs a bridgeless connected graph")
    sp = sp or structural_profile(g)
    if sp.two_cuts:
        return AuditReport(NA, "has a 2-edge-cut")
    p = flow_poly(g) if poly is None else poly
    r, m = sp.r, g.m
    c = p.coeffs
    checks = {"degree": (p.degree, r), "b_r": (c[r] if r >= 0 else None, 1)}
    if r >= 1:
        checks["b_r-1"] = (c[r - 1], -m)
    if r >= 2:
        checks["b_r-2"] = (c[r - 2], math.comb(m, 2) - sp.gamma)
    ok = all(a == b for a, b in checks.values())
    return AuditReport(PASS if ok else FAIL, details={
        "gamma": sp.gamma, "checks": {k: list(v) for k, v in checks.items()}})


def gamma_bound(m: int, r: int) -> Fraction:
    return Fraction((m - r) * (m - 1), 2 * (r - 1))


def gamma_bound_audit(g: MultiGraph, rp: Optional[RootProfile] = None,
                      sp: Optional[StructuralProfile] = None) -> AuditReport:
    """3-edge-cut lower bound for all-real graphs without 2-edge-cuts."""
    if has_bridge(g) or not is_connected(g):
        return AuditReport(NA, "needs a bridgeless connected graph")
    sp = sp or structural_profile(g)
    if sp.two_cuts:
        return AuditReport(NA, "has a 2-edge-cut")
    rp = rp or roots_profile(g)
    if not rp.all_real:
        return AuditReport(NA, "complex roots")
    if sp.r <= 1:
        return AuditReport(NA, "degenerate: r <= 1")
    bound = gamma_bound(g.m, sp.r)
    strict = (g.m - 1) % (sp.r - 1) != 0
    ok = sp.gamma > bound if strict else sp.gamma >= bound
    return AuditReport(PASS if ok else FAIL, details={
        "gamma": sp.gamma, "bound": _frac_str(bound), "strict": strict})


def lemma_bounds(sp: StructuralProfile) -> dict:
    """The vertex/edge/excess inequalities for a graph with k high-degree vertices."""
    k, r, a = sp.k, sp.r, sp.alpha
    return {
        "r_bound": r >= max(3, 8 * k - 6),
        "v_bound": sp.n >= 2 * k,
        "alpha_bound": a >= (r - 2 if k == 1 else r + 2 * k - 3),
    }


def is_k4(g: MultiGraph) -> bool:
    return g.n == 4 and g.m == 6 and len(g.multiplicity) == 6


def structural_bounds_audit(g: MultiGraph, rp: Optional[RootProfile] = None,
                            sp: Optional[StructuralProfile] = None,
                            xi_lower: Optional[dict] = None) -> AuditReport:
    """Bounds on r, |V| and alpha, then which branch of the trichotomy applies.

    ``xi_lower`` maps k to a certified lower bound for ξ_k; larger k fall back
    to 32/27. A lower bound turns each ξ-dependent inequality into one of its
    consequences, so a failure here is still a genuine violation.
    """
    if has_bridge(g) or not is_connected(g):
        return AuditReport(NA, "needs a bridgeless connected graph")
    if g.n == 2 and g.m == 1:
        return AuditReport(NA, "K2")
    sp = sp or structural_profile(g)
    if not sp.nonseparable or sp.two_cuts or sp.proper_three_cuts:
        return AuditReport(NA, "separable or has a 2-edge-cut or proper 3-edge-cut")
    rp = rp or roots_profile(g)
    if not rp.all_real:
        return AuditReport(NA, "complex roots")
    in_12 = rp.degree == rp.multiplicities.get(1, 0) + rp.multiplicities.get(2, 0)
    details = {}
    if g.n <= 2:
        # one vertex with a loop, or two vertices with 2 or 3 parallel edges
        case = "ii" if in_12 else None
        details["branch"] = "small"
    else:
        bounds = lemma_bounds(sp)
        details["lemma"] = bounds
        if not all(bounds.values()):
            return AuditReport(FAIL, "lemma bounds", details)
        if is_k4(g):
            case = "i"
        elif in_12:
            case = "ii"
        else:
            case = "iii" if _case_iii(g, rp, sp, xi_lower or {}, details) else None
    details["case"] = case
    return AuditReport(PASS if case else FAIL, details=details)


def _case_iii(g, rp: RootProfile, sp: StructuralProfile, xi_lower: dict, details: dict) -> bool:
    k, n, m = sp.k, g.n, g.m
    xi = Fraction(xi_lower.get(k, FALLBACK_XI))
    w_hi = rp.omega + rp.omega_error
    gap = m - 2 * n + 1
    checks = {
        "k": k >= 3,
        "v": n >= 2 * k,
        "omega": w_hi >= gap and gap >= 2 * k - 1,
        "R": rp.t * (2 - xi) >= 2 * k - 1,
        "E_low": max(n + 8 * k - 7, 2 * n + 2 * k - 2) <= m,
        "E_high": m * (xi - 1) <= (n + 1) * xi - 3 and 5 * m < 32 * n - 49,
    }
    details["iii"] = checks
    return all(checks.values())


# --------------------------------------------------------------------------
# corpus screening

_XI_LOWER: dict = {}


def certified_xi_lower(max_k: int = 5) -> dict:
    """``{k: lower end of the certified ξ_k interval}`` for k <= max_k."""
    from .xi import xi

    out = {}
    for k in range(0, max_k + 1):
        out[k] = xi(k).eta.low
    return out


def _init_worker(xi_lower: dict, tolerance: Fraction):
    _XI_LOWER.clear()
    _XI_LOWER.update(xi_lower)
    _XI_LOWER["_tol"] = tolerance


def screen_graph(g: MultiGraph, tolerance: Optional[Fraction] = None, xi_lower: Optional[dict] = None) -> dict:
    """One screening record. Keys are stable and values are exact or decimal strings."""
    tolerance = Fraction(tolerance if tolerance is not None else _XI_LOWER.get("_tol", DEFAULT_TOLERANCE))
    xi_lower = xi_lower if xi_lower is not None else {k: v for k, v in _XI_LOWER.items() if k != "_tol"}
    p = flow_poly(g)
    rp = profile_of_polynomial(p, tolerance)
    sp = structural_profile(g)
    wak = wakelin_audit(g, p)
    audits = {
        "wakelin": AuditReport(PASS if wak.passed else FAIL),
        "coefficients": coefficient_audit(g, p, sp),
        "gamma_bound": gamma_bound_audit(g, rp, sp),
        "structural": structural_bounds_audit(g, rp, sp, xi_lower),
    }
    digits = _digits_for(tolerance)
    rec = {
        "canonical": g.code.decode("ascii"),
        "V": g.n,
        "E": g.m,
        "coeffs": list(p.coeffs),
        **rp.to_json(digits),
        "k": sp.k,
        "hypothesis_ok": sp.hypothesis_ok,
        "audits": {name: a.to_json() for name, a in audits.items()},
    }
    rec["counterexample"] = rp.all_real and not rp.subset_123
    # the {1,2,3} classification is known whenever |E| <= |V| + 16
    rec["classification_applies"] = g.m <= g.n + 16
    return rec


def _screen_one(g: MultiGraph) -> dict:
    return screen_graph(g)


def iter_screen(graphs: Sequence[MultiGraph], jobs: int = 1,
                tolerance: Fraction = DEFAULT_TOLERANCE, xi_lower: Optional[dict] = None) -> Iterable[dict]:
    """Screening records in canonical-code order, independent of ``jobs``."""
    graphs = sorted(graphs, key=lambda g: g.code)
    xi_lower = certified_xi_lower() if xi_lower is None else xi_lower
    if jobs <= 1:
        _init_worker(xi_lower, Fraction(tolerance))
        for g in graphs:
            yield _screen_one(g)
        return
    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
    chunk = max(1, len(graphs) // (jobs * 8))
    with ctx.Pool(jobs, initializer=_init_worker, initargs=(xi_lower, Fraction(tolerance))) as pool:
        yield from pool.imap(_screen_one, graphs, chunksize=chunk)


@dataclass
class ScreenSummary:
    graphs: int = 0
    all_real: int = 0
    subset_123: int = 0
    counterexamples: int = 0
    audit_failures: int = 0
    cases: Counter = field(default_factory=Counter)
    failures: list = field(default_factory=list)

    def add(self, rec: dict):
        self.graphs += 1
        self.all_real += rec["all_real"]
        self.subset_123 += rec["subset_123"]
        if rec["counterexample"]:
            self.counterexamples += 1
            self.failures.append(rec["canonical"])
        bad = [k for k, a in rec["audits"].items() if a["status"] == FAIL]
        if bad:
            self.audit_failures += 1
            self.failures.append(rec["canonical"])
        case = rec["audits"]["structural"].get("case")
        if case:
            self.cases[case] += 1

    @property
    def passed(self) -> bool:
        return self.counterexamples == 0 and self.audit_failures == 0

    def to_json(self, **extra) -> dict:
        out = {
            "summary": True,
            "graphs": self.graphs,
            "all_real": self.all_real,
            "subset_123": self.subset_123,
            "counterexamples": self.counterexamples,
            "audit_failures": self.audit_failures,
            "cases": dict(sorted(self.cases.items())),
            "failures": sorted(set(self.failures)),
        }
        out.update(extra)
        return out


def screen_corpus(graphs: Sequence[MultiGraph], jobs: int = 1, tolerance: Fraction = DEFAULT_TOLERANCE,
                  xi_lower: Optional[dict] = None) -> tuple:
    """(records, summary) for a list of bridgeless graphs."""
    summary = ScreenSummary()
    records = []
    for rec in iter_screen(graphs, jobs, tolerance, xi_lower):
        summary.add(rec)
        records.append(rec)
    return records, summary


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
