"""Least flow roots in (1, 2] and the constants ξ_k.

η(G) is the smallest flow root of G in (1, 2], or exactly 2 when there is
none. For a family S, η(S) is the minimum over its members (2 for an empty
family), and ξ_k = η(Φ_k) = min_{2 <= i <= k} η(Φ_i) for k >= 3.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import sympy

from .flow import flow_poly
from .multigraph import MultiGraph, has_bridge
from .polynomial import (
    DEFAULT_TOLERANCE,
    IntPolynomial,
    IsolatedRoot,
    _frac_str,
    count_real_roots,
    gcd,
    isolate_and_refine,
    refine,
)
from .theta import DEFAULT_BUDGET, ThetaEnumerator

_X = sympy.Symbol("x")


def irreducible_factors(p: IntPolynomial) -> list:
    """Primitive irreducible factors of ``p`` over the integers (multiplicities dropped)."""
    expr = sum(c * _X**i for i, c in enumerate(p.coeffs))
    _, facs = sympy.factor_list(expr, _X)
    out = []
    for f, _m in facs:
        coeffs = [int(c) for c in reversed(sympy.Poly(f, _X).all_coeffs())]
        q = IntPolynomial(tuple(coeffs)).primitive()
        if q.lead < 0:
            q = -q
        out.append(q)
    return out


def minimal_factor(p: IntPolynomial, root: IsolatedRoot) -> IntPolynomial:
    """The irreducible factor of ``p`` vanishing at the certified root.

    Membership is decided exactly: the factor must divide ``p`` and have a root
    inside the isolating interval (which contains only one root of ``p``).
    """
    for q in irreducible_factors(p):
        if not q.divides(p):  # pragma: no cover - sympy contract
            raise AssertionError("factor does not divide the polynomial")
        if count_real_roots(q, (root.low, root.high), (True, True)) == 1:
            return q
    raise AssertionError("no irreducible factor vanishes in the isolating interval")


@dataclass(frozen=True)
class Eta:
    """η of one graph or family: ``root`` is None when the value is exactly 2."""

    root: Optional[IsolatedRoot] = None
    factor: Optional[IntPolynomial] = None
    two_is_root: bool = False

    @property
    def exact(self) -> bool:
        return self.root is None or self.root.exact

    @property
    def low(self) -> Fraction:
        return Fraction(2) if self.root is None else self.root.low

    @property
    def high(self) -> Fraction:
        return Fraction(2) if self.root is None else self.root.high

    def approx(self) -> str:
        if self.root is None:
            return "2"
        return self.root.approx

    def refined(self, tolerance: Fraction) -> "Eta":
        if self.root is None:
            return self
        return Eta(refine(self.root, tolerance), self.factor, self.two_is_root)


TWO = Eta()


def eta(g: MultiGraph, tolerance: Fraction = DEFAULT_TOLERANCE, poly: Optional[IntPolynomial] = None) -> Eta:
    """Least flow root of ``g`` in (1, 2], certified, or exactly 2."""
    if has_bridge(g):
        raise ValueError("η is only defined for bridgeless graphs")
    p = flow_poly(g) if poly is None else poly
    return eta_of_polynomial(p, tolerance)


def eta_of_polynomial(p: IntPolynomial, tolerance: Fraction = DEFAULT_TOLERANCE) -> Eta:
    two = p(2) == 0
    roots = isolate_and_refine(p, (1, 2), tolerance, closed=(False, False))
    if not roots:
        return Eta(None, None, two)
    r = roots[0]
    return Eta(r, minimal_factor(p, r), two)


def compare(a: Eta, b: Eta) -> int:
    """Exact sign of ``a - b``."""
    if a.root is None or b.root is None:
        if a.root is None and b.root is None:
            return 0
        return 1 if a.root is None else -1
    ra, rb = a.root, b.root
    lo, hi = max(ra.low, rb.low), min(ra.high, rb.high)
    if lo <= hi:
        common = gcd(a.factor, b.factor)
        if common.degree >= 1 and count_real_roots(common, (lo, hi), (True, True)) > 0:
            return 0
    # distinct algebraic numbers: shrink until the intervals separate
    while ra.high >= rb.low and rb.high >= ra.low:
        ra = refine(ra, (ra.high - ra.low) / 2)
        rb = refine(rb, (rb.high - rb.low) / 2)
    return -1 if ra.high < rb.low else 1


def eta_family(graphs: Sequence[MultiGraph], tolerance: Fraction = DEFAULT_TOLERANCE) -> tuple:
    """(η of the family, index of the first attaining graph or None)."""
    best, idx = TWO, None
    for i, g in enumerate(graphs):
        e = eta(g, tolerance)
        if e.root is not None and compare(e, best) < 0:
            best, idx = e, i
    return best, idx


@dataclass
class XiCertificate:
    k: int
    eta: Eta
    attaining_graph: Optional[bytes] = None
    tolerance: Fraction = DEFAULT_TOLERANCE
    level_values: dict = field(default_factory=dict)

    @property
    def value_approx(self) -> str:
        return self.eta.approx()

    @property
    def exact(self) -> bool:
        return self.eta.exact

    @property
    def minimal_factor(self) -> Optional[IntPolynomial]:
        return self.eta.factor

    @property
    def isolating_interval(self) -> tuple:
        return (self.eta.low, self.eta.high)

    def to_json(self) -> dict:
        out = {
            "k": self.k,
            "value": self.value_approx,
            "interval": [_frac_str(self.eta.low), _frac_str(self.eta.high)],
            "factor": None if self.minimal_factor is None else self.minimal_factor.to_json(),
            "graph": None if self.attaining_graph is None else self.attaining_graph.decode("ascii"),
            "exact": self.exact,
        }
        if self.level_values:
            out["levels"] = {str(i): v for i, v in sorted(self.level_values.items())}
        return out


def xi(k: int, budget: int = DEFAULT_BUDGET, tolerance: Fraction = DEFAULT_TOLERANCE,
       cache_dir=None, enumerator: Optional[ThetaEnumerator] = None) -> XiCertificate:
    """Certified ξ_k, cross-checked between the per-level minimum and the last level."""
    if k < 0:
        raise ValueError("k must be non-negative")
    tolerance = Fraction(tolerance)
    if k <= 2:
        return XiCertificate(k, TWO, None, tolerance)
    enum = enumerator or ThetaEnumerator(budget, cache_dir)
    levels = {}
    for i in range(2, k + 1):
        records = enum.level(i)
        e, idx = eta_family([r.graph for r in records], tolerance)
        levels[i] = (e, None if idx is None else records[idx].canonical)
    # per-level minimum
    best_i = 2
    for i in range(3, k + 1):
        if compare(levels[i][0], levels[best_i][0]) < 0:
            best_i = i
    for i in range(3, k + 1):
        if compare(levels[i][0], levels[i - 1][0]) > 0:
            raise AssertionError(f"η(Φ_{i}) exceeds η(Φ_{i - 1})")
    last, graph = levels[k]
    if compare(levels[best_i][0], last) != 0:
        raise AssertionError("min over levels disagrees with the last level")
    summary = {i: e.approx() for i, (e, _) in levels.items()}
    return XiCertificate(k, last, graph, tolerance, summary)


def xi_lower_bound(k: int, **kw) -> Fraction:
    """A rational certified to lie at or below ξ_k (the low end of its interval)."""
    return xi(k, **kw).eta.low


__all__ = [
    "Eta", "XiCertificate", "compare", "eta", "eta_family",
    "eta_of_polynomial", "irreducible_factors", "minimal_factor", "xi", "xi_lower_bound",
]
