"""Exact integer polynomials with Sturm-sequence root counting and isolation.

All decisions about real roots are made with exact rational arithmetic; the
decimal strings attached to isolated roots are for presentation only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

Number = Union[int, Fraction]

DEFAULT_TOLERANCE = Fraction(1, 10**12)


class DivisionError(ArithmeticError):
    """Raised when an exact division leaves a nonzero remainder."""


def _trim(coeffs: Iterable[int]) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPolynomial:
    """Dense polynomial over the integers; ``coeffs[i]`` multiplies ``x**i``.

    The zero polynomial has an empty coefficient tuple.
    """

    coeffs: tuple = ()

    def __post_init__(self):
        c = _trim(int(a) for a in self.coeffs)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @classmethod
    def linear_root(cls, s: int) -> "IntPolynomial":
        """``x - s``."""
        return cls((-s, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPolynomial":
        out = IntPolynomial((1,))
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x: Number) -> Number:
        acc: Number = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def primitive(self) -> "IntPolynomial":
        """Divide out the content and make the leading coefficient positive."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lead < 0:
            g = -g
        return IntPolynomial(c // g for c in self.coeffs)

    def divmod_exact(self, other: "IntPolynomial") -> tuple:
        """Division over the rationals; returns (quotient, remainder) as Fraction lists."""
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = [Fraction(c) for c in self.coeffs]
        d = other.degree
        lead = other.lead
        if len(rem) - 1 < d:
            return [], rem
        quot = [Fraction(0)] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            q = rem[i] / lead
            quot[i - d] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[i - d + j] -= q * c
        while rem and rem[-1] == 0:
            rem.pop()
        return quot, rem

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        quot, rem = self.divmod_exact(other)
        if rem:
            raise DivisionError(f"{other} does not divide {self}")
        if any(q.denominator != 1 for q in quot):
            raise DivisionError(f"{other} does not divide {self} over the integers")
        return IntPolynomial(int(q) for q in quot)

    def divides(self, other: "IntPolynomial") -> bool:
        """True iff ``self`` divides ``other`` over the rationals."""
        _, rem = other.divmod_exact(self)
        return not rem

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj: dict) -> "IntPolynomial":
        return cls(int(c) for c in obj["coeffs"])


ZERO = IntPolynomial()
ONE = IntPolynomial((1,))
LAMBDA_MINUS_1 = IntPolynomial((-1, 1))
LAMBDA_MINUS_2 = IntPolynomial((-2, 1))


def arith(op: str, p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    if op == "add":
        return p + q
    if op == "subtract":
        return p - q
    if op == "multiply":
        return p * q
    if op == "exact_divide":
        return p.exact_div(q)
    raise ValueError(f"unknown operation {op!r}")


def _frac_poly_primitive(coeffs: Sequence[Fraction]) -> IntPolynomial:
    if not coeffs:
        return ZERO
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return IntPolynomial(int(c * den) for c in coeffs).primitive()


def gcd(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Primitive gcd with positive leading coefficient (zero if both are zero)."""
    a, b = p.primitive(), q.primitive()
    while b:
        _, r = a.divmod_exact(b)
        a, b = b, _frac_poly_primitive(r)
    return a.primitive()


def squarefree_decompose(p: IntPolynomial) -> list:
    """Square-free decomposition ``p = content * prod f_i**m_i`` via gcds with p'.

    Factors are primitive with positive leading coefficient, pairwise coprime and
    ordered by multiplicity. Constant factors are dropped.
    """
    if p.is_zero():
        raise ValueError("square-free decomposition of the zero polynomial")
    f = p.primitive()
    if f.degree < 1:
        return []
    out = []
    a = gcd(f, f.derivative())
    b = f.exact_div(a)
    i = 1
    while b.degree > 0:
        c = gcd(a, b)
        part = b.exact_div(c)
        if part.degree > 0:
            out.append((part, i))
        a = a.exact_div(c)
        b = c
        i += 1
    return out


def _frac_div(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    quot, rem = p.divmod_exact(q)
    if rem:
        raise DivisionError(f"{q} does not divide {p}")
    return _frac_poly_primitive(quot)


def _frac_poly_primitive_keep_sign(coeffs: Sequence[Fraction]) -> IntPolynomial:
    """Clear denominators without changing sign or dividing out content."""
    if not coeffs:
        return ZERO
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return IntPolynomial(int(c * den) for c in coeffs)


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    f = p.primitive()
    if f.degree < 1:
        return ONE
    return f.exact_div(gcd(f, f.derivative())).primitive()


# --------------------------------------------------------------------------
# Sturm sequences

def sturm_sequence(p: IntPolynomial) -> list:
    """Sturm chain of ``p``; coefficients are rescaled by positive constants only."""
    seq = [p, p.derivative()]
    while seq[-1].degree > 0:
        _, r = seq[-2].divmod_exact(seq[-1])
        if not r:
            break
        r_int = _frac_poly_primitive_keep_sign(r)
        g = r_int.content()
        seq.append(IntPolynomial(-(c // g) for c in r_int.coeffs))
    return [s for s in seq if s]


def _sign(x: Number) -> int:
    return (x > 0) - (x < 0)


def _variations(signs: Iterable[int]) -> int:
    v, prev = 0, 0
    for s in signs:
        if s:
            if prev and s != prev:
                v += 1
            prev = s
    return v


def _signs_at(seq: Sequence[IntPolynomial], x) -> list:
    if x == math.inf:
        return [_sign(s.lead) for s in seq]
    if x == -math.inf:
        return [_sign(s.lead) * (-1 if s.degree % 2 else 1) for s in seq]
    return [_sign(s(x)) for s in seq]


def _count_half_open(seq, a, b) -> int:
    """Distinct roots in (a, b] of a square-free polynomial with chain ``seq``."""
    return _variations(_signs_at(seq, a)) - _variations(_signs_at(seq, b))


def _as_bound(x):
    if x is None:
        return None
    if isinstance(x, float) and math.isinf(x):
        return x
    return Fraction(x)


def count_real_roots(
    p: IntPolynomial,
    interval=(-math.inf, math.inf),
    closed=(False, False),
) -> int:
    """Number of distinct real roots of ``p`` in the interval.

    Bounds may be rationals or +/-inf; ``closed`` gives the (left, right) endpoint
    inclusion. Endpoint roots are tested by direct evaluation.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has infinitely many roots")
    lo, hi = _as_bound(interval[0]), _as_bound(interval[1])
    if lo > hi:
        return 0
    sq = squarefree_part(p)
    if sq.degree < 1:
        return 0
    if lo == hi:
        return int(bool(closed[0] and closed[1] and not isinstance(lo, float) and sq(lo) == 0))
    seq = sturm_sequence(sq)
    n = _count_half_open(seq, lo, hi)
    if not isinstance(hi, float) and not closed[1] and sq(hi) == 0:
        n -= 1
    if not isinstance(lo, float) and closed[0] and sq(lo) == 0:
        n += 1
    return n


def root_bound(p: IntPolynomial) -> Fraction:
    """Cauchy bound: every root has absolute value below the returned integer."""
    lead = abs(p.lead)
    return Fraction(1 + max((abs(c) for c in p.coeffs[:-1]), default=0) // lead + 1)


@dataclass(frozen=True)
class IsolatedRoot:
    """A real root certified by an isolating interval ``[low, high]``.

    ``low == high`` marks an exact rational root.
    """

    low: Fraction
    high: Fraction
    multiplicity: int
    approx: str
    factor: IntPolynomial = ONE

    @property
    def exact(self) -> bool:
        return self.low == self.high

    @property
    def midpoint(self) -> Fraction:
        return (self.low + self.high) / 2

    def to_json(self) -> dict:
        out = {
            "low": _frac_str(self.low),
            "high": _frac_str(self.high),
            "approx": self.approx,
            "mult": self.multiplicity,
        }
        if self.exact:
            out["exact"] = True
        return out


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def decimal_string(x: Fraction, digits: int) -> str:
    """Decimal expansion of ``x`` rounded half-up to ``digits`` places after the point."""
    x = Fraction(x)
    neg = x < 0
    x = abs(x)
    scaled = (2 * x.numerator * 10**digits + x.denominator) // (2 * x.denominator)
    whole, frac = divmod(scaled, 10**digits)
    s = str(whole) if digits == 0 else f"{whole}.{frac:0{digits}d}"
    return "-" + s if neg else s


def _digits_for(tol: Fraction) -> int:
    d = 0
    while Fraction(1, 10**d) > tol:
        d += 1
    return d


def _print_width(tol: Fraction, digits: int) -> Fraction:
    # two guard digits so the rounded midpoint is the rounded root
    return min(Fraction(tol), Fraction(1, 10 ** (digits + 2)))


def _bisect_to(f: IntPolynomial, lo: Fraction, hi: Fraction, tol: Fraction):
    """Shrink an isolating interval of a simple root of ``f`` by bisection."""
    slo = _sign(f(lo))
    while hi - lo > tol:
        mid = (lo + hi) / 2
        sm = _sign(f(mid))
        if sm == 0:
            return mid, mid
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _snap_rational(f: IntPolynomial, lo: Fraction, hi: Fraction):
    """Return the rational root of ``f`` in [lo, hi] if one exists, else None.

    Rational roots have denominator dividing the leading coefficient, so once the
    interval is narrower than 1/(2*lead^2) the closest such fraction is the only
    candidate.
    """
    lead = abs(f.lead)
    lo, hi = _bisect_to(f, lo, hi, Fraction(1, 2 * lead * lead))
    if lo == hi:
        return lo
    cand = ((lo + hi) / 2).limit_denominator(lead)
    if lo <= cand <= hi and f(cand) == 0:
        return cand
    return None


def _isolate_squarefree(f: IntPolynomial, lo: Fraction, hi: Fraction, left_closed: bool, right_closed: bool):
    """Isolate the roots of square-free ``f`` in the range.

    Returns (open isolating intervals with nonzero endpoint values, exact roots).
    """
    seq = sturm_sequence(f)
    exact = []
    if left_closed and f(lo) == 0:
        exact.append(lo)
    hi_root = f(hi) == 0
    if right_closed and hi_root:
        exact.append(hi)
    out = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = _count_half_open(seq, a, b)
        if b == hi and hi_root:
            n -= 1
        if n == 0:
            continue
        fb = f(b)
        if n == 1 and fb == 0:
            exact.append(b)
            continue
        if n == 1 and f(a) != 0:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        stack.append((mid, b))
        stack.append((a, mid))
    return out, exact


def isolate_and_refine(
    p: IntPolynomial,
    interval=(-math.inf, math.inf),
    tolerance: Fraction = DEFAULT_TOLERANCE,
    closed=(False, False),
) -> list:
    """One :class:`IsolatedRoot` per distinct real root of ``p`` in the interval."""
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    tolerance = Fraction(tolerance)
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    digits = _digits_for(tolerance)
    results = []
    for factor, mult in squarefree_decompose(p):
        bound = root_bound(factor)
        lo = _as_bound(interval[0])
        hi = _as_bound(interval[1])
        lo_f = -bound if lo == -math.inf else max(lo, -bound)
        hi_f = bound if hi == math.inf else min(hi, bound)
        if lo_f > hi_f:
            continue
        lc = closed[0] and lo != -math.inf and lo_f == lo
        rc = closed[1] and hi != math.inf and hi_f == hi
        if lo_f == hi_f:
            if lc and rc and factor(lo_f) == 0:
                results.append(IsolatedRoot(lo_f, lo_f, mult, decimal_string(lo_f, digits), factor))
            continue
        intervals, exact = _isolate_squarefree(factor, lo_f, hi_f, lc, rc)
        for x in exact:
            results.append(IsolatedRoot(x, x, mult, decimal_string(x, digits), factor))
        for a, b in intervals:
            r = _snap_rational(factor, a, b)
            if r is not None:
                results.append(IsolatedRoot(r, r, mult, decimal_string(r, digits), factor))
                continue
            a, b = _bisect_to(factor, a, b, _print_width(tolerance, digits))
            if a == b:
                results.append(IsolatedRoot(a, a, mult, decimal_string(a, digits), factor))
            else:
                results.append(IsolatedRoot(a, b, mult, decimal_string((a + b) / 2, digits), factor))
    return _separate(results, digits)


def _separate(roots: list, digits: int) -> list:
    """Sort roots, refining intervals of distinct roots until they are disjoint."""
    roots = list(roots)
    changed = True
    while changed:
        changed = False
        roots.sort(key=lambda r: (r.low, r.high))
        for i in range(len(roots) - 1):
            a, b = roots[i], roots[i + 1]
            if a.high >= b.low:
                roots[i] = refine(a, (a.high - a.low) / 2, digits)
                roots[i + 1] = refine(b, (b.high - b.low) / 2, digits)
                changed = True
                break
    return roots


def refine(root: IsolatedRoot, tolerance: Fraction, digits: Optional[int] = None) -> IsolatedRoot:
    """Narrow an isolating interval to width at most ``tolerance``."""
    if root.exact or root.high - root.low <= tolerance:
        return root
    if digits is None:
        digits = _digits_for(Fraction(tolerance))
    a, b = _bisect_to(root.factor, root.low, root.high, _print_width(tolerance, digits))
    approx = decimal_string((a + b) / 2, digits)
    return IsolatedRoot(a, b, root.multiplicity, approx, root.factor)


def all_roots_real(p: IntPolynomial) -> bool:
    for factor, _ in squarefree_decompose(p):
        if count_real_roots(factor) != factor.degree:
            return False
    return True


def strip_integer_roots(p: IntPolynomial, roots: Iterable[int]) -> tuple:
    """Divide out ``(x - s)`` maximally for each ``s``; returns (multiplicities, remainder)."""
    if p.is_zero():
        raise ValueError("cannot strip roots from the zero polynomial")
    mults = {}
    rem = p
    for s in sorted(set(roots)):
        m = 0
        lin = IntPolynomial.linear_root(s)
        while rem.degree >= 1 and rem(s) == 0:
            rem = rem.exact_div(lin)
            m += 1
        mults[s] = m
    return mults, rem


def rational_roots(p: IntPolynomial) -> dict:
    """All rational roots of ``p`` with multiplicities."""
    out = {}
    for factor, mult in squarefree_decompose(p):
        for root in isolate_and_refine(factor, tolerance=Fraction(1, 2)):
            if root.exact:
                out[root.low] = out.get(root.low, 0) + mult
    return out


def factor_rational(p: IntPolynomial) -> list:
    """Split off linear factors for rational roots, then square-free decompose the rest.

    Returns ``[(factor, multiplicity), ...]`` with linear factors first (by root)
    followed by the square-free parts of the remainder. The integer content is
    not included.
    """
    out = []
    rem = p.primitive()
    for r, m in sorted(rational_roots(p).items()):
        lin = IntPolynomial((-r.numerator, r.denominator))
        for _ in range(m):
            rem = _frac_div(rem, lin).primitive()
        out.append((lin, m))
    if rem.degree >= 1:
        out.extend(squarefree_decompose(rem))
    return out
