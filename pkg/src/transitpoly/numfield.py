"""Exact arithmetic in the real field Q(sqrt2, sqrt3).

Every scalar of the artifact lives here: an element is stored as
(a + b*sqrt2 + c*sqrt3 + d*sqrt6)/q with integers a, b, c, d and q > 0,
gcd-reduced.  Equality and the zero test are coefficient-wise; the sign of a
nonzero element is certified by integer interval arithmetic at increasing
precision (a nonzero element of a fixed number field is bounded away from 0,
so the loop terminates).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable

from .errors import NegativeRadicandError, ParseError


def _sqrt_bounds(n: int, bits: int) -> tuple[int, int]:
    """Integer lo, hi with lo <= sqrt(n)*2^bits < hi (hi = lo+1)."""
    lo = math.isqrt(n << (2 * bits))
    return lo, lo + 1


class FieldScalar:
    """An element of Q(sqrt2, sqrt3), hashable and treated as immutable."""

    __slots__ = ("a", "b", "c", "d", "q")

    def __init__(self, a=0, b=0, c=0, d=0):
        # Accept ints or Fractions for the four coefficients.
        fa, fb, fc, fd = Fraction(a), Fraction(b), Fraction(c), Fraction(d)
        q = math.lcm(fa.denominator, fb.denominator, fc.denominator, fd.denominator)
        self._init_raw(
            fa.numerator * (q // fa.denominator),
            fb.numerator * (q // fb.denominator),
            fc.numerator * (q // fc.denominator),
            fd.numerator * (q // fd.denominator),
            q,
        )

    def _init_raw(self, a: int, b: int, c: int, d: int, q: int) -> None:
        if q < 0:
            a, b, c, d, q = -a, -b, -c, -d, -q
        g = math.gcd(a, b, c, d, q)
        if g > 1:
            a, b, c, d, q = a // g, b // g, c // g, d // g, q // g
        self.a = a
        self.b = b
        self.c = c
        self.d = d
        self.q = q

    @classmethod
    def _raw(cls, a: int, b: int, c: int, d: int, q: int) -> "FieldScalar":
        x = cls.__new__(cls)
        x._init_raw(a, b, c, d, q)
        return x

    # -- basic predicates -------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def is_rational(self) -> bool:
        return self.b == 0 and self.c == 0 and self.d == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is irrational")
        return Fraction(self.a, self.q)

    def coeffs(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        q = self.q
        return (Fraction(self.a, q), Fraction(self.b, q),
                Fraction(self.c, q), Fraction(self.d, q))

    # -- ring structure ---------------------------------------------------

    def __add__(self, other) -> "FieldScalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        q1, q2 = self.q, other.q
        return FieldScalar._raw(
            self.a * q2 + other.a * q1,
            self.b * q2 + other.b * q1,
            self.c * q2 + other.c * q1,
            self.d * q2 + other.d * q1,
            q1 * q2,
        )

    __radd__ = __add__

    def __neg__(self) -> "FieldScalar":
        return FieldScalar._raw(-self.a, -self.b, -self.c, -self.d, self.q)

    def __sub__(self, other) -> "FieldScalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "FieldScalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "FieldScalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        # basis products: sqrt2*sqrt3 = sqrt6, sqrt2*sqrt6 = 2*sqrt3, etc.
        return FieldScalar._raw(
            a1 * a2 + 2 * b1 * b2 + 3 * c1 * c2 + 6 * d1 * d2,
            a1 * b2 + b1 * a2 + 3 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
            self.q * other.q,
        )

    __rmul__ = __mul__

    def conj_sqrt2(self) -> "FieldScalar":
        """Galois conjugate sending sqrt2 -> -sqrt2."""
        return FieldScalar._raw(self.a, -self.b, self.c, -self.d, self.q)

    def conj_sqrt3(self) -> "FieldScalar":
        """Galois conjugate sending sqrt3 -> -sqrt3."""
        return FieldScalar._raw(self.a, self.b, -self.c, -self.d, self.q)

    def inverse(self) -> "FieldScalar":
        if self.is_zero():
            raise ZeroDivisionError("FieldScalar division by zero")
        y = self * self.conj_sqrt2()          # lands in Q(sqrt3)
        z = y * y.conj_sqrt3()                # lands in Q
        assert z.is_rational() and not z.is_zero()
        u = self.conj_sqrt2() * y.conj_sqrt3()
        zf = z.as_fraction()
        return FieldScalar._raw(
            u.a * zf.denominator, u.b * zf.denominator,
            u.c * zf.denominator, u.d * zf.denominator,
            u.q * zf.numerator,
        )

    def __truediv__(self, other) -> "FieldScalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "FieldScalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> "FieldScalar":
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- order structure --------------------------------------------------

    def sign(self) -> int:
        """Exact sign in {-1, 0, +1}.

        Zero is certified coefficient-wise first; otherwise the element is
        evaluated with integer interval arithmetic at doubling precision
        until the enclosure excludes 0.
        """
        if self.is_zero():
            return 0
        bits = 32
        while True:
            lo, hi = self._interval(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def _interval(self, bits: int) -> tuple[int, int]:
        """Integer bounds on self * q * 2^bits."""
        lo = self.a << bits
        hi = lo
        for coeff, n in ((self.b, 2), (self.c, 3), (self.d, 6)):
            if coeff == 0:
                continue
            slo, shi = _sqrt_bounds(n, bits)
            if coeff > 0:
                lo += coeff * slo
                hi += coeff * shi
            else:
                lo += coeff * shi
                hi += coeff * slo
        return lo, hi

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.a, self.b, self.c, self.d, self.q) == \
               (other.a, other.b, other.c, other.d, other.q)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d, self.q))

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() < 0

    def __le__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return _coerce(other).__lt__(self)

    def __ge__(self, other):
        return _coerce(other).__le__(self)

    def __abs__(self) -> "FieldScalar":
        return -self if self.sign() < 0 else self

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- radicals ----------------------------------------------------------

    def sqrt(self) -> "FieldScalar | None":
        """Exact square root inside the field, or None if not representable.

        Raises NegativeRadicandError for negative input.  When a root is
        returned it is the non-negative one.
        """
        sgn = self.sign()
        if sgn < 0:
            raise NegativeRadicandError(f"sqrt of negative element {self}")
        if sgn == 0:
            return ZERO
        # Work over F = Q(sqrt2): self = A + B*sqrt3 with A, B in F.
        A = _f2(Fraction(self.a, self.q), Fraction(self.b, self.q))
        B = _f2(Fraction(self.c, self.q), Fraction(self.d, self.q))
        for C, D in _sqrt_candidates(A, B):
            y = FieldScalar(C[0], C[1], D[0], D[1])
            if y * y == self:
                return abs(y)
        return None

    # -- formatting ---------------------------------------------------------

    def approx(self, digits: int = 12) -> str:
        """Decimal approximation with the given significant digits."""
        bits = 96
        lo, hi = self._interval(bits)
        mid = Fraction(lo + hi, 2) / (self.q << bits)
        return f"{float(mid):.{digits}g}"

    def __float__(self) -> float:
        return float(self.approx(17))

    def exact_str(self) -> str:
        """Canonical 'p/q + r/s*sqrt2 + u/v*sqrt3 + w/x*sqrt6' encoding."""
        pa, pb, pc, pd = self.coeffs()
        return (f"{pa.numerator}/{pa.denominator}"
                f" + {pb.numerator}/{pb.denominator}*sqrt2"
                f" + {pc.numerator}/{pc.denominator}*sqrt3"
                f" + {pd.numerator}/{pd.denominator}*sqrt6")

    def __repr__(self) -> str:
        terms = []
        for coeff, tag in zip(self.coeffs(), ("", "*sqrt2", "*sqrt3", "*sqrt6")):
            if coeff:
                terms.append(f"{coeff}{tag}")
        return " + ".join(terms) if terms else "0"


def _coerce(x) -> "FieldScalar":
    if isinstance(x, FieldScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return FieldScalar(x)
    return NotImplemented


class _f2(tuple):
    """Tiny helper: an element (u, v) = u + v*sqrt2 of Q(sqrt2)."""

    def __new__(cls, u, v):
        return super().__new__(cls, (Fraction(u), Fraction(v)))


def _rat_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _sqrt_in_q2(x: _f2) -> list[_f2]:
    """All square roots of u + v*sqrt2 inside Q(sqrt2)."""
    u, v = x
    roots: list[_f2] = []
    if v == 0:
        r = _rat_sqrt(u)
        if r is not None:
            roots.append(_f2(r, 0))
        r = _rat_sqrt(u / 2)
        if r is not None:
            roots.append(_f2(0, r))
        return roots
    disc = _rat_sqrt(u * u - 2 * v * v)
    if disc is None:
        return roots
    for s in (disc, -disc):
        p2 = (u + s) / 2
        p = _rat_sqrt(p2)
        if p is not None and p != 0:
            roots.append(_f2(p, v / (2 * p)))
    return roots


def _sqrt_candidates(A: _f2, B: _f2) -> Iterable[tuple[_f2, _f2]]:
    """Candidate (C, D) with (C + D*sqrt3)^2 = A + B*sqrt3 over Q(sqrt2)."""
    u, v = A
    bu, bv = B
    if bu == 0 and bv == 0:
        for C in _sqrt_in_q2(A):
            yield C, _f2(0, 0)
        # A = 3*D^2
        for D in _sqrt_in_q2(_f2(u / 3, v / 3)):
            yield _f2(0, 0), D
        return
    # C^2 = (A +- E)/2 with E = sqrt(A^2 - 3 B^2) in Q(sqrt2), D = B/(2C).
    a2u = u * u + 2 * v * v - 3 * (bu * bu + 2 * bv * bv)
    a2v = 2 * u * v - 6 * bu * bv
    for E in _sqrt_in_q2(_f2(a2u, a2v)):
        for sgn in (1, -1):
            cu = (u + sgn * E[0]) / 2
            cv = (v + sgn * E[1]) / 2
            for C in _sqrt_in_q2(_f2(cu, cv)):
                if C[0] == 0 and C[1] == 0:
                    continue
                # D = B / (2C) in Q(sqrt2)
                den = 2 * (C[0] * C[0] - 2 * C[1] * C[1])
                if den == 0:
                    continue
                du = (bu * C[0] - 2 * bv * C[1]) / den
                dv = (bv * C[0] - bu * C[1]) / den
                yield C, _f2(du, dv)


ZERO = FieldScalar(0)
ONE = FieldScalar(1)
TWO = FieldScalar(2)
SQRT2 = FieldScalar(0, 1)
SQRT3 = FieldScalar(0, 0, 1)
SQRT6 = FieldScalar(0, 0, 0, 1)

_EXACT_RE = re.compile(
    r"^\s*(-?\d+)/(\d+)\s*\+\s*(-?\d+)/(\d+)\*sqrt2"
    r"\s*\+\s*(-?\d+)/(\d+)\*sqrt3\s*\+\s*(-?\d+)/(\d+)\*sqrt6\s*$"
)


def parse_scalar(text: str) -> FieldScalar:
    """Inverse of FieldScalar.exact_str."""
    m = _EXACT_RE.match(text)
    if not m:
        raise ParseError(f"malformed scalar string: {text!r}")
    g = [int(v) for v in m.groups()]
    return FieldScalar(Fraction(g[0], g[1]), Fraction(g[2], g[3]),
                       Fraction(g[4], g[5]), Fraction(g[6], g[7]))


_SQRT_TOKEN = {"sqrt2": SQRT2, "sqrt3": SQRT3, "sqrt6": SQRT6}


def parse_time_expr(text: str) -> FieldScalar:
    """Parse the CLI grammar for time parameters.

    Accepted forms (optionally prefixed by '-'):  'p', 'p/q', 'sqrtK',
    'sqrtK/q', 'p/sqrtK' with K in {2, 3, 6}.
    """
    s = text.strip()
    neg = s.startswith("-")
    if neg:
        s = s[1:].strip()
    m = re.fullmatch(r"(\d+|sqrt[236])(?:/(\d+|sqrt[236]))?", s)
    if not m:
        raise ParseError(f"malformed time expression: {text!r}")
    num_tok, den_tok = m.group(1), m.group(2)

    def tok_value(tok: str) -> FieldScalar:
        if tok in _SQRT_TOKEN:
            return _SQRT_TOKEN[tok]
        return FieldScalar(int(tok))

    value = tok_value(num_tok)
    if den_tok is not None:
        den = tok_value(den_tok)
        if den.is_zero():
            raise ParseError(f"zero denominator in {text!r}")
        value = value / den
    return -value if neg else value


class TimeParam:
    """The transition parameter t with its sign branch.

    The extended range is -1 <= t <= 1 (the endpoint t = -1 exists only to
    name the Lorentzian ambient form; table constructors reject it).  The
    core deformation interval (-1, 1/sqrt3] is enforced by the table
    constructors, not here.
    """

    __slots__ = ("value", "branch")

    def __init__(self, value) -> None:
        v = value if isinstance(value, FieldScalar) else FieldScalar(Fraction(value))
        if not (FieldScalar(-1) <= v and v <= ONE):
            raise ValueError(f"time parameter {v!r} outside [-1, 1]")
        sgn = v.sign()
        object.__setattr__(self, "value", v)
        object.__setattr__(self, "branch",
                           "positive" if sgn > 0 else "negative" if sgn < 0 else "zero")

    def __setattr__(self, *_):
        raise AttributeError("TimeParam is immutable")

    @classmethod
    def parse(cls, text: str) -> "TimeParam":
        return cls(parse_time_expr(text))

    @property
    def abs(self) -> FieldScalar:
        return abs(self.value)

    @property
    def t_abs_t(self) -> FieldScalar:
        """t*|t| = sign(t)*t^2, the square coefficient of the form q_t."""
        return self.value * abs(self.value)

    def __eq__(self, other):
        return isinstance(other, TimeParam) and self.value == other.value

    def __hash__(self):
        return hash(("TimeParam", self.value))

    def __repr__(self):
        return f"TimeParam({self.value!r})"


IN_CORE_INTERVAL_MAX = SQRT3 / 3  # 1/sqrt3, right endpoint of the interval


def in_core_interval(t: TimeParam) -> bool:
    """Whether t lies in the deformation interval (-1, 1/sqrt3]."""
    return t.value <= IN_CORE_INTERVAL_MAX
