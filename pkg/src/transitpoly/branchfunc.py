"""Univariate rational functions of the transition parameter, split by sign.

A BranchFunc carries two rational functions over Q(sqrt2, sqrt3): one valid
for t > 0 and one for t < 0.  |t| is never a symbol; it is the pair
(t, -t).  All t-dependent data of the artifact (table entries, conjugated
reflection families, angle formulas) are BranchFuncs, so limits and
derivatives at the transition time t = 0 are exact branch-wise computations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import DiscontinuousAtZeroError, PoleAtZeroError
from .numfield import FieldScalar, ONE, TimeParam, ZERO


def _fs(x) -> FieldScalar:
    return x if isinstance(x, FieldScalar) else FieldScalar(Fraction(x))


class Poly:
    """Dense univariate polynomial with FieldScalar coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):  # little-endian
        cs = [_fs(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *_):
        raise AttributeError("Poly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (FieldScalar, int, Fraction)):
            s = _fs(other)
            return Poly([c * s for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def scale(self, s: FieldScalar) -> "Poly":
        return Poly([c * s for c in self.coeffs])

    def derivative(self) -> "Poly":
        return Poly([c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x: FieldScalar) -> FieldScalar:
        out = ZERO
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def compose(self, inner: "Poly") -> "Poly":
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * inner + Poly([c])
        return out

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        dq = self.degree - d
        if dq < 0:
            return Poly(), self
        quot = [ZERO] * (dq + 1)
        lead_inv = other.coeffs[-1].inverse()
        for k in range(dq, -1, -1):
            coef = rem[k + d] * lead_inv
            quot[k] = coef
            if not coef.is_zero():
                for i, c in enumerate(other.coeffs):
                    rem[i + k] = rem[i + k] - coef * c
        return Poly(quot), Poly(rem[:d])

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.coeffs[-1].inverse())

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = [f"({c!r})*t^{i}" for i, c in enumerate(self.coeffs) if not c.is_zero()]
        return "Poly(" + " + ".join(terms) + ")"


T_POLY = Poly([0, 1])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


class RationalFunc:
    """Reduced num/den pair with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = Poly([1])):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        g = poly_gcd(num, den)
        if not g.is_zero() and g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lead = den.coeffs[-1]
        if lead != ONE:
            inv = lead.inverse()
            num = num.scale(inv)
            den = den.scale(inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *_):
        raise AttributeError("RationalFunc is immutable")

    @classmethod
    def const(cls, c) -> "RationalFunc":
        return cls(Poly([_fs(c)]))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RationalFunc):
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other: "RationalFunc") -> "RationalFunc":
        return RationalFunc(self.num * other.den + other.num * self.den,
                            self.den * other.den)

    def __neg__(self) -> "RationalFunc":
        return RationalFunc(-self.num, self.den)

    def __sub__(self, other: "RationalFunc") -> "RationalFunc":
        return self + (-other)

    def __mul__(self, other) -> "RationalFunc":
        if isinstance(other, (FieldScalar, int, Fraction)):
            return RationalFunc(self.num * _fs(other), self.den)
        return RationalFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: "RationalFunc") -> "RationalFunc":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunc(self.num * other.den, self.den * other.num)

    def derivative(self) -> "RationalFunc":
        return RationalFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __call__(self, x: FieldScalar) -> FieldScalar:
        d = self.den(x)
        if d.is_zero():
            raise ZeroDivisionError(f"pole at {x!r}")
        return self.num(x) / d

    def value_at_zero(self) -> FieldScalar:
        d = self.den(ZERO)
        if d.is_zero():
            raise PoleAtZeroError("rational function has a pole at 0")
        return self.num(ZERO) / d

    def compose_poly(self, inner: Poly) -> "RationalFunc":
        return RationalFunc(self.num.compose(inner), self.den.compose(inner))

    def __repr__(self):
        return f"RationalFunc({self.num!r}, {self.den!r})"


class BranchFunc:
    """A pair of rational functions: pos for t > 0, neg for t < 0."""

    __slots__ = ("pos", "neg")

    def __init__(self, pos: RationalFunc, neg: RationalFunc):
        object.__setattr__(self, "pos", pos)
        object.__setattr__(self, "neg", neg)

    def __setattr__(self, *_):
        raise AttributeError("BranchFunc is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, c) -> "BranchFunc":
        r = RationalFunc.const(c)
        return cls(r, r)

    @classmethod
    def t(cls) -> "BranchFunc":
        r = RationalFunc(T_POLY)
        return cls(r, r)

    @classmethod
    def abs_t(cls) -> "BranchFunc":
        return cls(RationalFunc(T_POLY), RationalFunc(-T_POLY))

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "BranchFunc":
        if isinstance(other, BranchFunc):
            return other
        return BranchFunc.const(other)

    def __add__(self, other) -> "BranchFunc":
        o = self._coerce(other)
        return BranchFunc(self.pos + o.pos, self.neg + o.neg)

    __radd__ = __add__

    def __neg__(self) -> "BranchFunc":
        return BranchFunc(-self.pos, -self.neg)

    def __sub__(self, other) -> "BranchFunc":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "BranchFunc":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "BranchFunc":
        o = self._coerce(other)
        return BranchFunc(self.pos * o.pos, self.neg * o.neg)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "BranchFunc":
        o = self._coerce(other)
        return BranchFunc(self.pos / o.pos, self.neg / o.neg)

    def is_zero(self) -> bool:
        return self.pos.is_zero() and self.neg.is_zero()

    def __eq__(self, other):
        if not isinstance(other, BranchFunc):
            return NotImplemented
        return self.pos == other.pos and self.neg == other.neg

    def __hash__(self):
        return hash((self.pos, self.neg))

    def __repr__(self):
        return f"BranchFunc(pos={self.pos!r}, neg={self.neg!r})"


def branch_eval(f: BranchFunc, t: TimeParam) -> FieldScalar:
    """Value of the matching branch; at t = 0 the common one-sided limit."""
    if t.branch == "positive":
        return f.pos(t.value)
    if t.branch == "negative":
        return f.neg(t.value)
    left, right = branch_limit_at_zero(f)
    if left != right:
        raise DiscontinuousAtZeroError(
            f"one-sided limits differ at 0: {left!r} vs {right!r}")
    return right


def branch_derivative(f: BranchFunc, order: int = 1) -> BranchFunc:
    """Branch-wise formal derivative of the given order (1 or 2)."""
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    out = f
    for _ in range(order):
        out = BranchFunc(out.pos.derivative(), out.neg.derivative())
    return out


def branch_limit_at_zero(f: BranchFunc) -> tuple[FieldScalar, FieldScalar]:
    """One-sided limits (left, right) at t = 0; raises on a pole."""
    return f.neg.value_at_zero(), f.pos.value_at_zero()


def even_part_in_s(r: RationalFunc) -> RationalFunc | None:
    """If r(t) = g(t^2) for a rational g, return g (in the variable s).

    Returns None when r is not even.  Used to certify that an entry depends
    on t only through t|t|: the pos branch must be g(s) with s = t^2 and the
    neg branch must equal g(-t^2).
    """
    minus_t = Poly([0, -1])
    if r != r.compose_poly(minus_t):
        return None

    def halve(p: Poly) -> Poly | None:
        cs = p.coeffs
        if any(not c.is_zero() for c in cs[1::2]):
            return None
        return Poly(cs[0::2])

    num_h, den_h = halve(r.num), halve(r.den)
    if num_h is not None and den_h is not None:
        return RationalFunc(num_h, den_h)
    # num and den may both be odd; multiply both by t to make them even.
    t_num = r.num * T_POLY
    t_den = r.den * T_POLY
    num_h, den_h = halve(t_num), halve(t_den)
    if num_h is not None and den_h is not None:
        return RationalFunc(num_h, den_h)
    return None


def depends_only_on_t_abs_t(f: BranchFunc) -> bool:
    """True iff f(t) = g(t|t|) for a single rational function g."""
    g = even_part_in_s(f.pos)
    if g is None:
        return False
    return f.neg == g.compose_poly(Poly([0, 0, -1]))


def certify_identity(f: BranchFunc, g: BranchFunc, min_samples: int = 33,
                     sample_den: int = 101) -> bool:
    """Certify f = g by exact evaluation at distinct rational samples.

    The sample count is max(min_samples, d + 1) per branch, where d bounds
    the degree of the cross-multiplied difference, so agreement at the
    samples implies identity.  Samples are k/sample_den in (0, 1) and their
    negatives; points hitting a denominator zero are skipped and replaced.
    """
    for branch, sign in (("pos", 1), ("neg", -1)):
        rf: RationalFunc = getattr(f, branch)
        rg: RationalFunc = getattr(g, branch)
        cross = rf.num * rg.den - rg.num * rf.den
        needed = max(min_samples, cross.degree + 1)
        count = 0
        k = 0
        while count < needed:
            k += 1
            if k >= sample_den:
                raise RuntimeError("ran out of sample points")
            x = FieldScalar(Fraction(sign * k, sample_den))
            if rf.den(x).is_zero() or rg.den(x).is_zero():
                continue
            if rf(x) != rg(x):
                return False
            count += 1
    return True


def branch_map(f: BranchFunc, fn: Callable[[RationalFunc], RationalFunc]) -> BranchFunc:
    return BranchFunc(fn(f.pos), fn(f.neg))


def bf_matrix(rows: Sequence[Sequence]) -> tuple[tuple[BranchFunc, ...], ...]:
    """Coerce a nested sequence into a matrix of BranchFuncs."""
    return tuple(
        tuple(e if isinstance(e, BranchFunc) else BranchFunc.const(e) for e in row)
        for row in rows
    )
