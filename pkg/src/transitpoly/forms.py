"""The parametric quadratic forms, domain membership, causal types, angles.

For a time parameter t the diagonal form is
    q_t(x) = -x0^2 + x1^2 + ... + x_{n-1}^2 + t|t| xn^2 ,
Riemannian inside the domain for t > 0, Lorentzian for t < 0, and degenerate
at t = 0.  Covectors are classified through the dual form (the inverse
diagonal); all verdicts are exact field computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import linalg
from .errors import NoTransverseIntersectionError, OutsideDomainError
from .numfield import FieldScalar, ONE, TimeParam
from .projective import Covector, ProjPoint


@dataclass(frozen=True)
class ParamForm:
    """The pair (q_t, b_t) on R^{n+1}, with diagonal matrix J_t."""

    dim: int
    t: TimeParam

    @property
    def last_entry(self) -> FieldScalar:
        return self.t.t_abs_t

    @property
    def J(self) -> linalg.Matrix:
        entries = [FieldScalar(-1)] + [ONE] * (self.dim - 1) + [self.last_entry]
        return linalg.diag(entries)

    def q(self, x) -> FieldScalar:
        coords = x.coords if isinstance(x, ProjPoint) else x
        s = -coords[0] * coords[0]
        for c in coords[1:-1]:
            s = s + c * c
        return s + self.last_entry * coords[-1] * coords[-1]

    def b(self, x, y) -> FieldScalar:
        cx = x.coords if isinstance(x, ProjPoint) else x
        cy = y.coords if isinstance(y, ProjPoint) else y
        s = -cx[0] * cy[0]
        for a, b in zip(cx[1:-1], cy[1:-1]):
            s = s + a * b
        return s + self.last_entry * cx[-1] * cy[-1]

    # Dual form on covectors: J_t^{-1}, defined for t != 0.

    def q_dual(self, h: Covector) -> FieldScalar:
        if self.t.branch == "zero":
            raise ZeroDivisionError("dual form degenerate at t = 0")
        a = h.coeffs
        s = -a[0] * a[0]
        for c in a[1:-1]:
            s = s + c * c
        return s + a[-1] * a[-1] / self.last_entry

    def b_dual(self, h1: Covector, h2: Covector) -> FieldScalar:
        if self.t.branch == "zero":
            raise ZeroDivisionError("dual form degenerate at t = 0")
        a, b = h1.coeffs, h2.coeffs
        s = -a[0] * b[0]
        for x, y in zip(a[1:-1], b[1:-1]):
            s = s + x * y
        return s + a[-1] * b[-1] / self.last_entry

    def q_degenerate(self, h: Covector) -> FieldScalar:
        """q_0 on the first n coefficients (used in the half-pipe rules)."""
        a = h.coeffs
        s = -a[0] * a[0]
        for c in a[1:-1]:
            s = s + c * c
        return s


class PointClass(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


class HyperplaneType(Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"
    DEGENERATE = "degenerate"
    NON_INTERSECTING = "non-intersecting"


def classify_point(form: ParamForm, p: ProjPoint) -> PointClass:
    """Interior/Boundary/Exterior of the domain of q_t.

    The Riemannian (t > 0) and degenerate (t = 0) regimes carry the chart
    condition x0 > 0 (resp. x0 >= 0); the Lorentzian regime does not.
    """
    qsign = form.q(p).sign()
    branch = form.t.branch
    if branch == "positive":
        if p.coords[0].sign() <= 0:
            return PointClass.EXTERIOR
    elif branch == "zero":
        if p.coords[0].sign() < 0:
            return PointClass.EXTERIOR
    if qsign < 0:
        return PointClass.INTERIOR
    if qsign == 0:
        return PointClass.BOUNDARY
    return PointClass.EXTERIOR


def classify_hyperplane(form: ParamForm, h: Covector) -> HyperplaneType:
    """Causal type of the hyperplane boundary of h inside the domain."""
    branch = form.t.branch
    if branch == "zero":
        if not h.coeffs[-1].is_zero():
            return HyperplaneType.SPACELIKE
        if form.q_degenerate(h).sign() > 0:
            return HyperplaneType.DEGENERATE
        return HyperplaneType.NON_INTERSECTING
    s = form.q_dual(h).sign()
    if branch == "positive":
        if s > 0:
            return HyperplaneType.SPACELIKE
        if s == 0:
            return HyperplaneType.LIGHTLIKE
        return HyperplaneType.NON_INTERSECTING
    # Lorentzian regime: every hyperplane meets the domain.
    if s < 0:
        return HyperplaneType.SPACELIKE
    if s > 0:
        return HyperplaneType.TIMELIKE
    return HyperplaneType.LIGHTLIKE


@dataclass(frozen=True)
class AngleData:
    """Raw angle data (b, qa, qb) of a hyperplane pair, with exact cosine.

    Depending on the regime, 'cosine' holds cos(theta) = -b/sqrt(|qa| |qb|)
    (Riemannian) or cosh(phi) = |b|/sqrt(|qa| |qb|) (Lorentzian, spacelike
    pair), when the radical lies in the field; otherwise None.  The raw sign
    of b is recorded: in the Lorentzian convention it is negative when the
    intersection of the half-spaces contains timelike segments.
    """

    b: FieldScalar
    qa: FieldScalar
    qb: FieldScalar
    cosine: FieldScalar | None
    transverse: bool
    regime: str                      # "riemannian" | "lorentzian"
    pair_kind: str                   # "spacelike" | "timelike" | "mixed"
    intersection: str | None = None  # timelike pairs: causal type of the meet

    @property
    def right_angle(self) -> bool:
        return self.b.is_zero()

    @property
    def b_sign(self) -> int:
        return self.b.sign()


def angle_between(form: ParamForm, h1: Covector, h2: Covector) -> AngleData:
    """Dihedral angle data between two half-space boundaries.

    In the Riemannian regime both hyperplanes must meet the domain.  The
    transversality flag follows the comparison of b^2 with qa*qb; equality
    (tangency) counts as non-transverse.
    """
    branch = form.t.branch
    if branch == "zero":
        raise OutsideDomainError("use hp_angle_sq in the degenerate regime")
    b = form.b_dual(h1, h2)
    qa = form.q_dual(h1)
    qb = form.q_dual(h2)
    b2 = b * b
    qq = qa * qb

    if branch == "positive":
        if qa.sign() <= 0 or qb.sign() <= 0:
            raise OutsideDomainError("hyperplane does not meet the domain")
        transverse = (b2 - qq).sign() < 0
        root = qq.sqrt()
        cosine = -b / root if root is not None else None
        return AngleData(b, qa, qb, cosine, transverse, "riemannian", "spacelike")

    sa, sb = qa.sign(), qb.sign()
    if sa < 0 and sb < 0:
        # two spacelike walls: transverse intersection iff |b| > sqrt(qa qb)
        transverse = (b2 - qq).sign() > 0
        root = qq.sqrt()
        cosine = abs(b) / root if root is not None else None
        return AngleData(b, qa, qb, cosine, transverse, "lorentzian", "spacelike")
    if sa > 0 and sb > 0:
        cmp = (b2 - qq).sign()
        intersection = "spacelike" if cmp > 0 else "timelike" if cmp < 0 else "lightlike"
        root = qq.sqrt()
        cosine = abs(b) / root if root is not None and cmp > 0 else None
        return AngleData(b, qa, qb, cosine, True, "lorentzian", "timelike", intersection)
    return AngleData(b, qa, qb, None, True, "lorentzian", "mixed")


MINKOWSKI_J4 = linalg.diag([-1, 1, 1, 1])


def minkowski_q(v: linalg.Vector) -> FieldScalar:
    """The 4-dimensional form -v0^2 + v1^2 + v2^2 + v3^2."""
    s = -v[0] * v[0]
    for c in v[1:]:
        s = s + c * c
    return s


def minkowski_b(u: linalg.Vector, v: linalg.Vector) -> FieldScalar:
    s = -u[0] * v[0]
    for x, y in zip(u[1:], v[1:]):
        s = s + x * y
    return s


def hp_dual_point(h: Covector) -> linalg.Vector:
    """First n coefficients of a spacelike half-pipe wall scaled to alpha_n = 1."""
    last = h.coeffs[-1]
    if last.is_zero():
        raise NoTransverseIntersectionError("wall is not half-pipe spacelike")
    inv = last.inverse()
    return tuple(c * inv for c in h.coeffs[:-1])


def hp_angle_sq(h1: Covector, h2: Covector) -> FieldScalar:
    """Squared half-pipe angle between two spacelike walls.

    The angle is the Minkowski length of the segment joining the dual
    points, so its square is the form evaluated on the difference of the
    normalised coefficient vectors.  The difference must be spacelike.
    """
    a1 = hp_dual_point(h1)
    a2 = hp_dual_point(h2)
    diff = tuple(x - y for x, y in zip(a1, a2))
    out = minkowski_q(diff)
    if any(not c.is_zero() for c in diff) and out.sign() <= 0:
        raise NoTransverseIntersectionError(
            "dual segment is not spacelike; walls do not meet transversely")
    return out
