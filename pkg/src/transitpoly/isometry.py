"""Reflections, rescaled reflection families, and the half-pipe group.

The unified reflection formula  id - 2 (J^{-1} a) a^T / (a^T J^{-1} a)  keeps
every matrix entry rational, so conjugated families r_|t| r(t) r_|t|^{-1}
are honest BranchFunc matrices and their one-sided limits and derivatives at
t = 0 are exact.  Half-pipe elements are handled through the isomorphism
with the Minkowski isometry group: (A, v) acting as x -> A x + v corresponds
to the block matrix with bottom row v^T J A and corner +-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .branchfunc import (BranchFunc, RationalFunc, T_POLY, branch_derivative,
                         branch_eval)
from .errors import (LightlikeMirrorError, NotCollapsingError, NotIsometryError,
                     NotLorentzError, NotSpacelikeError)
from .forms import MINKOWSKI_J4, ParamForm, minkowski_q
from .numfield import FieldScalar, ONE, TimeParam, ZERO
from .projective import Covector, ProjMap

Matrix = linalg.Matrix
Vector = linalg.Vector


# -- reflections -----------------------------------------------------------

def reflection(h: Covector, form: ParamForm) -> ProjMap:
    """The unique reflection of the regime fixing the wall of h pointwise."""
    if form.t.branch == "zero":
        raise LightlikeMirrorError(
            "degenerate regime: a mirror does not determine a reflection")
    alpha = h.coeffs
    c = form.q_dual(h)
    if c.is_zero():
        raise LightlikeMirrorError(f"lightlike mirror {h!r}")
    # beta = J^{-1} alpha
    beta = list(alpha)
    beta[0] = -beta[0]
    beta[-1] = beta[-1] / form.last_entry
    scale = FieldScalar(2) / c
    n = len(alpha)
    rows = [[(ONE if i == j else ZERO) - scale * beta[i] * alpha[j]
             for j in range(n)] for i in range(n)]
    return ProjMap(rows)


def reflection_matrix_minkowski(w: Sequence) -> Matrix:
    """Linear reflection of R^{1,3} in the hyperplane orthogonal to w."""
    w = tuple(x if isinstance(x, FieldScalar) else FieldScalar(x) for x in w)
    q = minkowski_q(w)
    if q.is_zero():
        raise LightlikeMirrorError("lightlike normal vector")
    jw = (-w[0],) + tuple(w[1:])
    scale = FieldScalar(2) / q
    return tuple(
        tuple((ONE if i == j else ZERO) - scale * w[i] * jw[j] for j in range(4))
        for i in range(4))


def reflection_in_mirror_covector(v: Sequence) -> Matrix:
    """Linear reflection of R^{1,3} in the mirror {x : v . x = 0}.

    v holds covector coefficients; this is id - 2 (J v) v^T / (v^T J v),
    the same as reflection_matrix_minkowski(J v).
    """
    v = tuple(x if isinstance(x, FieldScalar) else FieldScalar(x) for x in v)
    jv = (-v[0],) + tuple(v[1:])
    return reflection_matrix_minkowski(jv)


# -- half-pipe elements ------------------------------------------------------

def _is_minkowski_isometry(a: Matrix) -> bool:
    return linalg.mat_mul(linalg.mat_mul(linalg.transpose(a), MINKOWSKI_J4), a) \
        == MINKOWSKI_J4


@dataclass(frozen=True)
class HPElement:
    """An element of the half-pipe transformation group in block form."""

    block: Matrix
    bottom_row: Vector
    corner: int  # +1 or -1

    def __post_init__(self):
        if self.corner not in (1, -1):
            raise NotLorentzError("corner entry must be +1 or -1")
        if not _is_minkowski_isometry(self.block):
            raise NotLorentzError("block does not preserve the Minkowski form")
        if self.block[0][0].sign() <= 0:
            raise NotLorentzError("block is not future-preserving")

    @property
    def matrix(self) -> Matrix:
        rows = [tuple(self.block[i]) + (ZERO,) for i in range(4)]
        rows.append(tuple(self.bottom_row) + (FieldScalar(self.corner),))
        return tuple(rows)

    @property
    def translation(self) -> Vector:
        """The vector v with bottom row v^T J A."""
        a_inv = linalg.inverse(self.block)
        vt_j = linalg.vec_mat(self.bottom_row, a_inv)
        return (-vt_j[0],) + tuple(vt_j[1:])

    def compose(self, other: "HPElement") -> "HPElement":
        return hp_element_from_matrix(linalg.mat_mul(self.matrix, other.matrix))

    def __eq__(self, other):
        return (isinstance(other, HPElement) and self.block == other.block
                and self.bottom_row == other.bottom_row and self.corner == other.corner)

    def __hash__(self):
        return hash((self.block, self.bottom_row, self.corner))


def phi_minkowski(a: Sequence[Sequence], v: Sequence, negated: bool = False) -> HPElement:
    """Image of the Minkowski isometry x -> (+-A) x + v in the half-pipe group.

    a must be a future-preserving linear isometry of the Minkowski form;
    negated selects the pair (-A, v), encoded by corner -1.
    """
    am = linalg.mat(a)
    if not _is_minkowski_isometry(am):
        raise NotLorentzError("matrix does not preserve the Minkowski form")
    vv = tuple(x if isinstance(x, FieldScalar) else FieldScalar(x) for x in v)
    vt_j = (-vv[0],) + tuple(vv[1:])
    bottom = linalg.vec_mat(vt_j, am)
    return HPElement(am, bottom, -1 if negated else 1)


def hp_element_from_matrix(m: Sequence[Sequence]) -> HPElement:
    """Parse a 5x5 matrix (mod positive scale) as a half-pipe element.

    Raises NotLorentzError when the matrix does not have the required shape:
    last column (0, ..., 0, +-1)^T after normalisation, Minkowski-orthogonal
    future-preserving block.
    """
    mm = linalg.mat(m)
    corner = mm[4][4]
    if corner.is_zero():
        raise NotLorentzError("zero corner entry")
    scale = abs(corner).inverse()
    mm = linalg.mat_scale(mm, scale)
    if any(not mm[i][4].is_zero() for i in range(4)):
        raise NotLorentzError("last column is not (0, ..., 0, corner)")
    block = tuple(tuple(mm[i][:4]) for i in range(4))
    if not _is_minkowski_isometry(block):
        raise NotLorentzError("block does not preserve the Minkowski form")
    if block[0][0].sign() <= 0:
        raise NotLorentzError("block is not future-preserving")
    csign = mm[4][4].sign()
    return HPElement(block, tuple(mm[4][:4]), csign)


def is_hp_element(m: Sequence[Sequence]) -> bool:
    try:
        hp_element_from_matrix(m)
        return True
    except NotLorentzError:
        return False


def g0_membership(m: ProjMap | Sequence[Sequence]) -> bool:
    """Whether the map has the block shape common to all three regimes.

    Requires last column AND bottom row (0, ..., 0, +-1) after positive
    rescaling, with a Minkowski-orthogonal future-preserving block.
    """
    mm = m.matrix if isinstance(m, ProjMap) else linalg.mat(m)
    try:
        el = hp_element_from_matrix(mm)
    except NotLorentzError:
        return False
    return all(x.is_zero() for x in el.bottom_row)


def degenerate_reflection_family(w: Sequence, a) -> HPElement:
    """Half-pipe reflection fixing the degenerate wall dual to w, offset a.

    Different offsets give different involutions with the same pointwise
    fixed hyperplane: the one-parameter ambiguity of reflections in a
    degenerate mirror.
    """
    wv = tuple(x if isinstance(x, FieldScalar) else FieldScalar(x) for x in w)
    q = minkowski_q(wv)
    if q.sign() <= 0:
        raise NotSpacelikeError("mirror normal must be spacelike")
    av = a if isinstance(a, FieldScalar) else FieldScalar(a)
    lin = reflection_matrix_minkowski(wv)
    scale = (FieldScalar(2) * av) / q
    v = tuple(scale * x for x in wv)
    return phi_minkowski(lin, v)


def fixed_subspace_dim(m: Matrix) -> int:
    """Linear dimension of the eigenvalue-1 eigenspace."""
    n = len(m)
    delta = linalg.mat_sub(m, linalg.identity(n))
    return linalg.kernel_dimension(delta)


def fixed_subspace_covector(m: Matrix) -> Covector | None:
    """When the fixed set is a hyperplane, the covector cutting it out."""
    n = len(m)
    delta = linalg.mat_sub(m, linalg.identity(n))
    if linalg.rank(delta) != 1:
        return None
    for row in delta:
        if any(not x.is_zero() for x in row):
            return Covector(row)
    return None


def _normalize_to_form(mm: Matrix, j: Matrix) -> Matrix:
    """Rescale a projective representative so that M^T J M = J exactly.

    Projective matrices are classes mod positive scaling; the scale is
    recovered from M^T J M = lambda J (lambda a positive square in the
    field).  Raises NotIsometryError otherwise.
    """
    prod = linalg.mat_mul(linalg.mat_mul(linalg.transpose(mm), j), mm)
    lam = -prod[0][0]  # J[0][0] = -1
    if lam.sign() <= 0 or prod != linalg.mat_scale(j, lam):
        raise NotIsometryError("matrix does not preserve the form up to scale")
    root = lam.sqrt()
    if root is None:
        raise NotIsometryError("form-preserving scale is not in the field")
    return linalg.mat_scale(mm, root.inverse())


@dataclass(frozen=True)
class RotationAnalysis:
    """Outcome of analysing a form-preserving map with codim-2 fixed set."""

    fixed_dim: int
    trace: FieldScalar | None = None
    cos_or_cosh: FieldScalar | None = None   # (trace - 3)/2 on a 3-dim fixed space
    magnitude_sq: FieldScalar | None = None  # squared HP infinitesimal angle


def rotation_or_boost_analyze(m: ProjMap | Sequence[Sequence],
                              form: ParamForm) -> RotationAnalysis:
    """Classify a form-preserving map by its fixed subspace.

    For t != 0, a 3-dimensional fixed space carries a rotation (t > 0) or
    boost (t < 0) on the invariant 2-plane, read off the trace:
    trace = 3 + 2 cos(angle) resp. 3 + 2 cosh(magnitude).  For t = 0 the map
    must be a half-pipe element and the squared infinitesimal magnitude is
    the Minkowski square of its translation part.
    """
    mm = m.matrix if isinstance(m, ProjMap) else linalg.mat(m)
    if form.t.branch == "zero":
        # Degenerate J: demand the half-pipe shape instead of J-preservation.
        try:
            el = hp_element_from_matrix(mm)
        except NotLorentzError as exc:
            raise NotIsometryError(str(exc)) from exc
        fd = fixed_subspace_dim(el.matrix)
        if fd == 5:
            return RotationAnalysis(fixed_dim=5)
        return RotationAnalysis(fixed_dim=fd,
                                magnitude_sq=minkowski_q(el.translation))
    mm = _normalize_to_form(mm, form.J)
    fd = fixed_subspace_dim(mm)
    if fd == 5:
        return RotationAnalysis(fixed_dim=5)
    tr = sum((mm[i][i] for i in range(5)), ZERO)
    value = (tr - FieldScalar(3)) / 2 if fd == 3 else None
    return RotationAnalysis(fixed_dim=fd, trace=tr, cos_or_cosh=value)


# -- rescaled reflection families -------------------------------------------

BFMatrix = tuple[tuple[BranchFunc, ...], ...]


@dataclass(frozen=True)
class IsomFamily:
    """A matrix of BranchFuncs: a t-family of projective transformations."""

    entries: BFMatrix
    label: str

    def eval(self, t: TimeParam) -> Matrix:
        return tuple(tuple(branch_eval(e, t) for e in row) for row in self.entries)

    def eval_proj(self, t: TimeParam) -> ProjMap:
        return ProjMap(self.eval(t))


def _rf_reflection(alpha: Sequence[RationalFunc], j_last: int) -> list[list[RationalFunc]]:
    """id - 2 (J a) a^T / (a^T J a) over rational functions, J = diag(-1,1,1,1,j_last)."""
    beta = [-alpha[0], alpha[1], alpha[2], alpha[3], alpha[4] * j_last]
    c = RationalFunc.const(0)
    for x, y in zip(alpha, beta):
        c = c + x * y
    if c.is_zero():
        raise LightlikeMirrorError("family mirror is lightlike")
    one = RationalFunc.const(1)
    zero = RationalFunc.const(0)
    rows = []
    for i in range(5):
        row = []
        for j in range(5):
            delta = one if i == j else zero
            row.append(delta - (beta[i] * alpha[j] * 2) / c)
        rows.append(row)
    return rows


def conj_rescaled(alpha_family: Sequence[BranchFunc], label: str) -> IsomFamily:
    """The family r_|t| r(t) r_|t|^{-1} for the reflection in a wall family.

    The positive branch reflects with respect to the Riemannian ambient
    form, the negative branch with respect to the Lorentzian one; the
    conjugation multiplies the last column by |t| and divides the last row
    by |t|, branch-wise.  Every entry stays rational in t.
    """
    t_rf = RationalFunc(T_POLY)
    branches = {}
    for branch, j_last, tau in (("pos", 1, t_rf), ("neg", -1, -t_rf)):
        alpha = [getattr(bf, branch) for bf in alpha_family]
        m = _rf_reflection(alpha, j_last)
        for i in range(4):
            m[i][4] = m[i][4] * tau
        for j in range(4):
            m[4][j] = m[4][j] / tau
        branches[branch] = m
    entries = tuple(
        tuple(BranchFunc(branches["pos"][i][j], branches["neg"][i][j])
              for j in range(5))
        for i in range(5))
    return IsomFamily(entries, label)


def family_limit(fam: IsomFamily, order: int = 0) -> tuple[Matrix, Matrix]:
    """One-sided limits (left, right) of the order-th derivative at t = 0."""
    if order not in (0, 1, 2):
        raise ValueError("order must be 0, 1 or 2")
    left_rows, right_rows = [], []
    for row in fam.entries:
        lrow, rrow = [], []
        for e in row:
            d = branch_derivative(e, order) if order else e
            lrow.append(d.neg.value_at_zero())
            rrow.append(d.pos.value_at_zero())
        left_rows.append(tuple(lrow))
        right_rows.append(tuple(rrow))
    return tuple(left_rows), tuple(right_rows)


def rational_rotation_family(u: BranchFunc, kind: str = "rotation",
                             label: str = "rotation") -> IsomFamily:
    """Rescaled family of rotations (or boosts) through a Pythagorean angle.

    With cos = (1-u^2)/(1+u^2), sin = 2u/(1+u^2) (hyperbolic functions for
    the boost variant), the conjugated family has lower-left entry
    -sin(theta(t))/t, whose limit at 0 is -2 u'(0): the infinitesimal
    rotation.  Requires u(0) = 0 on both branches.
    """
    if kind not in ("rotation", "boost"):
        raise ValueError("kind must be 'rotation' or 'boost'")
    for rf in (u.pos, u.neg):
        if not rf.value_at_zero().is_zero():
            raise NotCollapsingError("rotation parameter must vanish at t = 0")
    one = BranchFunc.const(1)
    uu = u * u
    if kind == "rotation":
        den = one + uu
        cos = (one - uu) / den
    else:
        den = one - uu
        cos = (one + uu) / den
    sin = (2 * u) / den
    t = BranchFunc.t()
    zero = BranchFunc.const(0)
    rows = [[one if i == j else zero for j in range(5)] for i in range(5)]
    rows[3][3] = cos
    rows[3][4] = sin * t
    rows[4][3] = -sin / t
    rows[4][4] = cos
    return IsomFamily(tuple(tuple(r) for r in rows), label)


def toric_cusp_commutation(a: Sequence[Sequence], w: Sequence, lam) -> bool:
    """Whether the dual-horosphere actions phi(A, 0) and phi(id, lam w) commute.

    w must be lightlike; commutation holds exactly when A fixes w.
    """
    wv = tuple(x if isinstance(x, FieldScalar) else FieldScalar(x) for x in w)
    if not minkowski_q(wv).is_zero():
        raise NotSpacelikeError("cusp direction must be lightlike")
    lamv = lam if isinstance(lam, FieldScalar) else FieldScalar(lam)
    rot = phi_minkowski(a, (0, 0, 0, 0))
    trans = phi_minkowski(linalg.identity(4), tuple(lamv * x for x in wv))
    lhs = linalg.mat_mul(rot.matrix, trans.matrix)
    rhs = linalg.mat_mul(trans.matrix, rot.matrix)
    return lhs == rhs


def minkowski_null_rotation(w: Sequence, u: Sequence, c) -> Matrix:
    """A Minkowski isometry fixing the lightlike vector w.

    Built as the unipotent exp(c (w u^T - u w^T) J) for a spacelike u
    orthogonal to w; used as a commutation witness for toric cusps.
    """
    wv = tuple(x if isinstance(x, FieldScalar) else FieldScalar(x) for x in w)
    uv = tuple(x if isinstance(x, FieldScalar) else FieldScalar(x) for x in u)
    cv = c if isinstance(c, FieldScalar) else FieldScalar(c)
    jw = (-wv[0],) + tuple(wv[1:])
    ju = (-uv[0],) + tuple(uv[1:])
    n = [[wv[i] * ju[j] - uv[i] * jw[j] for j in range(4)] for i in range(4)]
    nm = linalg.mat(n)
    n2 = linalg.mat_mul(nm, nm)
    out = linalg.mat_add(
        linalg.identity(4),
        linalg.mat_add(linalg.mat_scale(nm, cv),
                       linalg.mat_scale(n2, cv * cv / 2)))
    if not _is_minkowski_isometry(out):
        raise NotLorentzError("null rotation construction failed")
    return out
