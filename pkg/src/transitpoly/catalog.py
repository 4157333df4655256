"""Concrete data of the deforming polytope family.

Everything here is generated from BranchFunc constructors (single source of
truth for both sign branches and the t = 0 limit): the 22 deforming walls,
their rescaled counterparts, the auxiliary mirrors, the symmetry generators,
the closed-form vertices of the fundamental domain, the 3-dimensional
octahedron warm-up family, the t = 1 ideal 24-cell extension, and the
horosphere embeddings with their exact pullback metrics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .branchfunc import BranchFunc, branch_eval
from .errors import OutOfIntervalError, TransitError
from .numfield import FieldScalar, ONE, SQRT2, TimeParam, ZERO, in_core_interval
from .projective import Covector, ProjMap, ProjPoint

from .labels import AUX_LABELS, EXTRA_LABELS, LETTER_LABELS, sort_labels

# sign patterns of coordinates 1..3 for the eight wall pairs
_SIGNS = (
    (1, 1, 1), (1, -1, 1), (1, -1, -1), (1, 1, -1),
    (-1, 1, -1), (-1, 1, 1), (-1, -1, 1), (-1, -1, -1),
)


_C = BranchFunc.const


def _letter_vectors() -> dict[str, tuple[FieldScalar, ...]]:
    s2 = SQRT2
    m1 = FieldScalar(-1)
    return {
        "A": (m1, s2, ZERO, ZERO, ZERO),
        "B": (m1, ZERO, s2, ZERO, ZERO),
        "C": (m1, ZERO, ZERO, s2, ZERO),
        "D": (m1, ZERO, ZERO, -s2, ZERO),
        "E": (m1, ZERO, -s2, ZERO, ZERO),
        "F": (m1, -s2, ZERO, ZERO, ZERO),
        "G": (m1, ZERO, ZERO, ZERO, -s2),
        "H": (m1, ZERO, ZERO, ZERO, s2),
        "L": (ZERO, -ONE, ONE, ZERO, ZERO),
        "M": (ZERO, ZERO, -ONE, ONE, ZERO),
        "N": (ZERO, ZERO, -ONE, -ONE, ZERO),
    }


LETTER_VECTORS = _letter_vectors()


def wall_families() -> dict[str, tuple[BranchFunc, ...]]:
    """The 22 deforming walls as BranchFunc covector families."""
    t = BranchFunc.t()
    at = BranchFunc.abs_t()
    out: dict[str, tuple[BranchFunc, ...]] = {}
    for i, (s1, s2, s3) in enumerate(_SIGNS):
        last_p = 1 if i % 2 == 0 else -1
        out[f"p{i}"] = (-SQRT2 * at, s1 * at, s2 * at, s3 * at, _C(last_p))
        sign_m = (-1) ** (i + 1)
        out[f"m{i}"] = (_C(-SQRT2), _C(s1), _C(s2), _C(s3), sign_m * t)
    for lab in LETTER_LABELS:
        out[lab] = tuple(_C(x) for x in LETTER_VECTORS[lab])
    return out


def rescaled_wall_families() -> dict[str, tuple[BranchFunc, ...]]:
    """Closed forms of the rescaled walls (images under the rescaling map)."""
    t = BranchFunc.t()
    at = BranchFunc.abs_t()
    tat = t * at
    out: dict[str, tuple[BranchFunc, ...]] = {}
    for i, (s1, s2, s3) in enumerate(_SIGNS):
        last_p = 1 if i % 2 == 0 else -1
        out[f"p{i}"] = (_C(-SQRT2), _C(s1), _C(s2), _C(s3), _C(last_p))
        sign_m = (-1) ** (i + 1)
        out[f"m{i}"] = (_C(-SQRT2), _C(s1), _C(s2), _C(s3), sign_m * tat)
    for lab in LETTER_LABELS:
        out[lab] = tuple(_C(x) for x in LETTER_VECTORS[lab])
    return out


def octahedron_families() -> dict[str, tuple[BranchFunc, ...]]:
    """The 3-dimensional warm-up family: a deforming ideal octahedron."""
    t = BranchFunc.t()
    at = BranchFunc.abs_t()
    s2 = SQRT2
    return {
        "o1": (-at, -s2 * at, _C(0), _C(-1)),
        "o2": (_C(-1), _C(-s2), _C(0), t),
        "o3": (-at, _C(0), -s2 * at, _C(1)),
        "o4": (_C(-1), _C(0), _C(-s2), -t),
        "o5": (-at, s2 * at, _C(0), _C(-1)),
        "o6": (_C(-1), _C(s2), _C(0), t),
        "o7": (-at, _C(0), s2 * at, _C(1)),
        "o8": (_C(-1), _C(0), _C(s2), -t),
    }


def rescaled_octahedron_families() -> dict[str, tuple[BranchFunc, ...]]:
    t = BranchFunc.t()
    at = BranchFunc.abs_t()
    tat = t * at
    s2 = SQRT2
    return {
        "o1": (_C(-1), _C(-s2), _C(0), _C(-1)),
        "o2": (_C(-1), _C(-s2), _C(0), tat),
        "o3": (_C(-1), _C(0), _C(-s2), _C(1)),
        "o4": (_C(-1), _C(0), _C(-s2), -tat),
        "o5": (_C(-1), _C(s2), _C(0), _C(-1)),
        "o6": (_C(-1), _C(s2), _C(0), tat),
        "o7": (_C(-1), _C(0), _C(s2), _C(1)),
        "o8": (_C(-1), _C(0), _C(s2), -tat),
    }


def v_vector(i: int) -> tuple[FieldScalar, ...]:
    """First four coefficients of the i-th wall pair: the collapsed mirror."""
    s1, s2, s3 = _SIGNS[i]
    return (-SQRT2, FieldScalar(s1), FieldScalar(s2), FieldScalar(s3))


def domain_vertex_forms() -> dict[frozenset, tuple[BranchFunc, ...]]:
    """Closed-form affine coordinates of the 13 fundamental-domain vertices.

    Keys are the incidence label sets inside the 8-wall fundamental-domain
    system {p0, m0, p3, m3, A, L, M, N}; one vertex (the only ideal one) lies
    on six walls.  Entries are affine 4-vectors of BranchFuncs in t.
    """
    u = BranchFunc.t() * BranchFunc.abs_t()      # t|t|
    s2 = _C(SQRT2)
    h = _C(SQRT2 / 2)                            # sqrt2/2
    q = _C(SQRT2 / 4)                            # sqrt2/4
    third = _C(SQRT2 / 3)
    zero = _C(0)
    one_minus = 1 - u
    three_minus = 3 - u
    w = s2 * one_minus / three_minus
    w4 = 2 * s2 / three_minus
    return {
        frozenset({"p0", "p3", "m0", "m3", "A", "L"}): (h, h, zero, zero),
        frozenset({"p0", "m0", "A", "M"}): (h, q, q, zero),
        frozenset({"p0", "m0", "L", "M"}): (third, third, third, zero),
        frozenset({"p0", "m3", "A", "N"}): (h, q * one_minus, -(q * one_minus), h),
        frozenset({"p0", "m3", "L", "N"}): (w, w, -w, w4),
        frozenset({"p0", "A", "M", "N"}): (h, zero, zero, h),
        frozenset({"p0", "L", "M", "N"}): (zero, zero, zero, s2),
        frozenset({"p3", "m0", "A", "M"}): (h, q * one_minus, q * one_minus, -h),
        frozenset({"p3", "m0", "L", "M"}): (w, w, w, -w4),
        frozenset({"p3", "m3", "A", "N"}): (h, q, -q, zero),
        frozenset({"p3", "m3", "L", "N"}): (third, third, -third, zero),
        frozenset({"p3", "A", "M", "N"}): (h, zero, zero, -h),
        frozenset({"p3", "L", "M", "N"}): (zero, zero, zero, -s2),
    }


FUNDAMENTAL_DOMAIN_LABELS = ("p0", "m0", "p3", "m3", "A", "L", "M", "N")

IDEAL_DOMAIN_VERTEX = ProjPoint([2, SQRT2, SQRT2, 0, 0])


# -- symmetry generators ------------------------------------------------------

def symmetry_generators() -> dict[str, ProjMap]:
    """The three mirror symmetries and the roll symmetry."""
    def perm_map(images: Sequence[tuple[int, int, int]]) -> ProjMap:
        rows = [[0] * 5 for _ in range(5)]
        fixed = set(range(5))
        for (i, j, s) in images:
            rows[i][j] = s
            fixed.discard(i)
        for i in fixed:
            rows[i][i] = 1
        return ProjMap(rows)

    r_l = perm_map([(1, 2, 1), (2, 1, 1)])
    r_m = perm_map([(2, 3, 1), (3, 2, 1)])
    r_n = perm_map([(2, 3, -1), (3, 2, -1)])
    roll = perm_map([(3, 3, -1), (4, 4, -1)])
    return {"rL": r_l, "rM": r_m, "rN": r_n, "R": roll}


# -- table access ---------------------------------------------------------------

TABLE_IDS = ("octahedron", "walls", "walls-rescaled", "domain-vertices",
             "aux-mirrors", "cell24")


def _eval_family(fam: dict[str, tuple[BranchFunc, ...]], t: TimeParam) -> dict[str, Covector]:
    return {lab: Covector([branch_eval(e, t) for e in entries])
            for lab, entries in fam.items()}


def table(table_id: str, t: TimeParam, extended: bool = False):
    """Exact labeled data of one of the catalogue tables at parameter t.

    The deforming 4-dimensional tables require t in the deformation interval
    (-1, 1/sqrt3] unless extended is set; the 24-cell extension requires
    t = 1; the octahedron family requires |t| < 1.
    """
    if table_id in ("walls", "walls-rescaled", "domain-vertices"):
        if t.value == FieldScalar(-1):
            raise OutOfIntervalError("the deforming tables degenerate at t = -1")
        if not extended and not in_core_interval(t):
            raise OutOfIntervalError(
                f"t = {t.value!r} outside the deformation interval")
        if table_id == "walls":
            return _eval_family(wall_families(), t)
        if table_id == "walls-rescaled":
            return _eval_family(rescaled_wall_families(), t)
        forms = domain_vertex_forms()
        out = {}
        for key, entries in forms.items():
            coords = [branch_eval(e, t) for e in entries]
            out[" ".join(sort_labels(key))] = tuple(coords)
        return out
    if table_id == "octahedron":
        if t.value == ONE or t.value == FieldScalar(-1):
            raise OutOfIntervalError("octahedron family requires |t| < 1")
        return _eval_family(octahedron_families(), t)
    if table_id == "aux-mirrors":
        return {lab: Covector(LETTER_VECTORS[lab]) for lab in AUX_LABELS}
    if table_id == "cell24":
        if t.value != ONE:
            raise OutOfIntervalError("the ideal 24-cell lives at t = 1")
        out = _eval_family(wall_families(), t)
        for lab in EXTRA_LABELS:
            out[lab] = Covector(LETTER_VECTORS[lab])
        return out
    raise TransitError(f"unknown table id {table_id!r}")


# -- horosphere embeddings -----------------------------------------------------


class _Jet:
    """First-order jet (value + gradient) for exact differentiation."""

    __slots__ = ("val", "grad")

    def __init__(self, val: FieldScalar, grad: tuple[FieldScalar, ...]):
        self.val = val
        self.grad = grad

    @classmethod
    def var(cls, val: FieldScalar, index: int, nvars: int) -> "_Jet":
        return cls(val, tuple(ONE if i == index else ZERO for i in range(nvars)))

    @classmethod
    def const(cls, val: FieldScalar, nvars: int) -> "_Jet":
        return cls(val, (ZERO,) * nvars)

    def __add__(self, o):
        return _Jet(self.val + o.val, tuple(a + b for a, b in zip(self.grad, o.grad)))

    def __sub__(self, o):
        return _Jet(self.val - o.val, tuple(a - b for a, b in zip(self.grad, o.grad)))

    def __mul__(self, o):
        if isinstance(o, FieldScalar):
            return _Jet(self.val * o, tuple(g * o for g in self.grad))
        return _Jet(self.val * o.val,
                    tuple(self.val * b + o.val * a
                          for a, b in zip(self.grad, o.grad)))

    def reciprocal(self) -> "_Jet":
        inv = self.val.inverse()
        neg_inv2 = -(inv * inv)
        return _Jet(inv, tuple(g * neg_inv2 for g in self.grad))


@dataclass(frozen=True)
class HorosphereEmbedding:
    """Parameterisation of a horosphere (eta) or the upper half-space (zeta)."""

    kind: str        # "eta" | "zeta"
    t: TimeParam
    dim: int = 4

    def __post_init__(self):
        if self.kind not in ("eta", "zeta"):
            raise ValueError("kind must be 'eta' or 'zeta'")

    @property
    def nvars(self) -> int:
        return self.dim - 1 if self.kind == "eta" else self.dim

    def coordinates(self, y: Sequence[FieldScalar]) -> tuple[FieldScalar, ...]:
        jets = self._jets(y)
        return tuple(j.val for j in jets)

    def _jets(self, y: Sequence[FieldScalar]) -> list[_Jet]:
        n = self.dim
        u = self.t.t_abs_t
        k = self.nvars
        ys = [x if isinstance(x, FieldScalar) else FieldScalar(Fraction(x)) for x in y]
        if len(ys) != k:
            raise ValueError(f"expected {k} coordinates")
        vars_ = [_Jet.var(ys[i], i, k) for i in range(k)]
        if self.kind == "eta":
            return self._eta_jets(vars_, u, n, k)
        from .errors import WrongChartError
        if ys[0].sign() <= 0:
            raise WrongChartError("upper half-space requires y1 > 0")
        y1 = vars_[0]
        inv_y1 = y1.reciprocal()
        inner = [vars_[i] * inv_y1 for i in range(1, k)]
        eta = self._eta_jets(inner, u, n, k)
        half = FieldScalar(Fraction(1, 2))
        a = (y1 + inv_y1) * half
        b = (y1 - inv_y1) * half
        x0 = a * eta[0] + b * eta[1]
        x1 = b * eta[0] + a * eta[1]
        return [x0, x1] + eta[2:]

    @staticmethod
    def _eta_jets(vars_: list[_Jet], u: FieldScalar, n: int, k: int) -> list[_Jet]:
        half = FieldScalar(Fraction(1, 2))
        f = _Jet.const(ZERO, k)
        for j, v in enumerate(vars_):
            weight = u if j == len(vars_) - 1 else ONE
            f = f + (v * v) * (weight * half)
        one = _Jet.const(ONE, k)
        return [f + one, f] + list(vars_)

    def pullback_metric_at(self, y: Sequence) -> linalg.Matrix:
        """Exact Gram matrix (D psi)^T B_t (D psi) at the point y."""
        jets = self._jets([x if isinstance(x, FieldScalar) else FieldScalar(Fraction(x))
                           for x in y])
        u = self.t.t_abs_t
        k = self.nvars
        weights = [-ONE] + [ONE] * (self.dim - 1) + [u]
        gram = [[ZERO] * k for _ in range(k)]
        for coord, wt in zip(jets, weights):
            for i in range(k):
                gi = coord.grad[i]
                if gi.is_zero():
                    continue
                for j in range(k):
                    gram[i][j] = gram[i][j] + wt * gi * coord.grad[j]
        return tuple(tuple(row) for row in gram)


def pullback_metric_at(emb: HorosphereEmbedding, y: Sequence) -> linalg.Matrix:
    return emb.pullback_metric_at(y)


# -- half-space systems -----------------------------------------------------

def main_system(t: TimeParam, rescaled: bool = True, drop=(), override=None,
                extended: bool = False):
    """The 22-wall system, rescaled by default (valid on the whole interval).

    drop removes labels (counterexample runs); override replaces covectors
    by label (mutation testing).
    """
    from .forms import ParamForm
    from .polytope import HalfSpaceSystem
    table_id = "walls-rescaled" if rescaled else "walls"
    if not rescaled and t.branch == "zero":
        raise OutOfIntervalError("the unrescaled system degenerates at t = 0")
    covs = table(table_id, t, extended=extended)
    for lab in drop:
        covs.pop(lab)
    if override:
        covs.update(override)
    regime_t = t if rescaled else TimeParam(FieldScalar(1 if t.branch == "positive" else -1))
    return HalfSpaceSystem(covs, ParamForm(4, regime_t))


def fundamental_domain_system(t: TimeParam, rescaled: bool = True,
                              extended: bool = False):
    """The 8-wall fundamental domain {p0, m0, p3, m3, A, L, M, N}."""
    from .forms import ParamForm
    from .polytope import HalfSpaceSystem
    covs = dict(table("walls-rescaled" if rescaled else "walls", t,
                      extended=extended))
    keep = {lab: covs[lab] for lab in FUNDAMENTAL_DOMAIN_LABELS if lab in covs}
    for lab in AUX_LABELS:
        keep[lab] = Covector(LETTER_VECTORS[lab])
    regime_t = t if rescaled else TimeParam(FieldScalar(1 if t.branch == "positive" else -1))
    return HalfSpaceSystem(keep, ParamForm(4, regime_t),
                           labels=FUNDAMENTAL_DOMAIN_LABELS)


def octahedron_system(t: TimeParam, rescaled: bool = True):
    """The 3-dimensional warm-up system (8 walls in the projective 3-sphere)."""
    from .forms import ParamForm
    from .polytope import HalfSpaceSystem
    if abs(t.value) == ONE:
        raise OutOfIntervalError("octahedron family requires |t| < 1")
    if not rescaled and t.branch == "zero":
        raise OutOfIntervalError("the unrescaled system degenerates at t = 0")
    fams = rescaled_octahedron_families() if rescaled else octahedron_families()
    covs = {lab: Covector([branch_eval(e, t) for e in fam])
            for lab, fam in fams.items()}
    regime_t = t if rescaled else TimeParam(FieldScalar(1 if t.branch == "positive" else -1))
    return HalfSpaceSystem(covs, ParamForm(3, regime_t),
                           labels=tuple(fams))


def cell24_system():
    """The 24-wall ideal right-angled cell at the endpoint t = 1."""
    from .forms import ParamForm
    from .polytope import HalfSpaceSystem
    t1 = TimeParam(ONE)
    covs = table("cell24", t1)
    return HalfSpaceSystem(covs, ParamForm(4, t1))


def slice_system(t: TimeParam, extended: bool = False):
    """The {x4 = 0} slice of the main system: 14 walls in the 3-sphere.

    Each wall pair (p_i, m_i) induces the same hyperplane on the slice; the
    trace labels are 'p0m0', ..., 'p7m7' alongside the six letters.
    """
    from .forms import ParamForm
    from .polytope import HalfSpaceSystem
    covs: dict[str, Covector] = {}
    rescaled = table("walls-rescaled", t, extended=extended)
    for i in range(8):
        cs = rescaled[f"p{i}"].coeffs[:4]
        covs[f"p{i}m{i}"] = Covector(cs)
        quot_m = Covector(rescaled[f"m{i}"].coeffs[:4])
        if quot_m != covs[f"p{i}m{i}"]:
            raise TransitError("wall pair does not collapse on the slice")
    for lab in LETTER_LABELS:
        covs[lab] = Covector(LETTER_VECTORS[lab][:4])
    return HalfSpaceSystem(covs, ParamForm(3, TimeParam(ONE)),
                           labels=tuple(covs))


def octahedron_slice_system(t: TimeParam):
    """The {x3 = 0} slice of the octahedron family: an ideal quadrilateral."""
    from .forms import ParamForm
    from .polytope import HalfSpaceSystem
    fams = rescaled_octahedron_families()
    covs: dict[str, Covector] = {}
    for a, b in (("o1", "o2"), ("o3", "o4"), ("o5", "o6"), ("o7", "o8")):
        ca = Covector([branch_eval(e, t) for e in fams[a]][:3])
        cb = Covector([branch_eval(e, t) for e in fams[b]][:3])
        if ca != cb:
            raise TransitError("wall pair does not collapse on the slice")
        covs[f"{a}{b}"] = ca
    return HalfSpaceSystem(covs, ParamForm(2, TimeParam(ONE)),
                           labels=tuple(covs))


def halfspace_model_isometry(y1: FieldScalar, dim: int = 4) -> linalg.Matrix:
    """The block translation matrix of the upper half-space parameterisation."""
    inv = y1.inverse()
    half = FieldScalar(Fraction(1, 2))
    a = (y1 + inv) * half
    b = (y1 - inv) * half
    n = dim + 1
    rows = [[ZERO] * n for _ in range(n)]
    rows[0][0] = a
    rows[0][1] = b
    rows[1][0] = b
    rows[1][1] = a
    for i in range(2, n):
        rows[i][i] = ONE
    return tuple(tuple(r) for r in rows)
