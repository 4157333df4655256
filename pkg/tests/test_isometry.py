from fractions import Fraction

import pytest

from transitpoly import catalog, linalg
from transitpoly.branchfunc import BranchFunc, branch_eval, depends_only_on_t_abs_t
from transitpoly.errors import (LightlikeMirrorError, NotCollapsingError,
                                NotIsometryError, NotLorentzError, NotSpacelikeError)
from transitpoly.forms import ParamForm, minkowski_q
from transitpoly.isometry import (conj_rescaled, degenerate_reflection_family,
                                  family_limit, fixed_subspace_covector, g0_membership,
                                  hp_element_from_matrix, is_hp_element,
                                  minkowski_null_rotation, phi_minkowski,
                                  rational_rotation_family, reflection,
                                  reflection_in_mirror_covector,
                                  reflection_matrix_minkowski,
                                  rotation_or_boost_analyze, toric_cusp_commutation)
from transitpoly.labels import WALL_LABELS
from transitpoly.numfield import FieldScalar, SQRT2, TimeParam
from transitpoly.projective import Covector, ProjMap


def test_reflection_block_example():
    form = ParamForm(4, TimeParam(1))
    r = reflection(Covector([-1, SQRT2, 0, 0, 0]), form)
    expected = ProjMap([
        [3, -2 * SQRT2, 0, 0, 0],
        [2 * SQRT2, -3, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [0, 0, 0, 1, 0],
        [0, 0, 0, 0, 1],
    ])
    assert r == expected


def test_reflection_involution_and_fixed_mirror(t_half):
    from transitpoly.projective import ProjPoint, apply_point
    form = ParamForm(4, TimeParam(1))
    walls = catalog.table("walls", t_half)
    probes = [(1, 1, 1, 1, 1), (1, -1, 2, 0, 3), (0, 1, 1, -1, 2), (2, 0, 1, 1, 0)]
    for lab in ("p0", "m3", "A"):
        r = reflection(walls[lab], form)
        assert r.compose(r) == ProjMap.identity(4)
        alpha = walls[lab]
        beta = list(alpha.coeffs)
        beta[0] = -beta[0]  # J^{-1} alpha at the ambient parameter 1
        c = sum((a * b for a, b in zip(alpha.coeffs, beta)), FieldScalar(0))
        for probe in probes:
            pv = tuple(FieldScalar(x) for x in probe)
            ap = sum((a * x for a, x in zip(alpha.coeffs, pv)), FieldScalar(0))
            v = tuple(x - (ap / c) * b for x, b in zip(pv, beta))
            if all(x.is_zero() for x in v):
                continue
            p = ProjPoint(v)
            assert alpha(p).is_zero()
            assert apply_point(r, p) == p


def test_reflection_lightlike_mirror_rejected():
    form = ParamForm(4, TimeParam(1))
    lightlike = Covector([1, 1, 0, 0, 0])  # q1 = 0
    with pytest.raises(LightlikeMirrorError):
        reflection(lightlike, form)


def test_conj_rescaled_t_abs_t_dependence():
    fams = catalog.wall_families()
    fam = conj_rescaled(fams["m0"], "m0")
    assert all(depends_only_on_t_abs_t(e) for row in fam.entries for e in row)


def test_conj_rescaled_letter_family_constant():
    fams = catalog.wall_families()
    fam = conj_rescaled(fams["A"], "A")
    for row in fam.entries:
        for e in row:
            assert e.pos == e.neg
            assert e.pos.num.degree <= 0 and e.pos.den.degree == 0


def test_conj_rescaled_preserves_form_and_involutive():
    fams = catalog.wall_families()
    fam = conj_rescaled(fams["p0"], "p0")
    for token in ("1/2", "-1/2", "1/5", "-2/5"):
        t = TimeParam.parse(token)
        m = fam.eval(t)
        jt = ParamForm(4, t).J
        assert linalg.mat_mul(linalg.mat_mul(linalg.transpose(m), jt), m) == jt
        assert linalg.mat_mul(m, m) == linalg.identity(5)


def _bf_mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), BranchFunc.const(0))
              for j in range(n))
        for i in range(n))


def test_family_involution_as_branch_identity():
    """M(t)^2 = id entry-wise as an identity of branch functions."""
    fams = catalog.wall_families()
    for lab in ("m0", "p1", "A"):
        fam = conj_rescaled(fams[lab], lab)
        square = _bf_mat_mul(fam.entries, fam.entries)
        for i in range(5):
            for j in range(5):
                expected = BranchFunc.const(1 if i == j else 0)
                assert square[i][j] == expected, (lab, i, j)


def test_family_preserves_form_as_branch_identity():
    """M(t)^T J_t M(t) = J_t entry-wise as an identity of branch functions."""
    fams = catalog.wall_families()
    tat = BranchFunc.t() * BranchFunc.abs_t()
    j_entries = [BranchFunc.const(-1)] + [BranchFunc.const(1)] * 3 + [tat]
    for lab in ("m3", "p0"):
        m = conj_rescaled(fams[lab], lab).entries
        for i in range(5):
            for j in range(5):
                acc = BranchFunc.const(0)
                for k in range(5):
                    acc = acc + m[k][i] * j_entries[k] * m[k][j]
                expected = j_entries[i] if i == j else BranchFunc.const(0)
                assert acc == expected, (lab, i, j)


def test_family_limits_match_closed_forms():
    fams = catalog.wall_families()
    j4 = linalg.diag([-1, 1, 1, 1])
    for i in range(8):
        v = catalog.v_vector(i)
        jv = linalg.mat_vec(j4, v)
        trans = tuple(FieldScalar(2 * (-1) ** (i + 1)) * x for x in jv)
        lm, rm = family_limit(conj_rescaled(fams[f"m{i}"], f"m{i}"), 0)
        assert lm == rm == phi_minkowski(reflection_in_mirror_covector(v), trans).matrix
        lp, rp = family_limit(conj_rescaled(fams[f"p{i}"], f"p{i}"), 0)
        assert lp == rp == phi_minkowski(linalg.identity(4), trans, negated=True).matrix
    # letter walls: linear limits with zero translation
    la, ra = family_limit(conj_rescaled(fams["A"], "A"), 0)
    vec = tuple(branch_eval(e, TimeParam(1)) for e in fams["A"])[:4]
    assert la == ra == phi_minkowski(reflection_in_mirror_covector(vec), (0,) * 4).matrix


def test_family_c1_but_not_c2():
    fams = catalog.wall_families()
    fam = conj_rescaled(fams["m0"], "m0")
    l1, r1 = family_limit(fam, 1)
    assert l1 == r1
    l2, r2 = family_limit(fam, 2)
    assert l2 != r2


def test_all_limits_in_half_pipe_group():
    fams = catalog.wall_families()
    for lab in WALL_LABELS:
        left, _ = family_limit(conj_rescaled(fams[lab], lab), 0)
        assert is_hp_element(left), lab


def test_phi_minkowski_homomorphism():
    ident = linalg.identity(4)
    assert phi_minkowski(ident, (0, 0, 0, 0)).matrix == linalg.identity(5)
    v = tuple(FieldScalar(x) for x in (1, 2, 3, 4))
    w = tuple(FieldScalar(x) for x in (-1, 0, 5, 2))
    lhs = phi_minkowski(ident, v).compose(phi_minkowski(ident, w))
    vw = tuple(a + b for a, b in zip(v, w))
    assert lhs == phi_minkowski(ident, vw)
    # the unique reflection fixing a spacelike wall through the dual origin
    point_refl = phi_minkowski(ident, (0, 0, 0, 0), negated=True)
    assert point_refl.corner == -1
    assert all(x.is_zero() for x in point_refl.bottom_row)


def test_phi_minkowski_rejects_non_isometry():
    bad = linalg.diag([2, 1, 1, 1])
    with pytest.raises(NotLorentzError):
        phi_minkowski(bad, (0, 0, 0, 0))


def test_hp_element_translation_roundtrip():
    a = reflection_matrix_minkowski((0, 1, 1, 0))
    v = tuple(FieldScalar(x) for x in (2, -1, 0, 3))
    el = phi_minkowski(a, v)
    assert el.translation == v
    assert hp_element_from_matrix(el.matrix) == el


def test_degenerate_reflection_family():
    r0 = degenerate_reflection_family((0, 0, 0, 1), 0)
    r1 = degenerate_reflection_family((0, 0, 0, 1), 1)
    assert r0 != r1
    for r in (r0, r1):
        assert linalg.mat_mul(r.matrix, r.matrix) == linalg.identity(5)
    assert fixed_subspace_covector(r0.matrix) == fixed_subspace_covector(r1.matrix)
    assert all(x.is_zero() for x in r0.bottom_row)
    with pytest.raises(NotSpacelikeError):
        degenerate_reflection_family((1, 0, 0, 0), 0)  # timelike normal


def test_rotation_or_boost_examples(t_half, t_neg_half):
    walls = catalog.table("walls", t_half)
    form = ParamForm(4, TimeParam(1))
    m = linalg.mat_mul(reflection(walls["p1"], form).matrix,
                       reflection(walls["p3"], form).matrix)
    ana = rotation_or_boost_analyze(m, form)
    assert ana.fixed_dim == 3
    assert ana.trace == FieldScalar(Fraction(29, 25))
    assert ana.cos_or_cosh == FieldScalar(Fraction(-23, 25))  # cos(2 theta)

    walls_neg = catalog.table("walls", t_neg_half)
    form_neg = ParamForm(4, TimeParam(-1))
    m2 = linalg.mat_mul(reflection(walls_neg["p1"], form_neg).matrix,
                        reflection(walls_neg["p3"], form_neg).matrix)
    ana2 = rotation_or_boost_analyze(m2, form_neg)
    assert ana2.fixed_dim == 3
    assert ana2.trace == FieldScalar(Fraction(205, 9))

    trivial = rotation_or_boost_analyze(linalg.identity(5), form)
    assert trivial.fixed_dim == 5 and trivial.trace is None

    with pytest.raises(NotIsometryError):
        rotation_or_boost_analyze(linalg.diag([1, 2, 3, 4, 5]), form)


def test_g0_membership():
    gens = catalog.symmetry_generators()
    assert g0_membership(gens["rL"])
    assert g0_membership(gens["R"])
    fams = catalog.wall_families()
    la, _ = family_limit(conj_rescaled(fams["A"], "A"), 0)
    assert g0_membership(la)
    lm, _ = family_limit(conj_rescaled(fams["m0"], "m0"), 0)
    assert not g0_membership(lm)


def test_rational_rotation_family():
    fam = rational_rotation_family(BranchFunc.t())
    left, right = family_limit(fam, 0)
    assert left == right
    assert left[4][3] == FieldScalar(-2)
    ident_fam = rational_rotation_family(BranchFunc.const(0) * BranchFunc.t())
    l0, _ = family_limit(ident_fam, 0)
    assert l0 == linalg.identity(5)
    boost = rational_rotation_family(BranchFunc.t() * BranchFunc.t(), kind="boost")
    lb, rb = family_limit(boost, 0)
    assert lb == rb and lb[4][3].is_zero()
    with pytest.raises(NotCollapsingError):
        rational_rotation_family(BranchFunc.const(1))


def test_toric_cusp_commutation():
    w = (1, 1, 0, 0)
    assert toric_cusp_commutation(linalg.identity(4), w, 1)
    a = minkowski_null_rotation(w, (0, 0, 1, 0), 1)
    assert minkowski_q(tuple(FieldScalar(x) for x in w)).is_zero()
    assert toric_cusp_commutation(a, w, 1)
    b = reflection_matrix_minkowski((0, 1, 0, 0))
    assert not toric_cusp_commutation(b, w, 1)
    with pytest.raises(NotSpacelikeError):
        toric_cusp_commutation(linalg.identity(4), (0, 1, 0, 0), 1)


def test_delta_group_structure(t_half):
    """The edge group generated by three pairwise-orthogonal reflections."""
    walls = catalog.table("walls", t_half)
    form = ParamForm(4, TimeParam(1))
    from transitpoly.verify import _elementary_abelian_8
    gens = [reflection(walls[lab], form).matrix for lab in ("p0", "m1", "A")]
    ok, order = _elementary_abelian_8(gens)
    assert ok and order == 8
