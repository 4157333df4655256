"""Acceptance criteria: every certified claim at its exact tolerance.

Each test prints one pass/fail line.  All verdicts are exact-arithmetic: a
criterion passes only when the stated counts and identities hold with zero
tolerance (timing bounds are wall-clock).

Run with `pytest tests/test_acceptance.py -v -s` to see the criterion lines.
"""

import time
from fractions import Fraction

import pytest

from transitpoly import catalog, linalg
from transitpoly.branchfunc import BranchFunc, branch_eval, certify_identity
from transitpoly.forms import ParamForm, hp_angle_sq
from transitpoly.isometry import reflection, rotation_or_boost_analyze
from transitpoly.numfield import FieldScalar, SQRT2, TimeParam
from transitpoly.polytope import enumerate_vertices
from transitpoly.projective import ProjPoint
from transitpoly.verify import (check_angles, check_causal_types, check_cell24,
                                check_combinatorics, check_cuboctahedron,
                                check_cusps, check_links, check_meridian_holonomy,
                                check_octahedron_family,
                                check_reflection_transition, check_vertex_census)

ACCEPTANCE_SAMPLES = ("1/5", "-1/5", "1/3", "-1/3", "1/2", "-1/2", "1/sqrt3", "0")


def _report(number: int, ok: bool, text: str) -> None:
    print(f"[criterion {number:02d}] {'PASS' if ok else 'FAIL'}  {text}")


def test_criterion_01_vertex_census(cache):
    """46 = 12 ideal + 34 finite at all stated samples, < 5 s per sample."""
    result = check_vertex_census(ACCEPTANCE_SAMPLES, cache=cache)
    started = time.perf_counter()
    sysm = catalog.main_system(TimeParam.parse("2/5"))
    verts = enumerate_vertices(sysm)
    single_sample_seconds = time.perf_counter() - started
    ok = result.passed and len(verts) == 46 and single_sample_seconds < 5.0
    _report(1, ok, f"vertex census 46 = 12 + 34 at 9 samples "
                   f"({single_sample_seconds:.2f}s for a fresh sample)")
    assert result.passed, result.actual
    assert single_sample_seconds < 5.0


def test_criterion_02_domain_vertices():
    """13 closed-form vertices exact at t = 1/2 and t = -1/2; the boundary
    vertex is [2 : sqrt2 : sqrt2 : 0 : 0]."""
    ok = True
    forms_map = catalog.domain_vertex_forms()
    for token in ("1/2", "-1/2"):
        t = TimeParam.parse(token)
        q = catalog.fundamental_domain_system(t)
        verts = enumerate_vertices(q)
        ok = ok and len(verts) == 13
        byinc = {v.incidence: v for v in verts}
        for key, entries in forms_map.items():
            v = byinc.get(frozenset(key))
            expected = tuple(branch_eval(e, t) for e in entries)
            ok = ok and v is not None and v.affine() == expected
        boundary = [v for v in verts if v.kind == "ideal"]
        ok = ok and len(boundary) == 1 \
            and boundary[0].point == ProjPoint([2, SQRT2, SQRT2, 0, 0])
    _report(2, ok, "13 fundamental-domain vertices match closed forms exactly")
    assert ok


def test_criterion_03_constant_combinatorics(cache):
    """Identical lattices at all samples incl. t = 0; simple; 22 facets;
    every edge joins two vertices."""
    result = check_combinatorics(ACCEPTANCE_SAMPLES, cache=cache)
    _report(3, result.passed, "constant combinatorics, 22 facets, simplicity, "
                              "bounded edges")
    assert result.passed, result.actual


def test_criterion_04_angle_ledger(cache):
    """12 non-right ridges with exact angle identities (33 samples/branch);
    right angle exactly at 1/sqrt3; all other ridges orthogonal identically."""
    result = check_angles(ACCEPTANCE_SAMPLES, cache=cache)
    _report(4, result.passed, "angle ledger: cos/cosh closed forms as exact "
                              "identities, orthogonality elsewhere")
    assert result.passed, result.actual


def test_criterion_05_causal_types(cache):
    """t < 0: 8 spacelike + 14 timelike; t = 0 rescaled: 8 spacelike + 14
    degenerate."""
    result = check_causal_types(ACCEPTANCE_SAMPLES, cache=cache)
    _report(5, result.passed, "causal type table across the transition")
    assert result.passed, result.actual


def test_criterion_06_c1_transition():
    """All 22 families C^1 with the closed-form limits (sign (-1)^(i+1)),
    at least one order-2 mismatch, all limits in the half-pipe group."""
    result = check_reflection_transition()
    _report(6, result.passed, "C^1 (not C^2) reflection transition with "
                              "closed-form half-pipe limits")
    assert result.passed, result.actual


def test_criterion_07_meridian_holonomy(cache):
    """trace(r_p1 r_p3) = 29/25 at t = 1/2 and 205/9 at t = -1/2 with fixed
    dimension 3; squared HP magnitude 32; edge group (Z/2Z)^3."""
    walls_pos = catalog.table("walls", TimeParam.parse("1/2"))
    form_pos = ParamForm(4, TimeParam(1))
    m = linalg.mat_mul(reflection(walls_pos["p1"], form_pos).matrix,
                       reflection(walls_pos["p3"], form_pos).matrix)
    ana = rotation_or_boost_analyze(m, form_pos)
    ok = ana.fixed_dim == 3 and ana.trace == FieldScalar(Fraction(29, 25))

    walls_neg = catalog.table("walls", TimeParam.parse("-1/2"))
    form_neg = ParamForm(4, TimeParam(-1))
    m2 = linalg.mat_mul(reflection(walls_neg["p1"], form_neg).matrix,
                        reflection(walls_neg["p3"], form_neg).matrix)
    ana2 = rotation_or_boost_analyze(m2, form_neg)
    ok = ok and ana2.fixed_dim == 3 and ana2.trace == FieldScalar(Fraction(205, 9))

    result = check_meridian_holonomy(ACCEPTANCE_SAMPLES, cache=cache)
    ok = ok and result.passed
    _report(7, ok, "meridian traces 29/25 and 205/9, HP magnitude^2 = 32, "
                   "edge group of order 8")
    assert ok, result.actual


def test_criterion_08_transition_consistency():
    """1 + cos = 4t^2/(1+t^2), cosh - 1 = 4t^2/(1-t^2) exactly, and the
    rescaled ridge pairs have squared half-pipe angle 8."""
    t2 = BranchFunc.t() * BranchFunc.t()
    one = BranchFunc.const(1)
    cos_bf = (3 * t2 - one) / (one + t2)
    cosh_bf = (3 * t2 + one) / (one - t2)
    ok = certify_identity(one + cos_bf, 4 * t2 / (one + t2))
    ok = ok and certify_identity(cosh_bf - one, 4 * t2 / (one - t2))
    rescaled = catalog.table("walls-rescaled", TimeParam(0))
    from transitpoly.verify import RIDGE_PAIRS
    for la, lb in RIDGE_PAIRS:
        ok = ok and hp_angle_sq(rescaled[la], rescaled[lb]) == FieldScalar(8)
    _report(8, ok, "transition consistency identities and psi^2 = 8")
    assert ok


def test_criterion_09_cuboctahedron_slice(cache):
    """Slice constant across samples: 12 ideal vertices, 6+8 facets, right
    angles."""
    result = check_cuboctahedron(ACCEPTANCE_SAMPLES, cache=cache)
    _report(9, result.passed, "constant ideal right-angled slice (12 vertices, "
                              "6 squares + 8 triangles)")
    assert result.passed, result.actual


def test_criterion_10_links(cache):
    """Vertex census 12/24/8/2 with cuboid (8, 12, 6) and tetrahedron links."""
    result = check_links(ACCEPTANCE_SAMPLES, cache=cache)
    _report(10, result.passed, "link census: cuboids at ideal vertices, "
                               "tetrahedra at finite vertices")
    assert result.passed, result.actual


def test_criterion_11_octahedron_family(cache):
    """3-dimensional warm-up: constant combinatorics, same angle formula on
    the deforming edges, facet-lattice isomorphism, constant quadrilateral
    slice."""
    result = check_octahedron_family(ACCEPTANCE_SAMPLES, cache=cache)
    _report(11, result.passed, "deforming ideal octahedron family")
    assert result.passed, result.actual


def test_criterion_12_cell24():
    """t = 1 endpoint: f-vector (24, 96, 96, 24), all ideal vertices, all
    right ridges, valid 3-colouring disjointness."""
    result = check_cell24()
    _report(12, result.passed, "ideal right-angled 24-facet endpoint cell")
    assert result.passed, result.actual


def test_criterion_13_cusp_geometry():
    """Exact pullback Gram matrices for both horosphere parameterisations
    and the toric-cusp commutation witness."""
    result = check_cusps(ACCEPTANCE_SAMPLES)
    _report(13, result.passed, "cusp geometry: exact pullbacks and commuting "
                               "toric actions")
    assert result.passed, result.actual
