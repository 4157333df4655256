import pytest

from transitpoly import catalog, linalg
from transitpoly.errors import ChartViolationError, NotASymmetryError
from transitpoly.forms import ParamForm
from transitpoly.numfield import SQRT2, TimeParam
from transitpoly.polytope import (HalfSpaceSystem, build_face_lattice,
                                  bounded_edges_check, enumerate_vertices,
                                  group_elements, label_permutation, lattices_equal,
                                  lattices_isomorphic, link_at_vertex, symmetry_orbit)
from transitpoly.projective import Covector, ProjPoint, apply_point


def test_main_census(cache):
    _, verts, lat = cache.main("1/2")
    assert len(verts) == 46
    assert sum(1 for v in verts if v.kind == "ideal") == 12
    assert sum(1 for v in verts if v.kind == "finite") == 34
    assert lat.f_vector() == (46, 116, 92, 22)


def test_fundamental_domain_census(t_half):
    q = catalog.fundamental_domain_system(t_half)
    verts = enumerate_vertices(q)
    assert len(verts) == 13
    ideal = [v for v in verts if v.kind == "ideal"]
    assert len(ideal) == 1
    assert ideal[0].point == ProjPoint([2, SQRT2, SQRT2, 0, 0])


def test_octahedron_census(cache):
    _, verts, lat = cache.octahedron("1/2")
    assert sum(1 for v in verts if v.kind == "ideal") == 4
    assert sum(1 for v in verts if v.kind == "finite") == 4
    assert lat.f_vector() == (8, 14, 8)


def test_ideal_vertex_incidence_size(cache):
    _, verts, _ = cache.main("1/3")
    for v in verts:
        if v.kind == "ideal":
            assert len(v.incidence) == 6
        else:
            assert len(v.incidence) == 4


def test_lattice_equality_across_parameters(cache):
    _, _, lat_a = cache.main("1/3")
    _, _, lat_b = cache.main("-1/3")
    _, _, lat_c = cache.main("0")
    assert lattices_equal(lat_a, lat_b)
    assert lattices_equal(lat_a, lat_c)


def test_lattice_inequality_for_different_polytope(cache):
    _, _, lat = cache.main("1/2")
    c = catalog.cell24_system()
    cverts = enumerate_vertices(c)
    clat = build_face_lattice(c, cverts)
    assert not lattices_equal(lat, clat)


def test_ridge_count_special(cache):
    _, _, lat = cache.main("1/2")
    special = [r for r in lat.ridges
               if all(l.startswith("p") for l in r.labels)]
    assert len(special) == 12
    for r in special:
        i, j = sorted(int(l[1:]) for l in r.labels)
        assert i % 2 == j % 2


def test_single_halfspace_lattice(t_half):
    sysm = HalfSpaceSystem({"A": Covector([-1, SQRT2, 0, 0, 0])},
                           ParamForm(4, t_half))
    verts = enumerate_vertices(sysm)
    lat = build_face_lattice(sysm, verts)
    assert verts == []
    assert len(lat.facets) == 1
    assert not bounded_edges_check(lat)


def test_bounded_edges_on_main(cache):
    _, _, lat = cache.main("2/5")
    assert bounded_edges_check(lat)


def test_links(cache):
    sysm, verts, _ = cache.main("1/2")
    ideal = next(v for v in verts if v.kind == "ideal")
    assert link_at_vertex(sysm, ideal).f_vector() == (8, 12, 6)
    finite = next(v for v in verts if v.incidence == frozenset({"p1", "p3", "p5", "p7"}))
    assert link_at_vertex(sysm, finite).f_vector() == (4, 6, 4)


def test_link_of_simplex_vertex_is_simplex(t_half):
    covs = {
        "w": Covector([-1, 1, 1, 1, 1]),
        "x": Covector([0, -1, 0, 0, 0]),
        "y": Covector([0, 0, -1, 0, 0]),
        "z": Covector([0, 0, 0, -1, 0]),
        "u": Covector([0, 0, 0, 0, -1]),
    }
    sysm = HalfSpaceSystem(covs, ParamForm(4, t_half), labels=tuple(covs))
    verts = enumerate_vertices(sysm)
    assert len(verts) == 5
    for v in verts:
        link = link_at_vertex(sysm, v)
        assert link.f_vector() == (4, 6, 4)


def test_symmetry_permutations(cache):
    sysm, _, _ = cache.main("1/2")
    gens = catalog.symmetry_generators()
    perm = label_permutation(sysm, gens["rL"])
    assert perm["p0"] == "p0"
    assert perm["m1"] == "m5"
    perm_roll = label_permutation(sysm, gens["R"])
    assert perm_roll["p0"] == "p3"
    grp = group_elements([gens["rL"], gens["rM"], gens["rN"]], 4)
    assert len(grp) == 24


def test_symmetry_orbit_of_ideal_vertex(cache):
    sysm, verts, _ = cache.main("1/2")
    gens = catalog.symmetry_generators()
    ideal_points = {v.point for v in verts if v.kind == "ideal"}
    seed = ProjPoint([2, SQRT2, SQRT2, 0, 0])
    perms, orbit = symmetry_orbit(
        sysm, [gens["rL"], gens["rM"], gens["rN"]], [seed])
    assert len(perms) == 24
    assert orbit == ideal_points  # the 12 ideal vertices form a single orbit


def test_symmetry_rejects_non_symmetry(cache):
    sysm, _, _ = cache.main("1/2")
    from transitpoly.projective import ProjMap
    shear = ProjMap([[1, 1, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0],
                     [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
    with pytest.raises(NotASymmetryError):
        symmetry_orbit(sysm, [shear])


def test_orbit_oracle_equivalence(cache):
    """Fundamental-domain vertices orbit onto exactly the directly enumerated
    vertex set (two independent routes to the census)."""
    for token in ("1/3", "-2/5", "0"):
        sysm, verts, _ = cache.main(token)
        t = TimeParam.parse(token)
        q = catalog.fundamental_domain_system(t)
        qverts = enumerate_vertices(q)
        gens = catalog.symmetry_generators()
        grp = group_elements([gens["rL"], gens["rM"], gens["rN"]], 4)
        direct = {v.point for v in verts}
        orbit = set()
        for g in grp:
            for v in qverts:
                img = apply_point(g, v.point)
                sides = [sysm.covectors[l](img).sign() for l in sysm.labels]
                if any(s > 0 for s in sides):
                    continue
                inc = [l for l, s in zip(sysm.labels, sides) if s == 0]
                if len(inc) >= 4 and linalg.rank(
                        [sysm.covectors[l].coeffs for l in inc]) == 4:
                    orbit.add(img)
        assert orbit == direct


def test_chart_violation_detected(t_half):
    # A system admitting a vertex at infinity of the chart: a prism over a
    # triangle, unbounded in the x4 direction, capped by nothing.
    covs = {
        "a": Covector([-1, 1, 1, 0, 0]),
        "b": Covector([0, -1, 0, 0, 0]),
        "c": Covector([0, 0, -1, 0, 0]),
        "d": Covector([0, 0, 0, -1, 0]),
        "e": Covector([-1, 0, 0, 1, 0]),
    }
    sysm = HalfSpaceSystem(covs, ParamForm(4, t_half), labels=tuple(covs))
    with pytest.raises(ChartViolationError):
        enumerate_vertices(sysm)


def test_lattices_isomorphic_basic(cache):
    from transitpoly.verify import (_reference_cube_lattice,
                                    _reference_tetrahedron_lattice)
    cube = _reference_cube_lattice()
    tetra = _reference_tetrahedron_lattice()
    assert lattices_isomorphic(cube, cube)
    assert not lattices_isomorphic(cube, tetra)


def test_cell24_census():
    c = catalog.cell24_system()
    verts = enumerate_vertices(c)
    lat = build_face_lattice(c, verts)
    assert lat.f_vector() == (24, 96, 96, 24)
    assert all(v.kind == "ideal" for v in verts)
    assert all(len(v.incidence) == 6 for v in verts)


def test_slice_is_cuboctahedron(t_neg_half):
    sysm = catalog.slice_system(t_neg_half)
    verts = enumerate_vertices(sysm)
    lat = build_face_lattice(sysm, verts)
    assert lat.f_vector() == (12, 24, 14)
    assert all(v.kind == "ideal" for v in verts)
    sizes = sorted(len(f.vertices) for f in lat.facets)
    assert sizes == [3] * 8 + [4] * 6


def test_vertex_census_breaks_without_a_wall(t_half):
    sysm = catalog.main_system(t_half, drop=("A",))
    verts = enumerate_vertices(sysm)
    census = (len(verts),
              sum(1 for v in verts if v.kind == "ideal"),
              sum(1 for v in verts if v.kind == "finite"))
    assert census != (46, 12, 34)
