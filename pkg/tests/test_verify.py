import pytest

from transitpoly import catalog
from transitpoly.errors import UnknownCheckError
from transitpoly.numfield import TimeParam
from transitpoly.projective import Covector
from transitpoly.verify import (RunConfig, all_passed,
                                check_angles, check_causal_types, check_cell24,
                                check_combinatorics, check_cuboctahedron,
                                check_cusps, check_links, check_meridian_holonomy,
                                check_octahedron_family, check_reflection_transition,
                                check_vertex_census, run_suite)

FAST = ["1/3", "-1/3", "0"]


def test_vertex_census_passes(cache):
    assert check_vertex_census(FAST, cache=cache).passed


def test_vertex_census_fails_without_wall(cache):
    r = check_vertex_census(["1/3"], cache=cache, drop_labels=("A",))
    assert not r.passed
    assert r.actual["counterexamples"]


def test_vertex_census_fails_with_mutated_entry(cache):
    walls = catalog.table("walls-rescaled", TimeParam.parse("1/3"))
    bad = Covector(walls["p0"].coeffs[:-1] + (walls["p0"].coeffs[-1] * 3,))
    r = check_vertex_census(["1/3"], cache=cache, override={"p0": bad})
    assert not r.passed


def test_combinatorics_passes(cache):
    assert check_combinatorics(FAST, cache=cache).passed


def test_angles_passes(cache):
    assert check_angles(FAST, cache=cache).passed


def test_causal_types_passes(cache):
    assert check_causal_types(FAST, cache=cache).passed


def test_reflection_transition_passes():
    assert check_reflection_transition().passed


def test_reflection_transition_sign_mutation_fails():
    r = check_reflection_transition(sign_exponent_offset=0)
    assert not r.passed
    # counterexamples carry entry-level witnesses
    ce = r.actual["counterexamples"][0]
    assert "entry" in ce and "family" in ce


def test_meridian_holonomy_passes(cache):
    assert check_meridian_holonomy(FAST, cache=cache).passed


def test_cuboctahedron_passes(cache):
    assert check_cuboctahedron(FAST, cache=cache).passed


def test_links_passes(cache):
    assert check_links(["1/3", "0"], cache=cache).passed


def test_octahedron_family_passes(cache):
    assert check_octahedron_family(FAST, cache=cache).passed


def test_cell24_passes():
    assert check_cell24().passed


def test_cusps_passes():
    assert check_cusps(FAST).passed


def test_run_suite_unknown_check():
    with pytest.raises(UnknownCheckError):
        run_suite(["no_such_check"], RunConfig(t_samples=FAST))


def test_run_suite_empty_is_trivially_green():
    results = run_suite([], RunConfig(t_samples=FAST))
    assert results == []
    assert all_passed(results)


def test_run_suite_out_of_interval_sample():
    results = run_suite(["causal_types"], RunConfig(t_samples=["9/10", "1/3"]))
    names = [r.name for r in results]
    assert "sample_validation" in names
    bad = next(r for r in results if r.name == "sample_validation")
    assert not bad.passed
    assert bad.actual["error"] == "OutOfIntervalError"
    # the remaining valid sample still runs
    main = next(r for r in results if r.name == "causal_types")
    assert main.passed


def test_run_suite_extended_range_admits_endpoint():
    results = run_suite(["causal_types"],
                        RunConfig(t_samples=["1/3"], extended_range=True))
    assert all_passed(results)


def test_extended_endpoint_fails_honestly():
    """At t = 1 (allowed only under the extended range) the polytope is a
    different object: the checks record counterexamples, never crash."""
    results = run_suite(["vertex_census", "combinatorics"],
                        RunConfig(t_samples=["1/3", "1"], extended_range=True))
    census = next(r for r in results if r.name == "vertex_census")
    comb = next(r for r in results if r.name == "combinatorics")
    assert not census.passed
    assert any(c.get("t") == "1" for c in census.actual["counterexamples"])
    assert not comb.passed
    assert any(c.get("lattice_differs_from") for c in comb.actual["counterexamples"])


def test_certificates_deterministic(cache):
    a = check_causal_types(FAST).to_json()
    b = check_causal_types(FAST).to_json()
    a.pop("duration_ms")
    b.pop("duration_ms")
    assert a == b


def test_certificate_schema_fields(cache):
    r = check_causal_types(["1/3"])
    js = r.to_json()
    assert set(js) == {"name", "params", "status", "expected", "actual",
                       "paper_ref", "duration_ms"}
    assert js["status"] in ("pass", "fail")
    assert isinstance(js["duration_ms"], int)
