"""Named certification checks with machine-readable certificates.

Each check reproduces one family of claims about the deforming polytope and
returns a CheckResult whose verdict is reached purely in exact arithmetic.
Failures carry a minimal counterexample payload.  A suite run is a
deterministic list of results; the certificate is its JSON form.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Callable, Sequence

from . import catalog, linalg
from .branchfunc import (BranchFunc, Poly, RationalFunc, branch_eval,
                         branch_limit_at_zero, certify_identity)
from .errors import OutOfIntervalError, UnknownCheckError
from .forms import (HyperplaneType, ParamForm, angle_between,
                    classify_hyperplane, hp_angle_sq)
from .isometry import (conj_rescaled, family_limit, is_hp_element,
                       minkowski_null_rotation, phi_minkowski, reflection,
                       reflection_in_mirror_covector, reflection_matrix_minkowski,
                       rotation_or_boost_analyze, toric_cusp_commutation)
from .labels import LETTER_LABELS, WALL_LABELS, sort_labels
from .numfield import FieldScalar, ONE, TimeParam, in_core_interval
from .polytope import (FaceLattice, HalfSpaceSystem, build_face_lattice,
                       bounded_edges_check, enumerate_vertices, group_elements,
                       lattices_equal, lattices_isomorphic, link_at_vertex)
from .projective import Covector, ProjMap
from .serialize import scalar_json

DEFAULT_SAMPLE_TOKENS = ("1/5", "-1/5", "1/3", "-1/3", "2/5", "-2/5",
                         "1/2", "-1/2", "1/sqrt3", "0")

# parameter used when a check needs one representative of the constant
# combinatorics regardless of the requested sample set
_REFERENCE_TOKEN = "1/3"

RIDGE_PAIRS = tuple(
    (f"p{i}", f"p{j}")
    for i, j in combinations(range(8), 2)
    if i % 2 == j % 2
)


@dataclass
class CheckResult:
    """One certified claim: parameters, verdict, and evidence payloads."""

    name: str
    params: dict[str, Any]
    status: str                  # "pass" | "fail"
    expected: Any
    actual: Any
    paper_ref: str
    duration_ms: int = 0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "params": self.params,
            "status": self.status,
            "expected": self.expected,
            "actual": self.actual,
            "paper_ref": self.paper_ref,
            "duration_ms": self.duration_ms,
        }


class SystemCache:
    """Memoised enumerations shared by the checks of one suite run."""

    def __init__(self) -> None:
        self._data: dict[tuple, tuple] = {}

    def main(self, token: str, extended: bool = False):
        key = ("main", token, extended)
        if key not in self._data:
            t = TimeParam.parse(token)
            sysm = catalog.main_system(t, rescaled=True, extended=extended)
            verts = enumerate_vertices(sysm)
            lat = build_face_lattice(sysm, verts)
            self._data[key] = (sysm, verts, lat)
        return self._data[key]

    def octahedron(self, token: str):
        key = ("oct", token)
        if key not in self._data:
            t = TimeParam.parse(token)
            sysm = catalog.octahedron_system(t, rescaled=True)
            verts = enumerate_vertices(sysm)
            lat = build_face_lattice(sysm, verts)
            self._data[key] = (sysm, verts, lat)
        return self._data[key]


def _result(name: str, params: dict, failures: list, expected, actual,
            ref: str, started: float) -> CheckResult:
    status = "pass" if not failures else "fail"
    payload = actual if not failures else {"summary": actual, "counterexamples": failures}
    return CheckResult(name, params, status, expected, payload, ref,
                       int((time.perf_counter() - started) * 1000))


def _census(verts) -> dict[str, int]:
    return {
        "total": len(verts),
        "ideal": sum(1 for v in verts if v.kind == "ideal"),
        "finite": sum(1 for v in verts if v.kind == "finite"),
        "exterior": sum(1 for v in verts if v.kind == "exterior"),
    }


# -- individual checks --------------------------------------------------------

def check_vertex_census(samples: Sequence[str] | None = None,
                        cache: SystemCache | None = None,
                        extended: bool = False,
                        drop_labels: Sequence[str] = (),
                        override: dict[str, Covector] | None = None) -> CheckResult:
    """46 vertices (12 ideal + 34 finite) at every sample; fundamental-domain
    vertices match their closed forms exactly, with the single boundary
    vertex at [2 : sqrt2 : sqrt2 : 0 : 0]."""
    started = time.perf_counter()
    samples = list(samples or DEFAULT_SAMPLE_TOKENS)
    cache = cache or SystemCache()
    failures: list = []
    actual: dict[str, Any] = {}
    expected = {"census": {"total": 46, "ideal": 12, "finite": 34, "exterior": 0},
                "domain_vertices": 13, "boundary_vertex": "[2 : sqrt2 : sqrt2 : 0 : 0]"}
    forms_map = catalog.domain_vertex_forms()
    for token in samples:
        t = TimeParam.parse(token)
        try:
            if drop_labels or override:
                sysm = catalog.main_system(t, rescaled=True, drop=drop_labels,
                                           override=override, extended=extended)
                verts = enumerate_vertices(sysm)
            else:
                _, verts, _ = cache.main(token, extended)
        except OutOfIntervalError as exc:
            failures.append({"t": token, "error": "OutOfIntervalError",
                             "message": str(exc)})
            continue
        cen = _census(verts)
        actual[token] = cen
        if (cen["total"], cen["ideal"], cen["finite"], cen["exterior"]) != (46, 12, 34, 0):
            failures.append({"t": token, "census": cen})
            continue
        # fundamental domain: closed forms and the unique boundary point
        q = catalog.fundamental_domain_system(t, extended=extended)
        qverts = enumerate_vertices(q)
        if len(qverts) != 13:
            failures.append({"t": token, "domain_vertices": len(qverts)})
            continue
        ideal_q = [v for v in qverts if v.kind == "ideal"]
        if len(ideal_q) != 1 or ideal_q[0].point != catalog.IDEAL_DOMAIN_VERTEX:
            failures.append({"t": token, "boundary_vertex":
                             repr(ideal_q[0].point) if ideal_q else None})
            continue
        byinc = {v.incidence: v for v in qverts}
        for key, entries in forms_map.items():
            v = byinc.get(frozenset(key))
            expected_coords = tuple(branch_eval(e, t) for e in entries)
            if v is None or v.affine() != expected_coords:
                failures.append({"t": token, "vertex": sort_labels(key),
                                 "closed_form_mismatch": True})
    return _result(
        "vertex_census", {"t_samples": samples, "drop_labels": list(drop_labels)},
        failures, expected, actual,
        "The deforming polytope has 46 vertices, 12 on the boundary at "
        "infinity and 34 interior, at every admissible parameter including "
        "the rescaled limit; the fundamental domain has 13, with closed-form "
        "coordinates and a single boundary vertex.", started)


def check_combinatorics(samples: Sequence[str] | None = None,
                        cache: SystemCache | None = None,
                        extended: bool = False) -> CheckResult:
    """Face lattices of the rescaled system are identical across the samples;
    the polytope is simple away from infinity, has exactly 22 facets, and
    every edge joins two vertices."""
    started = time.perf_counter()
    samples = list(samples or DEFAULT_SAMPLE_TOKENS)
    cache = cache or SystemCache()
    failures: list = []
    actual: dict[str, Any] = {}
    base_lat: FaceLattice | None = None
    base_token = None
    for token in samples:
        try:
            _, verts, lat = cache.main(token, extended)
        except OutOfIntervalError as exc:
            failures.append({"t": token, "error": "OutOfIntervalError",
                             "message": str(exc)})
            continue
        actual[token] = {"f_vector": list(lat.f_vector())}
        if base_lat is None:
            base_lat, base_token = lat, token
        elif not lattices_equal(base_lat, lat):
            failures.append({"t": token, "lattice_differs_from": base_token})
        if len(lat.facets) != 22:
            failures.append({"t": token, "facets": len(lat.facets)})
        for v in verts:
            if v.kind == "finite" and len(v.incidence) != 4:
                failures.append({"t": token, "non_simple_vertex": sort_labels(v.incidence)})
                break
        if not bounded_edges_check(lat):
            failures.append({"t": token, "bounded_edges": False})
    return _result(
        "combinatorics", {"t_samples": samples}, failures,
        {"facets": 22, "constant_lattice": True, "simple": True,
         "edges_join_two_vertices": True},
        actual,
        "The combinatorics of the rescaled polytope is constant on the "
        "deformation interval, with 22 facets, simple finite vertices, and "
        "every edge bounded by two vertices (finite volume).", started)


def _pair_branch_form(fam_a, fam_b) -> BranchFunc:
    """b(alpha(t), beta(t)) branch-wise: Riemannian bilinear form for t > 0,
    Lorentzian for t < 0 (ambient, unrescaled coordinates)."""
    out = {}
    for branch, last_sign in (("pos", 1), ("neg", -1)):
        a = [getattr(x, branch) for x in fam_a]
        b = [getattr(x, branch) for x in fam_b]
        acc = -(a[0] * b[0])
        for i in (1, 2, 3):
            acc = acc + a[i] * b[i]
        acc = acc + a[4] * b[4] * last_sign
        out[branch] = acc
    return BranchFunc(out["pos"], out["neg"])


def _bf_from_polys(pos_coeffs, neg_coeffs) -> BranchFunc:
    return BranchFunc(RationalFunc(Poly(pos_coeffs)), RationalFunc(Poly(neg_coeffs)))


def check_angles(samples: Sequence[str] | None = None,
                 cache: SystemCache | None = None,
                 extended: bool = False) -> CheckResult:
    """Exactly 12 non-right ridges (the even/odd wall pairs); their angle
    obeys cos = (3t^2-1)/(1+t^2) for t > 0 and cosh = (3t^2+1)/(1-t^2) for
    t < 0 as exact rational identities; all other ridge pairs are orthogonal
    identically in t; the angle is right exactly at t = 1/sqrt3; the
    half-pipe limit angle squared is 8; the transition-consistency
    identities hold."""
    started = time.perf_counter()
    samples = list(samples or DEFAULT_SAMPLE_TOKENS)
    cache = cache or SystemCache()
    failures: list = []
    fams = catalog.wall_families()
    zero_bf = BranchFunc.const(0)

    # ridge list from the lattice at a reference parameter (the lattice is
    # parameter-independent; certified separately by the combinatorics check)
    _, _, lat = cache.main(_REFERENCE_TOKEN)
    ridge_pairs = set()
    for ridge in lat.ridges:
        if len(ridge.labels) != 2:
            failures.append({"ridge_labels": sort_labels(ridge.labels),
                             "error": "ridge not cut by exactly two walls"})
            continue
        ridge_pairs.add(tuple(sort_labels(ridge.labels)))
    special = {tuple(sort_labels(p)) for p in RIDGE_PAIRS}
    actual: dict[str, Any] = {"ridges": len(ridge_pairs),
                              "non_right_ridges": sorted(special)}
    if not special <= ridge_pairs:
        failures.append({"missing_ridges": sorted(special - ridge_pairs)})

    # non-special ridge pairs: orthogonal identically on both branches
    for pair in sorted(ridge_pairs - special):
        b_bf = _pair_branch_form(fams[pair[0]], fams[pair[1]])
        if not certify_identity(b_bf, zero_bf):
            failures.append({"pair": list(pair), "error": "not orthogonal identically"})

    # the twelve deforming ridges
    b_expected = _bf_from_polys([1, 0, -3], [-1, 0, -3])        # 1-3t^2 / -(1+3t^2)
    q_expected = _bf_from_polys([1, 0, 1], [-1, 0, 1])          # 1+t^2 / t^2-1
    for (la, lb) in sorted(special):
        b_bf = _pair_branch_form(fams[la], fams[lb])
        qa_bf = _pair_branch_form(fams[la], fams[la])
        qb_bf = _pair_branch_form(fams[lb], fams[lb])
        if not certify_identity(b_bf, b_expected):
            failures.append({"pair": [la, lb], "error": "b(t) identity fails"})
        if not (certify_identity(qa_bf, q_expected)
                and certify_identity(qb_bf, q_expected)):
            failures.append({"pair": [la, lb], "error": "q(t) identity fails"})

    # closed angle formulas as honest rational functions of t:
    # cos(theta_t) = (3t^2-1)/(1+t^2) on t > 0, cosh(phi_t) = (3t^2+1)/(1-t^2)
    # on t < 0; connected to the raw pair data certified above.
    t2 = BranchFunc.t() * BranchFunc.t()
    one = BranchFunc.const(1)
    cos_bf = (3 * t2 - one) / (one + t2)
    cosh_bf = (3 * t2 + one) / (one - t2)
    if not certify_identity(BranchFunc(-(b_expected.pos), -(b_expected.pos)),
                            cos_bf * BranchFunc(q_expected.pos, q_expected.pos)):
        failures.append({"error": "cos formula does not match the pair data"})
    if not certify_identity(BranchFunc(-(b_expected.neg), -(b_expected.neg)),
                            cosh_bf * BranchFunc(-(q_expected.neg), -(q_expected.neg))):
        failures.append({"error": "cosh formula does not match the pair data"})
    if not certify_identity(one + cos_bf, 4 * t2 / (one + t2)):
        failures.append({"error": "transition identity 1+cos fails"})
    if not certify_identity(cosh_bf - one, 4 * t2 / (one - t2)):
        failures.append({"error": "transition identity cosh-1 fails"})
    # infinitesimal angle: both 2(1+cos)/t^2 and 2(cosh-1)/t^2 tend to 8
    for expr in ((2 * (one + cos_bf)) / t2, (2 * (cosh_bf - one)) / t2):
        lims = branch_limit_at_zero(expr)
        if lims != (FieldScalar(8), FieldScalar(8)):
            failures.append({"error": "infinitesimal angle limit is not 8"})

    # right angle exactly at t = 1/sqrt3
    t_right = TimeParam.parse("1/sqrt3")
    if not branch_eval(cos_bf, t_right).is_zero():
        failures.append({"error": "cosine does not vanish at 1/sqrt3"})

    # spot checks at the samples through the generic angle machinery
    for token in samples:
        t = TimeParam.parse(token)
        if not extended and not in_core_interval(t):
            failures.append({"t": token, "error": "OutOfIntervalError"})
            continue
        if t.branch == "zero":
            rescaled = catalog.table("walls-rescaled", t)
            for (la, lb) in sorted(special):
                psi2 = hp_angle_sq(rescaled[la], rescaled[lb])
                if psi2 != FieldScalar(8):
                    failures.append({"t": token, "pair": [la, lb],
                                     "psi_sq": scalar_json(psi2)})
            continue
        walls = catalog.table("walls", t, extended=extended)
        form = ParamForm(4, TimeParam(1 if t.branch == "positive" else -1))
        cos_t = branch_eval(cos_bf, t)
        for (la, lb) in sorted(special):
            data = angle_between(form, walls[la], walls[lb])
            value = data.cosine
            if t.branch == "positive":
                okv = value is not None and value == cos_t
            else:
                okv = value is not None and value == abs(branch_eval(cosh_bf, t))
            if not data.transverse or not okv:
                failures.append({"t": token, "pair": [la, lb],
                                 "cosine": scalar_json(value) if value else None})
    actual["cos_at_samples"] = {
        token: scalar_json(branch_eval(cos_bf if TimeParam.parse(token).branch == "positive"
                                       else cosh_bf, TimeParam.parse(token)))
        for token in samples if TimeParam.parse(token).branch != "zero"
    }
    return _result(
        "angles", {"t_samples": samples}, failures,
        {"non_right_ridges": 12, "cos": "(3t^2-1)/(1+t^2)",
         "cosh": "(3t^2+1)/(1-t^2)", "right_angle_at": "1/sqrt3",
         "hp_angle_sq": 8},
        actual,
        "All dihedral angles are right except on the 12 compact ridges cut "
        "by wall pairs of equal parity, whose angle follows the closed "
        "formulas, is right exactly at the endpoint, and has infinitesimal "
        "limit 8 of the squared half-pipe angle.", started)


def check_causal_types(samples: Sequence[str] | None = None,
                       cache: SystemCache | None = None,
                       extended: bool = False) -> CheckResult:
    """For t < 0: the 8 p-walls are spacelike and the other 14 timelike; at
    the rescaled limit the 14 become degenerate; for t > 0 all 22 walls meet
    the Riemannian domain."""
    started = time.perf_counter()
    samples = list(samples or DEFAULT_SAMPLE_TOKENS)
    failures: list = []
    actual: dict[str, Any] = {}
    for token in samples:
        t = TimeParam.parse(token)
        counts: dict[str, int] = {}
        try:
            if t.branch == "zero":
                covs = catalog.table("walls-rescaled", t, extended=extended)
                form = ParamForm(4, t)
            else:
                covs = catalog.table("walls", t, extended=extended)
                form = ParamForm(4, TimeParam(1 if t.branch == "positive" else -1))
        except OutOfIntervalError as exc:
            failures.append({"t": token, "error": "OutOfIntervalError",
                             "message": str(exc)})
            continue
        for lab in WALL_LABELS:
            kind = classify_hyperplane(form, covs[lab])
            counts[kind.value] = counts.get(kind.value, 0) + 1
            expected_kind = _expected_causal_kind(lab, t)
            if kind is not expected_kind:
                failures.append({"t": token, "label": lab, "kind": kind.value,
                                 "expected": expected_kind.value})
        actual[token] = counts
    return _result(
        "causal_types", {"t_samples": samples}, failures,
        {"negative_t": {"spacelike": 8, "timelike": 14},
         "zero_t": {"spacelike": 8, "degenerate": 14},
         "positive_t": {"spacelike": 22}},
        actual,
        "In the Lorentzian regime the collapsing walls are spacelike and the "
        "remaining fourteen timelike; their rescaled limits are degenerate; "
        "in the Riemannian regime every wall meets the domain.", started)


def _expected_causal_kind(lab: str, t: TimeParam) -> HyperplaneType:
    if t.branch == "positive":
        return HyperplaneType.SPACELIKE
    if t.branch == "negative":
        return (HyperplaneType.SPACELIKE if lab.startswith("p")
                else HyperplaneType.TIMELIKE)
    return (HyperplaneType.SPACELIKE if lab.startswith("p")
            else HyperplaneType.DEGENERATE)


def check_reflection_transition(sign_exponent_offset: int = 1) -> CheckResult:
    """All 22 rescaled reflection families extend C^1 through t = 0 with the
    expected closed-form limits (translation sign (-1)^(i+1)); every limit
    lies in the half-pipe group; the extension is not C^2."""
    started = time.perf_counter()
    failures: list = []
    fams = catalog.wall_families()
    j4 = linalg.diag([-1, 1, 1, 1])
    c2_mismatch = 0
    order2_witness = None
    for lab in sort_labels(WALL_LABELS):
        fam = conj_rescaled(fams[lab], lab)
        l0, r0 = family_limit(fam, 0)
        l1, r1 = family_limit(fam, 1)
        if l0 != r0:
            failures.append({"family": lab, "error": "order-0 limits differ"})
            continue
        if l1 != r1:
            failures.append({"family": lab, "error": "order-1 limits differ"})
            continue
        l2, r2 = family_limit(fam, 2)
        if l2 != r2:
            c2_mismatch += 1
            if order2_witness is None:
                entry = next((i, j) for i in range(5) for j in range(5)
                             if l2[i][j] != r2[i][j])
                order2_witness = {"family": lab, "entry": list(entry)}
        if not is_hp_element(l0):
            failures.append({"family": lab, "error": "limit not a half-pipe element"})
            continue
        expected = _expected_limit(lab, j4, sign_exponent_offset)
        if l0 != expected:
            entry = next((i, j) for i in range(5) for j in range(5)
                         if l0[i][j] != expected[i][j])
            failures.append({"family": lab, "error": "limit differs from closed form",
                             "entry": list(entry),
                             "limit_entry": scalar_json(l0[entry[0]][entry[1]]),
                             "closed_form_entry": scalar_json(expected[entry[0]][entry[1]])})
    if c2_mismatch == 0:
        failures.append({"error": "no order-2 mismatch found (path would be C^2)"})
    return _result(
        "reflection_transition", {"sign_exponent_offset": sign_exponent_offset},
        failures,
        {"families": 22, "c1": True, "c2": False,
         "translation_sign": "(-1)^(i+1)"},
        {"order2_mismatches": c2_mismatch, "order2_witness": order2_witness},
        "Every rescaled wall reflection extends C^1 (but not C^2) through "
        "the transition time, with limits given by the block closed forms "
        "whose translation part carries the parity sign.", started)


def _expected_limit(lab: str, j4, sign_exponent_offset: int):
    if lab.startswith("p") or lab.startswith("m"):
        i = int(lab[1:])
        v = catalog.v_vector(i)
        jv = linalg.mat_vec(j4, v)
        sign = (-1) ** (i + sign_exponent_offset)
        trans = tuple(FieldScalar(2 * sign) * x for x in jv)
        if lab.startswith("m"):
            return phi_minkowski(reflection_in_mirror_covector(v), trans).matrix
        return phi_minkowski(linalg.identity(4), trans, negated=True).matrix
    vec = catalog.LETTER_VECTORS[lab][:4]
    return phi_minkowski(reflection_in_mirror_covector(vec), (0, 0, 0, 0)).matrix


def check_meridian_holonomy(samples: Sequence[str] | None = None,
                            cache: SystemCache | None = None,
                            extended: bool = False) -> CheckResult:
    """Products of the two reflections of a deforming ridge fix a
    3-dimensional subspace and have trace 3 + 2cos(2 theta_t) (t > 0) resp.
    3 + 2cosh(2 phi_t) (t < 0); the half-pipe meridians are infinitesimal
    rotations of squared magnitude 32; the edge group generated by three
    pairwise-orthogonal wall reflections is elementary abelian of order 8."""
    started = time.perf_counter()
    samples = list(samples or DEFAULT_SAMPLE_TOKENS)
    failures: list = []
    actual: dict[str, Any] = {}
    fams = catalog.wall_families()
    # closed form of the trace: 3 + 2(2c^2 - 1) = 1 + 4c^2
    for token in samples:
        t = TimeParam.parse(token)
        if t.branch == "zero":
            entry: dict[str, Any] = {}
            for (la, lb) in RIDGE_PAIRS:
                m = linalg.mat_mul(
                    family_limit(conj_rescaled(fams[la], la), 0)[0],
                    family_limit(conj_rescaled(fams[lb], lb), 0)[0])
                ana = rotation_or_boost_analyze(m, ParamForm(4, t))
                if ana.magnitude_sq != FieldScalar(32):
                    failures.append({"t": token, "pair": [la, lb],
                                     "magnitude_sq": scalar_json(ana.magnitude_sq)})
            entry["magnitude_sq"] = 32
            limits = {lab: family_limit(conj_rescaled(fams[lab], lab), 0)[0]
                      for lab in ("p0", "m1", "A")}
            group_ok, order = _elementary_abelian_8(list(limits.values()))
            entry["edge_group_order"] = order
            if not group_ok:
                failures.append({"t": token, "edge_group_order": order})
            actual[token] = entry
            continue
        try:
            walls = catalog.table("walls", t, extended=extended)
        except OutOfIntervalError as exc:
            failures.append({"t": token, "error": "OutOfIntervalError",
                             "message": str(exc)})
            continue
        form = ParamForm(4, TimeParam(1 if t.branch == "positive" else -1))
        c = _deforming_cos(t)
        expected_trace = ONE + FieldScalar(4) * c * c
        entry = {"trace": scalar_json(expected_trace)}
        for (la, lb) in RIDGE_PAIRS:
            m = linalg.mat_mul(reflection(walls[la], form).matrix,
                               reflection(walls[lb], form).matrix)
            ana = rotation_or_boost_analyze(m, form)
            if ana.fixed_dim != 3 or ana.trace != expected_trace:
                failures.append({"t": token, "pair": [la, lb],
                                 "fixed_dim": ana.fixed_dim,
                                 "trace": scalar_json(ana.trace) if ana.trace else None})
        gens = [reflection(walls[lab], form).matrix for lab in ("p0", "m1", "A")]
        group_ok, order = _elementary_abelian_8(gens)
        entry["edge_group_order"] = order
        if not group_ok:
            failures.append({"t": token, "edge_group_order": order})
        actual[token] = entry
    return _result(
        "meridian_holonomy", {"t_samples": samples}, failures,
        {"fixed_dim": 3, "trace": "1 + 4 cos^2 resp. 1 + 4 cosh^2",
         "hp_magnitude_sq": 32, "edge_group": "(Z/2Z)^3"},
        actual,
        "Meridian holonomies around the deforming ridges are rotations or "
        "boosts of twice the dihedral angle; their rescaled limits are "
        "infinitesimal rotations of squared magnitude 32; edge stabilisers "
        "are generated by three commuting reflections.", started)


def _deforming_cos(t: TimeParam) -> FieldScalar:
    tv = t.value
    t2 = tv * tv
    if t.branch == "positive":
        return (FieldScalar(3) * t2 - ONE) / (ONE + t2)
    return (FieldScalar(3) * t2 + ONE) / (ONE - t2)


def _elementary_abelian_8(gen_matrices) -> tuple[bool, int]:
    gens = [ProjMap(m) for m in gen_matrices]
    grp = group_elements(gens, 4)
    if len(grp) != 8:
        return False, len(grp)
    ident = ProjMap.identity(4)
    for g in grp:
        if g.compose(g) != ident:
            return False, len(grp)
    for a in gens:
        for b in gens:
            if a.compose(b) != b.compose(a):
                return False, len(grp)
    return True, 8


def check_cuboctahedron(samples: Sequence[str] | None = None,
                        cache: SystemCache | None = None,
                        extended: bool = False) -> CheckResult:
    """The slice of the polytope by the fixed hyperplane is the same ideal
    right-angled polyhedron at every sample: 12 ideal vertices, 6 square and
    8 triangular facets, right dihedral angles."""
    started = time.perf_counter()
    samples = list(samples or DEFAULT_SAMPLE_TOKENS)
    failures: list = []
    actual: dict[str, Any] = {}
    base = None
    base_token = None
    for token in samples:
        t = TimeParam.parse(token)
        try:
            sysm = catalog.slice_system(t, extended=extended)
        except OutOfIntervalError as exc:
            failures.append({"t": token, "error": "OutOfIntervalError",
                             "message": str(exc)})
            continue
        verts = enumerate_vertices(sysm)
        lat = build_face_lattice(sysm, verts)
        cen = _census(verts)
        facet_sizes = sorted(len(f.vertices) for f in lat.facets)
        actual[token] = {"census": cen, "f_vector": list(lat.f_vector())}
        if cen["total"] != 12 or cen["ideal"] != 12:
            failures.append({"t": token, "census": cen})
        if facet_sizes != [3] * 8 + [4] * 6:
            failures.append({"t": token, "facet_sizes": facet_sizes})
        for ridge in lat.faces_of_dim(1):
            labs = sort_labels(ridge.labels)
            if len(labs) != 2:
                failures.append({"t": token, "ridge": labs})
                continue
            data = angle_between(sysm.regime, sysm.covectors[labs[0]],
                                 sysm.covectors[labs[1]])
            if not data.right_angle:
                failures.append({"t": token, "ridge": labs, "b": scalar_json(data.b)})
        if base is None:
            base, base_token = lat, token
        elif not lattices_equal(base, lat):
            failures.append({"t": token, "differs_from": base_token})
    return _result(
        "cuboctahedron", {"t_samples": samples}, failures,
        {"ideal_vertices": 12, "facets": {"squares": 6, "triangles": 8},
         "right_angled": True, "constant": True},
        actual,
        "The slice by the fixed hyperplane is one and the same ideal "
        "right-angled polyhedron with 6 square and 8 triangular facets for "
        "every parameter value.", started)


def _reference_cube_lattice() -> FaceLattice:
    covs = {
        "x+": Covector([-1, 1, 0, 0]), "x-": Covector([-1, -1, 0, 0]),
        "y+": Covector([-1, 0, 1, 0]), "y-": Covector([-1, 0, -1, 0]),
        "z+": Covector([-1, 0, 0, 1]), "z-": Covector([-1, 0, 0, -1]),
    }
    sysm = HalfSpaceSystem(covs, ParamForm(3, TimeParam(1)), labels=tuple(covs))
    return build_face_lattice(sysm, enumerate_vertices(sysm))


def _reference_tetrahedron_lattice() -> FaceLattice:
    covs = {
        "w": Covector([-1, 1, 1, 1]),
        "x": Covector([0, -1, 0, 0]),
        "y": Covector([0, 0, -1, 0]),
        "z": Covector([0, 0, 0, -1]),
    }
    sysm = HalfSpaceSystem(covs, ParamForm(3, TimeParam(1)), labels=tuple(covs))
    return build_face_lattice(sysm, enumerate_vertices(sysm))


def check_links(samples: Sequence[str] | None = None,
                cache: SystemCache | None = None,
                extended: bool = False) -> CheckResult:
    """Vertices split 12/24/8/2 by incidence signature; ideal links are
    combinatorial cuboids (8, 12, 6) and finite links are tetrahedra."""
    started = time.perf_counter()
    samples = list(samples or DEFAULT_SAMPLE_TOKENS)
    cache = cache or SystemCache()
    failures: list = []
    actual: dict[str, Any] = {}
    cube = _reference_cube_lattice()
    tetra = _reference_tetrahedron_lattice()
    for token in samples:
        try:
            sysm, verts, _ = cache.main(token, extended)
        except OutOfIntervalError as exc:
            failures.append({"t": token, "error": "OutOfIntervalError",
                             "message": str(exc)})
            continue
        sig_counts: dict[tuple, int] = {}
        for v in verts:
            p = sum(1 for l in v.incidence if l.startswith("p"))
            m = sum(1 for l in v.incidence if l.startswith("m"))
            x = len(v.incidence) - p - m
            sig_counts[(p, m, x)] = sig_counts.get((p, m, x), 0) + 1
        actual[token] = {str(k): v for k, v in sorted(sig_counts.items())}
        if sig_counts != {(2, 2, 2): 12, (2, 1, 1): 24, (3, 1, 0): 8, (4, 0, 0): 2}:
            failures.append({"t": token, "signature_census": actual[token]})
            continue
        for v in verts:
            link = link_at_vertex(sysm, v)
            if v.kind == "ideal":
                if link.f_vector() != (8, 12, 6) or not lattices_isomorphic(link, cube):
                    failures.append({"t": token, "vertex": sort_labels(v.incidence),
                                     "link_f_vector": list(link.f_vector())})
            else:
                if link.f_vector() != (4, 6, 4) or not lattices_isomorphic(link, tetra):
                    failures.append({"t": token, "vertex": sort_labels(v.incidence),
                                     "link_f_vector": list(link.f_vector())})
    return _result(
        "links", {"t_samples": samples}, failures,
        {"signature_census": {"(2, 2, 2)": 12, "(2, 1, 1)": 24,
                              "(3, 1, 0)": 8, "(4, 0, 0)": 2},
         "ideal_link": [8, 12, 6], "finite_link": [4, 6, 4]},
        actual,
        "The 46 vertices fall into four incidence classes; the link of each "
        "ideal vertex is a combinatorial cuboid and the link of each finite "
        "vertex is a tetrahedron.", started)


def check_octahedron_family(samples: Sequence[str] | None = None,
                            cache: SystemCache | None = None,
                            extended: bool = False) -> CheckResult:
    """The 3-dimensional warm-up family: constant combinatorics (including
    the rescaled limit), deforming edges following the same angle formula,
    facet lattice isomorphic to a letter facet of the 4-polytope, and a
    constant ideal quadrilateral slice."""
    started = time.perf_counter()
    samples = list(samples or DEFAULT_SAMPLE_TOKENS)
    cache = cache or SystemCache()
    failures: list = []
    actual: dict[str, Any] = {}
    fams = catalog.octahedron_families()
    base = None
    base_token = None
    red_pairs = (("o1", "o5"), ("o3", "o7"))
    b_expected = _bf_from_polys([1, 0, -3], [-1, 0, -3])
    q_expected = _bf_from_polys([1, 0, 1], [-1, 0, 1])
    for (la, lb) in red_pairs:
        b_bf = _pair_branch_form_3d(fams[la], fams[lb])
        qa_bf = _pair_branch_form_3d(fams[la], fams[la])
        if not certify_identity(b_bf, b_expected) or not certify_identity(qa_bf, q_expected):
            failures.append({"pair": [la, lb], "error": "red-edge angle identity fails"})
    for token in samples:
        t = TimeParam.parse(token)
        try:
            _, verts, lat = cache.octahedron(token)
        except OutOfIntervalError as exc:
            failures.append({"t": token, "error": "OutOfIntervalError",
                             "message": str(exc)})
            continue
        cen = _census(verts)
        actual[token] = {"census": cen, "f_vector": list(lat.f_vector())}
        if (cen["total"], cen["ideal"], cen["finite"]) != (8, 4, 4):
            failures.append({"t": token, "census": cen})
        if base is None:
            base, base_token = lat, token
        elif not lattices_equal(base, lat):
            failures.append({"t": token, "differs_from": base_token})
        if not bounded_edges_check(lat):
            failures.append({"t": token, "bounded_edges": False})
        # slice: constant ideal quadrilateral
        qs = catalog.octahedron_slice_system(t)
        qverts = enumerate_vertices(qs)
        qlat = build_face_lattice(qs, qverts)
        if qlat.f_vector() != (4, 4) or any(v.kind != "ideal" for v in qverts):
            failures.append({"t": token, "slice_f_vector": list(qlat.f_vector())})
    # facet cross-check: the octahedron lattice is isomorphic to a letter facet
    if base is None:
        _, _, base = cache.octahedron(_REFERENCE_TOKEN)
    sys4, verts4, lat4 = cache.main(_REFERENCE_TOKEN)
    sub = _facet_sublattice(lat4, "A")
    if not lattices_isomorphic(sub, base):
        failures.append({"error": "letter facet lattice not isomorphic to the family"})
    return _result(
        "octahedron_family", {"t_samples": samples}, failures,
        {"census": {"total": 8, "ideal": 4, "finite": 4},
         "constant_lattice": True, "red_pairs": [["o1", "o5"], ["o3", "o7"]],
         "facet_isomorphic": True, "slice": "ideal quadrilateral"},
        actual,
        "The deforming ideal octahedron keeps its combinatorics on both "
        "sides of the transition, its two deforming edges follow the same "
        "angle formulas as the 4-dimensional ridges, it is isomorphic to a "
        "letter facet, and its central slice is a constant ideal "
        "quadrilateral.", started)


def _pair_branch_form_3d(fam_a, fam_b) -> BranchFunc:
    out = {}
    for branch, last_sign in (("pos", 1), ("neg", -1)):
        a = [getattr(x, branch) for x in fam_a]
        b = [getattr(x, branch) for x in fam_b]
        acc = -(a[0] * b[0]) + a[1] * b[1] + a[2] * b[2]
        acc = acc + a[3] * b[3] * last_sign
        out[branch] = acc
    return BranchFunc(out["pos"], out["neg"])


def _facet_sublattice(lat: FaceLattice, label: str) -> FaceLattice:
    """The lattice of faces below a facet, keyed by the facet's own facets.

    Faces below the facet are re-labeled by the ridges of the ambient
    polytope they lie in (the facets of the facet); walls meeting the facet
    only in deeper faces are dropped from the keys, matching the intrinsic
    combinatorics of the facet polytope.
    """
    below = [f for f in lat.faces if label in f.labels]
    facet_labels: set = set()
    for f in below:
        if f.dim == lat.dim - 2:
            facet_labels |= f.labels - {label}
    faces = []
    for f in below:
        faces.append(type(f)(f.dim, frozenset(f.labels & facet_labels), f.vertices))
    return FaceLattice(lat.dim - 1, tuple(faces), lat.vertex_records)


def check_cell24(cache: SystemCache | None = None) -> CheckResult:
    """At the endpoint t = 1, adding the two extra walls yields the ideal
    right-angled cell with f-vector (24, 96, 96, 24); its three octets of
    pairwise disjoint walls 3-colour the facets."""
    started = time.perf_counter()
    failures: list = []
    sysm = catalog.cell24_system()
    verts = enumerate_vertices(sysm)
    lat = build_face_lattice(sysm, verts)
    fv = lat.f_vector()
    actual: dict[str, Any] = {"f_vector": list(fv),
                              "census": _census(verts)}
    if fv != (24, 96, 96, 24):
        failures.append({"f_vector": list(fv)})
    if any(v.kind != "ideal" for v in verts):
        failures.append({"non_ideal_vertices": _census(verts)})
    form = sysm.regime
    for ridge in lat.ridges:
        labs = sort_labels(ridge.labels)
        if len(labs) != 2:
            failures.append({"ridge": labs})
            continue
        data = angle_between(form, sysm.covectors[labs[0]], sysm.covectors[labs[1]])
        if not data.right_angle:
            failures.append({"ridge": labs, "b": scalar_json(data.b)})
    octets = (tuple(f"p{i}" for i in range(8)),
              tuple(f"m{i}" for i in range(8)),
              LETTER_LABELS + ("G", "H"))
    for octet in octets:
        for la, lb in combinations(octet, 2):
            b = form.b_dual(sysm.covectors[la], sysm.covectors[lb])
            qa = form.q_dual(sysm.covectors[la])
            qb = form.q_dual(sysm.covectors[lb])
            if (b * b - qa * qb).sign() < 0:
                failures.append({"octet_pair": [la, lb], "error": "not disjoint"})
    return _result(
        "cell24", {"t": "1"}, failures,
        {"f_vector": [24, 96, 96, 24], "all_ideal": True,
         "all_ridges_right": True, "octets_disjoint": True},
        actual,
        "The endpoint polytope extended by the two opposite walls is the "
        "ideal right-angled 24-facet cell; walls in the same colour octet "
        "are pairwise disjoint inside the domain.", started)


def check_cusps(samples: Sequence[str] | None = None,
                cache: SystemCache | None = None,
                extended: bool = False) -> CheckResult:
    """Horosphere pullback metrics match their closed forms at rational
    points; the upper-half-space translation matrix preserves the form
    identically; the toric-cusp actions commute exactly when the linear part
    fixes the lightlike direction."""
    started = time.perf_counter()
    samples = list(samples or DEFAULT_SAMPLE_TOKENS)
    failures: list = []
    eta_points = [(0, 0, 0), (1, 2, 3),
                  (Fraction(1, 2), Fraction(-1, 3), Fraction(1, 4)),
                  (-1, 1, 2), (2, -2, 1)]
    zeta_points = [(2, 0, 0, 0), (1, 1, 1, 1),
                   (Fraction(1, 2), Fraction(1, 3), Fraction(-1, 4), 1),
                   (3, -1, 2, -2), (1, 0, 2, -1)]
    for token in samples:
        t = TimeParam.parse(token)
        u = t.t_abs_t
        eta = catalog.HorosphereEmbedding("eta", t)
        expected_eta = linalg.diag([ONE, ONE, u])
        for y in eta_points:
            if eta.pullback_metric_at(y) != expected_eta:
                failures.append({"t": token, "embedding": "eta", "y": [str(c) for c in y]})
        zeta = catalog.HorosphereEmbedding("zeta", t)
        for y in zeta_points:
            y1 = FieldScalar(Fraction(y[0]))
            inv = (y1 * y1).inverse()
            expected = linalg.diag([inv, inv, inv, u * inv])
            if zeta.pullback_metric_at(y) != expected:
                failures.append({"t": token, "embedding": "zeta", "y": [str(c) for c in y]})
        if not _halfspace_model_preserves_form(t):
            failures.append({"t": token, "error": "half-space translation matrix "
                                                  "does not preserve the form"})
    w = (1, 1, 0, 0)
    null_rot = minkowski_null_rotation(w, (0, 0, 1, 0), 1)
    if not toric_cusp_commutation(null_rot, w, 1):
        failures.append({"error": "lightlike-fixing pair does not commute"})
    non_fixing = reflection_matrix_minkowski((0, 1, 0, 0))
    if toric_cusp_commutation(non_fixing, w, 1):
        failures.append({"error": "non-fixing pair unexpectedly commutes"})
    return _result(
        "cusps", {"t_samples": samples}, failures,
        {"eta_gram": "diag(1, 1, t|t|)", "zeta_gram": "diag(1, 1, 1, t|t|)/y1^2",
         "toric_commutation": True},
        {"points_per_sample": {"eta": len(eta_points), "zeta": len(zeta_points)}},
        "Horospherical sections carry the flat metrics degenerating with "
        "t|t|; the upper-half-space model is exact; toric cusp actions "
        "commute precisely for lightlike-fixing linear parts.", started)


def _halfspace_model_preserves_form(t: TimeParam) -> bool:
    """T(y)^T J_t T(y) = J_t as an exact univariate rational identity."""
    y = RationalFunc(Poly([0, 1]))
    half = RationalFunc.const(Fraction(1, 2))
    inv_y = RationalFunc(Poly([1]), Poly([0, 1]))
    a = (y + inv_y) * half
    b = (y - inv_y) * half
    zero = RationalFunc.const(0)
    one = RationalFunc.const(1)
    rows = [[zero] * 5 for _ in range(5)]
    rows[0][0], rows[0][1] = a, b
    rows[1][0], rows[1][1] = b, a
    for i in range(2, 5):
        rows[i][i] = one
    jt = [RationalFunc.const(c) for c in (-1, 1, 1, 1)] + [RationalFunc.const(t.t_abs_t)]
    n = 5
    for i in range(n):
        for j in range(n):
            acc = zero
            for k in range(n):
                acc = acc + rows[k][i] * jt[k] * rows[k][j]
            target = jt[i] if i == j else zero
            if acc != target:
                return False
    return True


# -- suite runner --------------------------------------------------------------

CHECKS: dict[str, Callable[..., CheckResult]] = {
    "vertex_census": check_vertex_census,
    "combinatorics": check_combinatorics,
    "angles": check_angles,
    "causal_types": check_causal_types,
    "reflection_transition": check_reflection_transition,
    "meridian_holonomy": check_meridian_holonomy,
    "cuboctahedron": check_cuboctahedron,
    "links": check_links,
    "octahedron_family": check_octahedron_family,
    "cell24": check_cell24,
    "cusps": check_cusps,
}

SUITE_ORDER = tuple(CHECKS)

_SAMPLED_CHECKS = {"vertex_census", "combinatorics", "angles", "causal_types",
                   "meridian_holonomy", "cuboctahedron", "links",
                   "octahedron_family", "cusps"}


@dataclass
class RunConfig:
    """Configuration of a suite run (mirrors the CLI flags).

    output_dir and format are carried for the file-writing layer; the
    checks themselves only consume samples, names and the range flag.
    """

    t_samples: list[str] = field(default_factory=lambda: list(DEFAULT_SAMPLE_TOKENS))
    checks: list[str] = field(default_factory=lambda: list(SUITE_ORDER))
    output_dir: str | None = None
    format: str = "json"
    extended_range: bool = False


def _validate_samples(tokens: Sequence[str], extended: bool) -> tuple[list[str], list[CheckResult]]:
    good: list[str] = []
    problems: list[CheckResult] = []
    for token in tokens:
        started = time.perf_counter()
        try:
            t = TimeParam.parse(token)
            if t.value == FieldScalar(-1):
                raise OutOfIntervalError("t = -1 is outside the open interval")
            if not extended and not in_core_interval(t):
                raise OutOfIntervalError(
                    f"t = {token} outside the deformation interval (-1, 1/sqrt3]")
            good.append(token)
        except Exception as exc:
            problems.append(CheckResult(
                "sample_validation", {"t": token}, "fail",
                {"interval": "(-1, 1/sqrt3]"}, {"error": type(exc).__name__,
                                                "message": str(exc)},
                "Samples must lie in the deformation interval unless the "
                "extended range is requested.",
                int((time.perf_counter() - started) * 1000)))
    return good, problems


def run_suite(names: Sequence[str] | None = None,
              config: RunConfig | None = None) -> list[CheckResult]:
    """Run the named checks (deterministic order) and return their results.

    Unknown names raise UnknownCheckError.  Samples outside the allowed
    interval are recorded as failing sample_validation entries.
    """
    config = config or RunConfig()
    names = list(names) if names is not None else list(config.checks)
    for n in names:
        if n not in CHECKS:
            raise UnknownCheckError(f"unknown check {n!r}")
    ordered = [n for n in SUITE_ORDER if n in set(names)]
    samples, problems = _validate_samples(config.t_samples, config.extended_range)
    results: list[CheckResult] = list(problems)
    cache = SystemCache()
    for name in ordered:
        fn = CHECKS[name]
        if name in _SAMPLED_CHECKS:
            results.append(fn(samples, cache=cache,
                              extended=config.extended_range))
        else:
            results.append(fn())
    return results


def all_passed(results: Sequence[CheckResult]) -> bool:
    return all(r.passed for r in results)
