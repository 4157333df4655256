"""FastAPI service exposing the exact-arithmetic polytope computations.

All heavy lifting happens in the core package; handlers translate pydantic
requests into core calls and serialize exact results.  Domain errors map to
HTTP 400 with the exception class name.
"""

from __future__ import annotations

import logging
import os

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__, catalog
from .errors import TransitError
from .forms import ParamForm, angle_between, classify_hyperplane, hp_angle_sq
from .isometry import conj_rescaled, family_limit, reflection, rotation_or_boost_analyze
from .labels import WALL_LABELS, sort_labels
from .numfield import TimeParam
from .polytope import HalfSpaceSystem, build_face_lattice, enumerate_vertices
from .projective import Covector
from .schemas import (AnglesRequest, AnglesResponse, Cell24Response,
                      CheckResultModel, ClassifyRequest, ClassifyResponse,
                      DumpRequest, DumpResponse, HealthResponse, HolonomyRequest,
                      HolonomyResponse, LatticeRequest, LatticeResponse,
                      LimitsRequest, LimitsResponse, PlotdataRequest,
                      PlotdataResponse, RidgeAngle, VerifyRequest, VerifyResponse,
                      VerticesRequest, VerticesResponse)
from .serialize import (family_json, lattice_json, matrix_json, scalar_json,
                        vertex_json)
from .verify import (RIDGE_PAIRS, RunConfig, all_passed, check_cell24,
                     run_suite)

logger = logging.getLogger("transitpoly")
_LOG_LEVELS = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
logging.basicConfig(level=_LOG_LEVELS.get(os.environ.get("TRANSIT_LOG", "error"),
                                          logging.ERROR))

app = FastAPI(title="transitpoly", version=__version__,
              description="Exact certification of a deforming "
                          "hyperbolic/AdS/half-pipe polytope family")


@app.exception_handler(TransitError)
async def transit_error_handler(request: Request, exc: TransitError):
    return JSONResponse(status_code=400,
                        content={"error": type(exc).__name__, "detail": str(exc)})


@app.exception_handler(ValueError)
async def value_error_handler(request: Request, exc: ValueError):
    return JSONResponse(status_code=400,
                        content={"error": "ValueError", "detail": str(exc)})


def _build_system(name: str, t: TimeParam, rescaled: bool, extended: bool) -> HalfSpaceSystem:
    if name in ("main", "polytope"):
        return catalog.main_system(t, rescaled=rescaled, extended=extended)
    if name == "fundamental":
        return catalog.fundamental_domain_system(t, rescaled=rescaled)
    if name == "octahedron":
        return catalog.octahedron_system(t, rescaled=rescaled)
    if name == "cell24":
        return catalog.cell24_system()
    if name == "slice":
        return catalog.slice_system(t)
    if name == "octahedron-slice":
        return catalog.octahedron_slice_system(t)
    raise TransitError(f"unknown system {name!r}")


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest) -> VerifyResponse:
    config = RunConfig(extended_range=req.extended_range)
    if req.t_samples is not None:
        config.t_samples = list(req.t_samples)
    results = run_suite(req.checks, config)
    logger.info("verify: %d checks, all_pass=%s", len(results), all_passed(results))
    return VerifyResponse(
        certificate=[CheckResultModel(**r.to_json()) for r in results],
        all_pass=all_passed(results))


@app.post("/vertices", response_model=VerticesResponse)
def vertices(req: VerticesRequest) -> VerticesResponse:
    t = TimeParam.parse(req.t)
    sysm = _build_system(req.system, t, req.rescaled, req.extended_range)
    verts = enumerate_vertices(sysm)
    census = {
        "total": len(verts),
        "ideal": sum(1 for v in verts if v.kind == "ideal"),
        "finite": sum(1 for v in verts if v.kind == "finite"),
        "exterior": sum(1 for v in verts if v.kind == "exterior"),
    }
    ordered = sorted(verts, key=lambda v: tuple(sort_labels(v.incidence)))
    return VerticesResponse(t=req.t, system=req.system, census=census,
                            vertices=[vertex_json(v) for v in ordered])


@app.post("/lattice", response_model=LatticeResponse)
def lattice(req: LatticeRequest) -> LatticeResponse:
    t = TimeParam.parse(req.t)
    sysm = _build_system(req.system, t, req.rescaled, req.extended_range)
    verts = enumerate_vertices(sysm)
    lat = build_face_lattice(sysm, verts)
    return LatticeResponse(t=req.t, system=req.system, lattice=lattice_json(lat))


@app.post("/angles", response_model=AnglesResponse)
def angles(req: AnglesRequest) -> AnglesResponse:
    t = TimeParam.parse(req.t)
    sysm = catalog.main_system(t, rescaled=True)
    verts = enumerate_vertices(sysm)
    lat = build_face_lattice(sysm, verts)
    out: list[RidgeAngle] = []
    for ridge in lat.ridges:
        labs = sort_labels(ridge.labels)
        if len(labs) != 2:
            out.append(RidgeAngle(labels=labs))
            continue
        h1, h2 = sysm.covectors[labs[0]], sysm.covectors[labs[1]]
        if t.branch == "zero":
            entry = RidgeAngle(labels=labs)
            if not h1.coeffs[-1].is_zero() and not h2.coeffs[-1].is_zero():
                entry.psi_sq = scalar_json(hp_angle_sq(h1, h2))
                entry.right = False
            out.append(entry)
            continue
        data = angle_between(sysm.regime, h1, h2)
        out.append(RidgeAngle(
            labels=labs, right=data.right_angle,
            b=scalar_json(data.b), qa=scalar_json(data.qa), qb=scalar_json(data.qb),
            cosine=scalar_json(data.cosine) if data.cosine is not None else None))
    out.sort(key=lambda r: r.labels)
    return AnglesResponse(t=req.t, ridges=out)


@app.post("/classify", response_model=ClassifyResponse)
def classify(req: ClassifyRequest) -> ClassifyResponse:
    t = TimeParam.parse(req.t)
    if t.branch == "zero":
        covs = catalog.table("walls-rescaled", t)
        form = ParamForm(4, t)
    else:
        covs = catalog.table("walls", t)
        form = ParamForm(4, TimeParam(1 if t.branch == "positive" else -1))
    kinds = {lab: classify_hyperplane(form, covs[lab]).value
             for lab in sort_labels(WALL_LABELS)}
    return ClassifyResponse(t=req.t, hyperplanes=kinds)


@app.post("/limits", response_model=LimitsResponse)
def limits(req: LimitsRequest) -> LimitsResponse:
    fams = catalog.wall_families()
    which = req.families or sort_labels(WALL_LABELS)
    out = {}
    for lab in which:
        if lab not in fams:
            raise TransitError(f"unknown wall family {lab!r}")
        fam = conj_rescaled(fams[lab], lab)
        left, right = family_limit(fam, req.order)
        entry = {"left": matrix_json(left), "right": matrix_json(right),
                 "equal": left == right}
        if req.include_family:
            entry["family"] = family_json(fam)
        out[lab] = entry
    return LimitsResponse(order=req.order, families=out)


@app.post("/holonomy", response_model=HolonomyResponse)
def holonomy(req: HolonomyRequest) -> HolonomyResponse:
    t = TimeParam.parse(req.t)
    pairs = []
    from . import linalg
    if t.branch == "zero":
        fams = catalog.wall_families()
        for (la, lb) in RIDGE_PAIRS:
            m = linalg.mat_mul(
                family_limit(conj_rescaled(fams[la], la), 0)[0],
                family_limit(conj_rescaled(fams[lb], lb), 0)[0])
            ana = rotation_or_boost_analyze(m, ParamForm(4, t))
            pairs.append({"pair": [la, lb], "fixed_dim": ana.fixed_dim,
                          "magnitude_sq": scalar_json(ana.magnitude_sq)})
        gens = [family_limit(conj_rescaled(fams[lab], lab), 0)[0]
                for lab in ("p0", "m1", "A")]
    else:
        walls = catalog.table("walls", t)
        form = ParamForm(4, TimeParam(1 if t.branch == "positive" else -1))
        for (la, lb) in RIDGE_PAIRS:
            m = linalg.mat_mul(reflection(walls[la], form).matrix,
                               reflection(walls[lb], form).matrix)
            ana = rotation_or_boost_analyze(m, form)
            pairs.append({"pair": [la, lb], "fixed_dim": ana.fixed_dim,
                          "trace": scalar_json(ana.trace),
                          "cos_or_cosh_of_double": scalar_json(ana.cos_or_cosh)})
        gens = [reflection(walls[lab], form).matrix for lab in ("p0", "m1", "A")]
    from .verify import _elementary_abelian_8
    _, order = _elementary_abelian_8(gens)
    return HolonomyResponse(t=req.t, pairs=pairs, edge_group_order=order)


@app.post("/dump", response_model=DumpResponse)
def dump(req: DumpRequest) -> DumpResponse:
    t = TimeParam.parse(req.t)
    data = catalog.table(req.table, t, extended=req.extended_range)
    rows = {}
    for key, value in data.items():
        if isinstance(value, Covector):
            rows[key] = [scalar_json(c) for c in value.coeffs]
        else:
            rows[key] = [scalar_json(c) for c in value]
    return DumpResponse(table=req.table, t=req.t, rows=rows)


@app.post("/plotdata", response_model=PlotdataResponse)
def plotdata(req: PlotdataRequest) -> PlotdataResponse:
    t = TimeParam.parse(req.t)
    sysm = _build_system(req.object, t, req.rescaled, req.extended_range)
    verts = enumerate_vertices(sysm)
    lat = build_face_lattice(sysm, verts)
    edges = sorted(sorted(e.vertices) for e in lat.faces_of_dim(1)
                   if len(e.vertices) == 2)
    facets = [{"labels": sort_labels(f.labels), "vertices": sorted(f.vertices)}
              for f in lat.facets]
    return PlotdataResponse(
        object=req.object, t=req.t, chart=req.chart,
        vertices=[vertex_json(v) for v in lat.vertex_records],
        edges=edges, facets=facets)


@app.post("/cell24", response_model=Cell24Response)
def cell24() -> Cell24Response:
    result = check_cell24()
    return Cell24Response(result=CheckResultModel(**result.to_json()))
