"""Pydantic request/response models of the verification service."""

from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, Field

SystemName = Literal["polytope", "main", "fundamental", "octahedron", "cell24",
                     "slice", "octahedron-slice"]


class HealthResponse(BaseModel):
    status: str
    version: str


class VerifyRequest(BaseModel):
    checks: Optional[list[str]] = None          # None = full suite
    t_samples: Optional[list[str]] = None       # None = default sample set
    extended_range: bool = False


class CheckResultModel(BaseModel):
    name: str
    params: dict[str, Any]
    status: str
    expected: Any
    actual: Any
    paper_ref: str
    duration_ms: int


class VerifyResponse(BaseModel):
    certificate: list[CheckResultModel]
    all_pass: bool


class VerticesRequest(BaseModel):
    t: str = "1/2"
    system: SystemName = "main"
    rescaled: bool = True
    extended_range: bool = False


class VerticesResponse(BaseModel):
    t: str
    system: str
    census: dict[str, int]
    vertices: list[dict[str, Any]]


class LatticeRequest(BaseModel):
    t: str = "1/2"
    system: SystemName = "main"
    rescaled: bool = True
    extended_range: bool = False


class LatticeResponse(BaseModel):
    t: str
    system: str
    lattice: dict[str, Any]


class AnglesRequest(BaseModel):
    t: str = "1/2"


class RidgeAngle(BaseModel):
    labels: list[str]
    right: Optional[bool] = None
    b: Optional[dict[str, str]] = None
    qa: Optional[dict[str, str]] = None
    qb: Optional[dict[str, str]] = None
    cosine: Optional[dict[str, str]] = None
    psi_sq: Optional[dict[str, str]] = None


class AnglesResponse(BaseModel):
    t: str
    ridges: list[RidgeAngle]


class ClassifyRequest(BaseModel):
    t: str = "-1/2"


class ClassifyResponse(BaseModel):
    t: str
    hyperplanes: dict[str, str]


class LimitsRequest(BaseModel):
    order: int = Field(default=0, ge=0, le=2)
    families: Optional[list[str]] = None
    include_family: bool = False   # also emit branch-wise coefficient lists


class LimitsResponse(BaseModel):
    order: int
    families: dict[str, dict[str, Any]]


class HolonomyRequest(BaseModel):
    t: str = "1/2"


class HolonomyResponse(BaseModel):
    t: str
    pairs: list[dict[str, Any]]
    edge_group_order: int


class DumpRequest(BaseModel):
    table: Literal["octahedron", "walls", "walls-rescaled", "domain-vertices",
                   "aux-mirrors", "cell24"]
    t: str = "1/2"
    extended_range: bool = False


class DumpResponse(BaseModel):
    table: str
    t: str
    rows: dict[str, Any]


class PlotdataRequest(BaseModel):
    object: SystemName = "main"
    t: str = "1/2"
    chart: Literal["affine"] = "affine"
    rescaled: bool = True
    extended_range: bool = False


class PlotdataResponse(BaseModel):
    object: str
    t: str
    chart: str
    vertices: list[dict[str, Any]]
    edges: list[list[int]]
    facets: list[dict[str, Any]]


class Cell24Response(BaseModel):
    result: CheckResultModel


class ErrorResponse(BaseModel):
    error: str
    detail: str
