"""JSON-friendly encodings: every scalar carries exact string + decimal."""

from __future__ import annotations

from typing import Any, Sequence

from .labels import sort_labels
from .numfield import FieldScalar, parse_scalar
from .polytope import FaceLattice, VertexRecord
from .projective import Covector, ProjPoint

APPROX_DIGITS = 12


def scalar_json(x: FieldScalar) -> dict:
    return {"exact": x.exact_str(), "approx": x.approx(APPROX_DIGITS)}


def scalar_from_json(obj: dict) -> FieldScalar:
    return parse_scalar(obj["exact"])


def vector_json(v: Sequence[FieldScalar]) -> list[dict]:
    return [scalar_json(x) for x in v]


def point_json(p: ProjPoint) -> dict:
    return {"coords": vector_json(p.coords), "dim": p.dim}


def covector_json(h: Covector) -> dict:
    return {"coords": vector_json(h.coeffs), "dim": h.dim}


def matrix_json(m) -> list[list[dict]]:
    return [[scalar_json(x) for x in row] for row in m]


def rational_func_json(r) -> dict:
    """num/den as little-endian coefficient lists of exact scalars."""
    return {"num": [scalar_json(c) for c in r.num.coeffs],
            "den": [scalar_json(c) for c in r.den.coeffs]}


def branchfunc_json(f) -> dict:
    return {"pos": rational_func_json(f.pos), "neg": rational_func_json(f.neg)}


def family_json(fam) -> dict:
    """An IsomFamily as a matrix of branch-wise coefficient lists."""
    return {
        "label": fam.label,
        "entries": [[branchfunc_json(e) for e in row] for row in fam.entries],
    }


def vertex_json(v: VertexRecord) -> dict:
    aff = v.affine()
    return {
        "point": point_json(v.point),
        "affine": vector_json(aff) if aff is not None else None,
        "incidence": sort_labels(v.incidence),
        "kind": v.kind,
    }


def lattice_json(lat: FaceLattice) -> dict:
    return {
        "dim": lat.dim,
        "f_vector": list(lat.f_vector()),
        "faces": [
            {
                "dim": f.dim,
                "labels": sort_labels(f.labels),
                "vertices": sorted(f.vertices),
            }
            for f in lat.faces
        ],
        "vertices": [vertex_json(v) for v in lat.vertex_records],
    }


def vertices_csv(vertices: Sequence[VertexRecord]) -> str:
    """CSV table of vertices: exact affine coordinates plus approximations."""
    ncoords = max((len(v.affine() or ())) for v in vertices) if vertices else 4
    header = ["incidence", "kind"]
    for i in range(1, ncoords + 1):
        header += [f"y{i}_exact", f"y{i}_approx"]
    lines = [",".join(header)]
    for v in vertices:
        aff = v.affine()
        row = [" ".join(sort_labels(v.incidence)), v.kind]
        for i in range(ncoords):
            if aff is None:
                row += ["", ""]
            else:
                row += [aff[i].exact_str(), aff[i].approx(APPROX_DIGITS)]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def parse_vertices_csv(text: str) -> list[dict[str, Any]]:
    """Re-parse a vertex CSV dump into exact scalars (round-trip check)."""
    lines = [ln for ln in text.strip().split("\n") if ln]
    header = lines[0].split(",")
    ncoords = sum(1 for h in header if h.endswith("_exact"))
    out = []
    for ln in lines[1:]:
        parts = ln.split(",")
        coords = []
        for i in range(ncoords):
            exact = parts[2 + 2 * i]
            coords.append(parse_scalar(exact) if exact else None)
        out.append({
            "incidence": parts[0].split(" "),
            "kind": parts[1],
            "affine": coords,
        })
    return out
