"""Half-space intersection in the projective sphere, exactly.

Vertices come from rank-n subsets of bounding hyperplanes solved in the
affine chart; the face lattice is the Galois closure of the vertex-facet
incidence.  Everything is certified field arithmetic; nothing is rounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from . import linalg
from .errors import ChartViolationError, NotASymmetryError
from .labels import sort_labels
from .forms import ParamForm, PointClass, classify_point
from .numfield import FieldScalar, ONE
from .projective import Covector, ProjMap, ProjPoint, apply_point, pushforward_halfspace


@dataclass(frozen=True)
class HalfSpaceSystem:
    """A labeled list of half-spaces together with the ambient regime."""

    labels: tuple[str, ...]
    covectors: dict[str, Covector]
    regime: ParamForm

    def __init__(self, covectors: dict[str, Covector], regime: ParamForm,
                 labels: Sequence[str] | None = None):
        labs = tuple(labels) if labels is not None else tuple(sort_labels(covectors))
        if len(set(labs)) != len(labs):
            raise ValueError("duplicate labels")
        object.__setattr__(self, "labels", labs)
        object.__setattr__(self, "covectors", dict(covectors))
        object.__setattr__(self, "regime", regime)

    @property
    def dim(self) -> int:
        return self.covectors[self.labels[0]].dim

    def covector(self, label: str) -> Covector:
        return self.covectors[label]

    def drop(self, labels: Iterable[str]) -> "HalfSpaceSystem":
        gone = set(labels)
        keep = {l: c for l, c in self.covectors.items() if l not in gone}
        return HalfSpaceSystem(keep, self.regime,
                               [l for l in self.labels if l not in gone])


@dataclass(frozen=True)
class VertexRecord:
    """A vertex with its full incidence set and position relative to the domain."""

    point: ProjPoint
    incidence: frozenset
    kind: str  # "finite" | "ideal" | "exterior"

    def affine(self) -> tuple[FieldScalar, ...] | None:
        return self.point.to_affine()


def _membership_and_incidence(sys: HalfSpaceSystem,
                              coords: tuple[FieldScalar, ...]) -> frozenset | None:
    """Incidence set if the point satisfies every inequality, else None."""
    inc = []
    for lab in sys.labels:
        s = linalg.dot(sys.covectors[lab].coeffs, coords).sign()
        if s > 0:
            return None
        if s == 0:
            inc.append(lab)
    return frozenset(inc)


def _vertex_kind(sys: HalfSpaceSystem, p: ProjPoint) -> str:
    cls = classify_point(sys.regime, p)
    if cls is PointClass.INTERIOR:
        return "finite"
    if cls is PointClass.BOUNDARY:
        return "ideal"
    return "exterior"


def enumerate_vertices(sys: HalfSpaceSystem) -> list[VertexRecord]:
    """All vertices of the half-space intersection, by rank-n subset solving.

    Works in the affine chart x0 = 1 (the systems in this artifact are
    pre-verified to lie in the chart).  A subset whose homogeneous solution
    is a polytope point at infinity of the chart raises ChartViolationError.
    """
    n = sys.dim
    labels = sys.labels
    rows = {lab: sys.covectors[lab].coeffs for lab in labels}
    seen: dict[tuple, VertexRecord | None] = {}
    for subset in combinations(labels, n):
        a = [rows[lab][1:] for lab in subset]
        b = [-rows[lab][0] for lab in subset]
        sol, tag = linalg.solve_affine_tagged(a, b)
        if sol is None:
            if tag == "inconsistent":
                # the homogeneous kernel may be a point at infinity of the chart
                _check_chart_escape(sys, [rows[lab] for lab in subset])
            continue
        coords = (ONE,) + sol
        if coords in seen:
            continue
        inc = _membership_and_incidence(sys, coords)
        if inc is None:
            seen[coords] = None  # type: ignore[assignment]
            continue
        p = ProjPoint(coords)
        seen[coords] = VertexRecord(p, inc, _vertex_kind(sys, p))
    return [v for v in seen.values() if v is not None]


def _check_chart_escape(sys: HalfSpaceSystem, subset_rows: list) -> None:
    """Detect a vertex at infinity of the chart (the shipped systems have none)."""
    v = linalg.kernel_vector(subset_rows)
    if v is None or not v[0].is_zero():
        return
    for cand in (v, tuple(-x for x in v)):
        if _membership_and_incidence(sys, cand) is not None:
            raise ChartViolationError(
                "vertex candidate with x0 = 0 satisfies every inequality")


def enumerate_vertices_homogeneous(sys: HalfSpaceSystem) -> list[VertexRecord]:
    """Chart-free enumeration (used for links, which may leave the chart)."""
    n = sys.dim
    labels = sys.labels
    rows = {lab: sys.covectors[lab].coeffs for lab in labels}
    seen: set[tuple] = set()
    out: list[VertexRecord] = []
    for subset in combinations(labels, n):
        v = linalg.kernel_vector([rows[lab] for lab in subset])
        if v is None:
            continue
        for cand in (v, tuple(-x for x in v)):
            p = ProjPoint(cand)
            key = p.coords
            if key in seen:
                continue
            seen.add(key)
            inc = _membership_and_incidence(sys, p.coords)
            if inc is None:
                continue
            out.append(VertexRecord(p, inc, _vertex_kind(sys, p)))
    return out


@dataclass(frozen=True)
class Face:
    dim: int
    labels: frozenset
    vertices: frozenset  # indices into the vertex list


@dataclass(frozen=True)
class FaceLattice:
    """The graded face poset, with faces keyed by supporting label sets."""

    dim: int
    faces: tuple[Face, ...]
    vertex_records: tuple[VertexRecord, ...] = field(compare=False)

    def faces_of_dim(self, d: int) -> list[Face]:
        return [f for f in self.faces if f.dim == d]

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.faces_of_dim(d)) for d in range(self.dim))

    @property
    def facets(self) -> list[Face]:
        return self.faces_of_dim(self.dim - 1)

    @property
    def ridges(self) -> list[Face]:
        return self.faces_of_dim(self.dim - 2)

    @property
    def edges(self) -> list[Face]:
        return self.faces_of_dim(1)

    def label_families(self) -> dict[int, frozenset]:
        out: dict[int, set] = {}
        for f in self.faces:
            out.setdefault(f.dim, set()).add(f.labels)
        return {d: frozenset(s) for d, s in out.items()}


def build_face_lattice(sys: HalfSpaceSystem,
                       vertices: Sequence[VertexRecord]) -> FaceLattice:
    """Face lattice from vertex-facet incidence, via closure of intersections.

    A face is determined by its vertex set, obtained as an intersection of
    facet vertex sets; its label set is the set of all half-spaces containing
    those vertices, and its dimension is n - rank of those covectors.
    """
    n = sys.dim
    labels = sys.labels
    vlist = tuple(vertices)
    label_bits: dict[str, int] = {}
    for li, lab in enumerate(labels):
        bits = 0
        for vi, v in enumerate(vlist):
            if lab in v.incidence:
                bits |= 1 << vi
        label_bits[lab] = bits

    if not vlist:
        faces = [Face(n, frozenset(), frozenset())]
        faces += [Face(n - 1, frozenset({lab}), frozenset()) for lab in labels]
        return FaceLattice(n, tuple(faces), vlist)

    all_vertices = (1 << len(vlist)) - 1
    closed: set[int] = set()
    frontier = {all_vertices}
    while frontier:
        nxt = set()
        for vs in frontier:
            if vs in closed:
                continue
            closed.add(vs)
            for lab in labels:
                inter = vs & label_bits[lab]
                if inter and inter != vs and inter not in closed:
                    nxt.add(inter)
        frontier = nxt

    faces: list[Face] = []
    seen_label_sets: set[frozenset] = set()
    for vs in closed:
        members = [vi for vi in range(len(vlist)) if vs & (1 << vi)]
        labset = frozenset(lab for lab in labels if (label_bits[lab] & vs) == vs)
        if labset in seen_label_sets and vs != all_vertices:
            continue
        seen_label_sets.add(labset)
        if labset:
            rk = linalg.rank([sys.covectors[lab].coeffs for lab in labset])
        else:
            rk = 0
        dim = n - rk
        faces.append(Face(dim, labset, frozenset(members)))
    # facets carrying no vertex at all (e.g. a single half-space system)
    for lab in labels:
        if label_bits[lab] == 0:
            faces.append(Face(n - 1, frozenset({lab}), frozenset()))
    faces.sort(key=lambda f: (f.dim, tuple(sort_labels(f.labels))))
    return FaceLattice(n, tuple(faces), vlist)


def lattices_equal(l1: FaceLattice, l2: FaceLattice) -> bool:
    """Equality of face lattices as label-set families in every dimension."""
    return l1.dim == l2.dim and l1.label_families() == l2.label_families()


def lattices_isomorphic(l1: FaceLattice, l2: FaceLattice) -> bool:
    """Whether some relabeling of facets identifies the two lattices.

    Backtracking over facet bijections, pruning with per-label invariants
    (vertex counts of the faces each label supports).
    """
    fam1, fam2 = l1.label_families(), l2.label_families()
    if l1.dim != l2.dim:
        return False
    if {d: len(s) for d, s in fam1.items()} != {d: len(s) for d, s in fam2.items()}:
        return False

    labels1 = sorted({lab for s in fam1.values() for ls in s for lab in ls})
    labels2 = sorted({lab for s in fam2.values() for ls in s for lab in ls})
    if len(labels1) != len(labels2):
        return False

    def signature(fams, lab):
        sig = []
        for d in sorted(fams):
            counts = sorted(len(ls) for ls in fams[d] if lab in ls)
            sig.append((d, tuple(counts)))
        return tuple(sig)

    sig1 = {lab: signature(fam1, lab) for lab in labels1}
    sig2 = {lab: signature(fam2, lab) for lab in labels2}
    sets1 = {d: s for d, s in fam1.items()}
    sets2 = {d: s for d, s in fam2.items()}

    def compatible(mapping: dict) -> bool:
        mapped = set(mapping)
        for d, fams in sets1.items():
            targets = sets2[d]
            for ls in fams:
                if all(lab in mapped for lab in ls):
                    if frozenset(mapping[lab] for lab in ls) not in targets:
                        return False
        return True

    def backtrack(i: int, mapping: dict, used: set) -> bool:
        if i == len(labels1):
            return True
        lab = labels1[i]
        for cand in labels2:
            if cand in used or sig1[lab] != sig2[cand]:
                continue
            mapping[lab] = cand
            used.add(cand)
            if compatible(mapping) and backtrack(i + 1, mapping, used):
                return True
            del mapping[lab]
            used.discard(cand)
        return False

    return backtrack(0, {}, set())


def link_at_vertex(sys: HalfSpaceSystem, v: VertexRecord) -> FaceLattice:
    """Face lattice of the link: the quotient system over R^{n+1}/<v>.

    The quotient basis drops the coordinate with the largest absolute entry
    of the vertex representative; the incident covectors descend by deleting
    that coordinate.  Enumeration is chart-free.
    """
    coords = v.point.coords
    drop = 0
    best = abs(coords[0])
    for i, c in enumerate(coords[1:], start=1):
        a = abs(c)
        if (a - best).sign() > 0:
            drop = i
            best = a
    quotient = {}
    for lab in sort_labels(v.incidence):
        cs = sys.covectors[lab].coeffs
        quotient[lab] = Covector(cs[:drop] + cs[drop + 1:])
    sub = HalfSpaceSystem(quotient, ParamForm(sys.dim - 1, sys.regime.t),
                          sort_labels(v.incidence))
    verts = enumerate_vertices_homogeneous(sub)
    return build_face_lattice(sub, verts)


def bounded_edges_check(lattice: FaceLattice) -> bool:
    """Every 1-face joins exactly two vertices (and there is a vertex at all)."""
    if not lattice.vertex_records:
        return False
    return all(len(e.vertices) == 2 for e in lattice.faces_of_dim(1))


def label_permutation(sys: HalfSpaceSystem, g: ProjMap) -> dict[str, str]:
    """The permutation induced by g on the system's covectors.

    Raises NotASymmetryError when some image is not in the system.
    """
    inverse_lookup = {sys.covectors[lab]: lab for lab in sys.labels}
    perm = {}
    for lab in sys.labels:
        img = pushforward_halfspace(g, sys.covectors[lab])
        target = inverse_lookup.get(img)
        if target is None:
            raise NotASymmetryError(f"{lab} maps outside the system")
        perm[lab] = target
    return perm


def symmetry_orbit(sys: HalfSpaceSystem, generators: Sequence[ProjMap],
                   points: Sequence[ProjPoint] = ()) -> tuple[list[dict[str, str]], set[ProjPoint]]:
    """Label permutations of the generated group, and the orbit of points.

    The group is closed by word enumeration over the generators (all our
    symmetry groups are small); each generator is verified to permute the
    system.
    """
    perms = [label_permutation(sys, g) for g in generators]
    group: dict[tuple, ProjMap] = {}
    ident = ProjMap.identity(sys.dim)
    frontier = [ident]
    key = lambda m: m.matrix
    group[key(ident)] = ident
    while frontier:
        nxt = []
        for m in frontier:
            for g in generators:
                prod = g.compose(m)
                k = key(prod)
                if k not in group:
                    group[k] = prod
                    nxt.append(prod)
        frontier = nxt
        if len(group) > 10000:
            raise NotASymmetryError("symmetry group closure did not terminate")
    orbit: set[ProjPoint] = set()
    for m in group.values():
        for p in points:
            orbit.add(apply_point(m, p))
    perm_list = [label_permutation(sys, m) for m in group.values()]
    return perm_list, orbit


def group_elements(generators: Sequence[ProjMap], dim: int) -> list[ProjMap]:
    """Closure of the generated group (deduplicated canonical matrices)."""
    group: dict[tuple, ProjMap] = {}
    ident = ProjMap.identity(dim)
    group[ident.matrix] = ident
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in generators:
                prod = g.compose(m)
                if prod.matrix not in group:
                    group[prod.matrix] = prod
                    nxt.append(prod)
        frontier = nxt
        if len(group) > 10000:
            raise NotASymmetryError("group closure did not terminate")
    return list(group.values())
