"""Points, covectors and transformations of the projective sphere.

The sphere is the quotient of R^{n+1} minus the origin by POSITIVE scaling
only, so canonical representatives divide by the absolute value of the first
nonzero coordinate and are never negated: sign patterns (such as the chart
condition x0 > 0) are meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .errors import DegenerateRescaleError, WrongChartError
from .numfield import FieldScalar, ONE, TimeParam


def _canonicalize(coords: tuple[FieldScalar, ...]) -> tuple[FieldScalar, ...]:
    for x in coords:
        if not x.is_zero():
            inv = abs(x).inverse()
            return tuple(c * inv for c in coords)
    raise ValueError("zero vector has no projective class")


def _coerce_coords(coords: Sequence) -> tuple[FieldScalar, ...]:
    return tuple(x if isinstance(x, FieldScalar) else FieldScalar(x) for x in coords)


@dataclass(frozen=True)
class ProjPoint:
    """A point of the projective sphere, stored canonically."""

    coords: tuple[FieldScalar, ...]

    def __init__(self, coords: Sequence):
        object.__setattr__(self, "coords", _canonicalize(_coerce_coords(coords)))

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def antipode(self) -> "ProjPoint":
        return ProjPoint([-c for c in self.coords])

    def to_affine(self) -> tuple[FieldScalar, ...] | None:
        """Affine coordinates (x1/x0, ..., xn/x0) in the chart x0 > 0.

        Returns None (at infinity) when x0 = 0; raises WrongChartError when
        the canonical representative has x0 < 0.
        """
        x0 = self.coords[0]
        s = x0.sign()
        if s == 0:
            return None
        if s < 0:
            raise WrongChartError(f"point {self} lies in the opposite chart")
        inv = x0.inverse()
        return tuple(c * inv for c in self.coords[1:])

    def __repr__(self):
        return "[" + " : ".join(repr(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class Covector:
    """A half-space of the projective sphere: {[x] : alpha(x) <= 0}."""

    coeffs: tuple[FieldScalar, ...]

    def __init__(self, coeffs: Sequence):
        object.__setattr__(self, "coeffs", _canonicalize(_coerce_coords(coeffs)))

    @property
    def dim(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, p: ProjPoint | Sequence) -> FieldScalar:
        coords = p.coords if isinstance(p, ProjPoint) else _coerce_coords(p)
        return linalg.dot(self.coeffs, coords)

    def side(self, p: ProjPoint | Sequence) -> int:
        """Sign of alpha(x): -1 interior side, 0 boundary, +1 outside."""
        return self(p).sign()

    def complement(self) -> "Covector":
        return Covector([-c for c in self.coeffs])

    def __repr__(self):
        return "(" + " : ".join(repr(c) for c in self.coeffs) + ")"


@dataclass(frozen=True)
class ProjMap:
    """An automorphism of the projective sphere, a matrix mod positive scale."""

    matrix: linalg.Matrix

    def __init__(self, matrix: Sequence[Sequence]):
        m = linalg.mat(matrix)
        flat = [x for row in m for x in row]
        canon = _canonicalize(tuple(flat))
        n = len(m)
        object.__setattr__(
            self, "matrix",
            tuple(tuple(canon[i * n + j] for j in range(n)) for i in range(n)))
        if linalg.det(self.matrix).is_zero():
            raise ValueError("projective map must be invertible")

    @property
    def dim(self) -> int:
        return len(self.matrix) - 1

    @classmethod
    def identity(cls, dim: int) -> "ProjMap":
        return cls(linalg.identity(dim + 1))

    def compose(self, other: "ProjMap") -> "ProjMap":
        return ProjMap(linalg.mat_mul(self.matrix, other.matrix))

    def inverse(self) -> "ProjMap":
        return ProjMap(linalg.inverse(self.matrix))

    def __repr__(self):
        rows = "; ".join(
            "[" + ", ".join(repr(x) for x in row) + "]" for row in self.matrix)
        return f"ProjMap({rows})"


def apply_point(a: ProjMap, p: ProjPoint) -> ProjPoint:
    """Canonical representative of [A x]."""
    if a.dim != p.dim:
        raise ValueError("dimension mismatch")
    return ProjPoint(linalg.mat_vec(a.matrix, p.coords))


def pushforward_halfspace(a: ProjMap, h: Covector) -> Covector:
    """The image half-space A(lH), i.e. the covector alpha o A^{-1}."""
    if a.dim != h.dim:
        raise ValueError("dimension mismatch")
    inv = linalg.inverse(a.matrix)
    return Covector(linalg.vec_mat(h.coeffs, inv))


def dilation(last_entry_inverse: FieldScalar, dim: int = 4) -> ProjMap:
    """diag(1, ..., 1, 1/s) as a projective map (s nonzero)."""
    if last_entry_inverse.is_zero():
        raise DegenerateRescaleError("dilation with zero parameter")
    entries = [ONE] * dim + [last_entry_inverse.inverse()]
    return ProjMap(linalg.diag(entries))


def rescale_map(t: TimeParam, dim: int = 4) -> ProjMap:
    """The rescaling diag(1, ..., 1, 1/|t|) joining the three geometries."""
    if t.branch == "zero":
        raise DegenerateRescaleError("rescaling undefined at t = 0")
    return dilation(t.abs, dim)


def to_affine(p: ProjPoint) -> tuple[FieldScalar, ...] | None:
    return p.to_affine()
