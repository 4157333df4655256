"""Small exact linear algebra over FieldScalar.

Matrices are tuples of tuples.  Zero tests are coefficient-wise (never
numeric), so rank, kernels and solved vertices are certified.
"""

from __future__ import annotations

from typing import Sequence

from .numfield import FieldScalar, ONE, ZERO

Matrix = tuple[tuple[FieldScalar, ...], ...]
Vector = tuple[FieldScalar, ...]


def mat(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(x if isinstance(x, FieldScalar) else FieldScalar(x) for x in row)
                 for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def diag(entries: Sequence) -> Matrix:
    es = [x if isinstance(x, FieldScalar) else FieldScalar(x) for x in entries]
    n = len(es)
    return tuple(tuple(es[i] if i == j else ZERO for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), ZERO) for col in bt)
        for row in a
    )


def mat_vec(a: Matrix, v: Vector) -> Vector:
    return tuple(sum((x * y for x, y in zip(row, v)), ZERO) for row in a)


def vec_mat(v: Vector, a: Matrix) -> Vector:
    return tuple(sum((v[i] * a[i][j] for i in range(len(v))), ZERO)
                 for j in range(len(a[0])))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Matrix, s: FieldScalar) -> Matrix:
    return tuple(tuple(x * s for x in row) for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def dot(u: Vector, v: Vector) -> FieldScalar:
    return sum((x * y for x, y in zip(u, v)), ZERO)


def _row_echelon(rows: list[list[FieldScalar]]) -> tuple[list[list[FieldScalar]], list[int]]:
    """In-place forward elimination; returns (rows, pivot column indices)."""
    pivots: list[int] = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if not rows[i][col].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(a: Sequence[Sequence[FieldScalar]]) -> int:
    rows = [list(r) for r in a]
    if not rows:
        return 0
    _, pivots = _row_echelon(rows)
    return len(pivots)


def solve_affine_tagged(a: Sequence[Vector],
                        b: Sequence[FieldScalar]) -> tuple[Vector | None, str]:
    """Solve a*x = b; second component tags the failure mode.

    Returns (solution, "unique"), (None, "inconsistent") or
    (None, "underdetermined").  Forward elimination cross-multiplies rows
    instead of dividing, so divisions happen only in back-substitution.
    """
    n = len(a[0])
    rows = [list(row) + [rhs] for row, rhs in zip(a, b)]
    m = len(rows)
    width = n + 1
    pivots: list[int] = []
    r = 0
    for col in range(n):
        piv = None
        for i in range(r, m):
            if not rows[i][col].is_zero():
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        pval = prow[col]
        for i in range(r + 1, m):
            f = rows[i][col]
            if not f.is_zero():
                ri = rows[i]
                for j in range(col, width):
                    ri[j] = ri[j] * pval - prow[j] * f
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if not rows[i][n].is_zero():
            return None, "inconsistent"
    if len(pivots) < n:
        return None, "underdetermined"
    # back substitution
    x: list[FieldScalar] = [ZERO] * n
    for k in range(len(pivots) - 1, -1, -1):
        col = pivots[k]
        row = rows[k]
        s = row[n]
        for j in range(col + 1, n):
            s = s - row[j] * x[j]
        x[col] = s / row[col]
    return tuple(x), "unique"


def solve_affine(a: Sequence[Vector], b: Sequence[FieldScalar]) -> Vector | None:
    """Unique solution of a*x = b, or None (no solution / not unique)."""
    sol, _ = solve_affine_tagged(a, b)
    return sol


def kernel_vector(a: Sequence[Vector]) -> Vector | None:
    """A nonzero kernel vector when the kernel is 1-dimensional, else None."""
    ncols = len(a[0])
    rows = [list(r) for r in a]
    rows, pivots = _row_echelon(rows)
    if len(pivots) != ncols - 1:
        return None
    free = next(c for c in range(ncols) if c not in pivots)
    x = [ZERO] * ncols
    x[free] = ONE
    for r, col in enumerate(pivots):
        x[col] = -rows[r][free]
    return tuple(x)


def kernel_dimension(a: Sequence[Vector]) -> int:
    return len(a[0]) - rank(a)


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    rows = [list(a[i]) + [ONE if j == i else ZERO for j in range(n)] for i in range(n)]
    rows, pivots = _row_echelon(rows)
    if len(pivots) != n or pivots != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(rows[i][n:]) for i in range(n))


def det(a: Matrix) -> FieldScalar:
    n = len(a)
    rows = [list(r) for r in a]
    out = ONE
    for col in range(n):
        pivot_row = None
        for i in range(col, n):
            if not rows[i][col].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            return ZERO
        if pivot_row != col:
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
            out = -out
        out = out * rows[col][col]
        inv = rows[col][col].inverse()
        for i in range(col + 1, n):
            if not rows[i][col].is_zero():
                f = rows[i][col] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[col])]
    return out
