"""Exact matrices over Q, Z, F_p, or polynomial rings; determinants and kernels."""

from __future__ import annotations

from fractions import Fraction

from .unipoly import UniPoly

MAX_DET_DIMENSION = 16


class ExactMatrix:
    """Immutable rows x cols matrix with exact ring entries (row-major)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ValueError("entries length must be rows * cols")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def from_rows(cls, row_lists) -> "ExactMatrix":
        row_lists = [list(r) for r in row_lists]
        rows = len(row_lists)
        cols = len(row_lists[0]) if rows else 0
        if any(len(r) != cols for r in row_lists):
            raise ValueError("ragged rows")
        return cls(rows, cols, [e for r in row_lists for e in r])

    def entry(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def to_rows(self) -> list[list]:
        return [self.row(i) for i in range(self.rows)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and all(a == b for a, b in zip(self.entries, other.entries))
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"ExactMatrix.from_rows({self.to_rows()!r})"


def _is_zero(x) -> bool:
    if isinstance(x, UniPoly):
        return x.is_zero()
    return x == 0


def _exact_div(num, den):
    """Exact division in the entry ring (int, Fraction, or UniPoly)."""
    if isinstance(num, UniPoly) or isinstance(den, UniPoly):
        if not isinstance(num, UniPoly):
            num = UniPoly.constant(num)
        if not isinstance(den, UniPoly):
            den = UniPoly.constant(den)
        return num.exact_div(den)
    if isinstance(num, Fraction) or isinstance(den, Fraction):
        return Fraction(num) / Fraction(den)
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError("inexact integer division in Bareiss elimination")
    return q


def det_poly_matrix(m: ExactMatrix) -> UniPoly | Fraction | int:
    """Fraction-free (Bareiss) determinant; entries int, Fraction, or UniPoly.

    Dimension is capped at 16.  For cross-checking see det_cofactor.
    """
    if m.rows != m.cols:
        raise ValueError("non-square input")
    n = m.rows
    if n > MAX_DET_DIMENSION:
        raise ValueError(f"dimension {n} exceeds cap {MAX_DET_DIMENSION}")
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = None
    for k in range(n - 1):
        if _is_zero(a[k][k]):
            pivot = next((i for i in range(k + 1, n) if not _is_zero(a[i][k])), None)
            if pivot is None:
                zero = a[0][0]
                return zero - zero if isinstance(zero, UniPoly) else 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                val = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                if prev is not None:
                    val = _exact_div(val, prev)
                a[i][j] = val
        prev = a[k][k]
    result = a[n - 1][n - 1]
    if sign < 0:
        result = -result
    return result


def det_cofactor(m: ExactMatrix):
    """Cofactor-expansion determinant (exponential; cross-check oracle)."""
    if m.rows != m.cols:
        raise ValueError("non-square input")
    rows = m.to_rows()

    def rec(r: list[list]):
        n = len(r)
        if n == 1:
            return r[0][0]
        total = None
        for j in range(n):
            if _is_zero(r[0][j]):
                continue
            minor = [row[:j] + row[j + 1 :] for row in r[1:]]
            term = r[0][j] * rec(minor)
            if j % 2:
                term = -term
            total = term if total is None else total + term
        if total is None:
            zero = r[0][0]
            return zero - zero if isinstance(zero, UniPoly) else 0
        return total

    return rec(rows)


# ---------------------------------------------------------------------------
# Linear algebra mod p
# ---------------------------------------------------------------------------


def _rows_mod(matrix, p: int) -> list[list[int]]:
    if isinstance(matrix, ExactMatrix):
        rows = matrix.to_rows()
    else:
        rows = [list(r) for r in matrix]
    return [[int(x) % p for x in r] for r in rows]


def rank_mod_p(matrix, p: int) -> int:
    """Rank over F_p of an integer matrix (works for every prime, including 2)."""
    rows = _rows_mod(matrix, p)
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(rows[i][j] - f * rows[rank][j]) % p for j in range(ncols)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def kernel_mod_p(matrix, p: int) -> list[list[int]]:
    """Row-reduced null-space basis over F_p, deterministic echelon pivot order.

    Rejects p = 2: callers use this on Gram-type matrices, which do not make
    sense in characteristic 2.
    """
    if p == 2:
        raise ValueError("p = 2: kernel_mod_p requires an odd prime")
    rows = _rows_mod(matrix, p)
    if not rows:
        return []
    ncols = len(rows[0])
    pivots: list[int] = []
    rank = 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(rows[i][j] - f * rows[rank][j]) % p for j in range(ncols)]
        pivots.append(c)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-rows[i][fc]) % p
        basis.append(v)
    return basis


def solve_mod_p(matrix, rhs: list[int], p: int) -> list[int] | None:
    """One solution of A x = rhs over F_p (free variables set to 0), or None."""
    rows = _rows_mod(matrix, p)
    b = [int(x) % p for x in rhs]
    if len(rows) != len(b):
        raise ValueError("rhs length mismatch")
    if not rows:
        return []
    ncols = len(rows[0])
    aug = [rows[i] + [b[i]] for i in range(len(rows))]
    pivots: list[int] = []
    rank = 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(aug)) if aug[i][c]), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        inv = pow(aug[rank][c], -1, p)
        aug[rank] = [x * inv % p for x in aug[rank]]
        for i in range(len(aug)):
            if i != rank and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(aug[i][j] - f * aug[rank][j]) % p for j in range(ncols + 1)]
        pivots.append(c)
        rank += 1
    for i in range(rank, len(aug)):
        if aug[i][ncols]:
            return None
    x = [0] * ncols
    for i, c in enumerate(pivots):
        x[c] = aug[i][ncols]
    return x
