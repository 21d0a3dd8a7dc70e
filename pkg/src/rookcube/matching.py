"""0/1-matrix machinery: matchings, regular decompositions, bounded fills.

Everything here is deterministic: scans run lowest index first, so repeated
calls produce identical decompositions and fills.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class MatrixError(ValueError):
    """Input matrix violates a precondition."""


@dataclass(frozen=True)
class BinMatrix:
    """An immutable 0/1 matrix."""

    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> BinMatrix:
        data = tuple(tuple(int(v) for v in row) for row in rows)
        if data and any(len(r) != len(data[0]) for r in data):
            raise MatrixError("ragged rows")
        if any(v not in (0, 1) for r in data for v in r):
            raise MatrixError("entries must be 0 or 1")
        return cls(len(data), len(data[0]) if data else 0, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BinMatrix:
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.data)

    def col_sums(self) -> tuple[int, ...]:
        return tuple(sum(r[j] for r in self.data) for j in range(self.cols))

    def transpose(self) -> BinMatrix:
        return BinMatrix(
            self.cols, self.rows, tuple(zip(*self.data)) if self.data else ()
        )

    def __add__(self, other: BinMatrix) -> BinMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise MatrixError("shape mismatch")
        return BinMatrix(
            self.rows,
            self.cols,
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.data, other.data)
            ),
        )


def permutation_matrix(perm: Sequence[int], n: int) -> BinMatrix:
    """Matrix with a 1 at (i, perm[i]) for each row i (0-based)."""
    return BinMatrix(
        n, n, tuple(tuple(1 if j == perm[i] else 0 for j in range(n)) for i in range(n))
    )


def is_permutation_matrix(m: BinMatrix) -> bool:
    return (
        m.rows == m.cols
        and all(s == 1 for s in m.row_sums())
        and all(s == 1 for s in m.col_sums())
    )


def perfect_matching(m: BinMatrix) -> tuple[int, ...] | None:
    """A system of distinct representatives of a square 0/1 matrix.

    Returns a tuple mapping each row to a distinct column with a 1, or
    None when no perfect matching exists.  Augmenting-path search with a
    fixed lowest-index-first scan order.
    """
    if m.rows != m.cols:
        raise MatrixError("matrix must be square")
    n = m.rows
    match_col: list[int] = [-1] * n  # column -> row
    match_row: list[int] = [-1] * n

    def augment(row: int, seen: list[bool]) -> bool:
        for col in range(n):
            if m.data[row][col] and not seen[col]:
                seen[col] = True
                if match_col[col] == -1 or augment(match_col[col], seen):
                    match_col[col] = row
                    match_row[row] = col
                    return True
        return False

    for row in range(n):
        if not augment(row, [False] * n):
            return None
    return tuple(match_row)


def koenig_decompose(m: BinMatrix, k: int) -> list[BinMatrix]:
    """Split a k-regular 0/1 matrix into k permutation matrices.

    The returned matrices sum entrywise to the input.  Regular bipartite
    graphs always admit a perfect matching, so the peeling never fails on
    valid input.
    """
    if m.rows != m.cols:
        raise MatrixError("matrix must be square")
    if any(s != k for s in m.row_sums()) or any(s != k for s in m.col_sums()):
        raise MatrixError(f"matrix is not {k}-regular")
    layers: list[BinMatrix] = []
    current = m
    for _ in range(k):
        perm = perfect_matching(current)
        if perm is None:  # impossible for regular input
            raise MatrixError("regular matrix failed to decompose")
        layers.append(permutation_matrix(perm, m.rows))
        current = BinMatrix(
            m.rows,
            m.cols,
            tuple(
                tuple(v - (1 if perm[i] == j else 0) for j, v in enumerate(row))
                for i, row in enumerate(current.data)
            ),
        )
    return layers


def fill_column_targets(
    p: int, q: int, targets: Sequence[int], row_min: int, row_max: int
) -> BinMatrix:
    """Place ones in a q x p matrix with exact column sums and bounded rows.

    Column j receives exactly ``targets[j]`` ones; every row ends up with
    between ``row_min`` and ``row_max`` ones.  Feasibility requires
    0 <= targets[j] <= q and row_min * q <= sum(targets) <= row_max * q.

    Columns are processed in order, each dropping its ones into the
    currently least-loaded rows (lowest index first).  That keeps row
    loads within 1 of each other, which meets any feasible bounds.
    """
    if len(targets) != p:
        raise MatrixError(f"expected {p} column targets, got {len(targets)}")
    total = sum(targets)
    if any(not 0 <= c <= q for c in targets):
        raise MatrixError("column targets must lie in 0..q")
    if not 0 <= row_min <= p or not 0 <= row_max <= p:
        raise MatrixError("row bounds must lie in 0..p")
    if not row_min * q <= total <= row_max * q:
        raise MatrixError(
            f"total {total} outside feasible range "
            f"[{row_min * q}, {row_max * q}]"
        )
    grid = [[0] * p for _ in range(q)]
    loads = [0] * q
    for j, c in enumerate(targets):
        order = sorted(range(q), key=lambda i: (loads[i], i))
        for i in order[:c]:
            grid[i][j] = 1
            loads[i] += 1
    return BinMatrix.from_rows(grid)


def ryser_adjoin(a: BinMatrix, k: int) -> BinMatrix:
    """Adjoin rows of zeros and ones to reach a k-regular square matrix.

    ``a`` has r rows and n columns with exactly k ones per row; column
    sums must lie in [k - (n - r), k].  The output keeps ``a`` as its
    first r rows and has exactly k ones in every row and column.
    """
    r, n = a.rows, a.cols
    if r > n:
        raise MatrixError("more rows than columns")
    if any(s != k for s in a.row_sums()):
        raise MatrixError(f"every row must contain exactly {k} ones")
    col = a.col_sums()
    for j, s in enumerate(col):
        if not k - (n - r) <= s <= k:
            raise MatrixError(
                f"column {j} has {s} ones, outside [{k - (n - r)}, {k}]"
            )
    if r == n:
        return a
    deficits = [k - s for s in col]
    block = fill_column_targets(n, n - r, deficits, k, k)
    return BinMatrix(n, n, a.data + block.data)


def extend_to_column_regular(a: BinMatrix, n: int, k: int) -> BinMatrix:
    """Fill the region below an r x s block so each column has k ones.

    ``a`` is the fixed r x s top block of an n x s region.  Preconditions
    (each reported by name on failure): every row of ``a`` has between
    s + k - n and k ones, every column between r + k - n and k ones, and
    the total a0 satisfies (r + s - n) k <= a0 <= rs - (n - k)(r + s - n).

    The returned n x s matrix has exactly k ones per column and between
    s + k - n and k ones per row, so its transpose satisfies the row
    adjunction preconditions of :func:`ryser_adjoin`.
    """
    r, s = a.rows, a.cols
    if r > n:
        raise MatrixError("block taller than the frame")
    lo_row, hi_row = s + k - n, k
    for i, rs_ in enumerate(a.row_sums()):
        if not lo_row <= rs_ <= hi_row:
            raise MatrixError(
                f"row-bound violation: row {i} has {rs_} ones, "
                f"outside [{lo_row}, {hi_row}]"
            )
    lo_col, hi_col = r + k - n, k
    col = a.col_sums()
    for j, cs in enumerate(col):
        if not lo_col <= cs <= hi_col:
            raise MatrixError(
                f"column-bound violation: column {j} has {cs} ones, "
                f"outside [{lo_col}, {hi_col}]"
            )
    a0 = sum(col)
    if (r + s - n) * k > a0:
        raise MatrixError(
            f"lower-total violation: a0 = {a0} < (r+s-n)k = {(r + s - n) * k}"
        )
    if a0 > r * s - (n - k) * (r + s - n):
        raise MatrixError(
            f"upper-total violation: a0 = {a0} > "
            f"rs - (n-k)(r+s-n) = {r * s - (n - k) * (r + s - n)}"
        )
    if r == n:
        return a
    deficits = [k - cs for cs in col]
    # bounds normalised into 0..s; slack cases are automatically feasible
    block = fill_column_targets(
        s, n - r, deficits, max(0, s + k - n), min(k, s)
    )
    return BinMatrix(n, s, a.data + block.data)
