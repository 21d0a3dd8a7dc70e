"""Constructive completion pipelines: Hall, Ryser and Cruse.

All three run the same engine: build a cover sheet (a 0/1 matrix marking
which files of a brick still need a rook), extend it to a regular matrix,
split that into permutation matrices, and read the permutations back as
symbol layers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .board import (
    BoardError,
    Box,
    CONJUGATIONS,
    Cell,
    Plsc,
    conjugation_inverse,
    from_pls,
    is_latin_square,
)
from .matching import (
    BinMatrix,
    MatrixError,
    extend_to_column_regular,
    koenig_decompose,
    ryser_adjoin,
)


class CompletionError(ValueError):
    """A completion precondition failed; carries a witness when known."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


# -- capacity formulas -------------------------------------------------------


def cap(n: int, r: int, s: int, t: int) -> int:
    """Rook capacity of an r x s x t box in an order-n square.

    Symmetric closed form of rs - (n - t)(r + s - n); may exceed feasible
    rook counts outside the embedding regime, see :func:`effective_cap`.
    """
    return r * s + r * t + s * t - n * (r + s + t) + n * n


def effective_cap(n: int, r: int, s: int, t: int) -> int:
    """Capacity clamped by the per-face rook bounds min(rs, rt, st)."""
    return min(r * s, r * t, s * t, cap(n, r, s, t))


# -- cover sheets ------------------------------------------------------------


@dataclass(frozen=True)
class CoverSheet:
    """0/1 matrix over a brick footprint: 1 marks a rook-free file segment.

    ``row_index``/``col_index`` give the board indices of the footprint in
    matrix order; ``depth`` is the axis the file segments run along.
    """

    n: int
    depth: str
    row_index: tuple[int, ...]
    col_index: tuple[int, ...]
    matrix: BinMatrix


def cover_sheet(board: Plsc, box: Box, depth: str = "k") -> CoverSheet:
    """Cover sheet of a brick that contains all rooks of the board.

    Cell (i, j) of the sheet is 1 iff the file segment through (i, j)
    inside the box, running along ``depth``, holds no rook.
    """
    box.validate(board.n)
    if depth not in ("i", "j", "k"):
        raise ValueError(f"bad depth axis {depth!r}")
    for rook in board.rooks():
        if not box.contains(rook):
            raise BoardError(f"rook {tuple(rook)} outside the brick")
    axes = {
        "i": (sorted(box.cols), sorted(box.syms), sorted(box.rows)),
        "j": (sorted(box.rows), sorted(box.syms), sorted(box.cols)),
        "k": (sorted(box.rows), sorted(box.cols), sorted(box.syms)),
    }
    rows, cols, segment = axes[depth]

    def cell(a: int, b: int, c: int) -> Cell:
        if depth == "i":
            return Cell(c, a, b)
        if depth == "j":
            return Cell(a, c, b)
        return Cell(a, b, c)

    data = []
    for a in rows:
        line = []
        for b in cols:
            hit = any(board.state_at(cell(a, b, c)) == 2 for c in segment)
            line.append(0 if hit else 1)
        data.append(line)
    return CoverSheet(
        board.n, depth, tuple(rows), tuple(cols), BinMatrix.from_rows(data)
    )


# -- Hall: complete a Latin rectangle ---------------------------------------


def _validate_rectangle(rect: list[list[int]], n: int, full_rows: bool) -> None:
    for i, row in enumerate(rect, start=1):
        for j, v in enumerate(row, start=1):
            if not isinstance(v, int) or not 1 <= v <= n:
                raise CompletionError(f"bad symbol {v!r} at ({i},{j})")
    for i, row in enumerate(rect, start=1):
        if len(set(row)) != len(row):
            raise CompletionError(f"repeated symbol in row {i}")
        if full_rows and len(row) != n:
            raise CompletionError(f"row {i} is not full")
    for j in range(len(rect[0])):
        col = [row[j] for row in rect]
        if len(set(col)) != len(col):
            raise CompletionError(f"repeated symbol in column {j + 1}")


def hall_complete(rect) -> list[list[int]]:
    """Complete an r x n Latin rectangle to an order-n Latin square.

    The conjugate of the rectangle in which symbols play the row role has
    a full-footprint cover sheet that is (n - r)-regular; splitting it
    into permutation matrices yields one new row per matrix.
    """
    rect = [list(row) for row in rect]
    if not rect:
        raise CompletionError("empty rectangle")
    n = len(rect[0])
    r = len(rect)
    if r > n:
        raise CompletionError("more rows than columns")
    _validate_rectangle(rect, n, full_rows=True)
    if r == n:
        return rect
    grid = rect + [[None] * n for _ in range(n - r)]
    board = from_pls(grid, n)
    # rook (i,j,k) -> (j,k,i): rows of the conjugate are columns, its
    # symbols are the original rows 1..r, giving an n^2-brick of depth r
    conj = board.conjugate("jki")
    full = frozenset(range(1, n + 1))
    sheet = cover_sheet(conj, Box(full, full, range(1, r + 1)), depth="k")
    layers = koenig_decompose(sheet.matrix, n - r)
    for tau, layer in enumerate(layers, start=1):
        # a 1 at (j, k) puts symbol k in column j of new row r + tau
        for j in range(n):
            for k in range(n):
                if layer.data[j][k]:
                    grid[r + tau - 1][j] = k + 1
    return [list(map(int, row)) for row in grid]


# -- the shared rectangle-extension engine -----------------------------------


def _fill_right_of(
    n: int, a: int, b: int, used_rows: dict[int, frozenset[int]]
) -> list[list[int]]:
    """Assign symbols to cells (i, j) for i <= a, j > b.

    ``used_rows[s]`` lists the footprint rows already covered by symbol s.
    Requires every row covered exactly b times and |used_rows[s]| >=
    a + b - n for all s (the generalized Ryser condition).
    """
    deficit = []
    for i in range(1, a + 1):
        row = [0] * n
        for s in range(1, n + 1):
            if i not in used_rows.get(s, frozenset()):
                row[s - 1] = 1
        if sum(row) != n - b:
            raise CompletionError(f"row {i} is covered {n - sum(row)} times, not {b}")
        deficit.append(row)
    d = BinMatrix.from_rows(deficit)
    for s in range(1, n + 1):
        have = len(used_rows.get(s, frozenset()))
        if have < a + b - n:
            raise CompletionError(
                f"symbol {s} occurs {have} times, fewer than r+s-n = {a + b - n}",
                witness=s,
            )
    square = ryser_adjoin(d, n - b)
    layers = koenig_decompose(square, n - b)
    out = [[0] * (n - b) for _ in range(a)]
    for tau, layer in enumerate(layers):
        for i in range(a):
            for s in range(n):
                if layer.data[i][s]:
                    out[i][tau] = s + 1
    return out


def _extend_cover(
    n: int,
    a: int,
    b: int,
    used_rows: dict[int, frozenset[int]],
    used_cols: dict[int, frozenset[int]],
) -> dict[tuple[int, int], int]:
    """Symbols for every cell outside an a x b footprint.

    The footprint itself is already covered: symbol s covers rows
    ``used_rows[s]`` and columns ``used_cols[s]`` (equal cardinalities).
    Fills columns b+1..n of the first a rows, then rows a+1..n entirely,
    never touching the footprint.
    """
    placements: dict[tuple[int, int], int] = {}
    right = _fill_right_of(n, a, b, used_rows)
    for i in range(a):
        for tau in range(n - b):
            placements[(i + 1, b + 1 + tau)] = right[i][tau]
    # column usage after the right-hand fill
    col_used: list[set[int]] = [set() for _ in range(n)]
    for s, cols in used_cols.items():
        for j in cols:
            col_used[j - 1].add(s)
    for (i, j), s in placements.items():
        col_used[j - 1].add(s)
    missing = []
    for j in range(n):
        if len(col_used[j]) != a:
            raise CompletionError(f"column {j + 1} covered {len(col_used[j])} times")
        missing.append([0 if s in col_used[j] else 1 for s in range(1, n + 1)])
    e = BinMatrix.from_rows(missing)
    layers = koenig_decompose(e, n - a)
    for tau, layer in enumerate(layers, start=1):
        for j in range(n):
            for s in range(n):
                if layer.data[j][s]:
                    placements[(a + tau, j + 1)] = s + 1
    return placements


# -- Ryser: extend an r x s rectangle ---------------------------------------


def ryser_extend(rect, n: int) -> list[list[int]]:
    """Extend an r x s Latin rectangle on symbols 1..n to an order-n square.

    Requires N(i) >= r + s - n for every symbol i (reported as the witness
    on failure).  Columns s+1..n of the first r rows come from a row
    adjunction, then the full rectangle is completed row-wise.
    """
    rect = [list(row) for row in rect]
    if not rect or not rect[0]:
        raise CompletionError("empty rectangle")
    r, s = len(rect), len(rect[0])
    if r > n or s > n:
        raise CompletionError("rectangle larger than the target order")
    if any(len(row) != s for row in rect):
        raise CompletionError("ragged rectangle")
    _validate_rectangle(rect, n, full_rows=False)
    counts = {sym: 0 for sym in range(1, n + 1)}
    for row in rect:
        for v in row:
            counts[v] += 1
    for sym in range(1, n + 1):
        if counts[sym] < r + s - n:
            raise CompletionError(
                f"symbol {sym} occurs {counts[sym]} times, fewer than "
                f"r+s-n = {r + s - n}",
                witness=sym,
            )
    if r == n and s == n:
        return rect
    used_rows: dict[int, set[int]] = {sym: set() for sym in range(1, n + 1)}
    for i, row in enumerate(rect, start=1):
        for v in row:
            used_rows[v].add(i)
    right = _fill_right_of(
        n, r, s, {sym: frozenset(v) for sym, v in used_rows.items()}
    )
    rows = [rect[i] + right[i] for i in range(r)]
    return hall_complete(rows)


# -- Cruse: embed a brick ----------------------------------------------------


@dataclass(frozen=True)
class CruseReport:
    """Result of checking the four brick-embedding conditions.

    Each condition is (ok, witness); layer witnesses are (index, count)
    pairs, the capacity witness is (rook count, cap).
    """

    n: int
    shape: tuple[int, int, int]
    row_layers: tuple[bool, tuple[int, int] | None]
    col_layers: tuple[bool, tuple[int, int] | None]
    sym_layers: tuple[bool, tuple[int, int] | None]
    capacity: tuple[bool, tuple[int, int]]

    @property
    def passed(self) -> bool:
        return (
            self.row_layers[0]
            and self.col_layers[0]
            and self.sym_layers[0]
            and self.capacity[0]
        )


def _layer_condition(counts: list[int], minimum: int) -> tuple[bool, tuple[int, int] | None]:
    for idx, c in enumerate(counts, start=1):
        if c < minimum:
            return False, (idx, c)
    return True, None


def cruse_check(board: Plsc, box: Box) -> CruseReport:
    """Evaluate the four embedding conditions for a brick of the board."""
    n = board.n
    box.validate(n)
    r, s, t = box.shape
    if max(r, s, t) >= n:
        raise CompletionError("brick dimensions must be below the order")
    rooks = board.rooks()
    for rook in rooks:
        if not box.contains(rook):
            raise BoardError(f"rook {tuple(rook)} outside the brick")
    rows = sorted(box.rows)
    cols = sorted(box.cols)
    syms = sorted(box.syms)
    row_counts = [sum(1 for c in rooks if c.i == i) for i in rows]
    col_counts = [sum(1 for c in rooks if c.j == j) for j in cols]
    sym_counts = [sum(1 for c in rooks if c.k == k) for k in syms]
    c0 = len(rooks)
    return CruseReport(
        n,
        (r, s, t),
        _layer_condition(row_counts, s + t - n),
        _layer_condition(col_counts, r + t - n),
        _layer_condition(sym_counts, r + s - n),
        (c0 <= cap(n, r, s, t), (c0, cap(n, r, s, t))),
    )


def _axis_maps(box: Box, n: int) -> tuple[list[int], list[int], list[int]]:
    """Relabelings sending each box component to an initial segment."""

    def one(part: frozenset[int]) -> list[int]:
        order = sorted(part) + sorted(set(range(1, n + 1)) - part)
        mapping = [0] * (n + 1)
        for new, old in enumerate(order, start=1):
            mapping[old] = new
        return mapping

    return one(box.rows), one(box.cols), one(box.syms)


def _invert(mapping: list[int]) -> list[int]:
    inv = [0] * len(mapping)
    for old, new in enumerate(mapping):
        if old:
            inv[new] = old
    return inv


def _corner_embed(
    n: int,
    r: int,
    s: int,
    t: int,
    rooks: list[Cell],
    occupied: set[tuple[int, int]],
    used_rows: dict[int, set[int]],
    used_cols: dict[int, set[int]],
) -> dict[tuple[int, int], int]:
    """Core of the embedding pipeline, in corner coordinates.

    ``occupied`` lists footprint cells whose file through the box depth is
    already taken; ``used_rows``/``used_cols`` record per-symbol coverage
    of the footprint (by rooks, or virtually by dots).  Returns symbols
    for every board cell except the occupied footprint cells.
    """
    k = n - t
    sheet_rows = [
        [0 if (i, j) in occupied else 1 for j in range(1, s + 1)]
        for i in range(1, r + 1)
    ]
    sheet = BinMatrix.from_rows(sheet_rows)
    filled = extend_to_column_regular(sheet, n, k)  # n x s, k per column
    square = ryser_adjoin(filled.transpose(), k).transpose()  # n x n
    layers = koenig_decompose(square, k) if k else []
    placements: dict[tuple[int, int], int] = {}
    cover_rows = {sym: frozenset(v) for sym, v in used_rows.items()}
    cover_cols = {sym: frozenset(v) for sym, v in used_cols.items()}
    for tau, layer in enumerate(layers, start=1):
        sym = t + tau
        in_rows, in_cols = set(), set()
        for i in range(n):
            for j in range(n):
                if layer.data[i][j] and i < r and j < s:
                    placements[(i + 1, j + 1)] = sym
                    in_rows.add(i + 1)
                    in_cols.add(j + 1)
        cover_rows[sym] = frozenset(in_rows)
        cover_cols[sym] = frozenset(in_cols)
    outside = _extend_cover(n, r, s, cover_rows, cover_cols)
    placements.update(outside)
    for rook in rooks:
        placements[(rook.i, rook.j)] = rook.k
    return placements


def cruse_embed(board: Plsc, box: Box) -> Plsc:
    """Embed the brick's rooks in an order-n Latin square.

    The brick is rotated so its dimensions are non-increasing, the cover
    sheet is extended to an (n - t)-regular matrix whose permutation
    layers fill symbols t+1..n above the brick, and the resulting full
    footprint rectangle is extended Ryser-style.  Requires a passing
    :func:`cruse_check`.
    """
    n = board.n
    report = cruse_check(board, box)
    if not report.passed:
        raise CompletionError(f"embedding conditions fail: {report}")
    r0, s0, t0 = box.shape
    perm = next(
        p
        for p in CONJUGATIONS
        if _permuted_shape((r0, s0, t0), p) == tuple(sorted((r0, s0, t0), reverse=True))
    )
    conj = board.conjugate(perm)
    cbox = _permute_box(box, perm)
    r, s, t = cbox.shape
    rmap, cmap, smap = _axis_maps(cbox, n)
    rooks = [
        Cell(rmap[c.i], cmap[c.j], smap[c.k]) for c in conj.rooks()
    ]
    occupied = {(c.i, c.j) for c in rooks}
    used_rows: dict[int, set[int]] = {sym: set() for sym in range(1, n + 1)}
    used_cols: dict[int, set[int]] = {sym: set() for sym in range(1, n + 1)}
    for c in rooks:
        used_rows[c.k].add(c.i)
        used_cols[c.k].add(c.j)
    placements = _corner_embed(n, r, s, t, rooks, occupied, used_rows, used_cols)
    rinv, cinv, sinv = _invert(rmap), _invert(cmap), _invert(smap)
    grid = [[0] * n for _ in range(n)]
    for (i, j), sym in placements.items():
        grid[rinv[i] - 1][cinv[j] - 1] = sinv[sym]
    if not is_latin_square(grid):
        raise CompletionError("pipeline produced an invalid square")
    completed = from_pls(grid, n).conjugate(conjugation_inverse(perm))
    for rook in board.rooks():
        assert completed.is_rook(rook)
    return completed


def _permuted_shape(shape: tuple[int, int, int], perm: str) -> tuple[int, int, int]:
    slot = {"i": 0, "j": 1, "k": 2}
    out = [0, 0, 0]
    for pos, ch in enumerate(perm):
        out[pos] = shape[slot[ch]]
    return tuple(out)


def _permute_box(box: Box, perm: str) -> Box:
    parts = {"i": box.rows, "j": box.cols, "k": box.syms}
    chosen = [parts[ch] for ch in perm]
    return Box(chosen[0], chosen[1], chosen[2])
