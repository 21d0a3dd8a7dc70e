"""Compact bricks: layer potentials, embedding and solvability.

A brick is an a x b x c block of cell states, possibly carved out of a
board, possibly built by hand.  A layer is *possible* when the files
holding dots or rooks are equally many in both of its directions; a brick
all of whose layers are possible, with the three per-axis totals equal, is
*compact*.  Compact bricks embed into larger orders independently of their
surroundings: whether the brick itself is solvable depends only on its own
dot structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .board import Box, BoardError, Cell, DOT, EMPTY, MoveError, Plsc, ROOK
from .completion import CompletionError, _corner_embed, cap


@dataclass(frozen=True)
class Brick:
    """An a x b x c block of Empty/Dot/Rook states."""

    a: int
    b: int
    c: int
    states: bytes

    def _idx(self, i: int, j: int, k: int) -> int:
        return ((i - 1) * self.b + (j - 1)) * self.c + (k - 1)

    def state_at(self, cell: Cell | tuple[int, int, int]) -> int:
        i, j, k = cell
        return self.states[self._idx(i, j, k)]

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def cells(self):
        for i in range(1, self.a + 1):
            for j in range(1, self.b + 1):
                for k in range(1, self.c + 1):
                    yield Cell(i, j, k)

    def rooks(self) -> tuple[Cell, ...]:
        return tuple(c for c in self.cells() if self.state_at(c) == ROOK)

    def dots(self) -> tuple[Cell, ...]:
        return tuple(c for c in self.cells() if self.state_at(c) == DOT)

    def with_dot(self, cell: Cell | tuple[int, int, int]) -> Brick:
        cell = Cell(*cell)
        if self.state_at(cell) != EMPTY:
            raise MoveError(f"cell {tuple(cell)} is not empty")
        states = bytearray(self.states)
        states[self._idx(*cell)] = DOT
        return Brick(self.a, self.b, self.c, bytes(states))

    def check(self) -> Brick:
        """Rooks non-attacking and rook files dot-free, within the brick."""
        for axis, da, db in (("i", "j", "k"), ("j", "i", "k"), ("k", "i", "j")):
            sizes = dict(zip("ijk", self.shape))
            for x in range(1, sizes[da] + 1):
                for y in range(1, sizes[db] + 1):
                    rooks = dots = 0
                    for v in range(1, sizes[axis] + 1):
                        coords = {axis: v, da: x, db: y}
                        s = self.state_at((coords["i"], coords["j"], coords["k"]))
                        if s == ROOK:
                            rooks += 1
                        elif s == DOT:
                            dots += 1
                    if rooks > 1:
                        raise BoardError("attacking rooks inside the brick")
                    if rooks and dots:
                        raise BoardError("dot shares a brick file with a rook")
        return self


def brick_from_cells(
    a: int, b: int, c: int, dots: Iterable[tuple] = (), rooks: Iterable[tuple] = ()
) -> Brick:
    states = bytearray(a * b * c)
    brick = Brick(a, b, c, bytes(states))
    for cell in dots:
        states[brick._idx(*cell)] = DOT
    for cell in rooks:
        states[brick._idx(*cell)] = ROOK
    return Brick(a, b, c, bytes(states)).check()


def dot_hull(board: Plsc) -> Box:
    """Smallest box containing every dot of the board."""
    dots = board.dots()
    if not dots:
        raise BoardError("board has no dots")
    return Box({c.i for c in dots}, {c.j for c in dots}, {c.k for c in dots})


def closure_hull(board: Plsc) -> Box:
    """Smallest box containing every rook and dot of the board."""
    cells = board.rooks() + board.dots()
    if not cells:
        raise BoardError("board is entirely empty")
    return Box({c.i for c in cells}, {c.j for c in cells}, {c.k for c in cells})


def extract_brick(board: Plsc, box: Box) -> Brick:
    """Copy the box contents of a board into a corner brick."""
    box.validate(board.n)
    rows, cols, syms = sorted(box.rows), sorted(box.cols), sorted(box.syms)
    a, b, c = len(rows), len(cols), len(syms)
    states = bytearray(a * b * c)
    out = Brick(a, b, c, bytes(states))
    for x, i in enumerate(rows, start=1):
        for y, j in enumerate(cols, start=1):
            for z, k in enumerate(syms, start=1):
                states[out._idx(x, y, z)] = board.state_at((i, j, k))
    return Brick(a, b, c, bytes(states))


# -- potentials and compactness ----------------------------------------------


@dataclass(frozen=True)
class LayerWitness:
    """A layer whose two file directions disagree."""

    axis: str
    index: int
    counts: tuple[int, int]


@dataclass(frozen=True)
class Potentials:
    """Per-layer potentials; None marks an impossible layer.

    ``witnesses`` collects every layer whose two file directions disagree,
    with both counts.
    """

    x: tuple[int | None, ...]
    y: tuple[int | None, ...]
    z: tuple[int | None, ...]
    witnesses: tuple[LayerWitness, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.witnesses


def _occupied(brick: Brick, cell) -> bool:
    return brick.state_at(cell) != EMPTY


def potentials(brick: Brick) -> Potentials:
    """Potential of every layer of the brick, axis by axis.

    A row layer (fixed i) is a b x c grid; its potential is the common
    number of occupied files counted along columns and along symbols.
    Mismatched layers get a witness carrying both counts.
    """
    brick.check()
    a, b, c = brick.shape

    def occupied_line(axis: str, fixed: dict[str, int]) -> bool:
        hi = dict(zip("ijk", brick.shape))[axis]
        for v in range(1, hi + 1):
            coords = dict(fixed)
            coords[axis] = v
            if _occupied(brick, (coords["i"], coords["j"], coords["k"])):
                return True
        return False

    witnesses: list[LayerWitness] = []

    def scan(layer_axis: str, da: str, db: str, hi: int) -> list[int | None]:
        out: list[int | None] = []
        sizes = dict(zip("ijk", brick.shape))
        for v in range(1, hi + 1):
            first = sum(
                1
                for x in range(1, sizes[da] + 1)
                if occupied_line(db, {layer_axis: v, da: x})
            )
            second = sum(
                1
                for y in range(1, sizes[db] + 1)
                if occupied_line(da, {layer_axis: v, db: y})
            )
            if first == second:
                out.append(first)
            else:
                out.append(None)
                witnesses.append(LayerWitness(layer_axis, v, (first, second)))
        return out

    xs = scan("i", "j", "k", a)
    ys = scan("j", "i", "k", b)
    zs = scan("k", "i", "j", c)
    return Potentials(tuple(xs), tuple(ys), tuple(zs), tuple(witnesses))


def is_compact(brick: Brick) -> int | None:
    """The brick potential, or None with layer/total disagreement."""
    pot = potentials(brick)
    if not pot.ok:
        return None
    sx, sy, sz = sum(pot.x), sum(pot.y), sum(pot.z)
    if sx == sy == sz:
        return sx
    return None


def diameter(brick: Brick) -> int:
    """An order beyond which the embedding conditions always hold; the
    dimension sum is a convenient upper bound."""
    return brick.a + brick.b + brick.c


@dataclass(frozen=True)
class CompactReport:
    """The four embedding conditions for a compact brick at order n."""

    n: int
    shape: tuple[int, int, int]
    potential: int
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


def _threshold(values: tuple[int, ...], minimum: int):
    for idx, v in enumerate(values, start=1):
        if v < minimum:
            return False, (idx, v)
    return True, None


def compact_cruse_check(brick: Brick, n: int) -> CompactReport:
    """Evaluate the embedding condition system for a compact brick."""
    pot = potentials(brick)
    if not pot.ok:
        raise CompletionError(f"brick is not compact: {pot.witness}")
    p0 = is_compact(brick)
    if p0 is None:
        raise CompletionError("brick layer totals disagree")
    a, b, c = brick.shape
    return CompactReport(
        n,
        (a, b, c),
        p0,
        _threshold(pot.x, b + c - n),
        _threshold(pot.y, a + c - n),
        _threshold(pot.z, a + b - n),
        (p0 <= cap(n, a, b, c), (p0, cap(n, a, b, c))),
    )


# -- embedding ----------------------------------------------------------------


def embed_compact(brick: Brick, n: int) -> Plsc:
    """Place the brick at the origin of an order-n board and fully extend it.

    Every file of the brick holding rooks or dots is treated as occupied;
    the remaining n^2 - p0 files receive non-attacking rooks outside the
    brick.  The returned board keeps the brick's dots untouched, so any
    solution of the brick combines with the extension into a Latin square.
    """
    a, b, c = brick.shape
    if max(a, b, c) > n:
        raise CompletionError("brick does not fit the order")
    report = compact_cruse_check(brick, n)
    if not report.passed:
        raise CompletionError(f"embedding conditions fail: {report}")
    occupied: set[tuple[int, int]] = set()
    used_rows: dict[int, set[int]] = {sym: set() for sym in range(1, n + 1)}
    used_cols: dict[int, set[int]] = {sym: set() for sym in range(1, n + 1)}
    for i in range(1, a + 1):
        for j in range(1, b + 1):
            if any(_occupied(brick, (i, j, k)) for k in range(1, c + 1)):
                occupied.add((i, j))
    for k in range(1, c + 1):
        for i in range(1, a + 1):
            if any(_occupied(brick, (i, j, k)) for j in range(1, b + 1)):
                used_rows[k].add(i)
        for j in range(1, b + 1):
            if any(_occupied(brick, (i, j, k)) for i in range(1, a + 1)):
                used_cols[k].add(j)
    placements = _corner_embed(n, a, b, c, [], occupied, used_rows, used_cols)
    # assemble: brick states in the corner, extension rooks elsewhere
    board = Plsc(n, bytes(n * n * n))
    states = bytearray(board.states)
    for cell in brick.cells():
        states[board._idx(*cell)] = brick.state_at(cell)
    for (i, j), sym in placements.items():
        if (i, j) in occupied:
            continue
        states[board._idx(i, j, sym)] = ROOK
    return Plsc(n, bytes(states)).check()


# -- solving -------------------------------------------------------------------


def solve_compact(brick: Brick) -> tuple[Cell, ...] | None:
    """One rook per occupied file, or None.

    Existing rooks stay; each cell file holding dots contributes exactly
    one new rook, and the chosen rooks must be mutually non-attacking.
    Cell files are processed in index order with symbols ascending, so the
    first solution found is the lexicographically least one.
    """
    brick.check()
    a, b, c = brick.shape
    targets: list[tuple[int, int, list[int]]] = []
    chosen: list[Cell] = list(brick.rooks())
    for i in range(1, a + 1):
        for j in range(1, b + 1):
            syms = [k for k in range(1, c + 1) if brick.state_at((i, j, k)) == DOT]
            if syms:
                targets.append((i, j, syms))
    row_used = {(cell.i, cell.k) for cell in chosen}
    col_used = {(cell.j, cell.k) for cell in chosen}

    out: list[Cell] = []

    def rec(pos: int) -> bool:
        if pos == len(targets):
            return True
        i, j, syms = targets[pos]
        for k in syms:
            if (i, k) in row_used or (j, k) in col_used:
                continue
            row_used.add((i, k))
            col_used.add((j, k))
            out.append(Cell(i, j, k))
            if rec(pos + 1):
                return True
            out.pop()
            row_used.discard((i, k))
            col_used.discard((j, k))
        return False

    if rec(0):
        return tuple(sorted(chosen + out))
    return None
