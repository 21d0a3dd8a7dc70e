"""Core data model: 3-D rook boards for partial Latin squares.

A partial Latin square of order n is represented on an n x n x n board.
Placing symbol k in cell (i, j) of the square corresponds to a *rook* at
board cell (i, j, k).  A *file* is an axis-parallel line of n cells; a
completed square has exactly one rook per file.  Cells that may still
receive a rook carry a *dot* (a candidate); the remaining cells are empty.

Boards are immutable values: every mutator returns a new board.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

EMPTY = 0
DOT = 1
ROOK = 2

#: The six conjugate (role) permutations.  The name spells out where the
#: coordinates of a cell (i, j, k) end up: "jki" sends a rook at (i, j, k)
#: to (j, k, i).
CONJUGATIONS = ("ijk", "ikj", "jik", "jki", "kij", "kji")

_AXIS_OF = {"i": 0, "j": 1, "k": 2}


class BoardError(ValueError):
    """Invalid board content (duplicate symbols, attacking rooks, ...)."""


class MoveError(ValueError):
    """Illegal board mutation (e.g. placing a rook on a non-dot cell)."""


class Cell(NamedTuple):
    """A board cell, 1-based: row i, column j, symbol k."""

    i: int
    j: int
    k: int


class FileId(NamedTuple):
    """An axis-parallel line of n cells.

    ``axis`` names the free coordinate ("i", "j" or "k"); ``a`` and ``b``
    are the two fixed coordinates in (i, j, k) order with the free one
    removed.  Every cell lies in exactly three files.
    """

    axis: str
    a: int
    b: int

    def cells(self, n: int) -> Iterator[Cell]:
        if self.axis == "i":
            return (Cell(v, self.a, self.b) for v in range(1, n + 1))
        if self.axis == "j":
            return (Cell(self.a, v, self.b) for v in range(1, n + 1))
        return (Cell(self.a, self.b, v) for v in range(1, n + 1))


def files_of(cell: Cell) -> tuple[FileId, FileId, FileId]:
    """The three files through a cell."""
    i, j, k = cell
    return (FileId("i", j, k), FileId("j", i, k), FileId("k", i, j))


def all_files(n: int) -> Iterator[FileId]:
    for axis in ("i", "j", "k"):
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                yield FileId(axis, a, b)


def hamming(c: Cell, d: Cell) -> int:
    return (c.i != d.i) + (c.j != d.j) + (c.k != d.k)


@dataclass(frozen=True)
class Box:
    """A combinatorial brick: subsets of row, column and symbol indices.

    Subsets need not be contiguous; a box of sizes r x s x t behaves like
    a corner brick through an index-translation view, never a physical
    permutation of the board.
    """

    rows: frozenset[int]
    cols: frozenset[int]
    syms: frozenset[int]

    def __init__(self, rows: Iterable[int], cols: Iterable[int], syms: Iterable[int]):
        object.__setattr__(self, "rows", frozenset(rows))
        object.__setattr__(self, "cols", frozenset(cols))
        object.__setattr__(self, "syms", frozenset(syms))

    @classmethod
    def corner(cls, r: int, s: int, t: int) -> Box:
        return cls(range(1, r + 1), range(1, s + 1), range(1, t + 1))

    def validate(self, n: int) -> None:
        for part in (self.rows, self.cols, self.syms):
            if not part:
                raise BoardError("box components must be non-empty")
            if min(part) < 1 or max(part) > n:
                raise BoardError(f"box indices out of range for order {n}")

    @property
    def shape(self) -> tuple[int, int, int]:
        return (len(self.rows), len(self.cols), len(self.syms))

    def contains(self, cell: Cell) -> bool:
        return cell.i in self.rows and cell.j in self.cols and cell.k in self.syms

    def complement(self, n: int) -> Box:
        full = frozenset(range(1, n + 1))
        return Box(full - self.rows, full - self.cols, full - self.syms)

    def cells(self) -> Iterator[Cell]:
        for i in sorted(self.rows):
            for j in sorted(self.cols):
                for k in sorted(self.syms):
                    yield Cell(i, j, k)

    def sort_key(self) -> tuple:
        return (tuple(sorted(self.rows)), tuple(sorted(self.cols)), tuple(sorted(self.syms)))


@dataclass(frozen=True)
class Pls:
    """Projection of a board: a partial square plus candidate sets.

    ``grid[i-1][j-1]`` is the placed symbol or None; ``candidates`` maps
    each empty (i, j) to the set of symbols that may still go there.
    """

    n: int
    grid: tuple[tuple[int | None, ...], ...]
    candidates: dict[tuple[int, int], frozenset[int]]


@dataclass(frozen=True, eq=True)
class Plsc:
    """An order-n board whose cells are empty, dot or rook.

    Invariants (maintained by all public constructors and operations):

    * non-attacking: every file contains at most one rook;
    * auto-eliminated: no dot shares a file with a rook.

    The raw constructor does not validate; use :func:`new_empty`,
    :func:`from_pls` or the parsers, or call :meth:`check` after building
    states by hand.
    """

    n: int
    states: bytes

    def _idx(self, i: int, j: int, k: int) -> int:
        n = self.n
        return ((i - 1) * n + (j - 1)) * n + (k - 1)

    def state_at(self, cell: Cell | tuple[int, int, int]) -> int:
        i, j, k = cell
        return self.states[self._idx(i, j, k)]

    def is_rook(self, cell: Cell) -> bool:
        return self.state_at(cell) == ROOK

    def is_dot(self, cell: Cell) -> bool:
        return self.state_at(cell) == DOT

    def cells(self) -> Iterator[Cell]:
        n = self.n
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for k in range(1, n + 1):
                    yield Cell(i, j, k)

    def rooks(self) -> tuple[Cell, ...]:
        return tuple(c for c in self.cells() if self.states[self._idx(*c)] == ROOK)

    def dots(self) -> tuple[Cell, ...]:
        return tuple(c for c in self.cells() if self.states[self._idx(*c)] == DOT)

    def rook_count(self) -> int:
        return self.states.count(ROOK)

    def dot_count(self) -> int:
        return self.states.count(DOT)

    def file_cells(self, f: FileId) -> Iterator[Cell]:
        return f.cells(self.n)

    def rook_in_file(self, f: FileId) -> Cell | None:
        for c in f.cells(self.n):
            if self.state_at(c) == ROOK:
                return c
        return None

    def dots_in_file(self, f: FileId) -> tuple[Cell, ...]:
        return tuple(c for c in f.cells(self.n) if self.state_at(c) == DOT)

    def check(self) -> Plsc:
        """Validate both board invariants; returns self for chaining."""
        for f in all_files(self.n):
            rooks = 0
            dots = 0
            for c in f.cells(self.n):
                s = self.state_at(c)
                if s == ROOK:
                    rooks += 1
                elif s == DOT:
                    dots += 1
            if rooks > 1:
                raise BoardError(f"attacking rooks in file {f}")
            if rooks == 1 and dots:
                raise BoardError(f"dot shares file {f} with a rook")
        return self

    # -- queries -----------------------------------------------------------

    def candidate_set(self, i: int, j: int) -> frozenset[int] | None:
        """Candidates of square cell (i, j): symbols k with a dot at (i, j, k).

        Returns None when the cell already holds a rook (the cell is not
        empty, so it has no candidate set); an empty frozenset signals an
        eliminated file.
        """
        n = self.n
        dots = []
        for k in range(1, n + 1):
            s = self.state_at((i, j, k))
            if s == ROOK:
                return None
            if s == DOT:
                dots.append(k)
        return frozenset(dots)

    def status(self) -> str:
        """"completed", "dead" (an eliminated file exists) or "open"."""
        if self.rook_count() == self.n * self.n:
            return "completed"
        for f in all_files(self.n):
            rook = None
            dots = 0
            for c in f.cells(self.n):
                s = self.state_at(c)
                if s == ROOK:
                    rook = c
                    break
                if s == DOT:
                    dots += 1
            if rook is None and dots == 0:
                return "dead"
        return "open"

    def box_census(self, box: Box) -> tuple[int, int]:
        """(rook count, dot count) over the cells of a box."""
        box.validate(self.n)
        rooks = dots = 0
        for c in box.cells():
            s = self.state_at(c)
            if s == ROOK:
                rooks += 1
            elif s == DOT:
                dots += 1
        return rooks, dots

    def project(self) -> Pls:
        """Project to a partial square with candidate sets."""
        n = self.n
        grid: list[list[int | None]] = [[None] * n for _ in range(n)]
        cands: dict[tuple[int, int], frozenset[int]] = {}
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                cs = self.candidate_set(i, j)
                if cs is None:
                    for k in range(1, n + 1):
                        if self.state_at((i, j, k)) == ROOK:
                            grid[i - 1][j - 1] = k
                            break
                else:
                    cands[(i, j)] = cs
        return Pls(n, tuple(tuple(row) for row in grid), cands)

    # -- operations --------------------------------------------------------

    def place_rook(self, cell: Cell | tuple[int, int, int]) -> Plsc:
        """Place a rook on a dot; dots in the three files through it vanish."""
        cell = Cell(*cell)
        if self.state_at(cell) != DOT:
            raise MoveError(f"cell {tuple(cell)} does not hold a dot")
        states = bytearray(self.states)
        for f in files_of(cell):
            for c in f.cells(self.n):
                if states[self._idx(*c)] == DOT:
                    states[self._idx(*c)] = EMPTY
        states[self._idx(*cell)] = ROOK
        return Plsc(self.n, bytes(states))

    def eliminate(self, cells: Iterable[Cell]) -> Plsc:
        """Remove dots from the given cells (non-dots are rejected)."""
        states = bytearray(self.states)
        for cell in cells:
            idx = self._idx(*cell)
            if states[idx] != DOT:
                raise MoveError(f"cell {tuple(cell)} does not hold a dot")
            states[idx] = EMPTY
        return Plsc(self.n, bytes(states))

    def conjugate(self, perm: str) -> Plsc:
        """Apply a role permutation: "jki" maps cell (i, j, k) to (j, k, i)."""
        if perm not in CONJUGATIONS:
            raise ValueError(f"unknown conjugation {perm!r}")
        n = self.n
        states = bytearray(n * n * n)
        sel = tuple(_AXIS_OF[ch] for ch in perm)
        for c in self.cells():
            image = (c[sel[0]], c[sel[1]], c[sel[2]])
            states[self._idx(*image)] = self.state_at(c)
        return Plsc(n, bytes(states))

    def extends(self, other: Plsc) -> bool:
        """True when this board refines ``other``: it keeps every rook of
        ``other`` and introduces no dot ``other`` lacked."""
        if self.n != other.n:
            return False
        for a, b in zip(other.states, self.states):
            if a == ROOK and b != ROOK:
                return False
            if b == DOT and a != DOT:
                return False
        return True


def conjugation_inverse(perm: str) -> str:
    sel = tuple(_AXIS_OF[ch] for ch in perm)
    inv = [""] * 3
    for pos, axis in enumerate(sel):
        inv[axis] = "ijk"[pos]
    return "".join(inv)


def new_empty(n: int) -> Plsc:
    """The order-n board with a dot in every cell and no rooks."""
    if n < 1:
        raise BoardError(f"invalid order {n}")
    return Plsc(n, bytes([DOT]) * (n * n * n))


def from_pls(grid: Iterable[Iterable[int | None]], n: int | None = None) -> Plsc:
    """Build a board from a partial square.

    ``grid`` is an n x n array of symbols in 1..n, with None (or 0) for
    empty cells.  Rooks go at (i, j, grid[i][j]); every cell not sharing a
    file with a rook gets a dot.
    """
    rows = [list(r) for r in grid]
    if n is None:
        n = len(rows)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise BoardError("grid must be n x n")
    filled: dict[tuple[int, int], int] = {}
    for i, row in enumerate(rows, start=1):
        for j, v in enumerate(row, start=1):
            if v in (None, 0):
                continue
            if not isinstance(v, int) or not 1 <= v <= n:
                raise BoardError(f"symbol {v!r} out of range at ({i},{j})")
            filled[(i, j)] = v
    row_used: dict[tuple[int, int], bool] = {}
    col_used: dict[tuple[int, int], bool] = {}
    for (i, j), k in filled.items():
        if row_used.get((i, k)):
            raise BoardError(f"symbol {k} repeats in row {i}")
        if col_used.get((j, k)):
            raise BoardError(f"symbol {k} repeats in column {j}")
        row_used[(i, k)] = True
        col_used[(j, k)] = True
    board = new_empty(n)
    states = bytearray(board.states)
    for (i, j), k in filled.items():
        for f in files_of(Cell(i, j, k)):
            for c in f.cells(n):
                states[board._idx(*c)] = EMPTY
    for (i, j), k in filled.items():
        states[board._idx(i, j, k)] = ROOK
    return Plsc(n, bytes(states))


def to_grid(board: Plsc) -> list[list[int | None]]:
    """The square of placed symbols (None where empty)."""
    n = board.n
    grid: list[list[int | None]] = [[None] * n for _ in range(n)]
    for c in board.rooks():
        grid[c.i - 1][c.j - 1] = c.k
    return grid


def is_latin_square(grid: Iterable[Iterable[int]]) -> bool:
    rows = [list(r) for r in grid]
    n = len(rows)
    syms = set(range(1, n + 1))
    if any(len(r) != n for r in rows):
        return False
    if any(set(r) != syms for r in rows):
        return False
    return all({rows[i][j] for i in range(n)} == syms for j in range(n))
