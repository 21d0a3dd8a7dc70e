"""Candidate elimination engines.

Two completion-preserving transformations:

* primary extension: a dot alone in one of its files (a *desolate* dot)
  must become a rook; repeat until none is left.  The result is unique no
  matter in which order desolate cells are treated.
* secondary extension: a dot inside a stuffed remote brick couple, or cut
  off by a balanced layer rectangle with a perfect mate, can never become
  a rook (a *deceptive* dot); eliminate all of them, re-run the primary
  extension, repeat to the fixpoint.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .board import Box, Cell, DOT, EMPTY, Plsc, ROOK, all_files, files_of

#: Largest order for which box sweeps enumerate every subset triple.
EXHAUSTIVE_SWEEP_BOUND = {"boxes": 8, "deceptive": 6}


def rbc_capacity(n: int, r: int, s: int, t: int) -> int:
    """Most rooks a completion puts in an r x s x t box plus its remote mate."""
    return (r * s * t + (n - r) * (n - s) * (n - t)) // n


# -- reports -----------------------------------------------------------------


@dataclass(frozen=True)
class RbcWitness:
    """A box (or layer rectangle) certifying an elimination or violation.

    ``kind`` is "box" (plain capacity), "rbc" (couple capacity) or
    "layer" (balanced rectangle in a layer, with ``axis``/``index`` set).
    """

    kind: str
    box: Box
    mate: Box | None
    rooks: tuple[int, int]
    bound: int
    axis: str | None = None
    index: int | None = None


@dataclass(frozen=True)
class CapacityResult:
    status: str  # "pass" | "violated" | "bound_exceeded"
    witness: RbcWitness | None = None


@dataclass(frozen=True)
class DeceptiveScan:
    """Deceptive dots with one witness each; ``exhaustive`` records whether
    every subset box was swept or only cluster-generated ones."""

    dots: dict[Cell, RbcWitness]
    exhaustive: bool


@dataclass(frozen=True)
class ExtensionReport:
    """Trace of a primary or secondary extension run."""

    outcome: str  # "completed" | "extended" | "not_completable"
    treated: tuple[Cell, ...]
    eliminated: tuple[Cell, ...]
    rounds: tuple[Plsc, ...]
    reason: str | None = None
    witness: RbcWitness | None = None
    exhaustive: bool = True


# -- primary extension --------------------------------------------------------


def desolate_cells(board: Plsc) -> tuple[Cell, ...]:
    """Dots that are alone in at least one of their files."""
    out = []
    seen = set()
    for f in all_files(board.n):
        dots = board.dots_in_file(f)
        if len(dots) == 1 and board.rook_in_file(f) is None:
            if dots[0] not in seen:
                seen.add(dots[0])
                out.append(dots[0])
    return tuple(sorted(out))


def primary_extend(
    board: Plsc, *, rng: random.Random | None = None
) -> tuple[Plsc, ExtensionReport]:
    """Treat desolate cells until none remains.

    The desolate cell to treat is an arbitrary choice (randomised via
    ``rng``); the final board is the same for every order.
    """
    current = board
    treated: list[Cell] = []
    eliminated: list[Cell] = []
    while True:
        status = current.status()
        if status == "completed":
            outcome = "completed"
            break
        if status == "dead":
            outcome = "not_completable"
            break
        desolate = desolate_cells(current)
        if not desolate:
            outcome = "extended"
            break
        cell = desolate[0] if rng is None else rng.choice(desolate)
        for f in files_of(cell):
            for c in current.file_cells(f):
                if c != cell and current.state_at(c) == DOT:
                    eliminated.append(c)
        current = current.place_rook(cell)
        treated.append(cell)
    return current, ExtensionReport(
        outcome,
        tuple(treated),
        tuple(eliminated),
        (board, current),
    )


# -- subset sweeps -------------------------------------------------------------


def _subsets_lex(n: int) -> Iterator[tuple[int, ...]]:
    """Non-empty subsets of 1..n in lexicographic tuple order."""

    def rec(prefix: tuple[int, ...], start: int) -> Iterator[tuple[int, ...]]:
        for v in range(start, n + 1):
            cur = prefix + (v,)
            yield cur
            yield from rec(cur, v + 1)

    yield from rec((), 1)


def _mask(subset: tuple[int, ...]) -> int:
    m = 0
    for v in subset:
        m |= 1 << (v - 1)
    return m


def _subset_counts(vector: list[int], n: int) -> list[int]:
    """sums[mask] = sum of vector entries selected by the mask."""
    sums = [0] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        sums[m] = sums[m ^ low] + vector[low.bit_length() - 1]
    return sums


class _BoxCounter:
    """Rook/dot counts for arbitrary subset boxes of one board.

    Caches per-(rows, cols) subset sums only at small orders; the cache
    would dominate memory for the order-8 exhaustive sweep.
    """

    def __init__(self, board: Plsc):
        self.n = board.n
        self.rooks = board.rooks()
        self.dots = board.dots()
        self._cache_enabled = board.n <= 6
        self._rook_cache: dict[tuple[int, int], list[int]] = {}
        self._dot_cache: dict[tuple[int, int], list[int]] = {}

    def _vector(self, cells, rmask: int, cmask: int) -> list[int]:
        vec = [0] * self.n
        for c in cells:
            if rmask >> (c.i - 1) & 1 and cmask >> (c.j - 1) & 1:
                vec[c.k - 1] += 1
        return vec

    def _sums(self, cells, cache, rmask: int, cmask: int) -> list[int]:
        key = (rmask, cmask)
        hit = cache.get(key)
        if hit is not None:
            return hit
        sums = _subset_counts(self._vector(cells, rmask, cmask), self.n)
        if self._cache_enabled:
            cache[key] = sums
        return sums

    def rook_sums(self, rmask: int, cmask: int) -> list[int]:
        return self._sums(self.rooks, self._rook_cache, rmask, cmask)

    def dot_sums(self, rmask: int, cmask: int) -> list[int]:
        return self._sums(self.dots, self._dot_cache, rmask, cmask)


def _piece_clusters(board: Plsc) -> list[list[Cell]]:
    """Connected components of rooks and dots under file sharing."""
    pieces = list(board.rooks() + board.dots())
    index = {c: i for i, c in enumerate(pieces)}
    parent = list(range(len(pieces)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    by_file: dict[tuple, list[Cell]] = {}
    for c in pieces:
        for f in files_of(c):
            by_file.setdefault(f, []).append(c)
    for group in by_file.values():
        for other in group[1:]:
            union(index[group[0]], index[other])
    clusters: dict[int, list[Cell]] = {}
    for c in pieces:
        clusters.setdefault(find(index[c]), []).append(c)
    return list(clusters.values())


def _candidate_boxes(board: Plsc, exhaustive: bool) -> Iterator[Box]:
    n = board.n
    if exhaustive:
        subsets = list(_subsets_lex(n))
        for rows in subsets:
            for cols in subsets:
                for syms in subsets:
                    yield Box(rows, cols, syms)
        return
    full = frozenset(range(1, n + 1))
    seen = set()
    hulls = []
    for cluster in _piece_clusters(board):
        hulls.append(
            Box(
                {c.i for c in cluster},
                {c.j for c in cluster},
                {c.k for c in cluster},
            )
        )
    for box in hulls:
        for candidate in (box, box.complement(n)):
            if (
                candidate.rows and candidate.cols and candidate.syms
                and candidate.sort_key() not in seen
            ):
                seen.add(candidate.sort_key())
                yield Box(candidate.rows, candidate.cols, candidate.syms)


def capacity_check(board: Plsc) -> CapacityResult:
    """Verify every box and remote brick couple against its rook capacity.

    Exhaustive over all subset triples up to order 8; beyond that the
    check refuses to claim a pass.
    """
    n = board.n
    if n > EXHAUSTIVE_SWEEP_BOUND["boxes"]:
        return CapacityResult("bound_exceeded")
    from .completion import effective_cap

    counter = _BoxCounter(board)
    subsets = list(_subsets_lex(n))
    masks = {s: _mask(s) for s in subsets}
    full = (1 << n) - 1
    for rows in subsets:
        rmask = masks[rows]
        for cols in subsets:
            cmask = masks[cols]
            sums = counter.rook_sums(rmask, cmask)
            csums = counter.rook_sums(full ^ rmask, full ^ cmask)
            r, s = len(rows), len(cols)
            for syms in subsets:
                smask = masks[syms]
                t = len(syms)
                inside = sums[smask]
                bound = effective_cap(n, r, s, t)
                if inside > bound:
                    box = Box(rows, cols, syms)
                    return CapacityResult(
                        "violated",
                        RbcWitness("box", box, None, (inside, 0), bound),
                    )
                mate_count = csums[full ^ smask]
                rbc_bound = rbc_capacity(n, r, s, t)
                if inside + mate_count > rbc_bound:
                    box = Box(rows, cols, syms)
                    return CapacityResult(
                        "violated",
                        RbcWitness(
                            "rbc",
                            box,
                            box.complement(n),
                            (inside, mate_count),
                            rbc_bound,
                        ),
                    )
    return CapacityResult("pass")


# -- deceptive dots ------------------------------------------------------------


def _axis_fields(axis: str) -> tuple[str, str]:
    return {"i": ("j", "k"), "j": ("i", "k"), "k": ("i", "j")}[axis]


def deceptive_dots(board: Plsc) -> DeceptiveScan:
    """Dots that no completion can turn into rooks.

    Rule 1: a remote brick couple holding exactly its capacity in rooks is
    *stuffed*; every dot inside either brick is deceptive.  Rule 2: inside
    a single layer, a rectangle pair (A, remote mate) whose rook counts
    differ by exactly |rows| + |cols| - n is *balanced*; when one side is
    dot-free, the other side's dots are deceptive.

    Run after the primary extension (no desolate dots).  Sweeps are
    exhaustive up to order 6; larger orders try only boxes spanned by
    connected piece clusters and their complements, and say so.
    """
    n = board.n
    exhaustive = n <= EXHAUSTIVE_SWEEP_BOUND["deceptive"]
    counter = _BoxCounter(board)
    found: dict[Cell, RbcWitness] = {}
    full = (1 << n) - 1

    # rule 1: stuffed couples
    for box in _candidate_boxes(board, exhaustive):
        rmask = _mask(tuple(sorted(box.rows)))
        cmask = _mask(tuple(sorted(box.cols)))
        smask = _mask(tuple(sorted(box.syms)))
        inside = counter.rook_sums(rmask, cmask)[smask]
        mate_count = counter.rook_sums(full ^ rmask, full ^ cmask)[full ^ smask]
        r, s, t = box.shape
        bound = rbc_capacity(n, r, s, t)
        if inside + mate_count != bound:
            continue
        dots_inside = counter.dot_sums(rmask, cmask)[smask]
        dots_mate = counter.dot_sums(full ^ rmask, full ^ cmask)[full ^ smask]
        if not dots_inside and not dots_mate:
            continue
        mate = box.complement(n)
        witness = RbcWitness("rbc", box, mate, (inside, mate_count), bound)
        for dot in board.dots():
            if dot not in found and (box.contains(dot) or mate.contains(dot)):
                found[dot] = witness

    # rule 2: balanced layer rectangles with a perfect side
    for axis in ("i", "j", "k"):
        fa, fb = _axis_fields(axis)
        for layer in range(1, n + 1):
            rooks = [c for c in board.rooks() if getattr(c, axis) == layer]
            dots = [c for c in board.dots() if getattr(c, axis) == layer]
            if not dots:
                continue
            pairs = _layer_rect_pairs(board, axis, layer, rooks, dots, exhaustive, n)
            rook_sums = _grid_subset_sums(rooks, fa, fb, n)
            dot_sums = _grid_subset_sums(dots, fa, fb, n)
            full_mask = (1 << n) - 1
            for sa, sb, amask, bmask in pairs:
                in_a = rook_sums[amask][bmask]
                in_mate = rook_sums[full_mask ^ amask][bmask ^ full_mask]
                if in_a - in_mate != len(sa) + len(sb) - n:
                    continue
                dots_a = dot_sums[amask][bmask]
                dots_mate = dot_sums[full_mask ^ amask][bmask ^ full_mask]
                if dots_a and not dots_mate:
                    victims = [
                        c
                        for c in dots
                        if getattr(c, fa) in sa and getattr(c, fb) in sb
                    ]
                elif dots_mate and not dots_a:
                    victims = [
                        c
                        for c in dots
                        if getattr(c, fa) not in sa and getattr(c, fb) not in sb
                    ]
                else:
                    continue
                box, mate = _layer_boxes(axis, layer, sa, sb, n)
                witness = RbcWitness(
                    "layer",
                    box,
                    mate,
                    (in_a, in_mate),
                    len(sa) + len(sb) - n,
                    axis=axis,
                    index=layer,
                )
                for dot in victims:
                    if dot not in found:
                        found[dot] = witness
    return DeceptiveScan(found, exhaustive)


def _grid_subset_sums(cells, fa: str, fb: str, n: int) -> list[list[int]]:
    """sums[amask][bmask] = pieces with fa-coordinate in amask, fb in bmask."""
    coords = [(getattr(c, fa) - 1, getattr(c, fb) - 1) for c in cells]
    sums: list[list[int]] = [_subset_counts([0] * n, n)]
    for amask in range(1, 1 << n):
        vec = [0] * n
        for a, b in coords:
            if amask >> a & 1:
                vec[b] += 1
        sums.append(_subset_counts(vec, n))
    return sums


def _layer_rect_pairs(board, axis, layer, rooks, dots, exhaustive, n):
    subsets = list(_subsets_lex(n))
    if exhaustive:
        return [
            (set(pa), set(pb), _mask(pa), _mask(pb))
            for pa in subsets
            for pb in subsets
        ]
    fa, fb = _axis_fields(axis)
    pieces = rooks + dots
    rects = []
    seen = set()
    hull_a = {getattr(c, fa) for c in pieces}
    hull_b = {getattr(c, fb) for c in pieces}
    full = set(range(1, n + 1))
    for sa, sb in (
        (hull_a, hull_b),
        (full - hull_a, full - hull_b),
        ({getattr(c, fa) for c in rooks} or hull_a, {getattr(c, fb) for c in rooks} or hull_b),
    ):
        if not sa or not sb:
            continue
        key = (tuple(sorted(sa)), tuple(sorted(sb)))
        if key in seen:
            continue
        seen.add(key)
        rects.append((set(sa), set(sb), _mask(tuple(sa)), _mask(tuple(sb))))
    return rects


def _layer_boxes(axis, layer, sa, sb, n):
    other = set(range(1, n + 1))
    if axis == "i":
        return (
            Box({layer}, sa, sb),
            Box({layer}, other - sa, other - sb),
        )
    if axis == "j":
        return (
            Box(sa, {layer}, sb),
            Box(other - sa, {layer}, other - sb),
        )
    return (
        Box(sa, sb, {layer}),
        Box(other - sa, other - sb, {layer}),
    )


# -- fractional certificates ----------------------------------------------------


def _dot_components(board: Plsc) -> list[list[Cell]]:
    dots = set(board.dots())
    comps: list[list[Cell]] = []
    remaining = set(dots)
    while remaining:
        seed = min(remaining)
        comp = {seed}
        frontier = [seed]
        while frontier:
            cur = frontier.pop()
            for f in files_of(cur):
                for c in board.dots_in_file(f):
                    if c in remaining and c not in comp:
                        comp.add(c)
                        frontier.append(c)
        comps.append(sorted(comp))
        remaining -= comp
    return comps


def fractional_certificate(board: Plsc) -> dict[Cell, Fraction] | None:
    """Weights certifying the capacity condition, when the dot structure
    is uniformly distributed.

    Every rook weighs 1.  If each component of the dot structure has some
    k > 1 dots in every file it touches, its dots weigh 1/k and each file
    of the board sums to exactly 1; such a weighting is a triply
    stochastic completion of the rook structure.  Returns None when a
    file is eliminated or a component is not uniform.
    """
    weights: dict[Cell, Fraction] = {c: Fraction(1) for c in board.rooks()}
    comp_of: dict[Cell, int] = {}
    comps = _dot_components(board)
    for ci, comp in enumerate(comps):
        for c in comp:
            comp_of[c] = ci
    uniform: list[int | None] = [None] * len(comps)
    for f in all_files(board.n):
        if board.rook_in_file(f) is not None:
            continue
        dots = board.dots_in_file(f)
        if not dots:
            return None  # eliminated file
        ci = comp_of[dots[0]]
        k = len(dots)
        if k < 2:
            return None
        if uniform[ci] is None:
            uniform[ci] = k
        elif uniform[ci] != k:
            return None
    for comp, k in zip(comps, uniform):
        weight = Fraction(1, k if k else 1)
        for c in comp:
            weights[c] = weight
    for f in all_files(board.n):
        total = sum(weights.get(c, Fraction(0)) for c in board.file_cells(f))
        if total != 1:
            return None
    return weights


# -- secondary extension ---------------------------------------------------------


def secondary_extend(
    board: Plsc, *, rng: random.Random | None = None
) -> tuple[Plsc, ExtensionReport]:
    """Alternate deceptive-dot elimination with primary extension.

    Stops when the capacity condition fails (the board has no completion),
    when no deceptive dots remain (the fixpoint), or when an elimination
    empties a file.
    """
    current, report = primary_extend(board, rng=rng)
    treated = list(report.treated)
    eliminated = list(report.eliminated)
    rounds = [board, current]
    exhaustive = True
    if report.outcome == "not_completable":
        return current, ExtensionReport(
            "not_completable",
            tuple(treated),
            tuple(eliminated),
            tuple(rounds),
            reason="eliminated file during primary extension",
        )
    while True:
        cap_res = capacity_check(current)
        if cap_res.status == "violated":
            return current, ExtensionReport(
                "not_completable",
                tuple(treated),
                tuple(eliminated),
                tuple(rounds),
                reason="capacity condition violated",
                witness=cap_res.witness,
                exhaustive=exhaustive,
            )
        if cap_res.status == "bound_exceeded":
            exhaustive = False
        scan = deceptive_dots(current)
        exhaustive = exhaustive and scan.exhaustive
        if not scan.dots:
            break
        current = current.eliminate(sorted(scan.dots))
        eliminated.extend(sorted(scan.dots))
        current, rep = primary_extend(current, rng=rng)
        treated.extend(rep.treated)
        eliminated.extend(rep.eliminated)
        rounds.append(current)
        if rep.outcome == "not_completable":
            return current, ExtensionReport(
                "not_completable",
                tuple(treated),
                tuple(eliminated),
                tuple(rounds),
                reason="eliminated file after deceptive elimination",
                exhaustive=exhaustive,
            )
    outcome = "completed" if current.status() == "completed" else "extended"
    return current, ExtensionReport(
        outcome,
        tuple(treated),
        tuple(eliminated),
        tuple(rounds),
        exhaustive=exhaustive,
    )
