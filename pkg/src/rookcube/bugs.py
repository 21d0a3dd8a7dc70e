"""Dot-graph analysis of minimum candidate structures.

When every rook-free file of a board holds exactly two dots (an *mCS*),
the dots form a 3-regular graph: each dot meets one partner per file.
Its connected components are BUGs (bivalue universal graves, after the
Sudoku technique).  A BUG is solvable exactly when the graph is
bipartite, in which case the two colour classes are its only two
solutions; an odd cycle certifies unsolvability, and an unsolvable BUG
in the secondary extension proves the board has no completion.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .board import BoardError, Cell, Plsc, all_files, files_of
from .extension import secondary_extend


def is_mcs(board: Plsc) -> bool:
    """True when every rook-free file contains exactly two dots."""
    for f in all_files(board.n):
        if board.rook_in_file(f) is None and len(board.dots_in_file(f)) != 2:
            return False
    return True


@dataclass(frozen=True)
class DotGraph:
    """Graph on the dots of an mCS; edges join dots sharing a file."""

    vertices: tuple[Cell, ...]
    edges: tuple[tuple[int, int], ...]
    components: tuple[tuple[int, ...], ...]

    def neighbours(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in range(len(self.vertices))}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


def dot_graph(board: Plsc) -> DotGraph:
    """The 3-regular dot graph of an mCS board.

    Two dots sharing two files would have to agree in two coordinates,
    which forces a single common file, so the graph is simple as built.
    """
    if not is_mcs(board):
        raise BoardError("board is not a minimum candidate structure")
    return _graph_of(board, board.dots())


def _graph_of(board: Plsc, dots: tuple[Cell, ...]) -> DotGraph:
    index = {c: i for i, c in enumerate(dots)}
    edges = set()
    for c in dots:
        for f in files_of(c):
            partners = board.dots_in_file(f)
            for other in partners:
                if other != c and other in index:
                    a, b = sorted((index[c], index[other]))
                    edges.add((a, b))
    adj: dict[int, list[int]] = {i: [] for i in range(len(dots))}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = [False] * len(dots)
    comps = []
    for start in range(len(dots)):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            for nxt in adj[cur]:
                if not seen[nxt]:
                    seen[nxt] = True
                    comp.append(nxt)
                    queue.append(nxt)
        comps.append(tuple(sorted(comp)))
    return DotGraph(tuple(dots), tuple(sorted(edges)), tuple(comps))


@dataclass(frozen=True)
class Bug:
    """One connected component of a dot graph."""

    vertices: tuple[Cell, ...]
    edges: tuple[tuple[int, int], ...]

    def neighbours(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in range(len(self.vertices))}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


def bugs(board: Plsc) -> list[Bug]:
    """The BUGs of an mCS board, one per component, in discovery order."""
    graph = dot_graph(board)
    return _split_components(graph)


def _split_components(graph: DotGraph) -> list[Bug]:
    out = []
    for comp in graph.components:
        remap = {v: i for i, v in enumerate(comp)}
        vertices = tuple(graph.vertices[v] for v in comp)
        edges = tuple(
            sorted(
                (remap[a], remap[b])
                for a, b in graph.edges
                if a in remap and b in remap
            )
        )
        out.append(Bug(vertices, edges))
    return out


@dataclass(frozen=True)
class BugSolutions:
    """Zero or two rook assignments, plus an odd-cycle witness when zero.

    Each solution picks one dot per file of the BUG; the two solutions
    are disjoint and complementary on every file.
    """

    solutions: tuple[tuple[Cell, ...], ...]
    odd_cycle: tuple[Cell, ...] | None = None


def solve_bug(bug: Bug) -> BugSolutions:
    """Two-colour the BUG: the colour classes are its only solutions."""
    adj = bug.neighbours()
    colour: dict[int, int] = {}
    for start in range(len(bug.vertices)):
        if start in colour:
            continue
        colour[start] = 0
        parent: dict[int, int | None] = {start: None}
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            for nxt in adj[cur]:
                if nxt not in colour:
                    colour[nxt] = colour[cur] ^ 1
                    parent[nxt] = cur
                    queue.append(nxt)
                elif colour[nxt] == colour[cur]:
                    cycle = _cycle_through(parent, cur, nxt)
                    return BugSolutions(
                        (), tuple(bug.vertices[v] for v in cycle)
                    )
    first = tuple(
        bug.vertices[i] for i in range(len(bug.vertices)) if colour[i] == 0
    )
    second = tuple(
        bug.vertices[i] for i in range(len(bug.vertices)) if colour[i] == 1
    )
    return BugSolutions((first, second))


def _cycle_through(parent: dict[int, int | None], a: int, b: int) -> list[int]:
    """Odd cycle from two same-colour endpoints of a BFS tree edge."""
    up_a, up_b = [a], [b]
    seen = {a: 0}
    cur = a
    while parent[cur] is not None:
        cur = parent[cur]
        seen[cur] = len(up_a)
        up_a.append(cur)
    cur = b
    while cur not in seen:
        cur = parent[cur]
        up_b.append(cur)
    meet = seen[cur]
    # a ... meeting vertex, then back down the b side
    return up_a[: meet + 1] + up_b[:-1][::-1]


def shortest_odd_cycle(bug: Bug) -> tuple[Cell, ...] | None:
    """A shortest odd cycle of the BUG, or None when bipartite.

    BFS from every vertex; an edge joining two vertices at equal depth
    closes an odd walk through the root, and the minimum over all such
    walks is attained by a simple cycle.
    """
    adj = bug.neighbours()
    m = len(bug.vertices)
    best: list[int] | None = None
    for root in range(m):
        dist = {root: 0}
        parent: dict[int, int | None] = {root: None}
        queue = deque([root])
        order = []
        while queue:
            cur = queue.popleft()
            order.append(cur)
            for nxt in adj[cur]:
                if nxt not in dist:
                    dist[nxt] = dist[cur] + 1
                    parent[nxt] = cur
                    queue.append(nxt)
        for a, b in bug.edges:
            if a in dist and b in dist and dist[a] == dist[b]:
                length = dist[a] + dist[b] + 1
                if best is not None and length >= len(best):
                    continue
                cycle = _assemble_paths(parent, a, b)
                if cycle is not None and len(cycle) % 2 == 1:
                    if best is None or len(cycle) < len(best):
                        best = cycle
    if best is None:
        return None
    return tuple(bug.vertices[v] for v in best)


def _assemble_paths(parent, a, b):
    path_a, path_b = [a], [b]
    cur = a
    while parent[cur] is not None:
        cur = parent[cur]
        path_a.append(cur)
    cur = b
    while parent[cur] is not None:
        cur = parent[cur]
        path_b.append(cur)
    pa = set(path_a)
    # walk up from b until the paths meet
    meet_idx = None
    for idx, v in enumerate(path_b):
        if v in pa:
            meet_idx = idx
            break
    if meet_idx is None:
        return None
    meet = path_b[meet_idx]
    ia = path_a.index(meet)
    cycle = path_a[: ia + 1] + path_b[:meet_idx][::-1]
    # reject degenerate walks that reuse a vertex
    if len(set(cycle)) != len(cycle):
        return None
    return cycle


@dataclass(frozen=True)
class BugVerdict:
    """Outcome of the BUG necessary condition."""

    passed: bool
    bug: Bug | None = None
    odd_cycle: tuple[Cell, ...] | None = None
    skipped_dots: tuple[Cell, ...] = ()
    extension_outcome: str | None = None


def bug_condition(board: Plsc, *, assume_extended: bool = False) -> BugVerdict:
    """Necessary condition: every BUG of the secondary extension solves.

    When the board is not a full mCS, only dots all of whose files hold
    exactly two dots take part; components that fail 3-regularity under
    that scoping are skipped and their dots reported.
    """
    if assume_extended:
        extended, outcome = board, None
    else:
        extended, report = secondary_extend(board)
        outcome = report.outcome
        if report.outcome == "not_completable":
            return BugVerdict(False, extension_outcome=report.outcome)
    eligible = []
    for c in extended.dots():
        ok = True
        for f in files_of(c):
            if len(extended.dots_in_file(f)) != 2:
                ok = False
                break
        if ok:
            eligible.append(c)
    graph = _graph_of(extended, tuple(eligible))
    skipped: list[Cell] = []
    candidates: list[Bug] = []
    adj = graph.neighbours()
    for bug in _split_components(graph):
        if all(
            len([e for e in bug.edges if v in e]) == 3
            for v in range(len(bug.vertices))
        ):
            candidates.append(bug)
        else:
            skipped.extend(bug.vertices)
    skipped.extend(c for c in extended.dots() if c not in set(eligible))
    for bug in candidates:
        res = solve_bug(bug)
        if not res.solutions:
            return BugVerdict(
                False,
                bug=bug,
                odd_cycle=shortest_odd_cycle(bug),
                skipped_dots=tuple(sorted(skipped)),
                extension_outcome=outcome,
            )
    return BugVerdict(
        True, skipped_dots=tuple(sorted(skipped)), extension_outcome=outcome
    )
