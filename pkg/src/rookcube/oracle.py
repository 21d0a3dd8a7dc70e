"""Exact brute-force engine: completion counting and extremal rook counts.

This module is the ground truth the constructive pipelines are tested
against.  It reads board cell states but deliberately shares no logic with
the completion, extension or analysis modules.
"""

from __future__ import annotations

from dataclasses import dataclass

from .board import DOT, ROOK, Cell, Plsc

#: Orders above this refuse exhaustive counting unless a limit is given.
EXHAUSTIVE_ORDER_BOUND = 7


@dataclass(frozen=True)
class OracleResult:
    """Outcome of an exact search.

    ``count`` is exact when ``complete`` is true, otherwise the search
    stopped at ``limit`` matches.  ``completions`` (optional) lists the
    completed squares in lexicographic order, each as a tuple of rows.
    """

    count: int
    complete: bool
    completions: tuple[tuple[tuple[int, ...], ...], ...] | None = None


def _search_completions(
    board: Plsc,
    limit: int | None,
    collect: bool,
    forced: Cell | None = None,
    forbidden: Cell | None = None,
) -> OracleResult:
    n = board.n
    if limit is None and n > EXHAUSTIVE_ORDER_BOUND:
        raise ValueError(
            f"exhaustive counting refused for order {n} > "
            f"{EXHAUSTIVE_ORDER_BOUND}; pass a limit"
        )

    # allowed[i][j] = bitmask of symbols permitted at square cell (i, j):
    # the placed symbol for rook cells, the dot symbols otherwise.
    allowed = [[0] * n for _ in range(n)]
    fixed = [[0] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            mask = 0
            for k in range(1, n + 1):
                s = board.state_at((i, j, k))
                if s == ROOK:
                    fixed[i - 1][j - 1] = k
                    mask = 1 << (k - 1)
                    break
                if s == DOT:
                    mask |= 1 << (k - 1)
            allowed[i - 1][j - 1] = mask
    if forced is not None:
        i, j, k = forced
        allowed[i - 1][j - 1] &= 1 << (k - 1)
    if forbidden is not None:
        i, j, k = forbidden
        allowed[i - 1][j - 1] &= ~(1 << (k - 1))

    row_free = [(1 << n) - 1 for _ in range(n)]
    col_free = [(1 << n) - 1 for _ in range(n)]
    grid = [[0] * n for _ in range(n)]
    open_cells = []
    for i in range(n):
        for j in range(n):
            k = fixed[i][j]
            if k:
                bit = 1 << (k - 1)
                if not (row_free[i] & bit) or not (col_free[j] & bit):
                    return OracleResult(0, True, () if collect else None)
                row_free[i] &= ~bit
                col_free[j] &= ~bit
                grid[i][j] = k
            else:
                open_cells.append((i, j))

    found = 0
    results: list[tuple[tuple[int, ...], ...]] = []
    truncated = False

    def feasible() -> bool:
        # cheap forward check: every open cell must retain an option
        for i, j in open_cells:
            if grid[i][j] == 0 and not (allowed[i][j] & row_free[i] & col_free[j]):
                return False
        return True

    def rec(pos: int) -> bool:
        nonlocal found, truncated
        if pos == len(open_cells):
            found += 1
            if collect:
                results.append(tuple(tuple(row) for row in grid))
            if limit is not None and found >= limit:
                truncated = True
                return False
            return True
        # most-constrained open cell; final counts are order-independent
        best, best_opts, best_idx = None, None, -1
        for idx in range(pos, len(open_cells)):
            i, j = open_cells[idx]
            opts = allowed[i][j] & row_free[i] & col_free[j]
            cnt = opts.bit_count()
            if cnt == 0:
                return True
            if best_opts is None or cnt < best_opts:
                best, best_opts, best_idx = (i, j, opts), cnt, idx
                if cnt == 1:
                    break
        assert best is not None
        open_cells[pos], open_cells[best_idx] = open_cells[best_idx], open_cells[pos]
        i, j, opts = best
        while opts:
            bit = opts & -opts
            opts &= opts - 1
            k = bit.bit_length()
            grid[i][j] = k
            row_free[i] &= ~bit
            col_free[j] &= ~bit
            ok = rec(pos + 1)
            row_free[i] |= bit
            col_free[j] |= bit
            grid[i][j] = 0
            if not ok:
                open_cells[pos], open_cells[best_idx] = (
                    open_cells[best_idx],
                    open_cells[pos],
                )
                return False
        open_cells[pos], open_cells[best_idx] = open_cells[best_idx], open_cells[pos]
        return True

    if feasible():
        rec(0)
    if collect:
        results.sort()
        return OracleResult(found, not truncated, tuple(results))
    return OracleResult(found, not truncated)


def count_completions(board: Plsc, limit: int | None = None) -> OracleResult:
    """Count the Latin squares that extend the board's rooks, placing new
    rooks only on its dots."""
    return _search_completions(board, limit, collect=False)


def enumerate_completions(board: Plsc, limit: int | None = None) -> OracleResult:
    """Like :func:`count_completions` but lists the squares (lex order)."""
    return _search_completions(board, limit, collect=True)


def elimination_safe(board: Plsc, dot: Cell) -> bool:
    """True when no completion of the board places a rook on this dot."""
    if board.state_at(dot) != DOT:
        raise ValueError(f"cell {tuple(dot)} does not hold a dot")
    res = _search_completions(board, limit=1, collect=False, forced=dot)
    return res.count == 0


# -- extremal rook counts ---------------------------------------------------


def _max_corner_search(n: int, r: int, s: int, t: int, rbc: bool) -> int:
    """Branch and bound for the most rooks a completed order-n square puts
    in the corner box r x s x t (plus its remote mate when ``rbc``).

    Fills the scoring block(s) cell by cell, pruning on the remaining
    potential, and accepts a filling only if it extends to a full square.
    """
    cells: list[tuple[int, int]] = [(i, j) for i in range(r) for j in range(s)]
    if rbc:
        cells += [(i, j) for i in range(r, n) for j in range(s, n)]

    def scores(i: int, j: int) -> tuple[int, int]:
        # bitmasks of scoring / non-scoring symbols for this cell
        box_syms = (1 << t) - 1
        if i < r and j < s:
            return box_syms, ((1 << n) - 1) & ~box_syms
        return ((1 << n) - 1) & ~box_syms, box_syms

    row_free = [(1 << n) - 1 for _ in range(n)]
    col_free = [(1 << n) - 1 for _ in range(n)]
    grid = [[0] * n for _ in range(n)]
    best = 0

    def extendable() -> bool:
        rest = [
            (i, j)
            for i in range(n)
            for j in range(n)
            if grid[i][j] == 0
        ]

        def rec(pos: int) -> bool:
            if pos == len(rest):
                return True
            bi = bj = -1
            bopts = 0
            bcnt = n + 1
            for idx in range(pos, len(rest)):
                i, j = rest[idx]
                opts = row_free[i] & col_free[j]
                cnt = opts.bit_count()
                if cnt == 0:
                    return False
                if cnt < bcnt:
                    bi, bj, bopts, bcnt = i, j, opts, cnt
                    bidx = idx
                    if cnt == 1:
                        break
            rest[pos], rest[bidx] = rest[bidx], rest[pos]
            opts = bopts
            while opts:
                bit = opts & -opts
                opts &= opts - 1
                row_free[bi] &= ~bit
                col_free[bj] &= ~bit
                if rec(pos + 1):
                    row_free[bi] |= bit
                    col_free[bj] |= bit
                    rest[pos], rest[bidx] = rest[bidx], rest[pos]
                    return True
                row_free[bi] |= bit
                col_free[bj] |= bit
            rest[pos], rest[bidx] = rest[bidx], rest[pos]
            return False

        return rec(0)

    def rec(pos: int, score: int) -> None:
        nonlocal best
        if score + (len(cells) - pos) <= best:
            return
        if pos == len(cells):
            if score > best and extendable():
                best = score
            return
        i, j = cells[pos]
        good, other = scores(i, j)
        free = row_free[i] & col_free[j]
        for mask, gain in ((free & good, 1), (free & other, 0)):
            if gain == 0 and score + (len(cells) - pos - 1) <= best:
                # a non-scoring symbol here cannot beat the incumbent
                continue
            opts = mask
            while opts:
                bit = opts & -opts
                opts &= opts - 1
                row_free[i] &= ~bit
                col_free[j] &= ~bit
                grid[i][j] = bit.bit_length()
                rec(pos + 1, score + gain)
                grid[i][j] = 0
                row_free[i] |= bit
                col_free[j] |= bit
        return

    rec(0, 0)
    return best


def max_box_rooks(n: int, r: int, s: int, t: int) -> int:
    """Most rooks any order-n Latin square places in an r x s x t corner box."""
    _check_shape(n, r, s, t)
    return _max_corner_search(n, r, s, t, rbc=False)


def max_rbc_rooks(n: int, r: int, s: int, t: int) -> int:
    """Most rooks in the corner box plus its remote (complementary) mate."""
    _check_shape(n, r, s, t)
    return _max_corner_search(n, r, s, t, rbc=True)


def _check_shape(n: int, r: int, s: int, t: int) -> None:
    if not (1 <= r <= n and 1 <= s <= n and 1 <= t <= n):
        raise ValueError(f"shape ({r},{s},{t}) out of range for order {n}")
