import random

import pytest

from rookcube.board import Box, from_pls, is_latin_square, new_empty, to_grid
from rookcube.compact import (
    Brick,
    brick_from_cells,
    compact_cruse_check,
    diameter,
    dot_hull,
    embed_compact,
    extract_brick,
    is_compact,
    potentials,
    solve_compact,
)
from rookcube.completion import CompletionError
from rookcube.oracle import count_completions, enumerate_completions

# 4x5x4 demo brick: 13 rooks + 2 dots, compact with potential 15
DEMO_DOTS = [(3, 3, 4), (3, 4, 1)]
DEMO_ROOKS = [
    (1, 1, 1), (1, 2, 3), (1, 4, 4), (2, 1, 2), (2, 2, 4), (2, 3, 3),
    (2, 5, 1), (3, 1, 3), (3, 5, 2), (4, 1, 4), (4, 2, 1), (4, 4, 2),
    (4, 5, 3),
]


def demo_brick() -> Brick:
    return brick_from_cells(4, 5, 4, dots=DEMO_DOTS, rooks=DEMO_ROOKS)


def all_dot_cube(m: int) -> Brick:
    return brick_from_cells(
        m, m, m, dots=[(i, j, k) for i in range(1, m + 1)
                       for j in range(1, m + 1) for k in range(1, m + 1)]
    )


def rows_removed_brick(rng: random.Random, m: int) -> Brick:
    """Dot structure of a random order-m square with two rows erased."""
    res = enumerate_completions(new_empty(m), limit=500)
    grid = list(rng.choice(res.completions))
    r1, r2 = sorted(rng.sample(range(m), 2))
    partial = [list(row) for row in grid]
    partial[r1] = [None] * m
    partial[r2] = [None] * m
    board = from_pls(partial, m)
    return extract_brick(board, dot_hull(board))


def test_all_dots_cube_potentials():
    b = all_dot_cube(3)
    pot = potentials(b)
    assert pot.ok
    assert pot.x == pot.y == pot.z == (3, 3, 3)
    assert is_compact(b) == 9


def test_demo_brick_is_compact():
    b = demo_brick()
    assert is_compact(b) == 15
    pot = potentials(b)
    assert pot.z[0] == 4  # first symbol layer


def test_demo_brick_dot_insertion_breaks_layer():
    b = demo_brick().with_dot((3, 3, 1))
    pot = potentials(b)
    assert not pot.ok
    assert any(w.axis == "k" and w.index == 1 for w in pot.witnesses)


def test_rows_removed_brick_compact():
    rng = random.Random(17)
    for m in (3, 4, 5):
        b = rows_removed_brick(rng, m)
        assert b.shape == (2, m, m)
        assert is_compact(b) == 2 * m


def test_compact_check_all_dots():
    # an all-dot cube of side m embeds whenever 2m <= n and m^2 <= cap
    b = all_dot_cube(2)
    for n in (4, 5, 6):
        report = compact_cruse_check(b, n)
        assert report.passed
    # side 2 in order 3: layer minima 2+2-3 = 1 <= 2, cap(3,2,2,2) = 3 < 4
    report = compact_cruse_check(b, 3)
    assert not report.passed
    assert report.capacity == (False, (4, 3))


def test_compact_check_beyond_diameter():
    rng = random.Random(23)
    bricks = [demo_brick(), all_dot_cube(2), all_dot_cube(3)]
    bricks += [rows_removed_brick(rng, m) for m in (3, 4)]
    for b in bricks:
        for n in range(diameter(b) + 1, diameter(b) + 4):
            assert compact_cruse_check(b, n).passed


def test_embed_single_rook():
    b = brick_from_cells(1, 1, 1, rooks=[(1, 1, 1)])
    out = embed_compact(b, 2)
    assert out.rook_count() == 4  # p0 = 1, so 3 outside rooks join it
    assert out.dot_count() == 0
    assert is_latin_square(to_grid(out))


def test_embed_rejects_failing_check():
    with pytest.raises(CompletionError):
        embed_compact(all_dot_cube(2), 3)


def _check_embedding(brick: Brick, board) -> None:
    a, b, c = brick.shape
    n = board.n
    p0 = is_compact(brick)
    # brick states survive verbatim in the corner
    for cell in brick.cells():
        assert board.state_at(cell) == brick.state_at(cell)
    # all remaining dots belong to the brick
    for dot in board.dots():
        assert dot.i <= a and dot.j <= b and dot.k <= c
    outside = [
        r for r in board.rooks() if not (r.i <= a and r.j <= b and r.k <= c)
    ]
    assert len(outside) == n * n - p0
    board.check()


def test_embed_postconditions_small():
    rng = random.Random(31)
    cases = [(all_dot_cube(2), 4), (all_dot_cube(2), 5), (all_dot_cube(3), 6)]
    for m in (3, 4):
        br = rows_removed_brick(rng, m)
        # capacity holds with equality at n = m and loosens past the diameter
        cases.append((br, m))
        cases.append((br, diameter(br) + 1))
    cases.append((demo_brick(), 8))
    cases.append((demo_brick(), 9))
    for brick, n in cases:
        report = compact_cruse_check(brick, n)
        assert report.passed, (brick.shape, n)
        out = embed_compact(brick, n)
        _check_embedding(brick, out)


def test_solutions_complete_embeddings():
    # a solution of the brick and its full extension combine to a square
    rng = random.Random(41)
    for m in (3, 4):
        brick = rows_removed_brick(rng, m)
        for n in (m, diameter(brick) + 1):
            out = embed_compact(brick, n)
            solution = solve_compact(brick)
            assert solution is not None
            final = out
            for cell in solution:
                if brick.state_at(cell) == 1:  # a dot chosen by the solver
                    final = final.place_rook(cell)
            assert final.status() == "completed"
            assert is_latin_square(to_grid(final))


def test_solve_all_dots_2():
    sol = solve_compact(all_dot_cube(2))
    # lexicographically least of the two order-2 squares
    assert sol == ((1, 1, 1), (1, 2, 2), (2, 1, 2), (2, 2, 1))


def test_solve_demo_brick_forced():
    sol = solve_compact(demo_brick())
    assert sol is not None
    assert set(DEMO_DOTS) <= set(sol)


def test_solve_unsolvable():
    # two dots in one cell file whose symbols collide row-wise elsewhere
    b = brick_from_cells(
        2, 2, 2,
        dots=[(1, 1, 1), (1, 2, 1)],
    )
    # both cell files demand symbol 1 in row 1 twice: no solution
    assert solve_compact(b) is None


def test_embedded_boards_restrict_to_solutions():
    # every oracle completion of an embedding induces a brick solution
    rng = random.Random(53)
    brick = rows_removed_brick(rng, 3)
    out = embed_compact(brick, 3)
    res = enumerate_completions(out)
    assert res.count > 0
    a, b, c = brick.shape
    for grid in res.completions:
        partial = [
            [grid[i][j] if (i < a and j < b and grid[i][j] <= c) else None
             for j in range(b)]
            for i in range(a)
        ]
        # chosen cells inside the brick must sit on brick dots
        for i in range(a):
            for j in range(b):
                k = partial[i][j]
                if k is not None and brick.state_at((i + 1, j + 1, k)) != 2:
                    assert brick.state_at((i + 1, j + 1, k)) == 1
