import random

import pytest

from rookcube.board import Cell, from_pls, is_latin_square, new_empty
from rookcube.oracle import (
    count_completions,
    elimination_safe,
    enumerate_completions,
    max_box_rooks,
    max_rbc_rooks,
)


def test_counts_for_empty_boards():
    assert count_completions(new_empty(1)).count == 1
    assert count_completions(new_empty(2)).count == 2
    assert count_completions(new_empty(3)).count == 12
    assert count_completions(new_empty(4)).count == 576


def test_completed_board_counts_itself():
    b = from_pls([[1, 2], [2, 1]])
    res = enumerate_completions(b)
    assert res.count == 1
    assert res.completions == (((1, 2), (2, 1)),)


def test_enumeration_is_lexicographic_and_valid():
    res = enumerate_completions(new_empty(3))
    assert res.count == 12
    assert list(res.completions) == sorted(res.completions)
    for grid in res.completions:
        assert is_latin_square(grid)


def test_limit_truncates():
    res = count_completions(new_empty(4), limit=10)
    assert res.count == 10
    assert not res.complete


def test_large_order_requires_limit():
    with pytest.raises(ValueError):
        count_completions(new_empty(8))
    res = count_completions(new_empty(8), limit=1)
    assert res.count == 1


def test_dots_constrain_completions():
    # order 2: forbidding symbol 1 at (1,1) leaves only the square 2,1/1,2
    b = new_empty(2)
    b = b.eliminate([Cell(1, 1, 1)])
    res = enumerate_completions(b)
    assert res.completions == (((2, 1), (1, 2)),)


def test_elimination_safe_forced_cell():
    # symbol 1 sits at (1,1) and (2,2), so every completion puts it at
    # (3,3); the other candidates of (3,3) can never become rooks
    b = from_pls([[1, None, None], [None, 1, None], [None, None, None]])
    assert not elimination_safe(b, Cell(3, 3, 1))
    assert elimination_safe(b, Cell(3, 3, 2))
    assert elimination_safe(b, Cell(3, 3, 3))


def test_every_dot_of_empty_board_is_used():
    b = new_empty(3)
    for dot in b.dots():
        assert not elimination_safe(b, dot)


def test_max_box_rooks_trivial_shapes():
    for n in (2, 3, 4):
        assert max_box_rooks(n, 1, 1, 1) == 1
        assert max_box_rooks(n, n, n, n) == n * n


def test_max_rbc_rooks_trivial_shapes():
    for n in (2, 3, 4):
        assert max_rbc_rooks(n, n, n, n) == n * n
    # order 4, box 2x2x2: mate is 2x2x2 too; capacity (8+8)/4 = 4
    assert max_rbc_rooks(4, 2, 2, 2) == 4


def test_max_box_small_values():
    # hand-checked: 1,2,3/2,3,1/3,1,2 puts 3 small symbols in its 2x2 corner,
    # and a fourth is impossible (the corner holds only 4 cells, one of which
    # must take symbol 3 once both 1 and 2 appear twice)
    assert max_box_rooks(3, 2, 2, 2) == 3
    # symbol 1 can hit a 2x2 corner at most twice (one per row)
    assert max_box_rooks(3, 2, 2, 1) == 2
    # [[1,2],[2,1]] corner completes to order 4
    assert max_box_rooks(4, 2, 2, 2) == 4


def test_counts_invariant_under_search_order():
    rng = random.Random(2)
    for _ in range(10):
        b = new_empty(3)
        for _ in range(rng.randrange(4)):
            dots = b.dots()
            if not dots:
                break
            b = b.place_rook(rng.choice(dots))
        res = enumerate_completions(b)
        assert res.count == len(res.completions)
        assert res.count == count_completions(b).count
