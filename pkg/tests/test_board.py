import random

import pytest

from rookcube.board import (
    CONJUGATIONS,
    Box,
    BoardError,
    Cell,
    MoveError,
    conjugation_inverse,
    files_of,
    from_pls,
    new_empty,
    to_grid,
)
from rookcube.oracle import count_completions


def test_new_empty_smallest():
    b = new_empty(1)
    assert b.dot_count() == 1
    assert b.rook_count() == 0


def test_new_empty_counts():
    b = new_empty(2)
    assert b.dot_count() == 8
    from rookcube.board import all_files

    for f in all_files(2):
        assert len(b.dots_in_file(f)) == 2
    b6 = new_empty(6)
    assert b6.dot_count() == 216
    assert len(b6.dots_in_file(next(all_files(6)))) == 6


def test_new_empty_rejects_zero():
    with pytest.raises(BoardError):
        new_empty(0)


def test_from_pls_full_square():
    b = from_pls([[1, 2], [2, 1]])
    assert b.rook_count() == 4
    assert b.dot_count() == 0
    assert b.status() == "completed"


def test_from_pls_elimination():
    # hand elimination: rook (1,1,1) clears every cell sharing i=1&j=1,
    # i=1&k=1 or j=1&k=1; the four listed dots are exactly what survives
    b = from_pls([[1, None], [None, None]])
    assert b.rooks() == (Cell(1, 1, 1),)
    assert set(b.dots()) == {Cell(1, 2, 2), Cell(2, 1, 2), Cell(2, 2, 1), Cell(2, 2, 2)}


def test_from_pls_rejects_duplicates():
    with pytest.raises(BoardError):
        from_pls([[1, 1], [None, None]])
    with pytest.raises(BoardError):
        from_pls([[1, None], [1, None]])


def test_place_rook_completes_order_one():
    b = new_empty(1).place_rook((1, 1, 1))
    assert b.status() == "completed"


def test_place_rook_matches_from_pls():
    placed = new_empty(2).place_rook((1, 1, 1))
    assert placed == from_pls([[1, None], [None, None]])
    assert set(placed.dots()) == {
        Cell(1, 2, 2),
        Cell(2, 1, 2),
        Cell(2, 2, 1),
        Cell(2, 2, 2),
    }


def test_place_rook_counts():
    b = new_empty(3)
    b2 = b.place_rook((2, 2, 2))
    assert b2.rook_count() == b.rook_count() + 1
    assert b2.dot_count() < b.dot_count()


def test_place_rook_rejects_non_dot():
    b = from_pls([[1, None], [None, None]])
    with pytest.raises(MoveError):
        b.place_rook((1, 1, 1))  # rook already there
    with pytest.raises(MoveError):
        b.place_rook((1, 1, 2))  # eliminated cell


def test_candidate_set():
    b = new_empty(3)
    assert b.candidate_set(1, 1) == {1, 2, 3}
    b2 = new_empty(2).place_rook((1, 1, 1))
    assert b2.candidate_set(2, 2) == {1, 2}
    assert b2.candidate_set(1, 1) is None
    assert b2.candidate_set(1, 2) == {2}


def test_status_open():
    assert new_empty(3).status() == "open"


def test_conjugate_identity_and_inverse():
    b = from_pls([[1, 2, 3], [2, 3, 1], [None, None, None]])
    assert b.conjugate("ijk") == b
    rng = random.Random(7)
    for perm in CONJUGATIONS:
        assert b.conjugate(perm).conjugate(conjugation_inverse(perm)) == b
    # spot-check the mapping convention: rook (1,2,3) -> (2,3,1) under "jki"
    q = b.conjugate("jki")
    assert q.state_at((2, 3, 1)) == b.state_at((1, 2, 3))


def _random_board(rng: random.Random, n: int) -> "Plsc":
    b = new_empty(n)
    for _ in range(rng.randrange(n * n)):
        dots = b.dots()
        if not dots:
            break
        b = b.place_rook(rng.choice(dots))
        if b.status() != "open":
            break
    return b


def test_conjugation_preserves_completion_count():
    rng = random.Random(11)
    for n in (2, 3, 4):
        for _ in range(5):
            b = _random_board(rng, n)
            base = count_completions(b).count
            for perm in CONJUGATIONS:
                assert count_completions(b.conjugate(perm)).count == base


def test_invariants_after_operations():
    rng = random.Random(3)
    for _ in range(20):
        b = _random_board(rng, 4)
        b.check()


def test_box_census():
    full = from_pls([[1, 2], [2, 1]])
    assert full.box_census(Box.corner(2, 2, 2)) == (4, 0)
    assert new_empty(4).box_census(Box.corner(2, 2, 2)) == (0, 8)


def test_projection_round_trip():
    rng = random.Random(5)
    for _ in range(10):
        b = _random_board(rng, 4)
        grid = to_grid(b)
        again = from_pls(grid)
        assert to_grid(again) == grid


def test_projection_candidates():
    b = new_empty(2).place_rook((1, 1, 1))
    pls = b.project()
    assert pls.grid[0][0] == 1
    assert pls.candidates[(2, 2)] == {1, 2}
