import itertools
import random

import pytest

from rookcube.matching import (
    BinMatrix,
    MatrixError,
    extend_to_column_regular,
    fill_column_targets,
    is_permutation_matrix,
    koenig_decompose,
    perfect_matching,
    ryser_adjoin,
)


def identity(n):
    return BinMatrix.from_rows(
        [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    )


def ones(n):
    return BinMatrix.from_rows([[1] * n for _ in range(n)])


def test_perfect_matching_identity():
    assert perfect_matching(identity(4)) == (0, 1, 2, 3)


def test_perfect_matching_all_ones():
    perm = perfect_matching(ones(3))
    assert sorted(perm) == [0, 1, 2]


def test_perfect_matching_zero_row():
    m = BinMatrix.from_rows([[1, 1, 0], [0, 0, 0], [0, 1, 1]])
    assert perfect_matching(m) is None


def test_koenig_identity():
    layers = koenig_decompose(identity(3), 1)
    assert layers == [identity(3)]


def test_koenig_all_ones():
    n = 4
    layers = koenig_decompose(ones(n), n)
    assert len(layers) == n
    assert all(is_permutation_matrix(p) for p in layers)
    total = layers[0]
    for p in layers[1:]:
        total = total + p
    assert total.data == ones(n).data


def _random_regular(rng, n, k):
    # superpose k random disjoint permutations
    cols = list(range(n))
    grid = [[0] * n for _ in range(n)]
    while True:
        grid = [[0] * n for _ in range(n)]
        ok = True
        for _ in range(k):
            rng.shuffle(cols)
            # greedy repair: retry whole permutation on collision
            if any(grid[i][cols[i]] for i in range(n)):
                ok = False
                break
            for i in range(n):
                grid[i][cols[i]] = 1
        if ok:
            return BinMatrix.from_rows(grid)


def test_koenig_random_regular():
    rng = random.Random(0)
    for _ in range(20):
        m = _random_regular(rng, 6, 2)
        layers = koenig_decompose(m, 2)
        total = layers[0]
        for p in layers[1:]:
            total = total + p
        assert total.data == m.data
        assert all(is_permutation_matrix(p) for p in layers)


def test_koenig_rejects_irregular():
    with pytest.raises(MatrixError):
        koenig_decompose(BinMatrix.from_rows([[1, 1], [0, 1]]), 1)


def test_koenig_deterministic():
    rng = random.Random(9)
    m = _random_regular(rng, 8, 3)
    assert koenig_decompose(m, 3) == koenig_decompose(m, 3)


def test_fill_forced_block():
    out = fill_column_targets(3, 2, (2, 2, 2), 3, 3)
    assert out.data == ((1, 1, 1), (1, 1, 1))


def test_fill_forced_column():
    out = fill_column_targets(2, 2, (2, 0), 0, 1)
    assert out.col_sums() == (2, 0)
    assert all(s <= 1 for s in out.row_sums())


def _brute_force_feasible(p, q, targets, m, M):
    # enumerate all 0/1 matrices with the given column sums
    col_choices = [list(itertools.combinations(range(q), c)) for c in targets]
    for pick in itertools.product(*col_choices):
        rows = [0] * q
        for chosen in pick:
            for i in chosen:
                rows[i] += 1
        if all(m <= x <= M for x in rows):
            return True
    return False


def test_fill_matches_brute_force_on_tiny_instances():
    # whenever the stated preconditions hold, a fill exists and ours finds it
    for p in (1, 2, 3):
        for q in (1, 2, 3):
            for targets in itertools.product(range(q + 1), repeat=p):
                total = sum(targets)
                for m in range(p + 1):
                    for M in range(m, p + 1):
                        if not m * q <= total <= M * q:
                            continue
                        assert _brute_force_feasible(p, q, targets, m, M)
                        out = fill_column_targets(p, q, targets, m, M)
                        assert out.col_sums() == targets
                        assert all(m <= s <= M for s in out.row_sums())


def test_fill_random_instances():
    rng = random.Random(4)
    for _ in range(300):
        p = rng.randint(1, 8)
        q = rng.randint(1, 8)
        targets = tuple(rng.randint(0, q) for _ in range(p))
        total = sum(targets)
        # derive feasible bounds around the mean load
        lo = total // q
        hi = -(-total // q)
        m = rng.randint(0, lo)
        M = rng.randint(hi, p)
        out = fill_column_targets(p, q, targets, m, M)
        assert out.col_sums() == targets
        assert all(m <= s <= M for s in out.row_sums())


def test_fill_rejects_bad_input():
    with pytest.raises(MatrixError):
        fill_column_targets(2, 2, (3, 0), 0, 2)
    with pytest.raises(MatrixError):
        fill_column_targets(2, 2, (1, 1), 2, 2)  # total 2 < m*q = 4


def test_adjoin_nothing_to_do():
    m = BinMatrix.from_rows([[1, 0], [0, 1]])
    assert ryser_adjoin(m, 1) is m


def test_adjoin_single_row():
    a = BinMatrix.from_rows([[1, 1, 0, 0]])
    out = ryser_adjoin(a, 2)
    assert out.rows == out.cols == 4
    assert out.data[0] == (1, 1, 0, 0)
    assert out.row_sums() == (2, 2, 2, 2)
    assert out.col_sums() == (2, 2, 2, 2)


def test_adjoin_random_instances():
    rng = random.Random(8)
    for _ in range(200):
        n = rng.randint(2, 8)
        r = rng.randint(1, n)
        k = rng.randint(1, n)
        # build r valid rows by sampling until column bounds hold
        for _ in range(200):
            rows = []
            for _ in range(r):
                cols = rng.sample(range(n), k)
                rows.append([1 if j in cols else 0 for j in range(n)])
            a = BinMatrix.from_rows(rows)
            if all(k - (n - r) <= s <= k for s in a.col_sums()):
                break
        else:
            continue
        out = ryser_adjoin(a, k)
        assert out.data[:r] == a.data
        assert all(s == k for s in out.row_sums())
        assert all(s == k for s in out.col_sums())


def test_adjoin_rejects_bad_columns():
    # column 2 has zero ones; one adjoined row cannot lift it to k = 2
    a = BinMatrix.from_rows([[1, 1, 0], [1, 1, 0]])
    with pytest.raises(MatrixError):
        ryser_adjoin(a, 2)


def test_extend_block_minimal():
    a = BinMatrix.from_rows([[0]])
    out = extend_to_column_regular(a, 2, 1)
    assert out.data == ((0,), (1,))
    assert out.col_sums() == (1,)


def test_extend_block_feeds_adjoin():
    rng = random.Random(12)
    produced = 0
    for _ in range(500):
        n = rng.randint(2, 8)
        r = rng.randint(1, n - 1)
        s = rng.randint(1, n - 1)
        k = rng.randint(max(1, r + s - n + 1), n)
        rows = []
        for _ in range(r):
            c = rng.randint(max(0, s + k - n), min(k, s))
            cols = rng.sample(range(s), c)
            rows.append([1 if j in cols else 0 for j in range(s)])
        a = BinMatrix.from_rows(rows)
        try:
            out = extend_to_column_regular(a, n, k)
        except MatrixError:
            continue
        produced += 1
        assert out.data[:r] == a.data
        assert all(c == k for c in out.col_sums())
        assert all(s + k - n <= x <= k for x in out.row_sums())
        # the chain: transposed output satisfies the adjunction contract
        square = ryser_adjoin(out.transpose(), k)
        assert all(c == k for c in square.row_sums())
        assert all(c == k for c in square.col_sums())
    assert produced > 50


def test_extend_block_error_names_condition():
    a = BinMatrix.from_rows([[1, 1], [1, 1]])
    with pytest.raises(MatrixError, match="row-bound"):
        extend_to_column_regular(a, 3, 1)
