import random

import pytest

from quivermoment import Matrix, Scalar, ldlh_psd, nullspace, psd_check, rank, solve_in_range
from quivermoment.scalar import ONE, ZERO


def m_int(rows):
    return Matrix.from_rows([[Scalar(x) for x in r] for r in rows])


def rand_matrix(rng, rows, cols, span=4):
    return m_int([[rng.randint(-span, span) for _ in range(cols)] for _ in range(rows)])


def test_rank_examples():
    assert rank(Matrix.identity(4)) == 4
    assert rank(Matrix.zeros(3, 5)) == 0
    fixture = m_int(
        [
            [1, 0, 0, 0, 1, 0],
            [0, 1, 0, 0, 0, 1],
            [0, 0, 1, 0, 0, 0],
            [0, 0, 0, 1, 0, 0],
            [1, 0, 0, 0, 1, 0],
            [0, 1, 0, 0, 0, 1],
        ]
    )
    assert rank(fixture) == 4


def test_nullspace_examples():
    assert nullspace(Matrix.identity(3)) == []
    basis = nullspace(m_int([[1, 1]]))
    assert basis == [(Scalar(-1), Scalar(1))]


def test_nullspace_canonical_echelon():
    # Pivot-free coordinate is 1; every other basis vector vanishes there.
    m = m_int([[1, 2, 0, 3], [0, 0, 1, 4]])
    basis = nullspace(m)
    assert len(basis) == 2
    free_cols = [1, 3]
    for i, v in enumerate(basis):
        for j, f in enumerate(free_cols):
            assert v[f] == (ONE if i == j else ZERO)


def test_rank_nullity_random():
    rng = random.Random(3)
    for _ in range(25):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = rand_matrix(rng, rows, cols)
        assert rank(m) + len(nullspace(m)) == cols


def test_solve_in_range_examples():
    a = m_int([[1, 0], [0, 0]])
    assert solve_in_range(a, m_int([[0], [1]])) is None
    c = m_int([[3], [5]])
    assert solve_in_range(Matrix.identity(2), c) == c


def test_solve_in_range_rank_criterion_random():
    rng = random.Random(4)
    for _ in range(30):
        g = rand_matrix(rng, 5, rng.randint(1, 5))
        a = g * g.conj_transpose()  # hermitian with a genuine range
        c = rand_matrix(rng, 5, 2)
        aug = Matrix(5, a.cols + 2, [e for i in range(5) for e in (*a.row(i), *c.row(i))])
        solvable = rank(aug) == rank(a)
        x = solve_in_range(a, c)
        assert (x is not None) == solvable
        if x is not None:
            assert a * x == c
            # Solution columns are orthogonal to the nullspace of a.
            for v in nullspace(a):
                vh = Matrix(1, 5, [e.conjugate() for e in v])
                assert (vh * x).is_zero()


def test_solve_in_range_requires_hermitian():
    with pytest.raises(ValueError):
        solve_in_range(m_int([[0, 1], [0, 0]]), m_int([[1], [0]]))


def test_psd_examples():
    assert psd_check(m_int([[2 if i == j else 0 for j in range(7)] for i in range(7)])) is True
    diag = m_int([[d if i == j else 0 for j, d in enumerate([2, 3, 1, 1, 2, 3, 0])] for i in range(7)])
    assert psd_check(diag) is True
    assert psd_check(m_int([[1, 0], [0, -1]])) is False
    assert psd_check(m_int([[1, 1], [1, 1]])) is True


def test_psd_zero_diagonal_with_offdiagonal():
    assert psd_check(m_int([[0, 1], [1, 1]])) is False


def test_psd_rejects_non_hermitian():
    with pytest.raises(ValueError):
        psd_check(m_int([[1, 2], [3, 1]]))


def test_psd_complex_hermitian():
    i = Scalar(0, 1)
    m = Matrix.from_rows([[Scalar(2), i], [-i, Scalar(2)]])
    assert psd_check(m) is True
    m2 = Matrix.from_rows([[Scalar(1), Scalar(0, 2)], [Scalar(0, -2), Scalar(1)]])
    assert psd_check(m2) is False


def test_psd_matches_gram_construction_random():
    rng = random.Random(5)
    for _ in range(20):
        g = rand_matrix(rng, 4, rng.randint(1, 4))
        m = g * g.conj_transpose()
        assert psd_check(m) is True
        pivots = ldlh_psd(m)
        assert len(pivots) == rank(m)
        recon = Matrix.zeros(4, 4)
        for d, v in pivots:
            col = Matrix.column(v)
            recon = recon + (col * col.conj_transpose()).scale(d)
        assert recon == m
        assert all(d.is_real() and d.re > 0 for d, _ in pivots)


def test_determinism_bit_for_bit():
    rng = random.Random(6)
    m = rand_matrix(rng, 5, 5)
    assert nullspace(m) == nullspace(m)
    assert rank(m) == rank(m)
    a = m * m.conj_transpose()
    assert solve_in_range(a, m) == solve_in_range(a, m)
