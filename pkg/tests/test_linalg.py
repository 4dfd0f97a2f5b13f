import random

import numpy as np

from poismodp import linalg
from poismodp.fieldpoly import squarefree

from conftest import SEED


def random_matrix(rng, p, rows, cols):
    return np.array(
        [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)],
        dtype=np.int64,
    )


class TestRref:
    def test_nullspace_vectors_annihilate(self):
        rng = random.Random(SEED)
        for _ in range(200):
            p = rng.choice([2, 3, 5, 7])
            a = random_matrix(rng, p, rng.randint(1, 6), rng.randint(1, 6))
            for v in linalg.nullspace(a, p):
                assert not np.any((a @ v) % p)

    def test_rank_nullity(self):
        rng = random.Random(SEED + 1)
        for _ in range(200):
            p = rng.choice([2, 3, 5])
            cols = rng.randint(1, 6)
            a = random_matrix(rng, p, rng.randint(1, 6), cols)
            assert linalg.rank(a, p) + len(linalg.nullspace(a, p)) == cols

    def test_solve_consistent(self):
        rng = random.Random(SEED + 2)
        for _ in range(200):
            p = rng.choice([2, 3, 5])
            cols = rng.randint(1, 5)
            a = random_matrix(rng, p, rng.randint(1, 5), cols)
            x = np.array([rng.randrange(p) for _ in range(cols)], dtype=np.int64)
            b = (a @ x) % p
            sol = linalg.solve(a, b, p)
            assert sol is not None
            assert not np.any((a @ sol - b) % p)

    def test_solve_inconsistent(self):
        a = np.array([[1, 0], [1, 0]], dtype=np.int64)
        b = np.array([1, 2], dtype=np.int64)
        assert linalg.solve(a, b, 5) is None

    def test_empty_matrix(self):
        a = np.zeros((0, 3), dtype=np.int64)
        assert len(linalg.nullspace(a, 5)) == 3


class TestMatrixOps:
    def test_nilpotent_shift(self):
        a = np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]], dtype=np.int64)
        assert linalg.is_nilpotent(a, 5)

    def test_diagonal_not_nilpotent(self):
        a = np.diag([1, 2, 0]).astype(np.int64)
        assert not linalg.is_nilpotent(a, 5)

    def test_minimal_polynomial_diagonal(self):
        a = np.diag([1, 1, 2]).astype(np.int64)
        m = linalg.minimal_polynomial(a, 5)
        # (t-1)(t-2) = t^2 - 3t + 2
        assert m.coeffs == [2, 2, 1]
        assert squarefree(m)

    def test_minimal_polynomial_annihilates(self):
        rng = random.Random(SEED + 3)
        for _ in range(100):
            p = rng.choice([2, 3, 5])
            nn = rng.randint(1, 4)
            a = random_matrix(rng, p, nn, nn)
            m = linalg.minimal_polynomial(a, p)
            acc = np.zeros((nn, nn), dtype=np.int64)
            for k, c in enumerate(m.coeffs):
                acc = (acc + c * linalg.mat_pow(a, k, p)) % p
            assert not np.any(acc)

    def test_minimal_polynomial_jordan_block(self):
        a = np.array([[0, 1], [0, 0]], dtype=np.int64)
        m = linalg.minimal_polynomial(a, 5)
        assert m.coeffs == [0, 0, 1]  # t^2
        assert not squarefree(m)

    def test_zero_matrix_minpoly(self):
        a = np.zeros((2, 2), dtype=np.int64)
        m = linalg.minimal_polynomial(a, 5)
        assert m.coeffs == [0, 1]  # t
        assert squarefree(m)
