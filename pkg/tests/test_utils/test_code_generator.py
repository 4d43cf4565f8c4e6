import numpy as np
import pytest

from utils.code_generator import CodeGenerator


def test_gallager_matrix_is_regular():
    H = CodeGenerator(3).gallager_matrix(12, 3, 4)
    assert H.shape == (9, 12)
    assert np.all(H.sum(axis=0) == 3)
    assert np.all(H.sum(axis=1) == 4)


def test_gallager_matrix_needs_divisible_length():
    with pytest.raises(ValueError):
        CodeGenerator(3).gallager_matrix(10, 3, 4)


def test_same_seed_same_matrices():
    a = CodeGenerator(11).random_matrix(4, 9, density=0.4)
    b = CodeGenerator(11).random_matrix(4, 9, density=0.4)
    assert np.array_equal(a, b)
    assert a.any(axis=0).all() and a.any(axis=1).all()


def test_random_bounded_lp_has_interior_feasible_point():
    c, A, b, upper = CodeGenerator(5).random_bounded_lp(4, 6)
    assert A.shape == (4, 6) and b.shape == (4,) and c.shape == (6,)
    assert np.all(upper >= 1.0)
