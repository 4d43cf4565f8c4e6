"""
Shared fixtures for the mpdecode test suite
"""

import numpy as np
import pytest

from codes.builtin import BUILTIN_MATRICES, builtin_code
from codes.linear_code import make_code
from utils.code_generator import CodeGenerator


@pytest.fixture
def fig35_matrix():
    return BUILTIN_MATRICES["fig35"].copy()


@pytest.fixture
def fig35():
    return builtin_code("fig35")


@pytest.fixture
def spc3():
    return builtin_code("spc3")


@pytest.fixture
def rep2():
    return builtin_code("rep2")


@pytest.fixture
def hamming74():
    return builtin_code("hamming74")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def generator():
    return CodeGenerator(seed=7)


@pytest.fixture
def random_codes(generator):
    """Small random codes with n <= 12, enough checks to be nontrivial."""
    codes = []
    for n, m in [(8, 4), (9, 5), (10, 5), (11, 6), (12, 6)]:
        H = generator.random_matrix(m, n, density=0.4)
        codes.append(make_code(H, name=f"rand{n}x{m}"))
    return codes


@pytest.fixture
def tie_free_llrs(rng):
    """Draw Gaussian LLR vectors; continuous draws are tie-free almost surely."""

    def draw(n: int, count: int, scale: float = 1.0):
        return [scale * rng.standard_normal(n) for _ in range(count)]

    return draw
