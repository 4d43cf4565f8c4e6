from fractions import Fraction

import numpy as np
import pytest

from channels.random_streams import frame_stream
from codes.graph_cover import build_cover, cover_matrix, random_cover, scaled_pseudocodeword
from decoders.separation import in_fundamental_polytope
from models.errors import NotCoverCodewordError, PermutationMismatchError


def identity_perms(code, M):
    return [list(range(M)) for _ in range(code.factor_graph().num_edges)]


def test_one_cover_is_the_base_code(fig35):
    cover = build_cover(fig35, 1, identity_perms(fig35, 1))
    assert cover.H == fig35.H


def test_identity_two_cover_is_two_disjoint_copies(fig35):
    cover = build_cover(fig35, 2, identity_perms(fig35, 2))
    assert (cover.n, cover.k) == (14, 8)
    c = fig35.codewords()[5]
    other = fig35.codewords()[9]
    # copy k of variable i sits at index 2*i + k
    word = np.empty(14, dtype=np.uint8)
    word[0::2], word[1::2] = c, other
    assert cover.is_codeword(word)


def test_three_cover_of_fig35_has_length_21(fig35):
    graph_cover = random_cover(fig35, 3, frame_stream(1, 2))
    H = cover_matrix(fig35, 3, graph_cover.permutations)
    assert H.shape == (9, 21)
    # copy degrees equal base degrees
    base = fig35.H_array
    assert np.array_equal(H.sum(axis=0), np.repeat(base.sum(axis=0), 3))
    assert np.array_equal(H.sum(axis=1), np.repeat(base.sum(axis=1), 3))


def test_bad_permutations_are_rejected(fig35):
    perms = identity_perms(fig35, 2)
    with pytest.raises(PermutationMismatchError):
        cover_matrix(fig35, 2, perms[:-1])
    perms[0] = [0, 0]
    with pytest.raises(PermutationMismatchError):
        cover_matrix(fig35, 2, perms)


def test_scaled_pseudocodeword_of_zero_and_doubled_words(fig35):
    cover = build_cover(fig35, 2, identity_perms(fig35, 2))
    assert scaled_pseudocodeword(np.zeros(14), 2, cover) == [Fraction(0)] * 7
    c = fig35.codewords()[3]
    doubled = np.repeat(c, 2)
    assert scaled_pseudocodeword(doubled, 2, cover) == [Fraction(int(v)) for v in c]


def test_scaled_pseudocodeword_checks_membership(fig35):
    cover = build_cover(fig35, 2, identity_perms(fig35, 2))
    word = np.zeros(14, dtype=np.uint8)
    word[0] = 1
    with pytest.raises(NotCoverCodewordError):
        scaled_pseudocodeword(word, 2, cover)
    with pytest.raises(NotCoverCodewordError):
        scaled_pseudocodeword(np.zeros(13), 2, cover)
    # right multiple of M, wrong cover length
    with pytest.raises(NotCoverCodewordError):
        scaled_pseudocodeword(np.zeros(16), 2, cover)


@pytest.mark.parametrize("M", [2, 3])
def test_random_cover_pseudocodewords_lie_in_the_fundamental_polytope(fig35, M):
    for trial in range(10):
        graph_cover = random_cover(fig35, M, frame_stream(trial, M))
        cover = build_cover(fig35, M, graph_cover.permutations)
        for word in cover.codewords():
            point = np.array([float(v) for v in scaled_pseudocodeword(word, M, cover)])
            assert in_fundamental_polytope(fig35, point)
