import itertools

import numpy as np
import pytest

from codes.builtin import BUILTIN_MATRICES, builtin_code, resolve_code
from codes.linear_code import LinearCode, make_code
from models.errors import LengthMismatchError, TooLargeError, ZeroMatrixError
from utils.alist import save_alist
from utils.gf2 import BitMatrix


def test_fig35_is_a_7_4_code(fig35):
    assert (fig35.n, fig35.k, fig35.m) == (7, 4, 3)
    assert fig35.rate == pytest.approx(4 / 7)


def test_small_codes_dimensions(rep2):
    assert (rep2.n, rep2.k) == (2, 1)
    code = make_code([[1, 1, 0], [0, 1, 1]])
    assert (code.n, code.k) == (3, 1)
    assert {tuple(w) for w in code.codewords()} == {(0, 0, 0), (1, 1, 1)}


def test_zero_matrix_is_rejected():
    with pytest.raises(ZeroMatrixError):
        LinearCode(BitMatrix.zeros(2, 3))


def test_redundant_rows_are_kept():
    code = make_code([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert code.m == 3 and code.rank == 2 and code.k == 1
    assert len(code.checks) == 3


def test_encode_is_a_bijection_onto_the_nullspace(fig35):
    images = {tuple(fig35.encode(u)) for u in itertools.product((0, 1), repeat=4)}
    solutions = {x for x in itertools.product((0, 1), repeat=7) if fig35.is_codeword(x)}
    assert images == solutions
    assert len(images) == 16


def test_encode_edge_cases(fig35, rep2):
    assert not fig35.encode(np.zeros(4)).any()
    assert np.array_equal(rep2.encode([1]), [1, 1])
    with pytest.raises(LengthMismatchError):
        fig35.encode([1, 0])


def test_codewords_counts(fig35, rep2, spc3):
    assert fig35.codewords().shape == (16, 7)
    assert {tuple(w) for w in rep2.codewords()} == {(0, 0), (1, 1)}
    spc_words = spc3.codewords()
    assert len(spc_words) == 4
    assert np.all(spc_words.sum(axis=1) % 2 == 0)


def test_enumeration_limit_is_enforced():
    code = LinearCode(BitMatrix.from_array(BUILTIN_MATRICES["fig35"]), enumeration_limit=3)
    with pytest.raises(TooLargeError):
        code.codewords()


def test_min_distance_bruteforce(fig35, rep2, spc3, hamming74):
    assert rep2.min_distance_bruteforce() == 2
    assert spc3.min_distance_bruteforce() == 2
    assert hamming74.min_distance_bruteforce() == 3
    nonzero = [w for w in fig35.codewords() if w.any()]
    assert fig35.min_distance_bruteforce() == min(int(w.sum()) for w in nonzero)


def test_factor_graph_of_fig35(fig35):
    graph = fig35.factor_graph()
    assert graph.num_checks == 3 and graph.num_variables == 7 and graph.num_edges == 12
    for j, i in graph.edges:
        assert fig35.H[j, i] == 1


def test_factor_graph_shapes():
    diagonal = make_code(np.eye(4, dtype=np.uint8))
    assert diagonal.factor_graph().num_edges == 4
    star = make_code(np.ones((1, 5), dtype=np.uint8)).factor_graph()
    assert star.num_edges == 5
    assert star.check_neighbors(0) == [0, 1, 2, 3, 4]


def test_sample_codeword_is_a_codeword(fig35, rng):
    for _ in range(20):
        assert fig35.is_codeword(fig35.sample_codeword(rng))


def test_resolve_code_sources(tmp_path, fig35_matrix):
    path = save_alist(BitMatrix.from_array(fig35_matrix), tmp_path / "mine.alist")
    from_file = resolve_code(alist=path)
    assert from_file.name == "mine"
    assert from_file.H == builtin_code("fig35").H
    random_code = resolve_code("random:12:3:4:1")
    assert random_code.n == 12
    with pytest.raises(KeyError):
        resolve_code("nonesuch")
    with pytest.raises(ValueError):
        resolve_code("random:12:3")
