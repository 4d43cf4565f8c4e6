import itertools
import logging
import math

import numpy as np
import pytest

from analysis.fundamental_cone import (
    ConeModel,
    decodes_to_zero,
    enumerate_cone_vertices,
    in_dual_cone,
    in_fundamental_cone,
)
from analysis.pseudoweight import (
    _improve,
    exhaustive_min_pseudoweight,
    min_pseudoweight_search,
    pairwise_error_probability,
    pseudoweight,
    q_function,
)
from channels.random_streams import frame_stream
from codes.graph_cover import build_cover, random_cover, scaled_pseudocodeword
from decoders.lp_decoder import LpDecoder
from models.errors import SimplexStalledError, TooLargeError, ZeroVectorError
from models.lp_models import LpSolution, LpStatus
from solvers.simplex import SimplexSolver


class _StallAfter:
    """Simplex solver that reports a stall once `good` solves have gone through."""

    def __init__(self, good: int):
        self.good = good
        self.calls = 0
        self._solver = SimplexSolver()

    def solve(self, model):
        self.calls += 1
        if self.calls > self.good:
            return LpSolution(status=LpStatus.STALLED)
        return self._solver.solve(model)


class TestPseudoweight:
    def test_binary_vectors_have_their_hamming_weight(self):
        for n in (1, 5, 10):
            for bits in itertools.product((0, 1), repeat=n):
                if any(bits):
                    assert pseudoweight(bits) == sum(bits)

    def test_binary_vectors_of_length_sixteen(self, rng):
        for _ in range(2000):
            bits = rng.integers(0, 2, size=16)
            if bits.any():
                assert pseudoweight(bits) == bits.sum()

    @pytest.mark.parametrize("tau", [0.5, 2.0, 7.0])
    def test_scale_invariance(self, rng, tau):
        for _ in range(50):
            x = rng.random(9)
            assert pseudoweight(tau * x) == pytest.approx(pseudoweight(x), rel=1e-12)

    def test_invalid_vectors(self):
        with pytest.raises(ZeroVectorError):
            pseudoweight(np.zeros(4))
        with pytest.raises(ValueError):
            pseudoweight([1.0, -0.5])

    def test_q_function_values(self):
        assert q_function(0.0) == pytest.approx(0.5)
        assert q_function(1.6448536) == pytest.approx(0.05, abs=1e-7)
        assert q_function(-1.0) == pytest.approx(1.0 - q_function(1.0))

    def test_pairwise_error_falls_with_pseudoweight(self, fig35):
        vertices = enumerate_cone_vertices(fig35)
        ranked = sorted(vertices, key=pseudoweight)
        errors = [pairwise_error_probability(v, snr_b=1.5, rate=fig35.rate) for v in ranked]
        assert all(a >= b for a, b in zip(errors, errors[1:]))
        codeword = fig35.codewords()[1].astype(float)
        expected = q_function(math.sqrt(2 * fig35.rate * 1.5 * codeword.sum()))
        assert pairwise_error_probability(codeword, 1.5, fig35.rate) == pytest.approx(expected)


class TestMinimumPseudoweight:
    def test_single_parity_check_vertices(self, spc3):
        vertices = enumerate_cone_vertices(spc3)
        expected = {(0.5, 0.5, 0.0), (0.5, 0.0, 0.5), (0.0, 0.5, 0.5)}
        assert {tuple(np.round(v, 9)) for v in vertices} == expected

    def test_single_parity_check_minimum_is_two(self, spc3):
        _, exhaustive = exhaustive_min_pseudoweight(spc3)
        witness, searched = min_pseudoweight_search(spc3, restarts=5)
        assert exhaustive == pytest.approx(2.0)
        assert searched == pytest.approx(2.0)
        assert in_fundamental_cone(spc3, witness)

    def test_repetition_code(self, rep2):
        _, w = min_pseudoweight_search(rep2, restarts=3)
        assert w == pytest.approx(2.0)

    def test_search_is_bounded_by_the_exhaustive_minimum_and_d_min(self, fig35, hamming74):
        for code in (fig35, hamming74):
            _, exhaustive = exhaustive_min_pseudoweight(code)
            witness, searched = min_pseudoweight_search(code, restarts=10, seed=3)
            assert searched >= exhaustive - 1e-9
            assert searched <= code.min_distance_bruteforce() + 1e-9
            assert in_fundamental_cone(code, witness, tol=1e-7)
            assert witness.sum() == pytest.approx(1.0)

    def test_search_is_deterministic_in_the_seed(self, fig35):
        a = min_pseudoweight_search(fig35, restarts=4, seed=9)
        b = min_pseudoweight_search(fig35, restarts=4, seed=9)
        assert np.array_equal(a[0], b[0]) and a[1] == b[1]

    def test_restarts_must_be_positive(self, spc3):
        with pytest.raises(ValueError):
            min_pseudoweight_search(spc3, restarts=0)

    def test_stalled_inner_lp_keeps_the_last_iterate(self, fig35, caplog):
        solver = _StallAfter(1)
        cone = ConeModel(fig35)
        direction = np.linspace(0.1, 1.0, 7)
        first = SimplexSolver().solve(cone.k1_model(direction, maximize=True)).x
        with caplog.at_level(logging.WARNING, logger="analysis.pseudoweight"):
            x = _improve(cone, solver, direction, max_steps=5)
        assert np.array_equal(x, first)
        assert solver.calls == 2
        assert any("stalled" in record.getMessage() for record in caplog.records)

    def test_stalled_first_lp_raises(self, fig35):
        with pytest.raises(SimplexStalledError):
            _improve(ConeModel(fig35), _StallAfter(0), np.ones(7), max_steps=5)

    def test_vertex_enumeration_is_limited(self, random_codes):
        with pytest.raises(TooLargeError):
            enumerate_cone_vertices(random_codes[-1])


class TestFundamentalCone:
    def test_one_inequality_per_edge(self, fig35):
        assert ConeModel(fig35).num_inequalities == 12

    def test_codewords_and_cover_pseudocodewords_lie_in_the_cone(self, fig35):
        for word in fig35.codewords():
            assert in_fundamental_cone(fig35, word)
        graph_cover = random_cover(fig35, 3, frame_stream(2, 3))
        cover = build_cover(fig35, 3, graph_cover.permutations)
        for word in cover.codewords()[:20]:
            point = np.array([float(v) for v in scaled_pseudocodeword(word, 3, cover)])
            assert in_fundamental_cone(fig35, point)

    def test_outside_point(self, spc3):
        assert not in_fundamental_cone(spc3, [1.0, 0.0, 0.0])
        assert not in_fundamental_cone(spc3, [-0.1, 0.5, 0.5])

    def test_decodes_to_zero_matches_lp_decoding(self, fig35, rng):
        decoder = LpDecoder(fig35)
        outcomes = set()
        for _ in range(300):
            llr = rng.standard_normal(7) + 0.7
            result = decoder.decode(llr)
            if abs(result.objective) <= 1e-6 and not np.allclose(result.x, 0.0, atol=1e-6):
                continue
            to_zero = bool(np.allclose(result.x, 0.0, atol=1e-6))
            assert decodes_to_zero(fig35, llr) == to_zero
            outcomes.add(to_zero)
        assert outcomes == {True, False}

    def test_dual_cone_agrees_with_the_primal_predicate(self, fig35, spc3, rng):
        for code in (fig35, spc3):
            for _ in range(60):
                llr = rng.standard_normal(code.n) + 0.5
                assert in_dual_cone(code, llr) == decodes_to_zero(code, llr)
