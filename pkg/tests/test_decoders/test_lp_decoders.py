import logging

import numpy as np
import pytest

from codes.linear_code import make_code
from decoders.adaptive_decoder import AdaptiveLpDecoder, adaptive_lp_decode, adaptive_lp_decode_with_rpc
from decoders.lp_decoder import LpDecoder, lp_decode
from decoders.ml_decoder import brute_force_ml
from decoders.separation import full_polytope_inequalities, in_fundamental_polytope, rpc_cut_search, separate_row
from models.errors import IterationCapError, LengthMismatchError, NonFiniteLlrError


def fractional_llr(code, seed: int = 5, tries: int = 500):
    """First Gaussian LLR vector whose LP optimum is fractional."""
    rng = np.random.default_rng(seed)
    decoder = LpDecoder(code)
    for _ in range(tries):
        llr = rng.standard_normal(code.n)
        if not decoder.decode(llr).integral:
            return llr
    raise AssertionError("no fractional LP optimum found")


class TestLpDecoder:
    def test_clean_channel_decodes_to_zero(self, fig35):
        result = lp_decode(fig35, np.ones(7))
        assert result.integral and result.ml_certificate
        assert np.array_equal(result.codeword, np.zeros(7))
        assert result.lp_solves == 1 and result.cuts_added == 0
        assert result.max_model_rows == 24

    def test_integral_optimum_is_the_ml_codeword(self, fig35, tie_free_llrs):
        decoder = LpDecoder(fig35)
        for llr in tie_free_llrs(7, 200, scale=1.5):
            llr = llr + 1.0
            result = decoder.decode(llr)
            word, value = brute_force_ml(fig35, llr)
            assert result.objective <= value + 1e-7
            assert in_fundamental_polytope(fig35, result.x, tol=1e-7)
            if result.integral:
                assert np.array_equal(result.codeword, word)
                assert result.objective == pytest.approx(value, abs=1e-7)

    def test_fractional_optimum_has_no_certificate(self, fig35):
        result = lp_decode(fig35, fractional_llr(fig35))
        assert not result.integral
        assert not result.ml_certificate
        assert result.codeword is None

    def test_stats_are_recorded(self, spc3):
        decoder = LpDecoder(spc3)
        decoder.decode([1.0, 1.0, 1.0])
        decoder.decode([1.0, -0.5, 1.0])
        stats = decoder.get_stats()
        assert stats["decodes"] == 2
        assert stats["mean_lp_solves"] == 1.0

    def test_bad_llrs_are_rejected(self, fig35):
        decoder = LpDecoder(fig35)
        with pytest.raises(LengthMismatchError):
            decoder.decode(np.ones(6))
        with pytest.raises(NonFiniteLlrError):
            decoder.decode([1.0, 1.0, np.nan, 1.0, 1.0, 1.0, 1.0])


class TestAdaptiveLpDecoder:
    def test_objective_matches_the_full_lp(self, fig35, random_codes, tie_free_llrs):
        for code in [fig35] + random_codes[:3]:
            full, adaptive = LpDecoder(code), AdaptiveLpDecoder(code)
            for llr in tie_free_llrs(code.n, 12):
                expected = full.decode(llr)
                result = adaptive.decode(llr)
                assert result.objective == pytest.approx(expected.objective, abs=1e-6)
                assert result.integral == expected.integral
                assert result.cuts_added <= code.n ** 2
                assert result.max_model_rows == result.cuts_added

    def test_hypercube_optimum_that_is_a_codeword_needs_one_solve(self, fig35):
        result = adaptive_lp_decode(fig35, np.ones(7))
        assert result.lp_solves == 1
        assert result.cuts_added == 0
        assert np.array_equal(result.codeword, np.zeros(7))

    def test_iteration_cap(self, fig35):
        decoder = AdaptiveLpDecoder(fig35, iteration_cap=1)
        with pytest.raises(IterationCapError):
            decoder.decode([-1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0])

    @pytest.mark.parametrize("use_rpc", [False, True], ids=["fs", "rpc"])
    def test_every_emitted_cut_keeps_all_codewords(self, fig35, random_codes, tie_free_llrs, use_rpc):
        for code in [fig35] + random_codes[:3]:
            decoder = AdaptiveLpDecoder(code, use_rpc=use_rpc)
            words = code.codewords()
            pool = {}
            for llr in tie_free_llrs(code.n, 15):
                decoder.cut_loop(llr, pool=pool)
            assert pool
            for cut in pool.values():
                assert not any(cut.is_violated_by(w.astype(float)) for w in words)

    def test_pool_beyond_n_squared_is_logged(self, caplog):
        spc7 = make_code(np.ones((1, 7), dtype=np.uint8), name="spc7")
        # 63 of the 64 inequalities; the all-ones point is only cut off by S = N
        pool = {c.key: c for c in full_polytope_inequalities(spc7) if len(c.odd_set) < 7}
        decoder = AdaptiveLpDecoder(spc7)
        with caplog.at_level(logging.WARNING, logger="decoders.adaptive_decoder"):
            outcome = decoder.cut_loop(np.full(7, -1.0), pool=pool)
        assert len(pool) == 64
        assert outcome.cuts_added == 1
        assert outcome.value == pytest.approx(-6.0)
        assert any("above n^2 = 49" in record.getMessage() for record in caplog.records)

    def test_integral_results_are_ml(self, random_codes, tie_free_llrs):
        for code in random_codes:
            for llr in tie_free_llrs(code.n, 20):
                llr = llr + 0.8
                result = adaptive_lp_decode(code, llr)
                if result.ml_certificate:
                    assert np.array_equal(result.codeword, brute_force_ml(code, llr)[0])


class TestRpcDecoder:
    def test_rpc_tightens_the_relaxation(self, fig35, random_codes, tie_free_llrs):
        for code in [fig35] + random_codes:
            plain, rpc = AdaptiveLpDecoder(code), AdaptiveLpDecoder(code, use_rpc=True)
            for llr in tie_free_llrs(code.n, 20):
                base = plain.decode(llr)
                tight = rpc.decode(llr)
                word, value = brute_force_ml(code, llr)
                assert tight.objective >= base.objective - 1e-7
                assert tight.objective <= value + 1e-7
                if tight.integral:
                    assert np.array_equal(tight.codeword, word)

    def test_rpc_rounds_only_run_on_fractional_points(self, fig35):
        llr = fractional_llr(fig35)
        x = lp_decode(fig35, llr).x
        assert all(cut.is_violated_by(x) for cut in rpc_cut_search(fig35, x))
        result = adaptive_lp_decode_with_rpc(fig35, llr)
        assert result.objective >= lp_decode(fig35, llr).objective - 1e-7
        clean = adaptive_lp_decode_with_rpc(fig35, np.ones(7))
        assert clean.rpc_rounds == 0

    def test_redundant_check_cuts_a_point_of_the_polytope(self, fig35):
        # satisfies every row of H, but is odd on the sum of the first two rows, {0, 2, 4, 5}
        x = np.array([1.0, 0.5, 1.0, 0.5, 1.0, 0.0, 0.5])
        assert in_fundamental_polytope(fig35, x)
        assert all(separate_row(support, x, row=j) is None for j, support in enumerate(fig35.checks))

        cuts = rpc_cut_search(fig35, x)
        assert [cut.key for cut in cuts] == [((0, 2, 4, 5), (0, 2, 4))]
        assert cuts[0].is_violated_by(x)
        assert not any(cuts[0].is_violated_by(w.astype(float)) for w in fig35.codewords())


class TestCodewordSymmetry:
    def test_sign_flips_map_outputs_by_the_codeword(self, fig35, tie_free_llrs):
        decoder = LpDecoder(fig35)
        llrs = tie_free_llrs(7, 25)
        for c in fig35.codewords():
            sign = 1.0 - 2.0 * c
            for llr in llrs:
                base = decoder.decode(llr).x
                flipped = decoder.decode(sign * llr).x
                assert np.allclose(flipped, np.abs(base - c), atol=1e-6)

    def test_adaptive_decoder_is_symmetric_too(self, fig35, tie_free_llrs):
        decoder = AdaptiveLpDecoder(fig35)
        c = fig35.codewords()[7]
        sign = 1.0 - 2.0 * c
        for llr in tie_free_llrs(7, 50):
            assert np.allclose(decoder.decode(sign * llr).x, np.abs(decoder.decode(llr).x - c), atol=1e-6)
