import math

import numpy as np
import pytest
from scipy import stats

from channels.awgn import AwgnChannel, transmit_awgn
from channels.base_channel import check_llrs
from channels.bsc import BscChannel, transmit_bsc
from channels.random_streams import db_to_linear, frame_stream, snr_db_to_sigma
from models.errors import NonFiniteLlrError

SAMPLES = 200_000


class TestAwgn:
    def test_llr_moments_for_the_7_4_code_at_0_db(self):
        channel = AwgnChannel(rate=4 / 7, snr_b=1.0)
        assert channel.llr_mean == pytest.approx(16 / 7)
        assert channel.llr_variance == pytest.approx(32 / 7)
        llr = channel.transmit(np.zeros(SAMPLES, dtype=np.uint8), frame_stream(1, 0))
        assert abs(llr.mean() - 16 / 7) <= 0.01 * 16 / 7
        assert abs(llr.var() - 32 / 7) <= 0.02 * 32 / 7

    def test_one_bits_flip_the_mean_only(self):
        channel = AwgnChannel(rate=4 / 7, snr_b=1.0)
        llr = channel.transmit(np.ones(SAMPLES, dtype=np.uint8), frame_stream(2, 0))
        assert abs(llr.mean() + 16 / 7) <= 0.01 * 16 / 7
        assert abs(llr.var() - 32 / 7) <= 0.02 * 32 / 7

    def test_received_value_path_has_the_same_law(self):
        direct = AwgnChannel(rate=0.5, snr_b=1.5)
        via_y = AwgnChannel(rate=0.5, snr_b=1.5, via_received=True)
        zeros = np.zeros(20_000, dtype=np.uint8)
        a = direct.transmit(zeros, frame_stream(3, 0))
        b = via_y.transmit(zeros, frame_stream(4, 0))
        assert stats.ks_2samp(a, b).pvalue > 1e-3

    def test_same_stream_same_llrs(self):
        channel = AwgnChannel.from_db(4 / 7, 2.0)
        word = np.array([0, 1, 1, 0, 0, 1, 0])
        assert np.array_equal(channel.transmit(word, frame_stream(9, 5, 0)),
                              channel.transmit(word, frame_stream(9, 5, 0)))
        assert np.array_equal(transmit_awgn(channel, word), transmit_awgn(channel, word))

    def test_label_carries_the_db_value(self):
        assert AwgnChannel.from_db(0.5, 3.0).label == {"snr_db": 3.0}

    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            AwgnChannel(rate=0.0, snr_b=1.0)
        with pytest.raises(ValueError):
            AwgnChannel(rate=0.5, snr_b=-1.0)


class TestBsc:
    def test_llr_magnitude_at_p_one_tenth(self):
        channel = BscChannel(0.1)
        assert channel.llr_magnitude == pytest.approx(math.log(9))
        assert np.allclose(channel.llrs_for([0, 1]), [math.log(9), -math.log(9)])

    def test_magnitude_vanishes_towards_one_half(self):
        assert BscChannel(0.4999).llr_magnitude < 1e-3

    def test_flip_rate_matches_p(self):
        channel = BscChannel(0.2)
        llr = channel.transmit(np.zeros(SAMPLES, dtype=np.uint8), frame_stream(5, 0))
        flips = np.mean(llr < 0)
        assert abs(flips - 0.2) < 4 * math.sqrt(0.2 * 0.8 / SAMPLES)

    def test_no_flips_keeps_signs(self):
        class NoFlips:
            def random(self, size):
                return np.ones(size)

        word = np.array([0, 1, 1, 0])
        llr = BscChannel(0.1).transmit(word, NoFlips())
        assert np.array_equal(np.sign(llr), 1 - 2 * word)
        assert np.array_equal(transmit_bsc(BscChannel(0.1, seed=2), word),
                              transmit_bsc(BscChannel(0.1, seed=2), word))

    def test_invalid_crossover(self):
        for p in (0.0, 0.5, 0.7):
            with pytest.raises(ValueError):
                BscChannel(p)


class TestSnrConversions:
    def test_zero_db_rate_one(self):
        assert snr_db_to_sigma(0.0, 1.0) == pytest.approx(1 / math.sqrt(2))

    def test_sigma_scaling(self):
        base = snr_db_to_sigma(0.0, 1.0) ** 2
        doubled_snr = snr_db_to_sigma(10 * math.log10(2), 1.0) ** 2
        half_rate = snr_db_to_sigma(0.0, 0.5) ** 2
        assert doubled_snr == pytest.approx(base / 2)
        assert half_rate == pytest.approx(2 * base)

    def test_db_to_linear(self):
        assert db_to_linear(10.0) == pytest.approx(10.0)
        assert db_to_linear(0.0) == 1.0


class TestStreams:
    def test_keys_select_independent_streams(self):
        a = frame_stream(1, 0, 0).random(4)
        b = frame_stream(1, 0, 1).random(4)
        c = frame_stream(1, 0, 0).random(4)
        assert np.array_equal(a, c)
        assert not np.array_equal(a, b)

    @pytest.mark.parametrize("algorithm", ["philox", "pcg64", "sfc64"])
    def test_supported_algorithms(self, algorithm):
        assert frame_stream(3, 1, algorithm=algorithm).random() < 1.0

    def test_unknown_algorithm(self):
        with pytest.raises(ValueError):
            frame_stream(3, algorithm="mt")


def test_check_llrs_rejects_non_finite_values():
    with pytest.raises(NonFiniteLlrError):
        check_llrs([0.0, np.nan])
    with pytest.raises(NonFiniteLlrError):
        check_llrs([np.inf, 1.0])
