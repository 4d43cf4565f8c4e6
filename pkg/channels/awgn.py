"""
Binary-input AWGN channel with BPSK mapping 0 -> +1, 1 -> -1
"""

import math

import numpy as np

from channels.base_channel import BaseChannel
from channels.random_streams import db_to_linear, frame_stream


class AwgnChannel(BaseChannel):
    """AWGN at code rate ``rate`` and linear Eb/N0 ``snr_b``.

    Each LLR is N(4 r snr_b (-1)^x_i, 8 r snr_b). By default LLRs are drawn from
    that law directly; ``via_received`` samples y = +-sqrt(Ec) + noise and
    converts it instead.
    """

    def __init__(self, rate: float, snr_b: float, seed: int = 0, via_received: bool = False, ec: float = 1.0):
        super().__init__(seed)
        if not 0.0 < rate <= 1.0:
            raise ValueError(f"rate must lie in (0, 1], got {rate}")
        if snr_b <= 0.0:
            raise ValueError(f"snr_b must be positive, got {snr_b}")
        self.rate = rate
        self.snr_b = snr_b
        self.via_received = via_received
        self.ec = ec

    @classmethod
    def from_db(cls, rate: float, snr_db: float, **kwargs) -> "AwgnChannel":
        channel = cls(rate, db_to_linear(snr_db), **kwargs)
        channel.snr_db = snr_db
        return channel

    @property
    def llr_mean(self) -> float:
        return 4.0 * self.rate * self.snr_b

    @property
    def llr_variance(self) -> float:
        return 8.0 * self.rate * self.snr_b

    @property
    def sigma(self) -> float:
        return math.sqrt(self.ec / (2.0 * self.rate * self.snr_b))

    @property
    def label(self) -> dict:
        return {"snr_db": getattr(self, "snr_db", 10.0 * math.log10(self.snr_b))}

    def transmit(self, x, rng: np.random.Generator) -> np.ndarray:
        bits = self._bits(x)
        signs = 1.0 - 2.0 * bits
        noise = rng.standard_normal(bits.shape[0])
        if self.via_received:
            amplitude = math.sqrt(self.ec)
            y = signs * amplitude + self.sigma * noise
            return 2.0 * amplitude * y / self.sigma ** 2
        return signs * self.llr_mean + math.sqrt(self.llr_variance) * noise


def transmit_awgn(channel: AwgnChannel, x, rng: np.random.Generator = None) -> np.ndarray:
    return channel.transmit(x, rng if rng is not None else frame_stream(channel.seed))
