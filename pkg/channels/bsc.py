"""
Binary symmetric channel
"""

import math

import numpy as np

from channels.base_channel import BaseChannel
from channels.random_streams import frame_stream


class BscChannel(BaseChannel):
    """Flips every bit independently with probability p < 1/2."""

    def __init__(self, p: float, seed: int = 0):
        super().__init__(seed)
        if not 0.0 < p < 0.5:
            raise ValueError(f"crossover probability must lie in (0, 1/2), got {p}")
        self.p = p

    @property
    def llr_magnitude(self) -> float:
        return math.log((1.0 - self.p) / self.p)

    @property
    def label(self) -> dict:
        return {"p": self.p}

    def llrs_for(self, received) -> np.ndarray:
        received = self._bits(received)
        return self.llr_magnitude * (1.0 - 2.0 * received)

    def transmit(self, x, rng: np.random.Generator) -> np.ndarray:
        bits = self._bits(x)
        flips = (rng.random(bits.shape[0]) < self.p).astype(np.int64)
        return self.llrs_for(bits ^ flips)


def transmit_bsc(channel: BscChannel, x, rng: np.random.Generator = None) -> np.ndarray:
    return channel.transmit(x, rng if rng is not None else frame_stream(channel.seed))
