"""
Counter-based random substreams and SNR conversions.

Every frame draws from its own stream keyed by (seed, frame, ...), so a frame's
noise does not depend on which worker decodes it or in what order.
"""

import math

import numpy as np

from config.settings import Settings

_BIT_GENERATORS = {
    "philox": np.random.Philox,
    "pcg64": np.random.PCG64,
    "sfc64": np.random.SFC64,
}


def frame_stream(seed: int, *key: int, algorithm: str = None) -> np.random.Generator:
    """Generator for the substream identified by ``key`` under ``seed``."""
    algorithm = (algorithm or Settings().RNG_ALGORITHM).lower()
    if algorithm not in _BIT_GENERATORS:
        raise ValueError(f"unknown RNG algorithm {algorithm!r}; choose from {sorted(_BIT_GENERATORS)}")
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(_BIT_GENERATORS[algorithm](sequence))


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def snr_db_to_sigma(snr_db: float, rate: float, ec: float = 1.0) -> float:
    """Noise standard deviation for Eb/N0 = snr_db at code rate ``rate`` and symbol energy ``ec``."""
    if rate <= 0 or ec <= 0:
        raise ValueError("rate and symbol energy must be positive")
    return math.sqrt(ec / (2.0 * rate * db_to_linear(snr_db)))
