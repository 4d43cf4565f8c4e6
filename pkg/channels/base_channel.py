"""
Base class for memoryless binary-input channels
"""

from abc import ABC, abstractmethod

import numpy as np

from models.errors import NonFiniteLlrError


class BaseChannel(ABC):
    """A channel maps a transmitted codeword to a vector of log-likelihood ratios."""

    def __init__(self, seed: int = 0):
        self.seed = seed

    @abstractmethod
    def transmit(self, x, rng: np.random.Generator) -> np.ndarray:
        """LLR vector lambda_i = ln P(y_i | 0) / P(y_i | 1) for the sent word x."""
        pass

    @property
    @abstractmethod
    def label(self) -> dict:
        """Channel parameter as it appears in result tables."""
        pass

    @staticmethod
    def _bits(x) -> np.ndarray:
        bits = np.asarray(x, dtype=np.int64).reshape(-1)
        if np.any((bits != 0) & (bits != 1)):
            raise ValueError("transmitted word must be binary")
        return bits


def check_llrs(llr) -> np.ndarray:
    values = np.asarray(llr, dtype=float).reshape(-1)
    if not np.all(np.isfinite(values)):
        raise NonFiniteLlrError("LLR vector contains NaN or infinite entries")
    return values
