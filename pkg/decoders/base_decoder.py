"""
Base decoder class for all LP / IP decoders in the system
"""

import logging
from abc import ABC, abstractmethod
from datetime import datetime
from typing import Any, Dict, Optional
from uuid import uuid4

import numpy as np

from channels.base_channel import check_llrs
from config.settings import Settings
from models.errors import LengthMismatchError

logger = logging.getLogger(__name__)


class BaseDecoder(ABC):
    """Base class for decoders mapping an LLR vector to a decode result.

    A decoder instance owns its solver state and is used by one worker at a time.
    """

    def __init__(self, length: int, name: Optional[str] = None, decoder_id: Optional[str] = None,
                 settings: Optional[Settings] = None):
        self.decoder_id = decoder_id or str(uuid4())
        self.name = name or self.__class__.__name__
        self.length = length
        self.settings = settings or Settings()
        self.created_at = datetime.now()

        # Decoder statistics
        self.decodes = 0
        self.total_lp_solves = 0
        self.total_cuts = 0

        logger.debug(f"Initialized decoder: {self.name} ({self.decoder_id})")

    @abstractmethod
    def decode(self, llr) -> Any:
        """Decode one LLR vector."""
        pass

    def _prepare(self, llr) -> np.ndarray:
        values = check_llrs(llr)
        if values.shape[0] != self.length:
            raise LengthMismatchError(f"{self.name} expects {self.length} LLRs, got {values.shape[0]}")
        return values

    def _record(self, lp_solves: int, cuts: int) -> None:
        self.decodes += 1
        self.total_lp_solves += lp_solves
        self.total_cuts += cuts

    def get_stats(self) -> Dict[str, Any]:
        """Get decoder usage statistics."""
        return {
            "decoder_id": self.decoder_id,
            "name": self.name,
            "decodes": self.decodes,
            "mean_lp_solves": self.total_lp_solves / self.decodes if self.decodes else 0.0,
            "mean_cuts": self.total_cuts / self.decodes if self.decodes else 0.0,
        }


def is_integral(x: np.ndarray, tol: float) -> bool:
    return bool(np.all(np.abs(x - np.rint(x)) <= tol))
