"""
Data models for Monte Carlo frame-error-rate simulation
"""

import math
from enum import Enum
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, Field, model_validator


class DecoderKind(Enum):
    """Decoders selectable from the command line."""
    LP = "lp"
    ALP = "alp"
    ALP_RPC = "alp-rpc"
    ML_BNB = "ml-bnb"
    CONV_SP = "conv-sp"
    TURBO_LP = "turbo-lp"


class ChannelKind(Enum):
    AWGN = "awgn"
    BSC = "bsc"


class OutputFormat(Enum):
    CSV = "csv"
    JSON = "json"


class SimConfig(BaseModel):
    """One FER sweep: code, channel points, decoder and run parameters."""
    code: str = "fig35"
    alist: Optional[Path] = None
    channel: ChannelKind = ChannelKind.AWGN
    snr_db: List[float] = Field(default_factory=lambda: [1.0, 2.0, 3.0, 4.0])
    p: List[float] = Field(default_factory=list)
    decoder: DecoderKind = DecoderKind.ALP
    frames: int = Field(default=1000, ge=1)
    seed: int = 0
    all_zero: bool = False
    workers: int = Field(default=1, ge=1)
    max_errors: Optional[int] = Field(default=100, ge=1)
    record_timing: bool = True
    output: Optional[Path] = None
    format: OutputFormat = OutputFormat.CSV
    fsm: Optional[str] = None
    info_length: int = Field(default=8, ge=1)

    @model_validator(mode="after")
    def _check_points(self):
        if self.channel == ChannelKind.AWGN and not self.snr_db:
            raise ValueError("snr_db list must not be empty")
        if self.channel == ChannelKind.BSC:
            if not self.p:
                raise ValueError("p list must not be empty for the BSC")
            if any(not 0.0 < q < 0.5 for q in self.p):
                raise ValueError("BSC crossover probabilities must lie in (0, 1/2)")
        return self

    @property
    def points(self) -> List[float]:
        return list(self.snr_db) if self.channel == ChannelKind.AWGN else list(self.p)


class FerPoint(BaseModel):
    """Aggregated result of one channel point."""
    snr_db: Optional[float] = None
    p: Optional[float] = None
    frames: int = Field(ge=0)
    errors: int = Field(ge=0)
    mean_lp_solves: float = 0.0
    mean_cuts: float = 0.0
    mean_ms: float = 0.0

    @model_validator(mode="after")
    def _check_counts(self):
        if self.errors > self.frames:
            raise ValueError("errors cannot exceed frames")
        return self

    @property
    def fer(self) -> float:
        return self.errors / self.frames if self.frames else 0.0

    @property
    def binomial_std(self) -> float:
        """Standard deviation of the FER estimate under a binomial model."""
        if not self.frames:
            return 0.0
        return math.sqrt(self.fer * (1.0 - self.fer) / self.frames)

    def as_row(self) -> dict:
        head = {"snr_db": self.snr_db} if self.p is None else {"p": self.p}
        return {
            **head,
            "frames": self.frames,
            "errors": self.errors,
            "fer": self.fer,
            "mean_lp_solves": self.mean_lp_solves,
            "mean_cuts": self.mean_cuts,
            "mean_ms": self.mean_ms,
        }
