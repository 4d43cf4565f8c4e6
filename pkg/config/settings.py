"""
Configuration management for mpdecode
"""

from pathlib import Path
from typing import List
from pydantic_settings import BaseSettings
from pydantic import Field

class Settings(BaseSettings):
    """Application settings with environment variable support (prefix MPDECODE_)."""

    # Application
    APP_NAME: str = "mpdecode"
    VERSION: str = "1.0.0"

    # Directories
    BASE_DIR: Path = Path(__file__).parent.parent
    LOGS_DIR: Path = BASE_DIR / "logs"
    RESULTS_DIR: Path = BASE_DIR / "results"

    # Logging
    LOG_LEVEL: str = Field(default="INFO")
    CONSOLE_LOG_LEVEL: str = Field(default="WARNING")
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    # Randomness
    SEED: int = Field(default=0)
    RNG_ALGORITHM: str = Field(default="philox")

    # Codes
    ENUMERATION_LIMIT: int = Field(default=20)

    # Simplex
    FEASIBILITY_TOL: float = Field(default=1e-9)
    OPTIMALITY_TOL: float = Field(default=1e-9)
    DEGENERACY_STREAK: int = Field(default=20)
    SIMPLEX_MAX_ITERATIONS: int = Field(default=50000)

    # LP decoding
    MAX_ROW_WEIGHT: int = Field(default=16)
    INTEGRALITY_TOL: float = Field(default=1e-5)
    CUT_VIOLATION_TOL: float = Field(default=1e-7)
    ITERATION_CAP_FACTOR: int = Field(default=100)
    RPC_MAX_ROUNDS: int = Field(default=50)

    # Branch-and-bound
    BNB_NODE_BUDGET: int = Field(default=20000)
    BNB_PRUNE_TOL: float = Field(default=1e-9)

    # Simulation
    MAX_WORKERS: int = Field(default=1)
    FRAME_BATCH: int = Field(default=256)
    MAX_FRAME_ERRORS: int = Field(default=100)
    DEFAULT_CODE: str = Field(default="fig35")
    DEFAULT_DECODER: str = Field(default="alp")
    DEFAULT_SNR_DB: List[float] = Field(default=[1.0, 2.0, 3.0, 4.0])
    DEFAULT_FRAMES: int = Field(default=1000)

    class Config:
        env_file = ".env"
        env_prefix = "MPDECODE_"
        case_sensitive = True
        extra = "ignore"

    def __init__(self, **kwargs):
        super().__init__(**kwargs)
        self.ensure_directories()

    def ensure_directories(self):
        """Ensure required directories exist."""
        for directory in [self.LOGS_DIR, self.RESULTS_DIR]:
            directory.mkdir(parents=True, exist_ok=True)
