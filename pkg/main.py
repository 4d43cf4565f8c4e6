"""
mpdecode - Main Application
Entry point for LP / IP decoding runs and FER sweeps.
"""

import asyncio
import logging
from typing import List, Optional

import numpy as np

from analysis.pseudoweight import exhaustive_min_pseudoweight, min_pseudoweight_search
from channels.random_streams import frame_stream
from codes.builtin import resolve_code
from codes.graph_cover import build_cover, random_cover, scaled_pseudocodeword
from codes.linear_code import LinearCode
from config.logging_config import setup_logging
from config.settings import Settings
from decoders.ml_decoder import min_distance_ip
from decoders.separation import in_fundamental_polytope
from models.decoder_models import DecodeResult
from models.simulation_models import FerPoint, SimConfig
from services.io.results_writer import write_results
from services.simulation.decoder_factory import build_code, build_decoder
from services.simulation.fer_simulator import FerSimulator

# Setup logging
setup_logging()
logger = logging.getLogger(__name__)

# substream key of the cover permutations
COVER_STREAM = 0xC0E


class DecodingSystem:
    """Application object behind the CLI: decodes, simulates and analyses codes."""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or Settings()
        self.simulations_run = 0

    def default_config(self) -> SimConfig:
        s = self.settings
        return SimConfig(code=s.DEFAULT_CODE, decoder=s.DEFAULT_DECODER, snr_db=s.DEFAULT_SNR_DB,
                         frames=s.DEFAULT_FRAMES, seed=s.SEED, max_errors=s.MAX_FRAME_ERRORS,
                         workers=s.MAX_WORKERS)

    async def run_simulation(self, config: SimConfig) -> List[FerPoint]:
        """Run the FER sweep of ``config`` and write the table when an output path is set."""
        logger.info(f"Starting FER sweep: decoder={config.decoder.value}, code={config.alist or config.code}, "
                    f"points={config.points}, frames={config.frames}, seed={config.seed}")
        try:
            simulator = FerSimulator(config, self.settings)
            points = await simulator.run()
            if config.output is not None:
                write_results(points, config.output, config.format)
            self.simulations_run += 1
            return points
        except Exception as e:
            logger.error(f"Error during FER sweep: {str(e)}")
            raise

    def decode(self, config: SimConfig, llr) -> DecodeResult:
        code = build_code(config, self.settings)
        decoder = build_decoder(config, code, self.settings)
        result = decoder.decode(np.asarray(llr, dtype=float))
        logger.info(f"{decoder.name}: integral={result.integral}, lp_solves={result.lp_solves}, "
                    f"cuts={result.cuts_added}")
        return result

    def min_distance(self, code: LinearCode, check_bruteforce: bool = False) -> dict:
        d_ip = min_distance_ip(code, settings=self.settings)
        report = {"code": code.name, "n": code.n, "k": code.k, "d_min": d_ip}
        if check_bruteforce:
            d_bf = code.min_distance_bruteforce()
            report["d_min_bruteforce"] = d_bf
            report["agree"] = d_bf == d_ip
            if d_bf != d_ip:
                logger.error(f"{code.name}: IP minimum distance {d_ip} differs from brute force {d_bf}")
        return report

    def pseudoweight(self, code: LinearCode, restarts: int = 10, seed: int = 0, exhaustive: bool = False) -> dict:
        if exhaustive:
            witness, weight = exhaustive_min_pseudoweight(code)
        else:
            witness, weight = min_pseudoweight_search(code, restarts=restarts, seed=seed)
        return {"code": code.name, "pseudoweight": weight, "witness": witness}

    def cover(self, code: LinearCode, degree: int, seed: int, limit: int = 16) -> dict:
        """Random ``degree``-cover and the scaled pseudocodewords of some of its codewords."""
        rng = frame_stream(seed, COVER_STREAM, algorithm=self.settings.RNG_ALGORITHM)
        graph_cover = random_cover(code, degree, rng)
        cover_code = build_cover(code, degree, graph_cover.permutations)
        if cover_code.k <= cover_code.enumeration_limit:
            words = list(cover_code.codewords()[:limit])
        else:
            words = [cover_code.sample_codeword(rng) for _ in range(limit)]
        entries = []
        for word in words:
            scaled = scaled_pseudocodeword(word, degree, cover_code)
            point = np.array([float(v) for v in scaled])
            entries.append({"pseudocodeword": scaled, "in_polytope": in_fundamental_polytope(code, point)})
        return {"code": code.name, "degree": degree, "cover_n": cover_code.n, "cover_k": cover_code.k,
                "pseudocodewords": entries}

    def resolve_code(self, code: Optional[str], alist) -> LinearCode:
        return resolve_code(code or self.settings.DEFAULT_CODE, alist)


async def main():
    """Main application entry point: the default FER sweep from settings."""
    system = DecodingSystem()
    try:
        config = system.default_config()
        points = await system.run_simulation(config)
        print(write_results(points, None, config.format), end="")
    except KeyboardInterrupt:
        logger.info("Application stopped by user.")
    except Exception as e:
        logger.error(f"Application error: {str(e)}")
        raise


if __name__ == "__main__":
    asyncio.run(main())
