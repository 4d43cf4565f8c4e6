"""
Monte Carlo frame-error-rate simulation
"""

import asyncio
import logging
import time
from typing import List, NamedTuple, Optional

import numpy as np

from channels.awgn import AwgnChannel
from channels.base_channel import BaseChannel
from channels.bsc import BscChannel
from channels.random_streams import frame_stream
from config.settings import Settings
from decoders.base_decoder import BaseDecoder
from models.simulation_models import ChannelKind, FerPoint, SimConfig
from services.simulation.decoder_factory import build_code, build_decoder

logger = logging.getLogger(__name__)

NOISE_STREAM = 0
WORD_STREAM = 1


class FrameOutcome(NamedTuple):
    frame: int
    error: bool
    lp_solves: int
    cuts: int
    seconds: float


class FerSimulator:
    """Runs a SimConfig point by point.

    Frame f draws its noise from substream (seed, f, 0) and its sent word from
    (seed, f, 1), so the same frame sees the same randomness at every channel
    point, under every decoder and on every worker. Frames are decoded in
    fixed batches; the early stop is decided in frame order after each batch.
    """

    def __init__(self, config: SimConfig, settings: Optional[Settings] = None):
        self.config = config
        self.settings = settings or Settings()
        self.code = build_code(config, self.settings)
        self.decoders: List[BaseDecoder] = [
            build_decoder(config, self.code, self.settings) for _ in range(config.workers)
        ]
        self.batch_size = max(1, self.settings.FRAME_BATCH)
        self.algorithm = self.settings.RNG_ALGORITHM
        self.results: List[FerPoint] = []

        logger.info(f"FER simulator: {self.decoders[0].name} on {self.code.name} "
                    f"(n={self.code.n}), {config.workers} worker(s)")

    def channel_for(self, point: float) -> BaseChannel:
        if self.config.channel == ChannelKind.BSC:
            return BscChannel(point, seed=self.config.seed)
        return AwgnChannel.from_db(self.code.rate, point, seed=self.config.seed)

    def sent_word(self, frame: int) -> np.ndarray:
        if self.config.all_zero:
            return np.zeros(self.code.n, dtype=np.uint8)
        rng = frame_stream(self.config.seed, frame, WORD_STREAM, algorithm=self.algorithm)
        return self.code.sample_codeword(rng).astype(np.uint8)

    def run_frame(self, decoder: BaseDecoder, channel: BaseChannel, frame: int) -> FrameOutcome:
        sent = self.sent_word(frame)
        rng = frame_stream(self.config.seed, frame, NOISE_STREAM, algorithm=self.algorithm)
        llr = channel.transmit(sent, rng)
        started = time.perf_counter()
        result = decoder.decode(llr)
        elapsed = time.perf_counter() - started
        # fractional outputs are never a codeword, so they always count
        word = result.codeword
        error = word is None or not np.array_equal(word, sent)
        return FrameOutcome(frame, error, result.lp_solves, result.cuts_added, elapsed)

    def run_span(self, decoder: BaseDecoder, channel: BaseChannel, frames: range) -> List[FrameOutcome]:
        return [self.run_frame(decoder, channel, frame) for frame in frames]

    def _spans(self, start: int, stop: int) -> List[range]:
        workers = len(self.decoders)
        size = -(-(stop - start) // workers)
        return [range(lo, min(lo + size, stop)) for lo in range(start, stop, size)]

    async def run_point(self, point: float) -> FerPoint:
        config = self.config
        channel = self.channel_for(point)
        max_errors = config.max_errors
        kept: List[FrameOutcome] = []
        errors = 0
        start = 0

        while start < config.frames:
            stop = min(start + self.batch_size, config.frames)
            spans = self._spans(start, stop)
            batches = await asyncio.gather(*[
                asyncio.to_thread(self.run_span, self.decoders[w], channel, span)
                for w, span in enumerate(spans)
            ])
            outcomes = sorted((o for batch in batches for o in batch), key=lambda o: o.frame)
            for outcome in outcomes:
                kept.append(outcome)
                errors += outcome.error
                if max_errors is not None and errors >= max_errors:
                    break
            if max_errors is not None and errors >= max_errors:
                logger.debug(f"early stop at {channel.label} after {len(kept)} frames")
                break
            start = stop

        count = len(kept)
        fer_point = FerPoint(
            **channel.label,
            frames=count,
            errors=errors,
            mean_lp_solves=sum(o.lp_solves for o in kept) / count,
            mean_cuts=sum(o.cuts for o in kept) / count,
            mean_ms=1000.0 * sum(o.seconds for o in kept) / count if config.record_timing else 0.0,
        )
        logger.info(f"{channel.label}: {fer_point.errors}/{fer_point.frames} frame errors, FER {fer_point.fer:.4g}")
        return fer_point

    async def run(self) -> List[FerPoint]:
        self.results = []
        for point in self.config.points:
            try:
                self.results.append(await self.run_point(point))
            except Exception as e:
                logger.error(f"Simulation failed at point {point}: {str(e)}")
                raise
        return self.results


def simulate_fer(config: SimConfig, settings: Optional[Settings] = None) -> List[FerPoint]:
    """Blocking entry point: one FerPoint per channel point, in configuration order."""
    return asyncio.run(FerSimulator(config, settings).run())
