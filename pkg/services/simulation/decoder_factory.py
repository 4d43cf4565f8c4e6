"""
Builds the code and decoder instances a simulation run needs
"""

import logging
from typing import Optional, Union

from channels.random_streams import frame_stream
from codes.builtin import resolve_code
from codes.linear_code import LinearCode
from codes.trellis import ConvolutionalCode
from codes.turbo import TurboCode
from config.settings import Settings
from decoders.adaptive_decoder import AdaptiveLpDecoder
from decoders.base_decoder import BaseDecoder
from decoders.lp_decoder import LpDecoder
from decoders.ml_decoder import MlBnbDecoder
from decoders.trellis_decoder import ConvSpDecoder, TurboLpDecoder
from models.code_models import Fsm
from models.errors import IncompatibleDecoderError
from models.simulation_models import DecoderKind, SimConfig

logger = logging.getLogger(__name__)

AnyCode = Union[LinearCode, ConvolutionalCode, TurboCode]

LINEAR_DECODERS = {DecoderKind.LP, DecoderKind.ALP, DecoderKind.ALP_RPC, DecoderKind.ML_BNB}

# substream key of the turbo interleaver; frame keys are two entries long
INTERLEAVER_STREAM = 0x7B0


def _fsm(config: SimConfig) -> Fsm:
    return Fsm.from_json(config.fsm) if config.fsm else Fsm.accumulator()


def build_code(config: SimConfig, settings: Optional[Settings] = None) -> AnyCode:
    """Code object matching the decoder family of ``config``."""
    settings = settings or Settings()
    if config.decoder in LINEAR_DECODERS:
        return resolve_code(config.code, config.alist)

    if config.alist is not None:
        raise IncompatibleDecoderError(f"decoder {config.decoder.value} needs an FSM, not an alist matrix")
    fsm = _fsm(config)
    if config.decoder == DecoderKind.CONV_SP:
        return ConvolutionalCode(fsm, config.info_length)
    rng = frame_stream(config.seed, INTERLEAVER_STREAM, algorithm=settings.RNG_ALGORITHM)
    code = TurboCode.random(fsm, config.info_length, rng)
    logger.info(f"turbo code {code.name}: n={code.n}, dimension {code.dimension}, interleaver {code.interleaver.tolist()}")
    return code


def build_decoder(config: SimConfig, code: AnyCode, settings: Optional[Settings] = None) -> BaseDecoder:
    """Fresh decoder instance; each worker gets its own."""
    settings = settings or Settings()
    kind = config.decoder
    if kind in LINEAR_DECODERS and not isinstance(code, LinearCode):
        raise IncompatibleDecoderError(f"decoder {kind.value} needs a parity-check code")
    if kind == DecoderKind.LP:
        return LpDecoder(code, settings=settings)
    if kind == DecoderKind.ALP:
        return AdaptiveLpDecoder(code, settings=settings)
    if kind == DecoderKind.ALP_RPC:
        return AdaptiveLpDecoder(code, use_rpc=True, settings=settings)
    if kind == DecoderKind.ML_BNB:
        return MlBnbDecoder(code, settings=settings)
    if kind == DecoderKind.CONV_SP:
        if not isinstance(code, ConvolutionalCode):
            raise IncompatibleDecoderError("conv-sp needs a convolutional code")
        return ConvSpDecoder(code, settings=settings)
    if kind == DecoderKind.TURBO_LP:
        if not isinstance(code, TurboCode):
            raise IncompatibleDecoderError("turbo-lp needs a turbo code")
        return TurboLpDecoder(code, settings=settings)
    raise IncompatibleDecoderError(f"unknown decoder {kind}")
