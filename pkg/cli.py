"""
Command Line Interface for mpdecode
"""

import asyncio
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import click
import numpy as np

from config.logging_config import setup_logging
from config.settings import Settings
from main import DecodingSystem
from models.errors import (
    AlistParseError,
    ComputationBudgetError,
    IncompatibleDecoderError,
    InconsistentAlistError,
    InvalidFsmError,
    LengthMismatchError,
    MPDecodeError,
    NonFiniteLlrError,
)
from models.simulation_models import ChannelKind, DecoderKind, OutputFormat, SimConfig
from services.io.results_writer import render_results

# Setup logging
setup_logging()
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COMPUTATION = 2

# bad input rather than a failed computation
USAGE_ERRORS = (
    click.UsageError,
    click.Abort,
    ValueError,
    KeyError,
    FileNotFoundError,
    AlistParseError,
    InconsistentAlistError,
    InvalidFsmError,
    NonFiniteLlrError,
    LengthMismatchError,
    IncompatibleDecoderError,
)


def _float_list(ctx, param, value: Optional[str]) -> Optional[List[float]]:
    if value is None:
        return None
    try:
        return [float(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise click.BadParameter(f"expected a comma-separated list of numbers, got {value!r}")


def _seed(seed: Optional[int]) -> int:
    return seed if seed is not None else Settings().SEED


def _format_vector(x: np.ndarray, integral: bool) -> str:
    if integral:
        return " ".join(str(int(v)) for v in np.rint(x))
    return " ".join(f"{v:.6g}" for v in x)


def code_options(func):
    func = click.option("--code", default=None, help="Builtin code (fig35, rep2, spc3, hamming74) "
                                                      "or random:<n>:<wc>:<wr>:<seed>")(func)
    func = click.option("--alist", type=click.Path(exists=True, dir_okay=False, path_type=Path),
                        default=None, help="Parity-check matrix in alist format")(func)
    return func


def decoder_options(func):
    func = click.option("--info-length", type=int, default=8, show_default=True,
                        help="Information length of conv-sp / turbo-lp codes")(func)
    func = click.option("--fsm", default=None, help="FSM JSON (file or text) for conv-sp / turbo-lp; "
                                                    "defaults to the accumulator")(func)
    func = click.option("--decoder", type=click.Choice([k.value for k in DecoderKind]), default=None,
                        help="Decoder to run")(func)
    return func


@click.group()
@click.version_option(version=Settings().VERSION)
def cli():
    """mpdecode - LP and IP decoding of binary linear codes"""
    pass


@cli.command()
@code_options
@decoder_options
@click.option("--llr", "llr_file", type=click.File("r"), default="-",
              help="LLR vector, whitespace or comma separated (default: stdin)")
@click.option("--seed", type=int, default=None, help="Seed for the turbo interleaver (default: MPDECODE_SEED)")
def decode(code: Optional[str], alist: Optional[Path], decoder: Optional[str], fsm: Optional[str],
           info_length: int, llr_file, seed: Optional[int]):
    """Decode one LLR vector and print the estimate with diagnostics."""
    system = DecodingSystem()
    tokens = llr_file.read().replace(",", " ").split()
    try:
        llr = np.array([float(t) for t in tokens], dtype=float)
    except ValueError as e:
        raise click.BadParameter(f"LLR input is not numeric: {str(e)}")
    config = SimConfig(code=code or system.settings.DEFAULT_CODE, alist=alist,
                       decoder=decoder or system.settings.DEFAULT_DECODER, fsm=fsm,
                       info_length=info_length, seed=_seed(seed), frames=1)
    result = system.decode(config, llr)

    click.echo(f"x: {_format_vector(result.x, result.integral)}")
    click.echo(f"objective: {result.objective:.10g}")
    click.echo(f"integral: {str(result.integral).lower()}")
    click.echo(f"ml-certificate: {str(result.ml_certificate).lower()}")
    click.echo(f"lp-solves: {result.lp_solves}")
    click.echo(f"cuts: {result.cuts_added}")


@cli.command()
@code_options
@decoder_options
@click.option("--snr-db", "snr_db", callback=_float_list, default=None, help="Comma-separated Eb/N0 values in dB")
@click.option("--p", "p", callback=_float_list, default=None, help="Comma-separated BSC crossover probabilities")
@click.option("--frames", type=int, default=None, help="Frames per channel point")
@click.option("--seed", type=int, default=None, help="Simulation seed (default: MPDECODE_SEED)")
@click.option("--all-zero", is_flag=True, help="Always send the all-zero codeword")
@click.option("--workers", type=int, default=None, help="Decoder instances run in parallel")
@click.option("--max-errors", type=int, default=None, help="Stop a point after this many frame errors")
@click.option("--no-timing", is_flag=True, help="Report mean_ms as 0 so output is reproducible byte for byte")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Result file")
@click.option("--format", "fmt", type=click.Choice([f.value for f in OutputFormat]), default="csv",
              show_default=True)
def simulate(code, alist, decoder, fsm, info_length, snr_db, p, frames, seed, all_zero, workers,
             max_errors, no_timing, out, fmt):
    """Monte Carlo FER sweep; prints the result table."""
    system = DecodingSystem()
    s = system.settings
    channel = ChannelKind.BSC if p else ChannelKind.AWGN
    config = SimConfig(
        code=code or s.DEFAULT_CODE, alist=alist, channel=channel,
        snr_db=snr_db if snr_db is not None else s.DEFAULT_SNR_DB, p=p or [],
        decoder=decoder or s.DEFAULT_DECODER, seed=_seed(seed),
        frames=frames if frames is not None else s.DEFAULT_FRAMES,
        all_zero=all_zero, workers=workers if workers is not None else s.MAX_WORKERS,
        max_errors=max_errors if max_errors is not None else s.MAX_FRAME_ERRORS,
        record_timing=not no_timing, output=out, format=fmt, fsm=fsm, info_length=info_length,
    )

    async def run_sweep():
        return await system.run_simulation(config)

    points = asyncio.run(run_sweep())
    click.echo(render_results(points, config.format), nl=False)


@cli.command()
@code_options
@click.option("--check-bruteforce", is_flag=True, help="Cross-check against codeword enumeration")
def mindist(code, alist, check_bruteforce):
    """Minimum distance by integer programming."""
    system = DecodingSystem()
    report = system.min_distance(system.resolve_code(code, alist), check_bruteforce=check_bruteforce)
    click.echo(f"d_min: {report['d_min']}")
    if check_bruteforce:
        click.echo(f"d_min (brute force): {report['d_min_bruteforce']}")
        if not report["agree"]:
            raise MPDecodeError("IP and brute-force minimum distances disagree")


@cli.command()
@code_options
@click.option("--restarts", type=int, default=10, show_default=True, help="Random starting directions")
@click.option("--seed", type=int, default=None, help="Search seed (default: MPDECODE_SEED)")
@click.option("--exhaustive", is_flag=True, help="Enumerate every vertex of K1 instead (n <= 8)")
def pseudoweight(code, alist, restarts, seed, exhaustive):
    """Heuristic minimum AWGN pseudoweight and a witness vector."""
    system = DecodingSystem()
    report = system.pseudoweight(system.resolve_code(code, alist), restarts=restarts, seed=_seed(seed),
                                 exhaustive=exhaustive)
    click.echo(f"pseudoweight: {report['pseudoweight']:.10g}")
    click.echo(f"witness: {_format_vector(report['witness'], False)}")


@cli.command()
@code_options
@click.option("--degree", "-M", "degree", type=int, default=2, show_default=True, help="Cover degree M")
@click.option("--seed", type=int, default=None, help="Seed of the edge permutations (default: MPDECODE_SEED)")
@click.option("--limit", type=int, default=16, show_default=True, help="Cover codewords to report")
def cover(code, alist, degree, seed, limit):
    """Random M-cover; scaled pseudocodewords of its codewords with polytope membership."""
    system = DecodingSystem()
    report = system.cover(system.resolve_code(code, alist), degree, _seed(seed), limit=limit)
    click.echo(f"{degree}-cover of {report['code']}: n={report['cover_n']}, k={report['cover_k']}")
    for entry in report["pseudocodewords"]:
        values = " ".join(str(v) for v in entry["pseudocodeword"])
        verdict = "in-polytope" if entry["in_polytope"] else "OUTSIDE"
        click.echo(f"{values}  {verdict}")


def exit_code_for(error: BaseException) -> int:
    if isinstance(error, ComputationBudgetError):
        return EXIT_COMPUTATION
    if isinstance(error, USAGE_ERRORS):
        return EXIT_USAGE
    return EXIT_COMPUTATION


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and map the outcome to 0 (ok), 1 (usage) or 2 (computation failure)."""
    try:
        rv = cli.main(args=list(argv) if argv is not None else None, prog_name="mpdecode",
                      standalone_mode=False)
        return rv if isinstance(rv, int) else EXIT_OK
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except Exception as e:
        code = exit_code_for(e)
        logger.error(f"CLI error: {str(e)}")
        click.echo(f"Error: {str(e)}", err=True)
        return code


if __name__ == "__main__":
    sys.exit(main())
