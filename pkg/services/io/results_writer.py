"""
FER tables as CSV or JSON through pandas
"""

import logging
from pathlib import Path
from typing import List, Optional, Union

import pandas as pd

from models.simulation_models import FerPoint, OutputFormat

logger = logging.getLogger(__name__)

RESULT_COLUMNS = ["frames", "errors", "fer", "mean_lp_solves", "mean_cuts", "mean_ms"]


def results_frame(points: List[FerPoint]) -> pd.DataFrame:
    """One row per channel point; the first column is snr_db, or p for the BSC."""
    rows = [point.as_row() for point in points]
    if not rows:
        return pd.DataFrame(columns=["snr_db"] + RESULT_COLUMNS)
    head = "p" if "p" in rows[0] else "snr_db"
    return pd.DataFrame(rows, columns=[head] + RESULT_COLUMNS)


def render_results(points: List[FerPoint], fmt: OutputFormat = OutputFormat.CSV) -> str:
    frame = results_frame(points)
    if fmt == OutputFormat.JSON:
        return frame.to_json(orient="records", indent=2) + "\n"
    return frame.to_csv(index=False, lineterminator="\n")


def write_results(points: List[FerPoint], path: Optional[Union[str, Path]],
                  fmt: OutputFormat = OutputFormat.CSV) -> str:
    """Render the table and write it to ``path`` when one is given."""
    text = render_results(points, fmt)
    if path is not None:
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text)
            logger.info(f"Wrote {len(points)} result rows to {path}")
        except OSError as e:
            logger.error(f"Failed to write results to {path}: {str(e)}")
            raise
    return text
