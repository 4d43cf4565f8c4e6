"""
Builtin parity-check matrices and code lookup by name
"""

from pathlib import Path
from typing import Dict, Optional

import numpy as np

from codes.linear_code import LinearCode, make_code
from utils.alist import load_alist
from utils.code_generator import CodeGenerator

BUILTIN_MATRICES: Dict[str, np.ndarray] = {
    # (7,4) code with 12 ones
    "fig35": np.array([
        [1, 1, 0, 1, 1, 0, 0],
        [0, 1, 1, 1, 0, 1, 0],
        [0, 0, 0, 1, 1, 1, 1],
    ], dtype=np.uint8),
    "rep2": np.array([[1, 1]], dtype=np.uint8),
    "spc3": np.array([[1, 1, 1]], dtype=np.uint8),
    "hamming74": np.array([
        [1, 0, 1, 0, 1, 0, 1],
        [0, 1, 1, 0, 0, 1, 1],
        [0, 0, 0, 1, 1, 1, 1],
    ], dtype=np.uint8),
}


def builtin_code(name: str) -> LinearCode:
    if name not in BUILTIN_MATRICES:
        raise KeyError(f"unknown builtin code {name!r}; choose from {sorted(BUILTIN_MATRICES)}")
    return make_code(BUILTIN_MATRICES[name], name=name)


def resolve_code(code: Optional[str] = None, alist: Optional[Path] = None) -> LinearCode:
    """Code from an alist path, a builtin name, or ``random:<n>:<wc>:<wr>:<seed>``."""
    if alist is not None:
        return make_code(load_alist(alist), name=Path(alist).stem)
    name = code or "fig35"
    if name.startswith("random:"):
        try:
            _, n, wc, wr, seed = name.split(":")
            H = CodeGenerator(int(seed)).gallager_matrix(int(n), int(wc), int(wr))
        except ValueError as e:
            raise ValueError(f"bad random code description {name!r}: {str(e)}")
        return make_code(H, name=name)
    return builtin_code(name)
