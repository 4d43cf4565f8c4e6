import numpy as np
import pytest

from models.errors import AlistParseError, InconsistentAlistError
from utils.alist import format_alist, load_alist, parse_alist, save_alist
from utils.gf2 import BitMatrix

SPC_ALIST = """3 1
1 3
1 1 1
3
1
1
1
1 2 3
"""


def test_save_then_load_reproduces_fig35(tmp_path, fig35_matrix):
    H = BitMatrix.from_array(fig35_matrix)
    path = save_alist(H, tmp_path / "fig35.alist")
    assert load_alist(path) == H


def test_single_row_alist_is_spc():
    H = parse_alist(SPC_ALIST)
    assert np.array_equal(H.to_array(), [[1, 1, 1]])


def test_zero_padding_is_ignored():
    text = "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n"
    assert np.array_equal(parse_alist(text).to_array(), [[1, 1, 0], [0, 1, 1]])


def test_mismatched_index_lists_are_rejected(fig35_matrix):
    lines = format_alist(BitMatrix.from_array(fig35_matrix)).splitlines()
    # last row list: swap column 7 for column 3, degree unchanged
    lines[-1] = lines[-1].replace("7", "3")
    with pytest.raises(InconsistentAlistError):
        parse_alist("\n".join(lines))


@pytest.mark.parametrize("text", [
    "",
    "3\n1 3\n1 1 1\n3\n",
    "3 1\n1 3\n1 1\n3\n1\n1\n1\n1 2 3\n",
    "3 1\n1 3\n1 1 1\n3\n1\n1\n1\n1 2 x\n",
    "3 1\n1 3\n1 1 1\n3\n1\n1\n",
    "3 1\n1 3\n1 1 1\n3\n1\n1\n2\n1 2 3\n",
])
def test_malformed_counts_raise_parse_error(text):
    with pytest.raises(AlistParseError):
        parse_alist(text)


def test_format_pads_to_maximum_degree(fig35_matrix):
    lines = format_alist(BitMatrix.from_array(fig35_matrix)).splitlines()
    assert lines[0] == "7 3"
    assert lines[1] == "3 4"
    # column 1 has one 1 (row 1), padded with zeros to width 3
    assert lines[4] == "1 0 0"
