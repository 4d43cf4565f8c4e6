import itertools
import json

import numpy as np
import pytest

from codes.trellis import (
    ConvolutionalCode,
    admissible_basis,
    build_trellis,
    conv_encode,
    run_fsm,
    shortest_path_decode,
    termination_map,
)
from models.code_models import Fsm
from models.errors import InvalidFsmError, NotTerminatedError

# rate-1/2 recursive systematic encoder with memory 2, feedback 1 + D + D^2, feedforward 1 + D^2
RSC_TABLE = []
for _s in range(4):
    for _u in (0, 1):
        _a, _b = _s & 1, (_s >> 1) & 1
        _f = _u ^ _a ^ _b
        _out = [_u, _f ^ _b]
        RSC_TABLE.append([_s, _u, (_f | (_a << 1)), _out])
RSC_JSON = {"d": 2, "table": RSC_TABLE}


def test_accumulator_trellis_with_three_steps_has_four_paths():
    trellis = build_trellis(Fsm.accumulator(), 3)
    paths = trellis.paths()
    assert len(paths) == 4
    words = {tuple(trellis.word_of(p)) for p in paths}
    code = ConvolutionalCode(k=3)
    assert words == {tuple(w) for w in code.codewords()}


def test_trellis_is_pruned_to_terminating_paths():
    trellis = build_trellis(Fsm.accumulator(), 4)
    assert trellis.layers[0] == {0} and trellis.layers[4] == {0}
    # the last segment may only enter state 0
    assert all(trellis.edges[e].target == 0 for e in trellis.segment_edges[3])


def test_conv_encode_requires_termination():
    fsm = Fsm.accumulator()
    assert np.array_equal(conv_encode(fsm, [1, 1, 0]), [1, 0, 0])
    with pytest.raises(NotTerminatedError):
        conv_encode(fsm, [1, 0, 0])


def test_termination_map_and_admissible_basis():
    T = termination_map(Fsm.accumulator(), 5)
    assert np.array_equal(T, np.ones((1, 5), dtype=np.uint8))
    basis = admissible_basis(T)
    assert basis.shape == (4, 5)
    assert np.all(basis.sum(axis=1) % 2 == 0)


def test_shortest_path_matches_brute_force(rng):
    code = ConvolutionalCode(k=6)
    words = code.codewords()
    for _ in range(50):
        llr = rng.standard_normal(code.n)
        word, value = shortest_path_decode(code.trellis, llr)
        best = words[int(np.argmin(words @ llr))]
        assert np.array_equal(word, best)
        assert value == pytest.approx(float(llr @ best))


def test_fsm_from_json_round_trip(tmp_path):
    fsm = Fsm.from_json(RSC_JSON)
    assert fsm.num_states == 4 and fsm.outputs_per_step == 2
    path = tmp_path / "rsc.json"
    path.write_text(json.dumps(RSC_JSON))
    assert Fsm.from_json(path) == fsm
    assert Fsm.from_json(json.dumps(RSC_JSON)) == fsm


def test_fsm_from_json_rejects_bad_tables():
    with pytest.raises(InvalidFsmError):
        Fsm.from_json({"d": 1, "table": [[0, 0, 0, [0]], [0, 1, 1, [1]], [1, 0, 1, [1]]]})
    with pytest.raises(InvalidFsmError):
        Fsm.from_json({"d": 1, "table": [[0, 0, 0, [0]], [0, 1, 1, [0]], [1, 0, 1, [1]], [1, 1, 0, [0]]]})
    with pytest.raises(InvalidFsmError):
        Fsm.from_json("{not json")


def test_nonlinear_fsm_is_rejected():
    # state 1 is absorbing, so only u = 0 terminates
    with pytest.raises(InvalidFsmError):
        Fsm(memory=1, outputs_per_step=1, transitions=[[(0, (0,)), (1, (1,))], [(1, (0,)), (1, (1,))]])
    with pytest.raises(InvalidFsmError):
        Fsm.from_json({"d": 1, "table": [[0, 0, 1, [0]], [0, 1, 0, [1]], [1, 0, 1, [1]], [1, 1, 0, [0]]]})


@pytest.mark.parametrize("fsm", [Fsm.accumulator(), Fsm.from_json(RSC_JSON)], ids=["acc", "rsc"])
def test_termination_nullspace_matches_enumeration(fsm, rng):
    code = ConvolutionalCode(fsm, k=7)
    assert len(code.admissible_inputs()) == 2 ** code.dimension
    for _ in range(20):
        assert code.is_admissible(code.sample_input(rng))


def test_rsc_code_rates_and_membership(rng):
    code = ConvolutionalCode(Fsm.from_json(RSC_JSON), k=8)
    assert code.nominal_rate == pytest.approx(0.5)
    assert code.rate == pytest.approx(code.dimension / 16)
    assert code.dimension == 6
    for _ in range(10):
        word = code.sample_codeword(rng)
        assert code.is_codeword(word)
        flipped = word.copy()
        flipped[3] ^= 1
        assert not code.is_codeword(flipped)


def test_admissible_inputs_are_exactly_the_terminating_ones():
    code = ConvolutionalCode(Fsm.from_json(RSC_JSON), k=6)
    expected = [u for u in itertools.product((0, 1), repeat=6) if run_fsm(code.fsm, u)[1] == 0]
    assert len(code.admissible_inputs()) == len(expected) == 2 ** code.dimension
