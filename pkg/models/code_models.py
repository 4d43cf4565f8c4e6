"""
Data models for factor graphs, graph covers and convolutional encoders
"""

import json
from pathlib import Path
from typing import List, Tuple, Union

from pydantic import BaseModel, model_validator

from models.errors import InvalidFsmError


class FactorGraph(BaseModel):
    """Bipartite graph of a parity-check matrix; edge (j, i) iff H[j, i] = 1."""
    num_variables: int
    num_checks: int
    edges: List[Tuple[int, int]]

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def check_neighbors(self, j: int) -> List[int]:
        return [i for (c, i) in self.edges if c == j]

    def variable_neighbors(self, i: int) -> List[int]:
        return [c for (c, v) in self.edges if v == i]

    def variable_degree(self, i: int) -> int:
        return len(self.variable_neighbors(i))

    def check_degree(self, j: int) -> int:
        return len(self.check_neighbors(j))


class GraphCover(BaseModel):
    """Degree-M cover of a factor graph: one permutation of range(M) per base edge.

    Check copy (j, k) is joined to variable copy (i, perm_e[k]) for e = (j, i).
    """
    base: FactorGraph
    degree: int
    permutations: List[List[int]]


class Fsm(BaseModel):
    """Binary-input finite state machine of a convolutional encoder.

    ``transitions[s][u]`` is the pair (next state, output bits) for input bit u
    in state s; states are 0 .. 2^memory - 1 and state 0 is the start/end state.
    """
    memory: int
    outputs_per_step: int
    transitions: List[List[Tuple[int, Tuple[int, ...]]]]

    @model_validator(mode="after")
    def _check_table(self):
        states = 2 ** self.memory
        if len(self.transitions) != states:
            raise InvalidFsmError(f"expected {states} states, table has {len(self.transitions)}")
        for s, row in enumerate(self.transitions):
            if len(row) != 2:
                raise InvalidFsmError(f"state {s} must define both input bits")
            for u, (nxt, out) in enumerate(row):
                if not 0 <= nxt < states:
                    raise InvalidFsmError(f"state {s}, input {u}: next state {nxt} out of range")
                if len(out) != self.outputs_per_step or any(b not in (0, 1) for b in out):
                    raise InvalidFsmError(f"state {s}, input {u}: output must be {self.outputs_per_step} bits")
            if tuple(row[0][1]) == tuple(row[1][1]):
                raise InvalidFsmError(f"state {s}: inputs 0 and 1 produce the same output")
        self._check_linear()
        return self

    def _image(self, state: int, bit: int) -> Tuple[int, int]:
        nxt, out = self.transitions[state][bit]
        return nxt, int("".join(str(b) for b in out) or "0", 2)

    def _check_linear(self) -> None:
        """Next state and output must be XOR-linear in (state bits, input bit)."""
        if self._image(0, 0) != (0, 0):
            raise InvalidFsmError("input 0 in state 0 must stay in state 0 and output zeros")
        units = [self._image(1 << b, 0) for b in range(self.memory)]
        on_input = self._image(0, 1)
        for s in range(self.num_states):
            for u in (0, 1):
                nxt, out = on_input if u else (0, 0)
                for b in range(self.memory):
                    if (s >> b) & 1:
                        nxt, out = nxt ^ units[b][0], out ^ units[b][1]
                if self._image(s, u) != (nxt, out):
                    raise InvalidFsmError(f"transition ({s}, {u}) is not linear over F2")

    @property
    def num_states(self) -> int:
        return 2 ** self.memory

    def step(self, state: int, bit: int) -> Tuple[int, Tuple[int, ...]]:
        nxt, out = self.transitions[state][bit]
        return nxt, tuple(out)

    @classmethod
    def accumulator(cls) -> "Fsm":
        """Memory-1 accumulator: next state and output are both s xor u."""
        return cls(memory=1, outputs_per_step=1,
                   transitions=[[(0, (0,)), (1, (1,))], [(1, (1,)), (0, (0,))]])

    @classmethod
    def from_json(cls, source: Union[str, Path, dict]) -> "Fsm":
        """Load {"d": .., "table": [[state, input, next, [bits]], ...]}."""
        if isinstance(source, dict):
            data = source
        else:
            text = str(source)
            if not text.lstrip().startswith("{"):
                text = Path(text).read_text()
            try:
                data = json.loads(text)
            except json.JSONDecodeError as e:
                raise InvalidFsmError(f"FSM description is not valid JSON: {str(e)}")
        try:
            memory = int(data["d"])
            entries = data["table"]
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidFsmError(f"malformed FSM description: {str(e)}")
        states = 2 ** memory
        table = [[None, None] for _ in range(states)]
        width = None
        for entry in entries:
            s, u, nxt, bits = entry
            if not (0 <= s < states and u in (0, 1)):
                raise InvalidFsmError(f"bad transition key ({s}, {u})")
            if table[s][u] is not None:
                raise InvalidFsmError(f"transition ({s}, {u}) defined twice")
            table[s][u] = (int(nxt), tuple(int(b) for b in bits))
            width = len(bits) if width is None else width
        if any(cell is None for row in table for cell in row):
            raise InvalidFsmError("transition table is not total")
        return cls(memory=memory, outputs_per_step=width, transitions=table)
