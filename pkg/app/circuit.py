# app/circuit.py
# Circuit representation and the plain-text circuit format.
#
# Format (UTF-8):
#     # comment to end of line
#     qubits N
#     h 0
#     cx 0 1
#     rz 0 1.5707963267948966
#     u1 q  re im re im re im re im          (2x2, row-major)
#     u2 q1 q2  <32 numbers>                 (4x4, row-major)
#
# Mnemonics are case-insensitive, qubit indices are 0-based, angles are
# decimal radians. Targets come first, then angles or matrix entries.

import logging
import re
from dataclasses import dataclass
from typing import Iterator, NoReturn, Optional, Sequence, Union

import numpy as np

from .engine.library import GATE_LIBRARY, Gate1Q, Gate2Q, builtin_gate, gate_arity
from .engine.numerics import TolerancePolicy, check_unitary
from .errors import CircuitParseError, GateError

logger = logging.getLogger(__name__)

RAW_GATES = {"u1": (1, 8), "u2": (2, 32)}

_INDEX = re.compile(r"^\d+$")
_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")

__all__ = [
    "Circuit",
    "CircuitOp",
    "builtin_gate",
    "ghz_circuit",
    "parse",
    "product_circuit",
    "random_circuit",
    "random_local_circuit",
    "render",
]


@dataclass(frozen=True)
class CircuitOp:
    """
    One gate of a circuit. For raw gates (u1/u2) ``params`` holds the matrix
    entries as interleaved real/imaginary parts, row-major.
    """
    kind: str
    targets: tuple[int, ...]
    params: tuple[float, ...] = ()

    @property
    def is_raw(self) -> bool:
        return self.kind in RAW_GATES

    def matrix(self) -> np.ndarray:
        if self.is_raw:
            dim = 2 ** len(self.targets)
            values = np.asarray(self.params, dtype=float)
            return (values[0::2] + 1j * values[1::2]).reshape(dim, dim)
        return builtin_gate(self.kind, self.params)

    def gate(self) -> Union[Gate1Q, Gate2Q]:
        if len(self.targets) == 1:
            return Gate1Q(self.matrix(), self.targets[0], self.kind)
        return Gate2Q(self.matrix(), (self.targets[0], self.targets[1]), self.kind)


@dataclass(frozen=True)
class Circuit:
    n: int
    ops: tuple[CircuitOp, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise CircuitParseError("circuit needs at least one qubit")
        for op in self.ops:
            for q in op.targets:
                if not 0 <= q < self.n:
                    raise CircuitParseError(f"qubit index {q} out of range for {self.n} qubits")

    def __len__(self) -> int:
        return len(self.ops)

    def gates(self) -> Iterator[Union[Gate1Q, Gate2Q]]:
        for op in self.ops:
            yield op.gate()


def _fail(message: str, line: int) -> NoReturn:
    raise CircuitParseError(message, line)


def _parse_index(token: str, n: int, line: int) -> int:
    if not _INDEX.match(token):
        _fail(f"malformed qubit index '{token}'", line)
    q = int(token)
    if q >= n:
        _fail(f"qubit index {q} out of range for {n} qubits", line)
    return q


def _parse_number(token: str, line: int) -> float:
    if not _NUMBER.match(token):
        _fail(f"malformed number '{token}'", line)
    value = float(token)
    if not np.isfinite(value):
        _fail(f"number '{token}' is out of range", line)
    return value


def _parse_op(tokens: list[str], n: int, line: int, policy: TolerancePolicy) -> CircuitOp:
    kind = tokens[0].lower()
    if kind in RAW_GATES:
        n_targets, n_values = RAW_GATES[kind]
    elif kind in GATE_LIBRARY:
        n_targets, n_values = gate_arity(kind)
    else:
        _fail(f"unknown gate mnemonic '{tokens[0]}'", line)
    args = tokens[1:]
    if len(args) != n_targets + n_values:
        _fail(f"'{kind}' expects {n_targets} qubit(s) and {n_values} number(s), got {len(args)} argument(s)", line)
    targets = tuple(_parse_index(t, n, line) for t in args[:n_targets])
    if len(set(targets)) != len(targets):
        _fail(f"'{kind}' needs distinct qubits, got {list(targets)}", line)
    params = tuple(_parse_number(t, line) for t in args[n_targets:])
    op = CircuitOp(kind, targets, params)
    if op.is_raw and not check_unitary(op.matrix(), policy):
        _fail(f"'{kind}' matrix is not unitary", line)
    return op


def parse(text: str, policy: Optional[TolerancePolicy] = None) -> Circuit:
    """
    Parses circuit text. Every rejection raises CircuitParseError carrying the
    1-based line number.
    """
    policy = policy or TolerancePolicy()
    n: Optional[int] = None
    ops: list[CircuitOp] = []
    last_line = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        last_line = line_no
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        if n is None:
            if tokens[0].lower() != "qubits":
                _fail("missing 'qubits N' header", line_no)
            if len(tokens) != 2 or not _INDEX.match(tokens[1]) or int(tokens[1]) < 1:
                _fail("header must be 'qubits N' with N >= 1", line_no)
            n = int(tokens[1])
            continue
        if tokens[0].lower() == "qubits":
            _fail("duplicate 'qubits' header", line_no)
        ops.append(_parse_op(tokens, n, line_no, policy))
    if n is None:
        _fail("missing 'qubits N' header", max(last_line, 1))
    logger.debug("Parsed circuit with %d qubits and %d gates", n, len(ops))
    return Circuit(n, tuple(ops))


def render(circuit: Circuit) -> str:
    """Canonical text form; ``parse(render(c)) == c``."""
    lines = [f"qubits {circuit.n}"]
    for op in circuit.ops:
        fields = [op.kind, *(str(q) for q in op.targets), *(repr(float(p)) for p in op.params)]
        lines.append(" ".join(fields))
    return "\n".join(lines) + "\n"


def ghz_circuit(n: int) -> Circuit:
    """h 0, then cx k k+1 down the chain."""
    ops = [CircuitOp("h", (0,))]
    ops += [CircuitOp("cx", (k, k + 1)) for k in range(n - 1)]
    return Circuit(n, tuple(ops))


def product_circuit(n: int) -> Circuit:
    return Circuit(n, tuple(CircuitOp("h", (k,)) for k in range(n)))


DEFAULT_RANDOM_GATES = ("h", "t", "rz", "cx", "cz", "swap")


def _random_op(kind: str, targets: Sequence[int], rng: np.random.Generator) -> CircuitOp:
    _, angles = gate_arity(kind)
    params = tuple(float(a) for a in rng.uniform(0.0, 2 * np.pi, size=angles))
    return CircuitOp(kind, tuple(int(q) for q in targets), params)


def random_circuit(
    n: int,
    depth: int,
    rng: np.random.Generator,
    gate_set: Sequence[str] = DEFAULT_RANDOM_GATES,
) -> Circuit:
    """
    ``depth`` gates drawn uniformly from ``gate_set``; two-qubit gates get two
    distinct random targets, adjacent or not.
    """
    one = [g for g in gate_set if gate_arity(g)[0] == 1]
    two = [g for g in gate_set if gate_arity(g)[0] == 2]
    if n < 2:
        two = []
    pool = one + two
    if not pool:
        raise GateError("no usable gates for a random circuit")
    ops = []
    for _ in range(depth):
        kind = pool[rng.integers(len(pool))]
        if gate_arity(kind)[0] == 1:
            targets = [rng.integers(n)]
        else:
            targets = rng.choice(n, size=2, replace=False)
        ops.append(_random_op(kind, targets, rng))
    return Circuit(n, tuple(ops))


def random_local_circuit(n: int, depth: int, rng: np.random.Generator) -> Circuit:
    """
    ``depth`` brickwork layers: a random rotation on every qubit followed by
    cx on alternating neighbour pairs.
    """
    ops = []
    for layer in range(depth):
        for q in range(n):
            kind = ("rx", "ry", "rz")[rng.integers(3)]
            ops.append(_random_op(kind, [q], rng))
        for q in range(layer % 2, n - 1, 2):
            ops.append(CircuitOp("cx", (q, q + 1)))
    return Circuit(n, tuple(ops))
