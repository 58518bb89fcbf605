# tests/test_circuit.py

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.circuit import (
    Circuit,
    CircuitOp,
    ghz_circuit,
    parse,
    product_circuit,
    random_circuit,
    random_local_circuit,
    render,
)
from app.engine.library import CX, H, Gate1Q, Gate2Q, builtin_gate
from app.errors import CircuitParseError, GateError

BELL = """
# Bell pair
qubits 2
h 0      # superpose
CX 0 1
"""


def u2_line(matrix: np.ndarray, p: int, q: int) -> str:
    entries = " ".join(f"{float(v.real)!r} {float(v.imag)!r}" for v in matrix.reshape(-1))
    return f"u2 {p} {q} {entries}"


def test_parse_bell():
    circuit = parse(BELL)
    assert circuit.n == 2
    assert circuit.ops == (CircuitOp("h", (0,)), CircuitOp("cx", (0, 1)))
    gates = list(circuit.gates())
    assert isinstance(gates[0], Gate1Q) and gates[0].target == 0
    assert isinstance(gates[1], Gate2Q) and gates[1].targets == (0, 1)
    np.testing.assert_array_equal(gates[0].matrix, H)
    np.testing.assert_array_equal(gates[1].matrix, CX)


def test_parse_angles_and_raw_gates():
    text = "qubits 3\nrz 2 1.5707963267948966\nu1 1 0 0 1 0 1 0 0 0\n" + u2_line(CX, 2, 0) + "\n"
    circuit = parse(text)
    rz, u1, u2 = circuit.ops
    assert rz.params == (1.5707963267948966,)
    np.testing.assert_allclose(rz.matrix(), builtin_gate("rz", [np.pi / 2]))
    np.testing.assert_array_equal(u1.matrix(), [[0, 1], [1, 0]])
    np.testing.assert_array_equal(u2.matrix(), CX)
    assert u2.targets == (2, 0)


def test_render_round_trip(rng):
    circuits = [ghz_circuit(5), product_circuit(3), random_local_circuit(4, 3, rng)]
    circuits += [random_circuit(6, 30, rng) for _ in range(10)]
    raw = parse("qubits 2\n" + u2_line(np.eye(4) * np.exp(0.3j), 0, 1) + "\n")
    circuits.append(raw)
    for circuit in circuits:
        assert parse(render(circuit)) == circuit


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("qubits 2\nh 0\nfoo 1\n", 3, "unknown gate"),
        ("qubits 2\nh 2\n", 2, "out of range"),
        ("qubits 2\nh -1\n", 2, "malformed qubit index"),
        ("qubits 2\nh x\n", 2, "malformed qubit index"),
        ("qubits 2\ncx 0\n", 2, "expects 2 qubit"),
        ("qubits 2\nrz 0\n", 2, "expects 1 qubit(s) and 1 number"),
        ("qubits 2\ncx 1 1\n", 2, "distinct"),
        ("qubits 2\nrz 0 1.2.3\n", 2, "malformed number"),
        ("qubits 2\nrz 0 1e999\n", 2, "out of range"),
        ("h 0\n", 1, "missing 'qubits N' header"),
        ("# nothing\n\n", 2, "missing 'qubits N' header"),
        ("qubits 0\n", 1, "N >= 1"),
        ("qubits 2\nh 0\nqubits 3\n", 3, "duplicate"),
        ("qubits 2\nu1 0 1 0 1 0 0 0 1 0\n", 2, "not unitary"),
    ],
)
def test_parse_rejections_carry_line_numbers(text, line, fragment):
    with pytest.raises(CircuitParseError) as exc:
        parse(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}: ")
    assert fragment in exc.value.reason


def test_non_unitary_u2_rejected():
    text = "qubits 3\nh 0\n\n" + u2_line(np.ones((4, 4)) / 2, 0, 1) + "\n"
    with pytest.raises(CircuitParseError) as exc:
        parse(text)
    assert exc.value.line == 4


def test_empty_text_is_rejected():
    with pytest.raises(CircuitParseError) as exc:
        parse("")
    assert exc.value.line == 1


TOKENS = ["qubits", "h", "cx", "rz", "u1", "swap", "foo", "0", "1", "2", "3", "-1", "0.5", "1e999", "#", "x"]


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(st.sampled_from(TOKENS), max_size=10), max_size=8))
def test_parser_only_raises_line_numbered_errors(lines):
    text = "\n".join(" ".join(tokens) for tokens in lines)
    try:
        circuit = parse(text)
    except CircuitParseError as e:
        assert e.line is not None
        assert 1 <= e.line <= max(len(lines), 1)
    else:
        assert circuit.n >= 1
        assert all(0 <= q < circuit.n for op in circuit.ops for q in op.targets)


def test_circuit_validates_indices():
    with pytest.raises(CircuitParseError):
        Circuit(2, (CircuitOp("h", (2,)),))
    with pytest.raises(CircuitParseError):
        Circuit(0)


def test_ghz_and_product_generators():
    ghz = ghz_circuit(4)
    assert [op.kind for op in ghz.ops] == ["h", "cx", "cx", "cx"]
    assert [op.targets for op in ghz.ops[1:]] == [(0, 1), (1, 2), (2, 3)]
    product = product_circuit(3)
    assert len(product) == 3
    assert all(op.kind == "h" for op in product.ops)


def test_random_circuit_is_seeded():
    a = random_circuit(8, 20, np.random.default_rng(5))
    b = random_circuit(8, 20, np.random.default_rng(5))
    assert a == b
    assert len(a) == 20
    assert {op.kind for op in a.ops} <= {"h", "t", "rz", "cx", "cz", "swap"}


def test_random_circuit_rejects_empty_gate_set(rng):
    with pytest.raises(GateError):
        random_circuit(1, 5, rng, gate_set=("cx",))


def test_random_local_circuit_is_nearest_neighbour(rng):
    circuit = random_local_circuit(6, 4, rng)
    for op in circuit.ops:
        if len(op.targets) == 2:
            assert op.targets[1] - op.targets[0] == 1
