# tests/test_dense.py

import numpy as np
import pytest

from app.engine.dense import DenseState, dense_apply_1q, dense_apply_2q, dense_schmidt
from app.engine.library import CX, H, I2, X, Gate1Q, Gate2Q
from app.errors import BondIndexError, CapacityError, GateError, NormalizationError, QubitIndexError
from tests.helpers import random_unitary


def basis(n: int, bits: str) -> DenseState:
    amps = np.zeros(2**n, dtype=complex)
    amps[int(bits, 2)] = 1
    return DenseState(n, amps)


def test_zero_and_random_states(rng):
    zero = DenseState.zero(3)
    assert zero.amplitudes[0] == 1
    assert zero.norm() == 1.0
    psi = DenseState.random(5, rng)
    assert psi.norm() == pytest.approx(1.0)
    psi.check_normalized(1e-12)


def test_product_is_big_endian():
    psi = DenseState.product([np.array([0, 1]), np.array([1, 0]), np.array([1, 0])])
    assert psi.n == 3
    assert psi.amplitudes[0b100] == 1


def test_single_qubit_gate_matches_kron(rng):
    psi = DenseState.random(4, rng)
    u = random_unitary(2, rng)
    for q in range(4):
        ops = [I2] * 4
        ops[q] = u
        full = ops[0]
        for op in ops[1:]:
            full = np.kron(full, op)
        out = dense_apply_1q(psi, Gate1Q(u, q))
        np.testing.assert_allclose(out.amplitudes, full @ psi.amplitudes, atol=1e-12)


def test_adjacent_gate_matches_kron(rng):
    psi = DenseState.random(3, rng)
    v = random_unitary(4, rng)
    out = dense_apply_2q(psi, Gate2Q(v, (1, 2)))
    np.testing.assert_allclose(out.amplitudes, np.kron(I2, v) @ psi.amplitudes, atol=1e-12)


def test_distant_and_reversed_targets():
    out = dense_apply_2q(basis(3, "100"), Gate2Q(CX, (0, 2)))
    assert out.amplitudes[0b101] == 1
    out = dense_apply_2q(basis(3, "001"), Gate2Q(CX, (2, 0)))
    assert out.amplitudes[0b101] == 1
    out = dense_apply_2q(basis(3, "100"), Gate2Q(CX, (2, 0)))
    assert out.amplitudes[0b100] == 1


def test_input_state_is_not_modified():
    psi = DenseState.zero(2)
    dense_apply_1q(psi, Gate1Q(X, 0))
    assert psi.amplitudes[0] == 1


def test_dense_schmidt():
    bell = dense_apply_2q(dense_apply_1q(DenseState.zero(2), Gate1Q(H, 0)), Gate2Q(CX, (0, 1)))
    np.testing.assert_allclose(dense_schmidt(bell, 1), [1 / np.sqrt(2)] * 2, atol=1e-14)
    with pytest.raises(BondIndexError):
        dense_schmidt(bell, 2)


def test_errors(monkeypatch):
    from app import config

    with pytest.raises(NormalizationError):
        DenseState(1, [1, 1]).check_normalized(1e-10)
    with pytest.raises(ValueError):
        DenseState(2, [1, 0])
    with pytest.raises(QubitIndexError):
        dense_apply_1q(DenseState.zero(2), Gate1Q(X, 2))
    with pytest.raises(GateError):
        dense_apply_2q(DenseState.zero(2), Gate2Q(CX, (1, 1)))
    monkeypatch.setattr(config, "DENSE_LIMIT", 3)
    with pytest.raises(CapacityError):
        DenseState.zero(4)
