# tests/helpers.py

from typing import Optional

import numpy as np

from app.circuit import Circuit, random_circuit
from app.engine.dense import DenseState, dense_apply_1q, dense_apply_2q
from app.engine.gates import apply_gate
from app.engine.library import Gate1Q
from app.engine.mps import MpsState, init_zero
from app.engine.numerics import TolerancePolicy


def dense_run(circuit: Circuit) -> DenseState:
    psi = DenseState.zero(circuit.n)
    for gate in circuit.gates():
        psi = dense_apply_1q(psi, gate) if isinstance(gate, Gate1Q) else dense_apply_2q(psi, gate)
    return psi


def mps_run(circuit: Circuit, policy: Optional[TolerancePolicy] = None, method: str = "svd") -> MpsState:
    state = init_zero(circuit.n, policy)
    for gate in circuit.gates():
        apply_gate(state, gate, method)
    return state


def random_evolved(n: int, depth: int, rng: np.random.Generator, policy: Optional[TolerancePolicy] = None):
    """(chain state, dense state) after the same random circuit."""
    circuit = random_circuit(n, depth, rng)
    return mps_run(circuit, policy), dense_run(circuit)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))[None, :]


def random_chain(n: int, chi: int, rng: np.random.Generator, policy: Optional[TolerancePolicy] = None) -> MpsState:
    """
    Structurally valid but not canonical chain with every inner bond of
    dimension ``chi``; only for cost measurements.
    """
    dims = [1] + [chi] * (n - 1) + [1]
    gammas = [
        rng.normal(size=(dims[k], 2, dims[k + 1])) + 1j * rng.normal(size=(dims[k], 2, dims[k + 1]))
        for k in range(n)
    ]
    lambdas = [np.sort(rng.uniform(0.1, 1.0, size=chi))[::-1] for _ in range(n - 1)]
    return MpsState(gammas, lambdas, policy)


def index_to_bits(index: int, n: int) -> str:
    """Big-endian bitstring of ``index`` (qubit 0 leftmost)."""
    return format(index, f"0{n}b")
