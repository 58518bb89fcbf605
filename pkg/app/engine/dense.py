# app/engine/dense.py
# Brute-force statevector simulator used as the verification oracle.
#
# Amplitudes are indexed big-endian: qubit 0 is the most significant bit.
# Nothing here calls into the chain engine; only gate matrices are shared.

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .. import config
from ..errors import BondIndexError, CapacityError, GateError, NormalizationError, QubitIndexError
from .library import Gate1Q, Gate2Q


@dataclass
class DenseState:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if self.n < 1:
            raise QubitIndexError("a state needs at least one qubit")
        if self.amplitudes.size != 2**self.n:
            raise ValueError(f"expected {2 ** self.n} amplitudes, got {self.amplitudes.size}")

    @classmethod
    def zero(cls, n: int) -> "DenseState":
        _check_capacity(n)
        amps = np.zeros(2**n, dtype=complex)
        amps[0] = 1.0
        return cls(n, amps)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "DenseState":
        """Haar-like random state (normalized complex Gaussian vector)."""
        _check_capacity(n)
        amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
        return cls(n, amps / np.linalg.norm(amps))

    @classmethod
    def product(cls, factors: Sequence[np.ndarray]) -> "DenseState":
        amps = np.ones(1, dtype=complex)
        for f in factors:
            amps = np.kron(amps, np.asarray(f, dtype=complex))
        return cls(len(factors), amps)

    def norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def check_normalized(self, tol: float) -> None:
        if abs(self.norm() - 1.0) > tol:
            raise NormalizationError(f"state norm {self.norm():.3e} differs from 1 by more than {tol:g}")

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.n)


def _check_capacity(n: int, limit: Optional[int] = None) -> None:
    limit = config.DENSE_LIMIT if limit is None else limit
    if n > limit:
        raise CapacityError(f"{n} qubits exceed the dense limit of {limit}")


def _check_target(psi: DenseState, q: int) -> None:
    if not 0 <= q < psi.n:
        raise QubitIndexError(f"qubit {q} out of range for {psi.n} qubits")


def dense_apply_1q(psi: DenseState, g: Gate1Q) -> DenseState:
    _check_capacity(psi.n)
    target = g.target
    _check_target(psi, target)
    u = np.asarray(g.matrix, dtype=complex)
    out = np.tensordot(u, psi.tensor(), axes=([1], [target]))
    out = np.moveaxis(out, 0, target)
    return DenseState(psi.n, out.reshape(-1))


def dense_apply_2q(psi: DenseState, g: Gate2Q) -> DenseState:
    """Applies a 4x4 gate; ``targets[0]`` indexes the gate's first (high) bit."""
    _check_capacity(psi.n)
    p, q = g.targets
    _check_target(psi, p)
    _check_target(psi, q)
    if p == q:
        raise GateError("two-qubit gate needs distinct targets")
    v = np.asarray(g.matrix, dtype=complex).reshape(2, 2, 2, 2)
    out = np.tensordot(v, psi.tensor(), axes=([2, 3], [p, q]))
    out = np.moveaxis(out, [0, 1], [p, q])
    return DenseState(psi.n, out.reshape(-1))


def dense_schmidt(psi: DenseState, l: int) -> np.ndarray:
    """Schmidt coefficients of the cut between qubits [0, l) and [l, n)."""
    _check_capacity(psi.n)
    if not 1 <= l <= psi.n - 1:
        raise BondIndexError(f"cut {l} out of range for {psi.n} qubits")
    mat = psi.amplitudes.reshape(2**l, 2 ** (psi.n - l))
    return np.linalg.svd(mat, compute_uv=False)
