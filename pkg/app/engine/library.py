# app/engine/library.py
# Named gate matrices.
#
# Two-qubit matrices are indexed `row = 2*i + j` where `i` is the outcome of
# the first listed target and `j` of the second, so `cx` controls on its
# first target. Rotations follow `r_a(theta) = exp(-i theta sigma_a / 2)`.

from dataclasses import dataclass
from math import cos, pi, sin
from typing import Callable, Sequence

import numpy as np

from ..errors import GateError
from .numerics import TolerancePolicy, check_unitary

_SQ2 = 1.0 / np.sqrt(2.0)

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex)
S = np.diag([1, 1j]).astype(complex)
T = np.diag([1, np.exp(1j * pi / 4)]).astype(complex)

CX = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
    dtype=complex,
)
CZ = np.diag([1, 1, 1, -1]).astype(complex)
SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
    dtype=complex,
)

PAULIS = {"I": I2, "X": X, "Y": Y, "Z": Z}


def _rx(theta: float) -> np.ndarray:
    return np.array(
        [[cos(theta / 2), -1j * sin(theta / 2)], [-1j * sin(theta / 2), cos(theta / 2)]],
        dtype=complex,
    )


def _ry(theta: float) -> np.ndarray:
    return np.array(
        [[cos(theta / 2), -sin(theta / 2)], [sin(theta / 2), cos(theta / 2)]],
        dtype=complex,
    )


def _rz(theta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def _phase(theta: float) -> np.ndarray:
    return np.diag([1.0, np.exp(1j * theta)]).astype(complex)


def _cphase(theta: float) -> np.ndarray:
    return np.diag([1.0, 1.0, 1.0, np.exp(1j * theta)]).astype(complex)


def _fixed(matrix: np.ndarray) -> Callable[[], np.ndarray]:
    return lambda: matrix.copy()


# mnemonic -> (number of qubits, number of angles, builder)
GATE_LIBRARY: dict[str, tuple[int, int, Callable[..., np.ndarray]]] = {
    "i": (1, 0, _fixed(I2)),
    "x": (1, 0, _fixed(X)),
    "y": (1, 0, _fixed(Y)),
    "z": (1, 0, _fixed(Z)),
    "h": (1, 0, _fixed(H)),
    "s": (1, 0, _fixed(S)),
    "sdg": (1, 0, _fixed(S.conj().T)),
    "t": (1, 0, _fixed(T)),
    "tdg": (1, 0, _fixed(T.conj().T)),
    "rx": (1, 1, _rx),
    "ry": (1, 1, _ry),
    "rz": (1, 1, _rz),
    "p": (1, 1, _phase),
    "cx": (2, 0, _fixed(CX)),
    "cz": (2, 0, _fixed(CZ)),
    "cp": (2, 1, _cphase),
    "swap": (2, 0, _fixed(SWAP)),
}


def gate_arity(mnemonic: str) -> tuple[int, int]:
    """(qubits, angles) taken by a named gate."""
    try:
        qubits, angles, _ = GATE_LIBRARY[mnemonic.lower()]
    except KeyError:
        raise GateError(f"unknown gate mnemonic '{mnemonic}'") from None
    return qubits, angles


def builtin_gate(mnemonic: str, params: Sequence[float] = ()) -> np.ndarray:
    """Returns the unitary matrix of a named gate."""
    _, angles = gate_arity(mnemonic)
    if len(params) != angles:
        raise GateError(f"gate '{mnemonic}' takes {angles} angle(s), got {len(params)}")
    _, _, build = GATE_LIBRARY[mnemonic.lower()]
    return build(*(float(p) for p in params))


def swap_conjugate(matrix: np.ndarray) -> np.ndarray:
    """Re-expresses a 4x4 gate with its two target roles exchanged."""
    return SWAP @ matrix @ SWAP


@dataclass(frozen=True, eq=False)
class Gate1Q:
    """A single-qubit unitary acting on ``target``."""

    matrix: np.ndarray
    target: int
    name: str = "u1"

    def validate(self, policy: TolerancePolicy) -> None:
        if np.shape(self.matrix) != (2, 2):
            raise GateError(f"single-qubit gate needs a 2x2 matrix, got {np.shape(self.matrix)}")
        if not check_unitary(self.matrix, policy):
            raise GateError(f"gate '{self.name}' on qubit {self.target} is not unitary")

    def dagger(self) -> "Gate1Q":
        return Gate1Q(np.asarray(self.matrix).conj().T, self.target, self.name + "_dg")


@dataclass(frozen=True, eq=False)
class Gate2Q:
    """A two-qubit unitary; row index 2*i + j with i for ``targets[0]``."""

    matrix: np.ndarray
    targets: tuple[int, int]
    name: str = "u2"

    def validate(self, policy: TolerancePolicy) -> None:
        if np.shape(self.matrix) != (4, 4):
            raise GateError(f"two-qubit gate needs a 4x4 matrix, got {np.shape(self.matrix)}")
        if len(self.targets) != 2 or self.targets[0] == self.targets[1]:
            raise GateError(f"gate '{self.name}' needs two distinct targets, got {self.targets}")
        if not check_unitary(self.matrix, policy):
            raise GateError(f"gate '{self.name}' on qubits {self.targets} is not unitary")

    def dagger(self) -> "Gate2Q":
        return Gate2Q(np.asarray(self.matrix).conj().T, self.targets, self.name + "_dg")

    def ordered(self) -> "Gate2Q":
        """Same gate with targets ascending (matrix conjugated by SWAP if needed)."""
        p, q = self.targets
        if p < q:
            return self
        return Gate2Q(swap_conjugate(np.asarray(self.matrix, dtype=complex)), (q, p), self.name)
