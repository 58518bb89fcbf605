# app/engine/observables.py
# Expectation values, amplitudes and sampling on the chain.

import logging
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import BitstringError, NumericConsistencyWarning, ObservableError, QubitIndexError
from ..models import SampleResult
from .library import PAULIS
from .mps import MpsState
from .numerics import check_hermitian

logger = logging.getLogger(__name__)

IMAG_RESIDUE_TOL = 1e-8
HERMITIAN_TOL = 1e-10

PROJECTORS = (
    np.array([[1, 0], [0, 0]], dtype=complex),
    np.array([[0, 0], [0, 1]], dtype=complex),
)


@dataclass(frozen=True, eq=False)
class ProductObservable:
    """Tensor product O_0 x O_1 x ... x O_{n-1} of Hermitian 2x2 factors."""

    factors: tuple[np.ndarray, ...]
    label: Optional[str] = None

    def __post_init__(self):
        factors = tuple(np.asarray(f, dtype=complex) for f in self.factors)
        for k, f in enumerate(factors):
            if f.shape != (2, 2):
                raise ObservableError(f"factor {k} must be 2x2, got {f.shape}")
            if not check_hermitian(f, HERMITIAN_TOL):
                raise ObservableError(f"factor {k} is not Hermitian")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def from_pauli(cls, pauli: str) -> "ProductObservable":
        """Pauli string over {I, X, Y, Z}; the leftmost character is qubit 0."""
        letters = pauli.strip().upper()
        if not letters:
            raise ObservableError("empty Pauli string")
        bad = sorted(set(letters) - set(PAULIS))
        if bad:
            raise ObservableError(f"invalid Pauli character(s) {''.join(bad)!r} in {pauli!r}")
        return cls(tuple(PAULIS[c] for c in letters), label=letters)

    @classmethod
    def single_site(cls, n: int, site: int, op: np.ndarray) -> "ProductObservable":
        if not 0 <= site < n:
            raise QubitIndexError(f"qubit {site} out of range for {n} qubits")
        return cls(tuple(op if k == site else PAULIS["I"] for k in range(n)))

    def __len__(self) -> int:
        return len(self.factors)


def _real_part(value: complex, what: str) -> float:
    if abs(value.imag) > IMAG_RESIDUE_TOL:
        logger.warning("%s has imaginary residue %.3e", what, value.imag)
        warnings.warn(
            f"{what} has imaginary residue {value.imag:.3e}",
            NumericConsistencyWarning,
            stacklevel=3,
        )
    return float(value.real)


def expect_product(state: MpsState, obs: ProductObservable) -> float:
    """<psi| O_0 x ... x O_{n-1} |psi> by a left-to-right transfer contraction."""
    if len(obs) != state.n:
        raise ObservableError(f"observable acts on {len(obs)} qubits, state has {state.n}")
    env = np.ones((1, 1), dtype=complex)
    for k, (g, op) in enumerate(zip(state.gammas, obs.factors)):
        env = np.einsum("ab,aic,ij,bjd->cd", env, g.conj(), op, g)
        lam = state.right_lambda(k)
        env = env * lam[:, None] * lam[None, :]
    return _real_part(complex(env[0, 0]), f"<{obs.label or 'O'}>")


def expect_local(state: MpsState, site: int, op: np.ndarray) -> float:
    """Single-site expectation using only site ``site`` and its two bonds."""
    if not 0 <= site < state.n:
        raise QubitIndexError(f"qubit {site} out of range for {state.n} qubits")
    op = np.asarray(op, dtype=complex)
    if op.shape != (2, 2) or not check_hermitian(op, HERMITIAN_TOL):
        raise ObservableError("local observable must be a Hermitian 2x2 matrix")
    g = state.left_lambda(site)[:, None, None] * state.gammas[site] * state.right_lambda(site)[None, None, :]
    value = np.einsum("aib,ij,ajb->", g.conj(), op, g)
    return _real_part(complex(value), f"<O_{site}>")


def outcome_probabilities(state: MpsState, site: int) -> tuple[float, float]:
    """Probabilities of measuring 0 and 1 on ``site``."""
    p0 = expect_local(state, site, PROJECTORS[0])
    p1 = expect_local(state, site, PROJECTORS[1])
    return p0, p1


def parse_bits(bits: str, n: int) -> list[int]:
    if len(bits) != n:
        raise BitstringError(f"bitstring {bits!r} has length {len(bits)}, expected {n}")
    if set(bits) - {"0", "1"}:
        raise BitstringError(f"bitstring {bits!r} may only contain 0 and 1")
    return [int(b) for b in bits]


def amplitude(state: MpsState, bits: str) -> complex:
    """c_{i_0 ... i_{n-1}} for a big-endian bitstring (qubit 0 leftmost)."""
    outcome = parse_bits(bits, state.n)
    vec = np.ones(1, dtype=complex)
    for k, i in enumerate(outcome):
        vec = (vec @ state.gammas[k][:, i, :]) * state.right_lambda(k)
    return complex(vec[0])


def _conditional(state: MpsState, site: int, prefix: np.ndarray) -> tuple[np.ndarray, list[np.ndarray]]:
    """P(i | prefix) for qubit ``site`` and the extended left vectors.

    ``prefix`` is the left vector lambda-weighted up to the bond left of
    ``site``; right canonicity turns the marginal into a plain squared norm
    weighted by the right Schmidt values.
    """
    lam = state.right_lambda(site)
    branches = [(prefix @ state.gammas[site][:, i, :]) * lam for i in (0, 1)]
    weights = np.array([np.vdot(b, b).real for b in branches])
    total = weights.sum()
    if total <= 0:
        return np.array([0.5, 0.5]), branches
    return weights / total, branches


def sample(state: MpsState, shots: int, seed: int = 0) -> SampleResult:
    """Draws ``shots`` bitstrings from |c|^2 by sampling qubits in order.

    Shots sharing a prefix are split binomially between the two outcomes of
    the next qubit, which is the multinomial draw of the chain rule without
    walking each shot separately.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    rng = np.random.default_rng(seed)
    counts: dict[str, int] = {}
    stack = [("", np.ones(1, dtype=complex), shots)]
    while stack:
        prefix, vec, count = stack.pop()
        site = len(prefix)
        if site == state.n:
            counts[prefix] = counts.get(prefix, 0) + count
            continue
        probs, branches = _conditional(state, site, vec)
        zeros = int(rng.binomial(count, min(max(probs[0], 0.0), 1.0)))
        # push 1-branch first so the 0-branch is expanded first
        if count - zeros:
            stack.append((prefix + "1", branches[1], count - zeros))
        if zeros:
            stack.append((prefix + "0", branches[0], zeros))
    ordered = dict(sorted(counts.items()))
    return SampleResult(counts=ordered, shots=shots, seed=seed, rng=type(rng.bit_generator).__name__)
