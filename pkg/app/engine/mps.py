# app/engine/mps.py
# Gamma/lambda chain representation of an n-qubit pure state.
#
# A state is stored as site tensors `gammas[k]` of shape `(chi_left, 2,
# chi_right)` and bond vectors `lambdas[k]` holding the Schmidt coefficients
# of the cut between qubits `[0, k]` and `[k + 1, n)`. Boundary bonds have
# dimension 1, so every site tensor is 3-indexed.
#
# Cuts are counted by the number of qubits on their left: cut `l` lives at
# `lambdas[l - 1]`.

import logging
from math import log2
from typing import Optional

import numpy as np

from .. import config
from ..errors import BondIndexError, CapacityError, DomainError, ShapeError
from ..models import CanonicalReport
from .dense import DenseState
from .numerics import TolerancePolicy, effective_rank, svd

logger = logging.getLogger(__name__)


class MpsState:
    """Chain of site tensors and Schmidt vectors.

    Only structural consistency is checked on construction; canonical form and
    normalization are audited by :func:`validate_canonical` and
    :func:`global_norm`.
    """

    def __init__(
        self,
        gammas: list[np.ndarray],
        lambdas: list[np.ndarray],
        policy: Optional[TolerancePolicy] = None,
        chi_cap: Optional[int] = None,
    ):
        if len(gammas) < 1:
            raise DomainError("a state needs at least one qubit")
        if len(lambdas) != len(gammas) - 1:
            raise ShapeError(f"{len(gammas)} sites need {len(gammas) - 1} bonds, got {len(lambdas)}")
        if chi_cap is not None and chi_cap < 1:
            raise DomainError("chi_cap must be >= 1")
        self.gammas = [np.asarray(g, dtype=complex) for g in gammas]
        self.lambdas = [np.asarray(lam, dtype=float) for lam in lambdas]
        self.policy = policy or config.default_policy()
        self.chi_cap = chi_cap
        self.discarded_weight = 0.0
        self.swap_count = 0
        self._check_structure()

    def _check_structure(self) -> None:
        n = self.n
        for k, g in enumerate(self.gammas):
            if g.ndim != 3 or g.shape[1] != 2:
                raise ShapeError(f"site {k} tensor must have shape (chi, 2, chi), got {g.shape}")
            if not np.all(np.isfinite(g)):
                raise ShapeError(f"site {k} tensor has non-finite entries")
        if self.gammas[0].shape[0] != 1 or self.gammas[-1].shape[2] != 1:
            raise ShapeError("boundary sites must have bond dimension 1")
        for k, lam in enumerate(self.lambdas):
            if lam.ndim != 1 or lam.size == 0:
                raise ShapeError(f"bond {k + 1} must be a non-empty vector")
            if self.gammas[k].shape[2] != lam.size or self.gammas[k + 1].shape[0] != lam.size:
                raise ShapeError(
                    f"bond {k + 1} dimension {lam.size} does not match sites "
                    f"{self.gammas[k].shape} and {self.gammas[k + 1].shape}"
                )
            if np.any(lam <= 0):
                raise ShapeError(f"bond {k + 1} has non-positive Schmidt values")
        logger.debug("Built %d-qubit chain with bond dimensions %s", n, self.bond_dimensions())

    @property
    def n(self) -> int:
        return len(self.gammas)

    def bond_dimensions(self) -> list[int]:
        return [lam.size for lam in self.lambdas]

    def left_lambda(self, site: int) -> np.ndarray:
        """Schmidt vector on the left of ``site`` (ones(1) at the boundary)."""
        return self.lambdas[site - 1] if site > 0 else np.ones(1)

    def right_lambda(self, site: int) -> np.ndarray:
        return self.lambdas[site] if site < self.n - 1 else np.ones(1)

    def copy(self) -> "MpsState":
        other = MpsState(
            [g.copy() for g in self.gammas],
            [lam.copy() for lam in self.lambdas],
            self.policy,
            self.chi_cap,
        )
        other.discarded_weight = self.discarded_weight
        other.swap_count = self.swap_count
        return other

    def __repr__(self) -> str:
        return f"MpsState(n={self.n}, bonds={self.bond_dimensions()})"


def check_cut(state: MpsState, l: int) -> None:
    if not 1 <= l <= state.n - 1:
        raise BondIndexError(f"cut {l} out of range for {state.n} qubits (valid: 1..{state.n - 1})")


def init_zero(n: int, policy: Optional[TolerancePolicy] = None, chi_cap: Optional[int] = None) -> MpsState:
    """The product state |0...0>: every bond has dimension 1 and lambda = (1)."""
    if n < 1:
        raise DomainError(f"number of qubits must be >= 1, got {n}")
    site = np.zeros((1, 2, 1), dtype=complex)
    site[0, 0, 0] = 1.0
    return MpsState([site.copy() for _ in range(n)], [np.ones(1) for _ in range(n - 1)], policy, chi_cap)


def from_dense(psi: DenseState, policy: Optional[TolerancePolicy] = None) -> MpsState:
    """Builds the chain by successive Schmidt decompositions, left to right.

    At step k the rows of ``rest`` are lambda_a |phi_a> for the right block
    [k, n); splitting off qubit k by SVD yields lambda^[k] and Gamma^[k]
    (the left singular vectors with the previous lambda divided out).
    """
    policy = policy or config.default_policy()
    if psi.n > config.DENSE_LIMIT:
        raise CapacityError(f"{psi.n} qubits exceed the dense limit of {config.DENSE_LIMIT}")
    psi.check_normalized(policy.canonical_tol)

    gammas: list[np.ndarray] = []
    lambdas: list[np.ndarray] = []
    rest = psi.amplitudes.reshape(1, -1)
    prev = np.ones(1)
    for _ in range(psi.n - 1):
        chi = rest.shape[0]
        res = svd(rest.reshape(chi * 2, -1))
        r = max(effective_rank(res.singulars, policy), 1)
        lam = res.singulars[:r]
        gammas.append(res.left[:, :r].reshape(chi, 2, r) / prev[:, None, None])
        lambdas.append(lam)
        rest = lam[:, None] * res.right_dag[:r, :]
        prev = lam
    gammas.append(rest.reshape(rest.shape[0], 2, 1) / prev[:, None, None])
    return MpsState(gammas, lambdas, policy)


def to_dense(state: MpsState) -> DenseState:
    """Contracts the full chain into 2^n amplitudes (big-endian)."""
    if state.n > config.DENSE_LIMIT:
        raise CapacityError(f"{state.n} qubits exceed the dense limit of {config.DENSE_LIMIT}")
    acc = state.gammas[0].reshape(2, -1)
    for k in range(1, state.n):
        g = state.gammas[k]
        acc = (acc * state.lambdas[k - 1][None, :]) @ g.reshape(g.shape[0], -1)
        acc = acc.reshape(-1, g.shape[2])
    return DenseState(state.n, acc.reshape(-1))


def schmidt_at_cut(state: MpsState, l: int) -> np.ndarray:
    """Schmidt coefficients of the cut between qubits [0, l) and [l, n)."""
    check_cut(state, l)
    return state.lambdas[l - 1].copy()


def bond_dimensions(state: MpsState) -> list[int]:
    return state.bond_dimensions()


def chi(state: MpsState) -> int:
    """Largest Schmidt rank over the contiguous cuts of the chain."""
    return max(state.bond_dimensions(), default=1)


def e_chi(state: MpsState) -> float:
    return log2(chi(state))


def entanglement_entropy(state: MpsState, l: int) -> float:
    """Von Neumann entropy (bits) of the cut between qubits [0, l) and [l, n)."""
    check_cut(state, l)
    p = state.lambdas[l - 1] ** 2
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))


def storage_count(state: MpsState) -> int:
    """Exact number of stored parameters (site tensors plus bond vectors)."""
    return sum(g.size for g in state.gammas) + sum(lam.size for lam in state.lambdas)


def description_size_bound(state: MpsState) -> int:
    """Upper bound (2 chi^2 + chi) n on :func:`storage_count`."""
    c = chi(state)
    return (2 * c * c + c) * state.n


def validate_canonical(state: MpsState, tol: Optional[float] = None) -> CanonicalReport:
    """Checks both orthonormality conditions at every site.

    Left:  sum_i (L G^i)^dag (L G^i) = I   with L the diagonal of the left bond
    Right: sum_i (G^i R)(G^i R)^dag  = I   with R the diagonal of the right bond
    """
    tol = state.policy.canonical_tol if tol is None else tol
    deviations = []
    for k, g in enumerate(state.gammas):
        left = state.left_lambda(k)[:, None, None] * g
        right = g * state.right_lambda(k)[None, None, :]
        left_gram = np.einsum("aib,aic->bc", left.conj(), left)
        right_gram = np.einsum("aib,cib->ac", right, right.conj())
        dev = max(
            np.max(np.abs(left_gram - np.eye(g.shape[2]))),
            np.max(np.abs(right_gram - np.eye(g.shape[0]))),
        )
        deviations.append(float(dev))
    failed = [k for k, d in enumerate(deviations) if not d <= tol]
    if failed:
        logger.debug("Canonical check failed at sites %s (tol %g)", failed, tol)
    return CanonicalReport(
        passed=not failed,
        max_deviation=max(deviations),
        site_deviations=deviations,
        failed_sites=failed,
        tolerance=tol,
    )


def global_norm(state: MpsState) -> float:
    """<psi|psi> by a left-to-right transfer contraction."""
    env = np.ones((1, 1), dtype=complex)
    for k, g in enumerate(state.gammas):
        env = np.einsum("ab,aic,bid->cd", env, g.conj(), g)
        lam = state.right_lambda(k)
        env = env * lam[:, None] * lam[None, :]
    return float(env[0, 0].real)
