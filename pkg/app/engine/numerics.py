# app/engine/numerics.py
# Decomposition contracts shared by the engine.
#
# Every factorization in the engine goes through this module.
# Matrices are plain complex `numpy.ndarray` objects; functions never mutate
# their arguments.

import logging
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..errors import ContractViolationError, NumericFailureError, NumericInputError, ShapeError

logger = logging.getLogger(__name__)


class TolerancePolicy(BaseModel):
    """Numeric thresholds used across the engine.

    rank_tol is relative to the largest singular value, so rescaling a state
    does not change rank decisions.
    """

    model_config = ConfigDict(frozen=True)

    rank_tol: float = Field(default=1e-12, gt=0)
    unitarity_tol: float = Field(default=1e-8, gt=0)
    canonical_tol: float = Field(default=1e-10, gt=0)


@dataclass(frozen=True)
class SvdResult:
    left: np.ndarray
    singulars: np.ndarray
    right_dag: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.left * self.singulars[None, :]) @ self.right_dag


def as_matrix(m) -> np.ndarray:
    """Coerces to a 2-D complex array; rejects empty or non-finite input."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise ShapeError(f"expected a matrix, got array with shape {arr.shape}")
    if arr.size == 0:
        raise ShapeError("matrix is empty")
    if not np.all(np.isfinite(arr)):
        raise NumericInputError("matrix has non-finite entries")
    return arr


def svd(m) -> SvdResult:
    """Thin singular value decomposition, singulars descending.

    Keeps all min(rows, cols) singular values; truncation is the caller's job
    (see :func:`effective_rank`).
    """
    arr = as_matrix(m)
    try:
        u, s, vh = np.linalg.svd(arr, full_matrices=False)
    except np.linalg.LinAlgError as e:
        raise NumericFailureError(f"SVD failed to converge for {arr.shape} matrix") from e
    return SvdResult(left=u, singulars=s, right_dag=vh)


def eigh_descending(h) -> tuple[np.ndarray, np.ndarray]:
    """Hermitian eigendecomposition, eigenvalues descending, vectors as columns."""
    arr = as_matrix(h)
    if arr.shape[0] != arr.shape[1]:
        raise ShapeError(f"eigendecomposition needs a square matrix, got {arr.shape}")
    scale = max(float(np.max(np.abs(arr))), 1.0)
    if np.max(np.abs(arr - arr.conj().T)) > 1e-10 * scale:
        raise ShapeError("matrix is not Hermitian")
    try:
        values, vectors = np.linalg.eigh(arr)
    except np.linalg.LinAlgError as e:
        raise NumericFailureError("Hermitian eigendecomposition failed to converge") from e
    order = np.argsort(values)[::-1]
    return values[order], vectors[:, order]


def effective_rank(singulars, policy: TolerancePolicy) -> int:
    """Number of singular values above ``rank_tol`` times the largest one."""
    s = np.asarray(singulars, dtype=float)
    if s.size == 0:
        return 0
    if np.any(s < 0):
        raise ContractViolationError("singular values must be non-negative")
    if np.any(np.diff(s) > 0):
        raise ContractViolationError("singular values must be sorted descending")
    if s[0] == 0:
        return 0
    return int(np.count_nonzero(s > policy.rank_tol * s[0]))


def check_unitary(m, policy: TolerancePolicy) -> bool:
    arr = as_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        raise ShapeError(f"unitarity check needs a square matrix, got {arr.shape}")
    deviation = arr.conj().T @ arr - np.eye(arr.shape[0])
    return bool(np.max(np.abs(deviation)) <= policy.unitarity_tol)


def check_hermitian(m, tol: float = 1e-10) -> bool:
    arr = as_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        return False
    return bool(np.max(np.abs(arr - arr.conj().T)) <= tol)
