# app/engine/gates.py
# Gate application on the gamma/lambda chain.
#
# Single-qubit gates rewrite one site tensor. Two-qubit gates on neighbours
# rewrite the two site tensors and the bond between them; gates on distant
# qubits are routed with nearest-neighbour swaps and undone afterwards.
# All updates happen in place and return the state for chaining.

import logging
from typing import Literal

import numpy as np

from ..errors import GateError, QubitIndexError
from .library import SWAP, Gate1Q, Gate2Q
from .mps import MpsState, check_cut
from .numerics import effective_rank, eigh_descending, svd

logger = logging.getLogger(__name__)

UpdateMethod = Literal["svd", "density"]

# boundary Schmidt values below this multiple of rank_tol are not divided out
SMALL_LAMBDA_FACTOR = 10.0


def _check_qubit(state: MpsState, q: int) -> None:
    if not 0 <= q < state.n:
        raise QubitIndexError(f"qubit {q} out of range for {state.n} qubits")


def apply_1q(state: MpsState, g: Gate1Q) -> MpsState:
    """Gamma'^[l]i = sum_j U_ij Gamma^[l]j; no other tensor is touched."""
    _check_qubit(state, g.target)
    g.validate(state.policy)
    u = np.asarray(g.matrix, dtype=complex)
    state.gammas[g.target] = np.einsum("ij,ajb->aib", u, state.gammas[g.target])
    return state


def _theta(state: MpsState, site: int, matrix: np.ndarray) -> np.ndarray:
    """Two-site tensor (a, i, j, c) after applying ``matrix`` to sites site, site+1."""
    gc = state.gammas[site]
    gd = state.gammas[site + 1]
    merged = np.einsum("aib,b,bjc->aijc", gc, state.lambdas[site], gd)
    v = matrix.reshape(2, 2, 2, 2)
    return np.einsum("ijkl,aklc->aijc", v, merged)


def _project_left(theta, lam_right, right_gamma, new_lam):
    """Gamma'^[C] from lambda'_b Gamma'^[C]_ab = sum_jc Theta_aijc lam_c^2 conj(Gamma'^[D]_bjc)."""
    x = np.einsum("aijc,c,bjc->aib", theta, lam_right**2, right_gamma.conj())
    return x / new_lam[None, None, :]


def _project_right(theta, lam_left, left_gamma, new_lam):
    """Gamma'^[D] from lambda'_b Gamma'^[D]_bjc = sum_ai conj(Gamma'^[C]_aib) lam_a^2 Theta_aijc."""
    y = np.einsum("aib,a,aijc->bjc", left_gamma.conj(), lam_left**2, theta)
    return y / new_lam[:, None, None]


def apply_2q_adjacent(state: MpsState, g: Gate2Q, method: UpdateMethod = "svd") -> MpsState:
    """Updates Gamma^[l], lambda^[l], Gamma^[l+1] for a gate on neighbours l, l+1.

    The weighted matrix M_(a i),(j c) = lam_left_a Theta_aijc lam_right_c is
    factorized; its singular values are the new Schmidt coefficients.
    ``method="density"`` diagonalizes the reduced density matrix of the right
    block instead and recovers the left tensor by projection.
    """
    for q in g.targets:
        _check_qubit(state, q)
    g.validate(state.policy)
    g = g.ordered()
    site, other = g.targets
    if other != site + 1:
        raise GateError(f"qubits {g.targets} are not neighbours; use apply_2q")

    policy = state.policy
    lam_left = state.left_lambda(site)
    lam_right = state.right_lambda(site + 1)
    chi_l, chi_r = lam_left.size, lam_right.size

    theta = _theta(state, site, np.asarray(g.matrix, dtype=complex))
    weighted = lam_left[:, None, None, None] * theta * lam_right[None, None, None, :]
    m = weighted.reshape(chi_l * 2, 2 * chi_r)

    if method == "svd":
        res = svd(m)
        rank = max(effective_rank(res.singulars, policy), 1)
        left, singulars, right_dag = res.left, res.singulars, res.right_dag
    elif method == "density":
        # rho'_(j c),(j' c') = sum_(a i) M_(a i),(j c) conj(M_(a i),(j' c'))
        values, vectors = eigh_descending(m.T @ m.conj())
        values = np.clip(values, 0.0, None)
        rank = max(effective_rank(values, policy), 1)
        singulars = np.sqrt(values)
        right_dag = vectors.T
        left = None
    else:
        raise ValueError(f"unknown update method '{method}'")

    keep = rank
    if state.chi_cap is not None and rank > state.chi_cap:
        keep = state.chi_cap
    kept = singulars[:keep]
    if keep < rank:
        dropped = float(np.sum(singulars[keep:rank] ** 2) / np.sum(singulars[:rank] ** 2))
        state.discarded_weight += dropped
        logger.debug("Truncated bond %d from %d to %d, discarded weight %.3e", site + 1, rank, keep, dropped)
    new_lam = kept / np.linalg.norm(kept)

    threshold = SMALL_LAMBDA_FACTOR * policy.rank_tol
    left_small = bool(lam_left.min() < threshold)
    right_small = bool(lam_right.min() < threshold)

    new_right = right_dag[:keep, :].reshape(keep, 2, chi_r)
    if left is None or (left_small and not right_small):
        new_right = new_right / lam_right[None, None, :]
        new_left = _project_left(theta, lam_right, new_right, kept)
        if left is not None:
            logger.debug("Small left Schmidt value at bond %d, projecting", site)
    elif right_small and not left_small:
        new_left = left[:, :keep].reshape(chi_l, 2, keep) / lam_left[:, None, None]
        new_right = _project_right(theta, lam_left, new_left, kept)
        logger.debug("Small right Schmidt value at bond %d, projecting", site + 2)
    else:
        new_left = left[:, :keep].reshape(chi_l, 2, keep) / lam_left[:, None, None]
        new_right = new_right / lam_right[None, None, :]

    state.gammas[site] = new_left
    state.lambdas[site] = new_lam
    state.gammas[site + 1] = new_right
    return state


def routing_swaps(p: int, q: int) -> int:
    """Number of neighbour swaps :func:`apply_2q` inserts for targets p, q."""
    return 2 * max(abs(p - q) - 1, 0)


def _swap(state: MpsState, site: int, method: UpdateMethod) -> None:
    apply_2q_adjacent(state, Gate2Q(SWAP, (site, site + 1), "swap"), method)
    state.swap_count += 1


def apply_2q(
    state: MpsState,
    g: Gate2Q,
    method: UpdateMethod = "svd",
    move: Literal["lower", "upper"] = "lower",
) -> MpsState:
    """Applies a two-qubit gate to arbitrary targets.

    With ``move="lower"`` the lower-positioned qubit is swapped rightwards
    until it neighbours the other one; ``move="upper"`` walks the higher one
    leftwards. The swaps are undone afterwards, so qubit order is unchanged.
    """
    for q in g.targets:
        _check_qubit(state, q)
    g.validate(state.policy)
    lo, hi = sorted(g.targets)
    if hi - lo == 1:
        return apply_2q_adjacent(state, g, method)

    if move == "lower":
        path = list(range(lo, hi - 1))
        moved = {lo: hi - 1, hi: hi}
    elif move == "upper":
        path = list(range(hi - 1, lo, -1))
        moved = {lo: lo, hi: lo + 1}
    else:
        raise ValueError(f"unknown routing direction '{move}'")

    for site in path:
        _swap(state, site, method)
    routed = Gate2Q(g.matrix, (moved[g.targets[0]], moved[g.targets[1]]), g.name)
    apply_2q_adjacent(state, routed, method)
    for site in reversed(path):
        _swap(state, site, method)
    return state


def apply_gate(state: MpsState, g, method: UpdateMethod = "svd") -> MpsState:
    if isinstance(g, Gate1Q):
        return apply_1q(state, g)
    return apply_2q(state, g, method)


def truncate_bond(state: MpsState, l: int, chi_cap: int) -> float:
    """Keeps the ``chi_cap`` largest Schmidt values at cut ``l``.

    Returns the discarded weight (sum of dropped lambda^2) and adds it to
    ``state.discarded_weight``; lambda is renormalized to unit square sum.
    """
    check_cut(state, l)
    if chi_cap < 1:
        raise GateError("chi_cap must be >= 1")
    lam = state.lambdas[l - 1]
    if chi_cap >= lam.size:
        return 0.0
    dropped = float(np.sum(lam[chi_cap:] ** 2))
    kept = lam[:chi_cap]
    state.lambdas[l - 1] = kept / np.linalg.norm(kept)
    state.gammas[l - 1] = state.gammas[l - 1][:, :, :chi_cap].copy()
    state.gammas[l] = state.gammas[l][:chi_cap, :, :].copy()
    state.discarded_weight += dropped
    logger.debug("Truncated cut %d to %d values, discarded weight %.3e", l, chi_cap, dropped)
    return dropped
