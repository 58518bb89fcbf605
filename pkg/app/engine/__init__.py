# app/engine/__init__.py
# Numerical engine: chain representation, gate updates, observables and the dense oracle.

from .dense import DenseState, dense_apply_1q, dense_apply_2q, dense_schmidt
from .gates import apply_1q, apply_2q, apply_2q_adjacent, apply_gate, routing_swaps, truncate_bond
from .library import GATE_LIBRARY, Gate1Q, Gate2Q, builtin_gate
from .mps import (
    MpsState,
    bond_dimensions,
    chi,
    description_size_bound,
    e_chi,
    entanglement_entropy,
    from_dense,
    global_norm,
    init_zero,
    schmidt_at_cut,
    storage_count,
    to_dense,
    validate_canonical,
)
from .numerics import SvdResult, TolerancePolicy, check_hermitian, check_unitary, effective_rank, eigh_descending, svd
from .observables import (
    ProductObservable,
    amplitude,
    expect_local,
    expect_product,
    outcome_probabilities,
    sample,
)
