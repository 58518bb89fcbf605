# app/bench.py
# Scaling measurements over workload families.
#
# Only gate application is timed. Peak storage is tracked incrementally from
# the sites each gate can touch.

import logging
from typing import Callable, Dict, Optional, Sequence

import numpy as np

from . import config
from .circuit import Circuit, ghz_circuit, product_circuit, random_local_circuit
from .engine.gates import apply_gate
from .engine.mps import MpsState, chi, description_size_bound, init_zero, storage_count
from .engine.numerics import TolerancePolicy
from .errors import UnknownFamilyError
from .models import BenchReport, BenchRow
from .utils import timer

logger = logging.getLogger(__name__)

# wall-time ratio allowed between consecutive doublings of n
LINEAR_RATIO_LIMIT = 2.5
LINEAR_FAMILIES = ("ghz", "product")
DEFAULT_RANDOM_DEPTH = 8


def build_family(family: str, n: int, depth: Optional[int] = None, seed: int = 0) -> Circuit:
    builders: Dict[str, Callable[[], Circuit]] = {
        "ghz": lambda: ghz_circuit(n),
        "product": lambda: product_circuit(n),
        "random-local": lambda: random_local_circuit(
            n, depth or DEFAULT_RANDOM_DEPTH, np.random.default_rng(seed)
        ),
    }
    if family not in builders:
        raise UnknownFamilyError(f"unknown workload family '{family}' (expected one of {sorted(builders)})")
    return builders[family]()


def _span_size(state: MpsState, lo: int, hi: int) -> int:
    sites = sum(state.gammas[k].size for k in range(lo, hi + 1))
    bonds = sum(state.lambdas[k].size for k in range(lo, min(hi, state.n - 1)))
    return sites + bonds


def measure(circuit: Circuit, policy: TolerancePolicy, chi_cap: Optional[int] = None):
    """
    Runs ``circuit`` once; returns (gate seconds, peak storage, final state).
    """
    state = init_zero(circuit.n, policy, chi_cap)
    storage = storage_count(state)
    peak = storage
    gate_time = 0.0
    for op, gate in zip(circuit.ops, circuit.gates()):
        lo, hi = min(op.targets), max(op.targets)
        before = _span_size(state, lo, hi)
        with timer(f"{op.kind} {list(op.targets)}") as t:
            apply_gate(state, gate)
        gate_time += t["elapsed"]
        storage += _span_size(state, lo, hi) - before
        peak = max(peak, storage)
    return gate_time, peak, state


def bench(
    family: str,
    sizes: Sequence[int],
    depth: Optional[int] = None,
    chi_cap: Optional[int] = None,
    seed: int = 0,
    repeats: int = 1,
    policy: Optional[TolerancePolicy] = None,
) -> BenchReport:
    """
    Measures each size in order (sequentially, for timing integrity). The
    reported wall time is the fastest of ``repeats`` runs.
    """
    policy = policy or config.default_policy()
    rows = []
    for n in sizes:
        circuit = build_family(family, n, depth, seed)
        best = None
        for _ in range(repeats):
            gate_time, peak, state = measure(circuit, policy, chi_cap)
            best = gate_time if best is None else min(best, gate_time)
        row = BenchRow(
            n=n,
            gates=len(circuit),
            wall_time=best,
            peak_storage=peak,
            chi=chi(state),
            storage_bound=description_size_bound(state),
        )
        logger.info("Bench %s n=%d: %d gates in %.4f s, peak storage %d", family, n, row.gates, best, peak)
        rows.append(row)

    ratios = [b.wall_time / a.wall_time if a.wall_time > 0 else float("inf") for a, b in zip(rows, rows[1:])]
    linear_ok = None
    if family in LINEAR_FAMILIES:
        linear_ok = all(r <= LINEAR_RATIO_LIMIT for r in ratios)
        if not linear_ok:
            logger.warning("Wall-time ratios %s exceed %.1f for family %s", ratios, LINEAR_RATIO_LIMIT, family)
    return BenchReport(family=family, rows=rows, time_ratios=ratios, linear_ok=linear_ok)
