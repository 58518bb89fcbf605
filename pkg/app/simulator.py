# app/simulator.py

import logging
from typing import Callable, Optional, Sequence

import numpy as np

from . import config
from .circuit import Circuit
from .engine import dense as oracle
from .engine.gates import UpdateMethod, apply_gate
from .engine.library import Gate1Q
from .engine.mps import (
    MpsState,
    chi,
    description_size_bound,
    e_chi,
    entanglement_entropy,
    init_zero,
    storage_count,
    to_dense,
)
from .engine.numerics import TolerancePolicy
from .engine.observables import ProductObservable, amplitude, expect_product, parse_bits, sample
from .errors import CapacityError, ChiLimitExceeded, ObservableError
from .models import AmplitudeResult, GateRecord, RunReport
from .utils import timer

logger = logging.getLogger(__name__)


class CircuitSimulator:
    """Runs circuits from |0...0> on the chain engine and reports on them."""

    def __init__(
        self,
        policy: Optional[TolerancePolicy] = None,
        chi_cap: Optional[int] = None,
        chi_limit: Optional[int] = None,
        method: UpdateMethod = "svd",
    ):
        """
        Initializes the simulator.
        Args:
            policy: tolerance policy; defaults to the one configured in the environment.
            chi_cap: keep at most this many Schmidt values per bond (None = exact).
            chi_limit: abort with ChiLimitExceeded once any bond grows past this.
            method: two-qubit update route, "svd" or "density".
        """
        self.policy = policy or config.default_policy()
        self.chi_cap = chi_cap if chi_cap is not None else config.CHI_CAP
        self.chi_limit = chi_limit
        self.method = method

    def evolve(self, circuit: Circuit, on_record: Optional[Callable[[GateRecord], None]] = None,
               compare_dense: bool = False, timings: bool = False, report_chi: bool = False):
        """
        Applies every gate of ``circuit`` and returns (state, records, dense oracle or None).
        """
        if compare_dense and circuit.n > config.DENSE_LIMIT:
            raise CapacityError(
                f"--compare-dense supports at most {config.DENSE_LIMIT} qubits, circuit has {circuit.n}"
            )
        state = init_zero(circuit.n, self.policy, self.chi_cap)
        dense = oracle.DenseState.zero(circuit.n) if compare_dense else None
        records = []
        elapsed = 0.0
        for index, (op, gate) in enumerate(zip(circuit.ops, circuit.gates())):
            with timer(f"Gate {index} ({op.kind})") as t:
                apply_gate(state, gate, self.method)
            elapsed += t["elapsed"]
            if dense is not None:
                if isinstance(gate, Gate1Q):
                    dense = oracle.dense_apply_1q(dense, gate)
                else:
                    dense = oracle.dense_apply_2q(dense, gate)
            current = chi(state)
            record = GateRecord(
                index=index,
                gate=op.kind,
                targets=list(op.targets),
                chi=current,
                e_chi=e_chi(state),
                elapsed=elapsed if timings else None,
                bond_dimensions=state.bond_dimensions() if report_chi else None,
            )
            records.append(record)
            if on_record is not None:
                on_record(record)
            if self.chi_limit is not None and current > self.chi_limit:
                raise ChiLimitExceeded(index, current, self.chi_limit)
        return state, records, dense

    def run(
        self,
        circuit: Circuit,
        amplitudes: Sequence[str] = (),
        expectations: Sequence[str] = (),
        shots: Optional[int] = None,
        seed: int = 0,
        compare_dense: bool = False,
        report_chi: bool = False,
        timings: bool = False,
        on_record: Optional[Callable[[GateRecord], None]] = None,
    ) -> RunReport:
        """
        Simulates ``circuit`` and answers the requested queries.
        Args:
            amplitudes: bitstrings (qubit 0 leftmost) whose amplitudes are reported.
            expectations: Pauli strings whose expectation values are reported.
            shots, seed: measurement sampling of the final state.
            compare_dense: evolve the dense oracle alongside and report the max deviation.
            report_chi: include bond dimensions per gate and Schmidt spectra per cut.
            timings: include wall-clock fields (they make reports non-reproducible).
        """
        for bits in amplitudes:
            parse_bits(bits, circuit.n)
        observables = {p: ProductObservable.from_pauli(p) for p in expectations}
        for label, obs in observables.items():
            if len(obs) != circuit.n:
                raise ObservableError(
                    f"observable {label!r} acts on {len(obs)} qubits, circuit has {circuit.n}"
                )

        logger.info("Simulating %d-qubit circuit with %d gates", circuit.n, len(circuit))
        times: dict = {}
        with timer("Circuit simulation", times, "total", level=logging.INFO):
            state, records, dense = self.evolve(circuit, on_record, compare_dense, timings, report_chi)

        report = RunReport(
            n=circuit.n,
            gate_count=len(circuit),
            records=records,
            chi=chi(state),
            e_chi=e_chi(state),
            storage_count=storage_count(state),
            storage_bound=description_size_bound(state),
            bond_dimensions=state.bond_dimensions(),
            entropies=[entanglement_entropy(state, l) for l in range(1, state.n)],
            schmidt_spectra=[lam.tolist() for lam in state.lambdas] if report_chi else None,
            amplitudes=[self._amplitude(state, bits) for bits in amplitudes],
            expectations={p: expect_product(state, obs) for p, obs in observables.items()},
            samples=sample(state, shots, seed) if shots else None,
            max_dense_deviation=self._deviation(state, dense) if dense is not None else None,
            discarded_weight=state.discarded_weight,
            swap_count=state.swap_count,
            total_time=times["total"] if timings else None,
        )
        logger.info("Final chi %d, storage %d parameters", report.chi, report.storage_count)
        return report

    @staticmethod
    def _amplitude(state: MpsState, bits: str) -> AmplitudeResult:
        c = amplitude(state, bits)
        return AmplitudeResult(bits=bits, re=c.real, im=c.imag, probability=abs(c) ** 2)

    @staticmethod
    def _deviation(state: MpsState, dense: oracle.DenseState) -> float:
        deviation = float(np.max(np.abs(to_dense(state).amplitudes - dense.amplitudes)))
        logger.info("Max amplitude deviation from dense oracle: %.3e", deviation)
        return deviation
