# app/errors.py

from typing import Optional


class SimulationError(Exception):
    """Base class for every error raised by the simulator."""


class NumericInputError(SimulationError, ValueError):
    """A matrix handed to a decomposition holds NaN or Inf entries."""


class NumericFailureError(SimulationError, ArithmeticError):
    """A decomposition did not converge."""


class ContractViolationError(SimulationError, ValueError):
    """An argument breaks a documented precondition (e.g. unsorted singulars)."""


class ShapeError(SimulationError, ValueError):
    pass


class DomainError(SimulationError, ValueError):
    pass


class NormalizationError(SimulationError, ValueError):
    pass


class CapacityError(SimulationError):
    """The requested work exceeds a configured size limit."""


class ChiLimitExceeded(CapacityError):
    """Bond dimension passed the user-set hard limit while running a circuit."""

    def __init__(self, gate_index: int, chi: int, limit: int):
        self.gate_index = gate_index
        self.chi = chi
        self.limit = limit
        super().__init__(
            f"bond dimension {chi} exceeds limit {limit} after gate {gate_index}"
        )


class BondIndexError(SimulationError, IndexError):
    pass


class QubitIndexError(SimulationError, IndexError):
    pass


class GateError(SimulationError, ValueError):
    pass


class ObservableError(SimulationError, ValueError):
    pass


class BitstringError(SimulationError, ValueError):
    pass


class CircuitParseError(SimulationError, ValueError):
    """Circuit text rejected by the parser; `line` is 1-based."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        self.reason = message
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class UnknownFamilyError(SimulationError, ValueError):
    pass


class ConfigError(SimulationError, ValueError):
    pass


class NumericConsistencyWarning(UserWarning):
    """An expectation value came back with a non-negligible imaginary part."""
