# app/models.py

from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field, model_validator


class CanonicalReport(BaseModel):
    """
    Result of the orthonormality audit of a chain state.
    site_deviations[k] is the worst entry of both Gram-matrix residues at site k.
    """
    passed: bool
    max_deviation: float
    site_deviations: List[float]
    failed_sites: List[int]
    tolerance: float


class SampleResult(BaseModel):
    """
    Measurement counts keyed by big-endian bitstring (qubit 0 leftmost).
    """
    counts: Dict[str, int]
    shots: int = Field(ge=1)
    seed: int
    rng: str = "PCG64"

    @model_validator(mode="after")
    def _counts_sum_to_shots(self):
        total = sum(self.counts.values())
        if total != self.shots:
            raise ValueError(f"counts sum to {total}, expected {self.shots}")
        return self


class GateRecord(BaseModel):
    """
    One line of the per-gate trajectory.
    """
    index: int
    gate: str
    targets: List[int]
    chi: int = Field(ge=1)
    e_chi: float
    elapsed: Optional[float] = None
    bond_dimensions: Optional[List[int]] = None


class AmplitudeResult(BaseModel):
    bits: str
    re: float
    im: float
    probability: float


class RunReport(BaseModel):
    """
    Everything a circuit run produces. Wall-time fields are None unless
    timings were requested, so reports of identical runs compare equal.
    """
    n: int
    gate_count: int
    records: List[GateRecord]
    chi: int
    e_chi: float
    storage_count: int
    storage_bound: int
    bond_dimensions: List[int]
    entropies: List[float]
    schmidt_spectra: Optional[List[List[float]]] = None
    amplitudes: List[AmplitudeResult] = []
    expectations: Dict[str, float] = {}
    samples: Optional[SampleResult] = None
    max_dense_deviation: Optional[float] = None
    discarded_weight: float = 0.0
    swap_count: int = 0
    total_time: Optional[float] = None

    @model_validator(mode="after")
    def _one_record_per_gate(self):
        if len(self.records) != self.gate_count:
            raise ValueError(f"{len(self.records)} records for {self.gate_count} gates")
        return self


class BenchRow(BaseModel):
    n: int
    gates: int
    wall_time: float
    peak_storage: int
    chi: int
    storage_bound: int


class BenchReport(BaseModel):
    """
    Scaling table for one workload family. time_ratios[k] compares row k+1
    with row k; linear_ok is only meaningful for the ghz and product families.
    """
    family: str
    rows: List[BenchRow]
    time_ratios: List[float]
    linear_ok: Optional[bool] = None


class RunRequest(BaseModel):
    """
    Request model for the /run endpoint: circuit text plus the run flags.
    """
    circuit: str
    amplitudes: List[str] = []
    expectations: List[str] = []
    shots: Optional[int] = Field(default=None, ge=1)
    seed: int = 0
    chi_cap: Optional[int] = Field(default=None, ge=1)
    chi_limit: Optional[int] = Field(default=None, ge=1)
    rank_tol: Optional[float] = Field(default=None, gt=0)
    method: Literal["svd", "density"] = "svd"
    compare_dense: bool = False
    report_chi: bool = False
    timings: bool = False


class BatchRunRequest(BaseModel):
    runs: List[RunRequest]


class BatchRunResponse(BaseModel):
    reports: List[RunReport]
    processing_times: Dict[str, float]


class BenchRequest(BaseModel):
    family: Literal["ghz", "product", "random-local"]
    sizes: List[int] = Field(min_length=1)
    depth: Optional[int] = Field(default=None, ge=1)
    chi_cap: Optional[int] = Field(default=None, ge=1)
    seed: int = 0
    repeats: int = Field(default=1, ge=1)
