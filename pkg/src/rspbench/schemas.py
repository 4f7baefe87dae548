"""Pydantic request/response models for the HTTP service.

These are the wire contract shared by the FastAPI endpoints and the CLI
client; they mirror the domain types but carry plain JSON-friendly data.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

from .benchmark import TargetEnsemble, ThresholdResult
from .linalg import PureState
from .simulate import SimulationReport
from .stats import ExperimentRecord, MetaResult


class EnsembleModel(BaseModel):
    dim: int = Field(ge=2)
    states: list[list[tuple[float, float]]]
    probabilities: Optional[list[float]] = None

    def to_domain(self) -> TargetEnsemble:
        states = [PureState([complex(re, im) for re, im in amps]) for amps in self.states]
        return TargetEnsemble(states, self.probabilities)

    @classmethod
    def from_domain(cls, ensemble: TargetEnsemble) -> "EnsembleModel":
        return cls(
            dim=ensemble.dim,
            states=[[(a.real, a.imag) for a in s.amplitudes] for s in ensemble.states],
            probabilities=list(ensemble.probabilities),
        )


class RecordModel(BaseModel):
    label: str
    trials: int = Field(gt=0)
    hits: int = Field(ge=0)

    def to_domain(self) -> ExperimentRecord:
        return ExperimentRecord(label=self.label, trials=self.trials, hits=self.hits)

    @classmethod
    def from_domain(cls, r: ExperimentRecord) -> "RecordModel":
        return cls(label=r.label, trials=r.trials, hits=r.hits)


class ThresholdRequest(BaseModel):
    ensemble: EnsembleModel
    cbits: int = Field(ge=0)
    method: Literal["exact", "upper", "both"] = "both"
    jobs: int = Field(default=1, ge=1)


class ThresholdResponse(BaseModel):
    cbits: int
    exact: Optional[float] = None
    exact_partition: Optional[list[list[int]]] = None
    upper_bound: float
    per_size_max: dict[int, float]
    best_composition: list[int]

    @classmethod
    def from_domain(cls, r: ThresholdResult) -> "ThresholdResponse":
        return cls(
            cbits=r.cbits,
            exact=r.exact,
            exact_partition=(None if r.exact_partition is None
                             else [list(b) for b in r.exact_partition.blocks]),
            upper_bound=r.upper_bound,
            per_size_max=dict(r.per_size_max),
            best_composition=list(r.best_composition),
        )


class FidelityRequest(BaseModel):
    p_theory: float = Field(default=0.9, gt=0, lt=1)
    chance: float = Field(default=0.25, gt=0, lt=1)
    q: Optional[float] = Field(default=None, ge=0, le=1)
    se: Optional[float] = Field(default=None, ge=0)


class FidelityResponse(BaseModel):
    benchmark: float
    fidelity: Optional[float] = None
    df_paper: Optional[float] = None
    df_delta: Optional[float] = None
    z_paper: Optional[float] = None
    z_delta: Optional[float] = None


class MetaRequest(BaseModel):
    records: list[RecordModel]
    p_theory: float = Field(default=0.9, gt=0, lt=1)
    chance: float = Field(default=0.25, gt=0, lt=1)


class MetaResponse(BaseModel):
    pooled_rate: float
    se_rate: float
    fidelity: float
    benchmark: float
    df_paper: float
    df_delta: float
    z_paper: float
    z_delta: float
    total_trials: int
    total_hits: int
    n_records: int

    @classmethod
    def from_domain(cls, r: MetaResult) -> "MetaResponse":
        return cls(**{f: getattr(r, f) for f in cls.model_fields})

    def to_domain(self) -> MetaResult:
        return MetaResult(**self.model_dump())


class SimulateClassicalRequest(BaseModel):
    ensemble: EnsembleModel
    cbits: int = Field(ge=0)
    trials: int = Field(ge=1)
    seed: int


class SimulateClassicalResponse(BaseModel):
    trials: int
    mean_fidelity: float
    std_error: float
    seed: int
    strategy_summary: str
    threshold: float

    def report(self) -> SimulationReport:
        return SimulationReport(trials=self.trials, mean_fidelity=self.mean_fidelity,
                                std_error=self.std_error, seed=self.seed,
                                strategy_summary=self.strategy_summary)


class SimulateRspmiRequest(BaseModel):
    hit_prob: float = Field(ge=0, le=1)
    n_experiments: int = Field(ge=1)
    trials_per: int | list[int] = Field(default=38)
    seed: int


class SimulateRspmiResponse(BaseModel):
    records: list[RecordModel]


class ErrorDetail(BaseModel):
    kind: Literal["validation", "guard", "internal"]
    message: str
