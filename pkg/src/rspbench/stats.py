"""Hit-rate statistics: binary fidelity, benchmark, uncertainties, pooling.

The fidelity between the theoretical hit distribution (p, 1-p) and the
observed one (q, 1-q) is the Bhattacharyya coefficient
sqrt(p q) + sqrt((1-p)(1-q)). Violation is reported as a z-score of the
fidelity excess over the classical benchmark.

Two uncertainty variants are always computed: the half-difference-of-surds
propagation formula, and a first-order delta-method alternative (the former
does not reproduce published error bars from binomial standard errors, so
reports show both).
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class BinaryFidelityParams:
    """Theoretical hit probability and the chance (classical) hit rate."""

    p_theory: float = 0.9
    chance: float = 0.25

    def __post_init__(self):
        for name in ("p_theory", "chance"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise ValueError(f"{name} must be strictly inside (0, 1), got {v}")


@dataclass(frozen=True)
class ExperimentRecord:
    """One experiment: its label, trial count and hit count."""

    label: str
    trials: int
    hits: int

    def __post_init__(self):
        if self.trials <= 0:
            raise ValueError(f"{self.label}: trials must be positive, got {self.trials}")
        if not 0 <= self.hits <= self.trials:
            raise ValueError(f"{self.label}: hits {self.hits} outside 0..{self.trials}")

    @property
    def rate(self) -> float:
        return self.hits / self.trials


@dataclass(frozen=True)
class MetaResult:
    """Pooled hit rate, fidelity, both uncertainty variants and z-scores."""

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


def binary_fidelity(p: float, q: float) -> float:
    """Bhattacharyya coefficient of the binary distributions (p,1-p), (q,1-q)."""
    if not 0.0 <= p <= 1.0 or not 0.0 <= q <= 1.0:
        raise ValueError(f"probabilities must lie in [0, 1], got p={p}, q={q}")
    return math.sqrt(p * q) + math.sqrt((1.0 - p) * (1.0 - q))


def classical_benchmark(params: BinaryFidelityParams) -> float:
    """Fidelity reached by guessing at chance: the value to beat."""
    return binary_fidelity(params.p_theory, params.chance)


def fidelity_uncertainty_paper(p: float, q: float, se: float) -> float:
    """Half-difference-of-surds propagation: SE/2 * |sqrt(pq) - sqrt((1-p)(1-q))|."""
    if se < 0:
        raise ValueError("standard error must be >= 0")
    return se / 2.0 * abs(math.sqrt(p * q) - math.sqrt((1.0 - p) * (1.0 - q)))


def fidelity_uncertainty_delta(p: float, q: float, se: float) -> float:
    """First-order delta method: se * |dF/dq| with dF/dq = (sqrt(p/q) - sqrt((1-p)/(1-q)))/2."""
    if se < 0:
        raise ValueError("standard error must be >= 0")
    if not 0.0 < q < 1.0:
        raise ValueError(f"delta-method derivative undefined at q={q}")
    return se * 0.5 * abs(math.sqrt(p / q) - math.sqrt((1.0 - p) / (1.0 - q)))


def violation_z(f_exp: float, f_bench: float, df: float) -> float:
    """Fidelity excess over the benchmark in units of its standard error."""
    if df <= 0:
        raise ValueError(f"df must be positive, got {df}")
    return (f_exp - f_bench) / df


def pooled_hit_rate(records: list[ExperimentRecord]) -> tuple[float, float]:
    """Pool per-experiment hit rates with sqrt(trials) weights.

    Returns (q, se) where se is the binomial standard error of q over the
    total number of trials.
    """
    if not records:
        raise ValueError("cannot pool an empty record list")
    wsum = 0.0
    acc = 0.0
    total = 0
    for r in records:
        w = math.sqrt(r.trials)
        acc += w * r.rate
        wsum += w
        total += r.trials
    q = acc / wsum
    se = math.sqrt(q * (1.0 - q) / total)
    return q, se


def _z_or_limit(fid: float, bench: float, df: float) -> float:
    if df > 0:
        return violation_z(fid, bench, df)
    if fid == bench:
        return 0.0
    return math.copysign(math.inf, fid - bench)


def meta_analyze(records: list[ExperimentRecord],
                 params: BinaryFidelityParams = BinaryFidelityParams()) -> MetaResult:
    """Full pipeline: pool, compute fidelity, uncertainties, z-scores."""
    q, se = pooled_hit_rate(records)
    fid = binary_fidelity(params.p_theory, q)
    bench = classical_benchmark(params)
    df_paper = fidelity_uncertainty_paper(params.p_theory, q, se)
    # at a degenerate pooled rate the derivative (and se) vanish; report df = 0
    df_delta = fidelity_uncertainty_delta(params.p_theory, q, se) if 0.0 < q < 1.0 else 0.0
    return MetaResult(
        pooled_rate=q,
        se_rate=se,
        fidelity=fid,
        benchmark=bench,
        df_paper=df_paper,
        df_delta=df_delta,
        z_paper=_z_or_limit(fid, bench, df_paper),
        z_delta=_z_or_limit(fid, bench, df_delta),
        total_trials=sum(r.trials for r in records),
        total_hits=sum(r.hits for r in records),
        n_records=len(records),
    )
