"""Seeded Monte Carlo simulation of classical strategies and hit/miss tables.

Randomness comes from numpy's Philox counter-based generator. Experiment
tables draw one substream per experiment index (SeedSequence spawn keys),
so results are identical regardless of evaluation order or parallelism.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .benchmark import Partitioning, TargetEnsemble
from .errors import DimensionMismatchError
from .linalg import PureState, hermitian_eig_max
from .stats import ExperimentRecord


def _rng(seed: int, *spawn_key: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=spawn_key)
    return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True)
class ClassicalStrategy:
    """Message assignment plus the state prepared for each message.

    ``message_probs[a, k]`` is the probability of sending message k for
    target a; deterministic strategies are one-hot rows. ``outputs[k]`` is
    the state prepared on receiving message k.
    """

    cbits: int
    message_probs: np.ndarray
    outputs: tuple[PureState, ...]

    def __init__(self, cbits: int, message_probs, outputs):
        probs = np.asarray(message_probs, dtype=float)
        outputs = tuple(outputs)
        if probs.ndim != 2:
            raise ValueError("message_probs must be an (n_targets, n_messages) array")
        if probs.shape[1] != len(outputs):
            raise DimensionMismatchError(
                f"{probs.shape[1]} message columns but {len(outputs)} output states")
        if probs.shape[1] > 2 ** cbits:
            raise ValueError(f"{probs.shape[1]} messages do not fit in {cbits} cbits")
        if np.any(probs < 0) or np.any(np.abs(probs.sum(axis=1) - 1.0) > 1e-9):
            raise ValueError("each message_probs row must be a probability distribution")
        object.__setattr__(self, "cbits", cbits)
        object.__setattr__(self, "message_probs", probs)
        object.__setattr__(self, "outputs", outputs)
        self.message_probs.setflags(write=False)

    @classmethod
    def deterministic(cls, cbits: int, assignment, outputs) -> "ClassicalStrategy":
        assignment = list(assignment)
        probs = np.zeros((len(assignment), len(tuple(outputs))))
        for a, k in enumerate(assignment):
            probs[a, k] = 1.0
        return cls(cbits, probs, outputs)

    @property
    def n_targets(self) -> int:
        return self.message_probs.shape[0]

    def summary(self) -> str:
        det = bool(np.all((self.message_probs == 0) | (self.message_probs == 1)))
        kind = "deterministic" if det else "stochastic"
        return (f"{kind} strategy: {self.n_targets} targets -> "
                f"{len(self.outputs)} messages ({self.cbits} cbits)")


@dataclass(frozen=True)
class SimulationReport:
    """Outcome of a seeded classical-strategy simulation."""

    trials: int
    mean_fidelity: float
    std_error: float
    seed: int
    strategy_summary: str


def strategy_from_partition(ensemble: TargetEnsemble, partition: Partitioning,
                            cbits: int | None = None) -> ClassicalStrategy:
    """Optimal deterministic strategy for a partition of the target indices.

    Bob's response to message k is the top eigenvector of block k's average
    state, which attains that block's best achievable fidelity.
    """
    if partition.n != ensemble.n:
        raise DimensionMismatchError(
            f"partition over {partition.n} indices, ensemble has {ensemble.n}")
    if cbits is None:
        cbits = max(1, math.ceil(math.log2(partition.block_count))) if partition.block_count > 1 else 0
    if partition.block_count > 2 ** cbits:
        raise ValueError(f"{partition.block_count} blocks do not fit in {cbits} cbits")
    outputs = []
    for block in partition.blocks:
        if len(block) == 1:
            outputs.append(ensemble.states[block[0]])
        else:
            _, vec = hermitian_eig_max(ensemble.block_average(block))
            outputs.append(vec)
    assignment = [partition.block_of(a) for a in range(ensemble.n)]
    return ClassicalStrategy.deterministic(cbits, assignment, outputs)


def fidelity_table(ensemble: TargetEnsemble, strategy: ClassicalStrategy) -> np.ndarray:
    """|<psi_a|output_k>|^2 for every target a and message k."""
    if strategy.n_targets != ensemble.n:
        raise DimensionMismatchError(
            f"strategy covers {strategy.n_targets} targets, ensemble has {ensemble.n}")
    table = np.empty((ensemble.n, len(strategy.outputs)))
    for a, psi in enumerate(ensemble.states):
        for k, out in enumerate(strategy.outputs):
            table[a, k] = abs(psi.overlap(out)) ** 2
    return table


def exact_average_fidelity(ensemble: TargetEnsemble, strategy: ClassicalStrategy) -> float:
    """Expected average fidelity of a strategy, evaluated without sampling."""
    table = fidelity_table(ensemble, strategy)
    p = np.asarray(ensemble.probabilities)
    return float(p @ np.sum(strategy.message_probs * table, axis=1))


def simulate_classical_rsp(ensemble: TargetEnsemble, strategy: ClassicalStrategy,
                           trials: int, seed: int) -> SimulationReport:
    """Sample targets and messages, accumulating per-trial expected fidelity.

    Each trial draws a target uniformly at random and a message by
    inverse-CDF over ascending message index, then scores the exact overlap
    of the target with Bob's output state. Deterministic given the seed.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rng = _rng(seed)
    table = fidelity_table(ensemble, strategy)
    alphas = rng.integers(ensemble.n, size=trials)
    u = rng.random(trials)
    cdf = np.cumsum(strategy.message_probs, axis=1)
    ks = np.sum(u[:, None] > cdf[alphas], axis=1)
    ks = np.minimum(ks, len(strategy.outputs) - 1)  # guard roundoff at the top bin
    samples = table[alphas, ks]
    mean = float(samples.mean())
    se = float(samples.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return SimulationReport(
        trials=trials,
        mean_fidelity=mean,
        std_error=se,
        seed=seed,
        strategy_summary=strategy.summary(),
    )


def simulate_rspmi_experiments(hit_prob: float, n_experiments: int, trials_per,
                               seed: int) -> list[ExperimentRecord]:
    """Synthetic hit/miss tables: one binomial draw per experiment substream.

    ``trials_per`` is a constant trial count or a sequence of per-experiment
    counts (the real per-study counts are not published, so both shapes are
    supported).
    """
    if not 0.0 <= hit_prob <= 1.0:
        raise ValueError(f"hit_prob must lie in [0, 1], got {hit_prob}")
    if n_experiments < 1:
        raise ValueError(f"n_experiments must be >= 1, got {n_experiments}")
    if isinstance(trials_per, int):
        counts = [trials_per] * n_experiments
    else:
        counts = [int(t) for t in trials_per]
        if len(counts) != n_experiments:
            raise ValueError(f"{len(counts)} trial counts for {n_experiments} experiments")
    if any(t < 1 for t in counts):
        raise ValueError("every trial count must be >= 1")
    records = []
    for i, t in enumerate(counts):
        hits = int(_rng(seed, i).binomial(t, hit_prob))
        records.append(ExperimentRecord(label=f"sim{i + 1:03d}", trials=t, hits=hits))
    return records
