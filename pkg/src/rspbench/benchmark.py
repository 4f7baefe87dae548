"""Classical fidelity thresholds for finite uniform target ensembles.

Two routes to the benchmark for c classical bits:

* the exact threshold, by scanning every partition of the n target indices
  into at most 2^c blocks and scoring each block by the top eigenvalue of
  its average state;
* an efficient upper bound, by scoring only the best subset of each size
  and maximizing over the non-increasing size rows that sum to n.

Both assume a uniform prior over targets and reject anything else.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

import numpy as np

from .errors import CombinatorialBlowupError, DimensionMismatchError, NonUniformEnsembleError
from .linalg import HermitianMatrix, PureState, max_eigenvalue, mixture

MAX_ENUMERATION_N = 14   # Bell(14) is the practical desk-scale ceiling
UNIFORM_TOL = 1e-9


@dataclass(frozen=True)
class TargetEnsemble:
    """Finite ensemble of pure target states with their prior probabilities."""

    states: tuple[PureState, ...]
    probabilities: tuple[float, ...]

    def __init__(self, states, probabilities=None):
        states = tuple(states)
        if not states:
            raise ValueError("ensemble needs at least one state")
        dim = states[0].dim
        for s in states:
            if s.dim != dim:
                raise DimensionMismatchError(f"mixed state dims {dim} and {s.dim}")
        if probabilities is None:
            probabilities = [1.0 / len(states)] * len(states)
        probs = tuple(float(p) for p in probabilities)
        if len(probs) != len(states):
            raise DimensionMismatchError(f"{len(states)} states but {len(probs)} probabilities")
        if any(p < 0 for p in probs):
            raise ValueError("probabilities must be nonnegative")
        if abs(sum(probs) - 1.0) > UNIFORM_TOL:
            raise ValueError(f"probabilities sum to {sum(probs)!r}, expected 1")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "probabilities", probs)

    @property
    def n(self) -> int:
        return len(self.states)

    @property
    def dim(self) -> int:
        return self.states[0].dim

    @property
    def is_uniform(self) -> bool:
        return all(abs(p - 1.0 / self.n) <= UNIFORM_TOL for p in self.probabilities)

    def require_uniform(self) -> None:
        if not self.is_uniform:
            raise NonUniformEnsembleError(
                "benchmark computations assume a uniform target prior; "
                f"got probabilities {self.probabilities}")

    def block_average(self, indices) -> HermitianMatrix:
        """Equal-weight average state of the selected targets."""
        idx = list(indices)
        w = [1.0 / len(idx)] * len(idx)
        return mixture([self.states[i] for i in idx], w)


@dataclass(frozen=True)
class Partitioning:
    """Partition of target indices 0..n-1 into disjoint nonempty blocks.

    Canonical form is restricted-growth-string order: blocks sorted by their
    smallest element, indices ascending within each block.
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __init__(self, n: int, blocks):
        blocks = tuple(tuple(sorted(b)) for b in blocks)
        seen = [i for b in blocks for i in b]
        if sorted(seen) != list(range(n)) or any(len(b) == 0 for b in blocks):
            raise ValueError(f"blocks {blocks} are not a partition of 0..{n - 1}")
        blocks = tuple(sorted(blocks, key=lambda b: b[0]))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "blocks", blocks)

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    def block_of(self, index: int) -> int:
        for k, b in enumerate(self.blocks):
            if index in b:
                return k
        raise IndexError(index)


@dataclass(frozen=True)
class ThresholdResult:
    """Exact threshold (when searched), upper bound and per-size maxima."""

    cbits: int
    upper_bound: float
    per_size_max: dict[int, float]
    exact: float | None = None
    exact_partition: Partitioning | None = None
    best_composition: tuple[int, ...] = field(default=())


def enumerate_set_partitions(n: int, max_blocks: int) -> Iterator[Partitioning]:
    """All partitions of {0..n-1} into at most max_blocks nonempty blocks.

    Yields each partition exactly once, in restricted-growth-string
    lexicographic order. Guarded at n <= 14.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if max_blocks < 1:
        raise ValueError(f"max_blocks must be >= 1, got {max_blocks}")
    if n > MAX_ENUMERATION_N:
        raise CombinatorialBlowupError(
            f"partition enumeration for n={n} exceeds the guard n <= {MAX_ENUMERATION_N}; "
            "use the upper-bound method instead")
    for rgs in _restricted_growth_strings(n, max_blocks):
        yield _partition_from_rgs(n, rgs)


def _restricted_growth_strings(n: int, max_blocks: int) -> Iterator[list[int]]:
    a = [0] * n

    def rec(i: int, top: int) -> Iterator[list[int]]:
        if i == n:
            yield a
            return
        for v in range(min(top + 1, max_blocks - 1) + 1):
            a[i] = v
            yield from rec(i + 1, max(top, v))

    yield from rec(1, 0)


def _partition_from_rgs(n: int, rgs: list[int]) -> Partitioning:
    nblocks = max(rgs) + 1
    blocks: list[list[int]] = [[] for _ in range(nblocks)]
    for i, v in enumerate(rgs):
        blocks[v].append(i)
    return Partitioning(n, blocks)


def enumerate_compositions(n: int, max_parts: int) -> list[tuple[int, ...]]:
    """All multisets of positive integers summing to n with <= max_parts parts.

    Each is returned once as a non-increasing tuple, largest first part first.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if max_parts < 1:
        raise ValueError(f"max_parts must be >= 1, got {max_parts}")
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, cap: int, parts_left: int, prefix: list[int]) -> None:
        if remaining == 0:
            out.append(tuple(prefix))
            return
        if parts_left == 0:
            return
        for part in range(min(cap, remaining), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, parts_left - 1, prefix)
            prefix.pop()

    rec(n, n, max_parts, [])
    return out


def max_contribution_by_size(ensemble: TargetEnsemble, s: int,
                             _cache: dict | None = None) -> float:
    """Best top eigenvalue over all size-s block averages of the ensemble."""
    ensemble.require_uniform()
    if not 1 <= s <= ensemble.n:
        raise ValueError(f"block size {s} outside 1..{ensemble.n}")
    best = 0.0
    for subset in combinations(range(ensemble.n), s):
        best = max(best, _subset_lambda_max(ensemble, subset, _cache))
    return best


def _subset_lambda_max(ensemble: TargetEnsemble, subset: tuple[int, ...],
                       cache: dict | None) -> float:
    if cache is not None and subset in cache:
        return cache[subset]
    if len(subset) == 1:
        val = 1.0
    else:
        val = max_eigenvalue(ensemble.block_average(subset))
    if cache is not None:
        cache[subset] = val
    return val


def upper_bound(ensemble: TargetEnsemble, cbits: int) -> float:
    """Efficient upper bound on the classical threshold.

    Scores every non-increasing block-size row summing to n by
    sum_j (s_j / n) * best-subset eigenvalue of size s_j, and keeps the
    maximum.
    """
    return _upper_bound_details(ensemble, cbits)[0]


def _upper_bound_details(ensemble: TargetEnsemble, cbits: int,
                         _cache: dict | None = None) -> tuple[float, dict[int, float], tuple[int, ...]]:
    ensemble.require_uniform()
    if cbits < 0:
        raise ValueError("cbits must be >= 0")
    n = ensemble.n
    max_parts = min(n, 2 ** cbits)
    cache = {} if _cache is None else _cache
    rows = enumerate_compositions(n, max_parts)
    sizes = sorted({s for row in rows for s in row})
    per_size = {s: max_contribution_by_size(ensemble, s, cache) for s in sizes}
    best_val = -1.0
    best_row: tuple[int, ...] = ()
    for row in rows:
        val = sum(s * per_size[s] for s in row) / n
        if val > best_val:
            best_val = val
            best_row = row
    return best_val, per_size, best_row


def partition_value(ensemble: TargetEnsemble, partition: Partitioning,
                    _cache: dict | None = None) -> float:
    """Average fidelity of the optimal deterministic strategy on a partition."""
    ensemble.require_uniform()
    n = ensemble.n
    return sum(len(b) * _subset_lambda_max(ensemble, b, _cache) for b in partition.blocks) / n


def exact_threshold(ensemble: TargetEnsemble, cbits: int, jobs: int = 1) -> ThresholdResult:
    """Optimal classical average fidelity by full partition search.

    Scans all partitions into at most 2^c blocks; ties are broken by
    canonical enumeration order, so results are identical for any jobs
    count. Also carries the upper bound and per-size maxima.
    """
    ensemble.require_uniform()
    if cbits < 0:
        raise ValueError("cbits must be >= 0")
    n = ensemble.n
    max_blocks = min(n, 2 ** cbits)
    cache: dict = {}
    bound, per_size, best_row = _upper_bound_details(ensemble, cbits, _cache=cache)
    partitions = list(enumerate_set_partitions(n, max_blocks))

    def scan(chunk: range) -> tuple[float, int]:
        best_val, best_idx = -1.0, -1
        for i in chunk:
            val = partition_value(ensemble, partitions[i], _cache=cache)
            if val > best_val:
                best_val, best_idx = val, i
        return best_val, best_idx

    if jobs <= 1 or len(partitions) < 2 * jobs:
        best_val, best_idx = scan(range(len(partitions)))
    else:
        edges = np.linspace(0, len(partitions), jobs + 1, dtype=int)
        chunks = [range(a, b) for a, b in zip(edges[:-1], edges[1:]) if a < b]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(scan, chunks))
        # reduce by (value, earliest canonical index): identical to the serial scan
        best_val, best_idx = results[0]
        for val, idx in results[1:]:
            if val > best_val:
                best_val, best_idx = val, idx
    return ThresholdResult(
        cbits=cbits,
        upper_bound=bound,
        per_size_max=per_size,
        exact=best_val,
        exact_partition=partitions[best_idx],
        best_composition=best_row,
    )
