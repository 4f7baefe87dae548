"""Acceptance suite: one test per criterion, each printing a pass line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines as they pass.
"""

import math

import numpy as np
import pytest

from conftest import eig_max_2x2_oracle, random_ensemble, random_hermitian, stirling2
from rspbench.benchmark import (
    enumerate_set_partitions, exact_threshold, partition_value,
)
from rspbench.linalg import HermitianMatrix, hermitian_eig_max, mixture
from rspbench.simulate import (
    ClassicalStrategy, simulate_classical_rsp, simulate_rspmi_experiments,
    strategy_from_partition,
)
from rspbench.stats import (
    BinaryFidelityParams, binary_fidelity, classical_benchmark, meta_analyze, violation_z,
)
from test_simulate import random_strategy

INV_SQRT2 = 1.0 / math.sqrt(2.0)


def _ok(num, text):
    print(f"ACCEPTANCE {num}: PASS - {text}")


def test_criterion_01_benchmark_reproduction():
    value = classical_benchmark(BinaryFidelityParams(0.9, 0.25))
    assert value == pytest.approx(0.7482029, abs=1e-7)
    _ok(1, f"classical benchmark {value:.9f} within 1e-7 of 0.7482029")


def test_criterion_02_pooled_fidelity_reproduction():
    fid = binary_fidelity(0.9, 0.338214)
    assert fid == pytest.approx(0.808969964, abs=1e-6)
    z = violation_z(fid, 0.7482029, 0.001463)
    assert z == pytest.approx(41.5, abs=0.1)
    _ok(2, f"fidelity {fid:.9f} and violation {z:.2f} standard units")


def test_criterion_03_variant_reproduction():
    fid = binary_fidelity(0.9, 0.284)
    assert fid == pytest.approx(0.773165374, abs=2e-4)
    z = violation_z(0.773165374, 0.7482029, 0.00061946)
    assert z == pytest.approx(40.29, abs=0.05)
    _ok(3, f"variant fidelity {fid:.9f} and violation {z:.2f} standard units")


def test_criterion_04_perfect_fidelity_law():
    rng = np.random.default_rng(404)
    for _ in range(50):
        c = int(rng.integers(1, 4))
        n = int(rng.integers(2, 2 ** c + 1))
        e = random_ensemble(rng, int(rng.integers(2, 5)), n)
        r = exact_threshold(e, c)
        assert r.exact == pytest.approx(1.0, abs=1e-12)
    _ok(4, "50 random ensembles with n <= 2^c reach threshold 1 within 1e-12")


def test_criterion_05_bound_dominance():
    rng = np.random.default_rng(505)
    for _ in range(200):
        dim = int(rng.integers(2, 5))
        n = int(rng.integers(2, 9))
        c = int(rng.integers(0, 3))
        e = random_ensemble(rng, dim, n)
        r = exact_threshold(e, c)
        assert r.exact <= r.upper_bound + 1e-12
    _ok(5, "exact <= upper bound on 200 random ensembles (dim 2-4, n <= 8, c <= 2)")


def test_criterion_06_bb84_oracle(bb84):
    # route (a): full partition search
    searched = exact_threshold(bb84, 1).exact
    # route (b): closed-form 2x2 eigenvalues over all partitions into <= 2 blocks
    best = 0.0
    for p in enumerate_set_partitions(4, 2):
        val = 0.0
        for block in p.blocks:
            if len(block) == 1:
                lam = 1.0
            else:
                avg = mixture([bb84.states[i] for i in block],
                              [1.0 / len(block)] * len(block))
                lam = eig_max_2x2_oracle(avg.entries)
            val += len(block) / 4.0 * lam
        best = max(best, val)
    expected = (1 + INV_SQRT2) / 2
    assert searched == pytest.approx(expected, abs=1e-9)
    assert best == pytest.approx(expected, abs=1e-9)
    assert searched == pytest.approx(best, abs=1e-9)
    _ok(6, f"BB84 c=1 threshold {searched:.9f} agrees with the closed-form route")


def test_criterion_07_simulation_soundness(bb84):
    rng = np.random.default_rng(707)
    ensembles = [(bb84, 1), (random_ensemble(rng, 3, 5), 1)]
    for e, cbits in ensembles:
        result = exact_threshold(e, cbits)
        for i in range(100):
            st = random_strategy(rng, e.n, cbits, e.dim, stochastic=bool(i % 2))
            rep = simulate_classical_rsp(e, st, 100000, seed=70000 + i)
            assert rep.mean_fidelity <= result.exact + 4 * rep.std_error + 1e-9
        opt = strategy_from_partition(e, result.exact_partition, cbits=cbits)
        rep = simulate_classical_rsp(e, opt, 100000, seed=71000)
        assert abs(rep.mean_fidelity - result.exact) <= 3 * rep.std_error + 1e-9
    _ok(7, "no strategy beat the threshold by > 4 se; optimal strategy within 3 se")


def test_criterion_08_null_calibration():
    zs = []
    for seed in range(1000):
        records = simulate_rspmi_experiments(0.25, 87, 38, seed=seed)
        zs.append(meta_analyze(records).z_delta)
    zs = np.asarray(zs)
    mean_z = float(np.mean(zs))
    frac_extreme = float(np.mean(np.abs(zs) > 3.0))
    assert abs(mean_z) < 0.5
    assert frac_extreme < 0.01
    _ok(8, f"null model: mean z {mean_z:+.3f}, |z|>3 in {frac_extreme:.2%} of 1000 runs")


def test_criterion_09_enumeration_counts():
    for n in range(1, 9):
        for max_blocks in range(1, 5):
            expected = sum(stirling2(n, k) for k in range(1, max_blocks + 1))
            assert len(list(enumerate_set_partitions(n, max_blocks))) == expected
    _ok(9, "set-partition counts match the Stirling-sum oracle for n <= 8, blocks <= 4")


def test_criterion_10_eigensolver():
    rng = np.random.default_rng(1010)
    worst_residual = 0.0
    for _ in range(1000):
        dim = int(rng.integers(2, 7))
        h = random_hermitian(rng, dim)
        lam, vec = hermitian_eig_max(HermitianMatrix(h))
        v = vec.amplitudes
        residual = float(np.max(np.abs(h @ v - lam * v)))
        worst_residual = max(worst_residual, residual)
        assert residual < 1e-8
        x = rng.normal(size=(100, dim)) + 1j * rng.normal(size=(100, dim))
        x /= np.linalg.norm(x, axis=1, keepdims=True)
        rayleigh = np.real(np.einsum("ij,jk,ik->i", x.conj(), h, x))
        assert lam >= float(np.max(rayleigh)) - 1e-10
    _ok(10, f"1000 random Hermitian matrices: worst residual {worst_residual:.2e}")
