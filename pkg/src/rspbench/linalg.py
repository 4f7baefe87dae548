"""Small-dimension complex linear algebra for pure states and density matrices.

Dimensions here are tiny (qubits up to dim 8), so the eigensolver is a cyclic
Jacobi iteration on the real-symmetric embedding of the Hermitian matrix:
robust, dependency-free and exact enough for the 1e-10 contracts used by the
benchmark engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, NormalizationError, NotHermitianError

NORM_REPAIR_TOL = 1e-6     # renormalize silently below this deviation
HERMITIAN_TOL = 1e-12
JACOBI_OFFDIAG_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True)
class PureState:
    """Unit-norm complex amplitude vector of dimension >= 2.

    Vectors whose norm deviates from 1 by at most 1e-6 are renormalized on
    construction (tolerates decimal truncation in input files); larger
    deviations raise NormalizationError.
    """

    amplitudes: np.ndarray

    def __init__(self, amplitudes):
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if amps.size < 2:
            raise DimensionMismatchError(f"state dimension must be >= 2, got {amps.size}")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_REPAIR_TOL:
            raise NormalizationError(f"state norm {norm!r} deviates from 1 by more than {NORM_REPAIR_TOL}")
        object.__setattr__(self, "amplitudes", amps / norm)
        self.amplitudes.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def overlap(self, other: "PureState") -> complex:
        """Inner product <self|other>."""
        if self.dim != other.dim:
            raise DimensionMismatchError(f"dim {self.dim} vs {other.dim}")
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class HermitianMatrix:
    """dim x dim Hermitian operator; also used as a density matrix."""

    entries: np.ndarray
    hermitian_tol: float = field(default=HERMITIAN_TOL, compare=False)

    def __init__(self, entries, hermitian_tol: float = HERMITIAN_TOL):
        m = np.asarray(entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > hermitian_tol:
            raise NotHermitianError("matrix is not Hermitian within tolerance")
        # symmetrize away the residual so downstream math sees an exact Hermitian
        m = (m + m.conj().T) / 2
        object.__setattr__(self, "entries", m)
        object.__setattr__(self, "hermitian_tol", hermitian_tol)
        self.entries.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def is_density_matrix(self, tol: float = 1e-9) -> bool:
        if abs(self.trace - 1.0) > tol:
            return False
        evals = _jacobi_eigh(_real_embedding(self.entries))[0]
        return bool(np.min(evals) >= -tol)


def projector(psi: PureState) -> HermitianMatrix:
    """Rank-1 density matrix |psi><psi|."""
    v = psi.amplitudes
    return HermitianMatrix(np.outer(v, v.conj()))


def mixture(states: list[PureState], weights) -> HermitianMatrix:
    """Convex combination sum_i w_i |psi_i><psi_i|."""
    if len(states) == 0:
        raise ValueError("mixture of an empty state list")
    w = np.asarray(weights, dtype=float)
    if w.size != len(states):
        raise DimensionMismatchError(f"{len(states)} states but {w.size} weights")
    if np.any(w < 0):
        raise ValueError("mixture weights must be nonnegative")
    if abs(float(w.sum()) - 1.0) > 1e-9:
        raise ValueError(f"mixture weights sum to {w.sum()!r}, expected 1")
    dim = states[0].dim
    acc = np.zeros((dim, dim), dtype=complex)
    for wi, s in zip(w, states):
        if s.dim != dim:
            raise DimensionMismatchError(f"mixed dims {dim} and {s.dim}")
        acc += wi * np.outer(s.amplitudes, s.amplitudes.conj())
    return HermitianMatrix(acc)


def pure_fidelity(psi: PureState, rho: HermitianMatrix) -> float:
    """Fidelity <psi|rho|psi> of a density matrix against a pure target."""
    if psi.dim != rho.dim:
        raise DimensionMismatchError(f"dim {psi.dim} vs {rho.dim}")
    v = psi.amplitudes
    val = float(np.real(v.conj() @ rho.entries @ v))
    # clamp roundoff outside [0, 1]
    return min(max(val, 0.0), 1.0)


def hermitian_eig_max(M: HermitianMatrix) -> tuple[float, PureState]:
    """Largest eigenvalue and a matching unit eigenvector.

    Deterministic in the degenerate case: the Jacobi basis order picks the
    column, and the eigenvector phase is fixed so its first nonzero component
    is real-positive.
    """
    evals, evecs = _jacobi_eigh(_real_embedding(M.entries))
    idx = int(np.argmax(evals))
    d = M.dim
    col = evecs[:, idx]
    v = col[:d] + 1j * col[d:]
    nrm = float(np.linalg.norm(v))
    if nrm < 1e-12:  # the paired embedding vector carries the state instead
        v = -col[d:] + 1j * col[:d]
        nrm = float(np.linalg.norm(v))
    v = v / nrm
    v = _fix_phase(v)
    return float(evals[idx]), PureState(v)


def max_eigenvalue(M: HermitianMatrix) -> float:
    """Largest eigenvalue only (skips eigenvector extraction)."""
    evals = _jacobi_eigh(_real_embedding(M.entries), want_vectors=False)[0]
    return float(np.max(evals))


def _fix_phase(v: np.ndarray) -> np.ndarray:
    for x in v:
        if abs(x) > 1e-12:
            return v * (x.conjugate() / abs(x))
    return v


def _real_embedding(m: np.ndarray) -> np.ndarray:
    """Embed Hermitian A + iB as the real symmetric [[A, -B], [B, A]].

    Each eigenvalue of the original appears twice; an eigenvector (x; y) of
    the embedding maps back to x + iy.
    """
    a = m.real
    b = m.imag
    return np.block([[a, -b], [b, a]])


def _jacobi_eigh(S: np.ndarray, want_vectors: bool = True):
    """Cyclic Jacobi diagonalization of a real symmetric matrix.

    Sweeps all (p, q) pairs in row order until the off-diagonal Frobenius
    norm drops below 1e-12, capped at 100 sweeps.
    """
    n = S.shape[0]
    A = np.array(S, dtype=float)
    V = np.eye(n) if want_vectors else None
    # elements below this cannot push the off-diagonal norm past the tolerance
    skip = JACOBI_OFFDIAG_TOL / (n * n)
    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.sqrt(2.0 * np.sum(np.triu(A, 1) ** 2))
        if off < JACOBI_OFFDIAG_TOL:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) < skip:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = np.sign(theta) if theta != 0 else 1.0
                t /= abs(theta) + np.sqrt(theta * theta + 1.0)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                _rotate(A, p, q, c, s)
                if want_vectors:
                    vp = V[:, p].copy()
                    V[:, p] = c * vp - s * V[:, q]
                    V[:, q] = s * vp + c * V[:, q]
    return np.diag(A).copy(), V


def _rotate(A: np.ndarray, p: int, q: int, c: float, s: float) -> None:
    colp = A[:, p].copy()
    A[:, p] = c * colp - s * A[:, q]
    A[:, q] = s * colp + c * A[:, q]
    rowp = A[p, :].copy()
    A[p, :] = c * rowp - s * A[q, :]
    A[q, :] = s * rowp + c * A[q, :]
    # force exact symmetry on the rotated 2x2 block
    A[p, q] = A[q, p] = (A[p, q] + A[q, p]) / 2.0
