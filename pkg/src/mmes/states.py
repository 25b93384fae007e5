"""Dense n-qubit pure states and subsystem purities.

Amplitudes are indexed by computational basis label with qubit 1 as the most
significant bit, so a printed ket |q1 q2 ... qn> transcribes directly to the
array index int(q1 q2 ... qn, 2).  All functions here are pure: they never
mutate their inputs and may be called concurrently on shared states.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

MAX_QUBITS = 12
NORM_ATOL = 1e-12


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized pure state of `n_qubits` qubits as 2**n complex amplitudes.

    Build instances through :func:`make_state`, which validates length and
    normalization; the dataclass constructor performs no checks.
    """

    n_qubits: int
    amplitudes: np.ndarray

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def __repr__(self) -> str:  # keep reprs short; 2**n amplitudes are noise
        return f"PureState(n_qubits={self.n_qubits})"


def make_state(n: int, amplitudes: Iterable[complex], *, normalize: bool = False) -> PureState:
    """Validate and wrap an amplitude vector as a PureState.

    With ``normalize=False`` the vector must already have unit norm within
    1e-12; with ``normalize=True`` any nonzero vector is accepted and scaled.
    Raises ValueError on wrong length, the zero vector, or a norm violation.
    """
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"n_qubits must be an integer in [1, {MAX_QUBITS}], got {n!r}")
    arr = np.asarray(amplitudes, dtype=np.complex128).reshape(-1).copy()
    if arr.size != 1 << n:
        raise ValueError(f"expected {1 << n} amplitudes for n={n}, got {arr.size}")
    norm = float(np.linalg.norm(arr))
    if norm == 0.0:
        raise ValueError("amplitude vector is identically zero")
    if normalize:
        arr /= norm
    elif abs(norm - 1.0) > NORM_ATOL:
        raise ValueError(f"state is not normalized: |norm - 1| = {abs(norm - 1.0):.3e}")
    arr.setflags(write=False)
    return PureState(int(n), arr)


def check_subset(labels: Iterable[int], n: int) -> tuple[int, ...]:
    """Validate qubit labels: distinct, strictly ascending, within [1, n]."""
    subset = tuple(int(q) for q in labels)
    if not subset:
        raise ValueError("qubit subset must be non-empty")
    for q in subset:
        if not 1 <= q <= n:
            raise ValueError(f"qubit label {q} out of range [1, {n}]")
    if any(a >= b for a, b in zip(subset, subset[1:])):
        raise ValueError(f"qubit labels must be strictly increasing, got {subset}")
    return subset


def complement_subset(subset: Sequence[int], n: int) -> tuple[int, ...]:
    """Ascending labels in [1, n] not contained in `subset`."""
    inside = set(subset)
    return tuple(q for q in range(1, n + 1) if q not in inside)


def partial_trace(state: PureState, keep: Iterable[int]) -> np.ndarray:
    """Marginal density matrix over the kept qubits (complement traced out).

    Rows/columns are ordered by the kept qubits in ascending label order.
    The result is Hermitian, trace-1, and PSD by construction (gram matrix of
    the reshaped amplitude tensor).
    """
    kept = check_subset(keep, state.n_qubits)
    n = state.n_qubits
    axes = [q - 1 for q in kept]
    rest = [i for i in range(n) if i + 1 not in kept]
    mat = (
        state.amplitudes.reshape([2] * n)
        .transpose(axes + rest)
        .reshape(1 << len(kept), -1)
    )
    return mat @ mat.conj().T


def check_density_matrix(rho: np.ndarray, *, atol: float = 1e-12, psd_tol: float = 1e-10) -> None:
    """Raise ValueError unless `rho` is Hermitian, trace-1, and PSD."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    k = rho.shape[0].bit_length() - 1
    if 1 << k != rho.shape[0]:
        raise ValueError(f"density matrix dimension {rho.shape[0]} is not a power of two")
    if np.max(np.abs(rho - rho.conj().T)) > atol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > atol:
        raise ValueError(f"density matrix trace is {np.trace(rho):.15g}, expected 1")
    if np.min(np.linalg.eigvalsh(rho)) < -psd_tol:
        raise ValueError("density matrix has a negative eigenvalue")


def purity(rho: np.ndarray) -> float:
    """Tr rho^2 of a Hermitian density matrix, computed as the squared
    Frobenius norm of its entries."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    return float(np.vdot(rho, rho).real)


def subsystem_purity(state: PureState, subset: Iterable[int]) -> float:
    """Purity of the marginal over `subset`."""
    return purity(partial_trace(state, subset))


def purity_profile(state: PureState, k: int) -> list[tuple[tuple[int, ...], float]]:
    """All size-k subsystem purities, one entry per subset in lexicographic order."""
    n = state.n_qubits
    if not 1 <= k <= n - 1:
        raise ValueError(f"subsystem size must be in [1, {n - 1}], got {k}")
    return [
        (sub, subsystem_purity(state, sub))
        for sub in itertools.combinations(range(1, n + 1), k)
    ]


def half_size(n: int) -> int:
    """Marginal size floor(n/2) used by the averaged purity."""
    return n // 2


def avg_subsystem_purity(state: PureState, *, pair_complements: bool = False) -> float:
    """Mean subsystem purity over all floor(n/2)-qubit marginals.

    With ``pair_complements=True`` (even n only) each purity is computed once
    for the subsets containing qubit 1 and reused for the complement, which
    halves the work; a pure state has identical purities on complementary
    marginals, so the two paths agree to ~1e-14.
    """
    n = state.n_qubits
    if n < 2:
        raise ValueError("average subsystem purity needs at least 2 qubits")
    k = half_size(n)
    if pair_complements:
        if n % 2 != 0:
            raise ValueError("complement pairing applies only to even n")
        subsets = [s for s in itertools.combinations(range(1, n + 1), k) if s[0] == 1]
        total = math.fsum(subsystem_purity(state, s) for s in subsets) * 2.0
        return total / math.comb(n, k)
    values = [p for _, p in purity_profile(state, k)]
    return math.fsum(values) / len(values)


def uniformity_degree(state: PureState, tol: float = 1e-9) -> int:
    """Largest k <= floor(n/2) with every marginal of size <= k completely mixed.

    Returns 0 when even some single-qubit marginal is not maximally mixed.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    degree = 0
    for j in range(1, half_size(state.n_qubits) + 1):
        target = 2.0 ** -j
        if all(abs(p - target) <= tol for _, p in purity_profile(state, j)):
            degree = j
        else:
            break
    return degree


def haar_random_state(n: int, rng: np.random.Generator | int | None = None) -> PureState:
    """Haar-uniform random pure state: i.i.d. complex Gaussian amplitudes, normalized."""
    gen = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    z = gen.standard_normal(1 << n) + 1j * gen.standard_normal(1 << n)
    return make_state(n, z, normalize=True)
