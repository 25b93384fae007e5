"""Pauli-string expectations and local-unitary invariants.

For a qubit subset B, the invariant F_B sums the squared expectation values
of all 3^|B| Pauli strings whose support is exactly B (every qubit of B gets
one of X, Y, Z; all other qubits act as identity).  These sums are unchanged
by single-qubit unitaries and determine every marginal purity through

    purity(A) = 2**-|A| * (1 + sum of F_B over non-empty B within A),

which is the Pauli-basis expansion of Tr rho_A^2.

Pauli strings are applied by bit-indexed amplitude traversal; no 2**n x 2**n
operator is ever materialized.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from .states import PureState, check_subset

AXES = ("X", "Y", "Z")

_IMAG_ATOL = 1e-10

# Pauli conventions: X = [[0,1],[1,0]], Y = [[0,-i],[i,0]], Z = [[1,0],[0,-1]].
# Acting on a basis label, X and Y flip the qubit's bit; the phases below are
# the matrix elements picked up as a function of the *input* bit value.

# Expanding all 3^k strings at once is capped so the (strings x dim) phase
# table stays small; larger supports fall back to per-string evaluation.
_BATCH_LIMIT = 1 << 21


@lru_cache(maxsize=None)
def _axis_tables(n: int) -> dict[int, dict[str, tuple[int, np.ndarray]]]:
    """Per qubit and axis: (bit-flip mask, phase picked up at each basis label)."""
    idx = np.arange(1 << n)
    tables: dict[int, dict[str, tuple[int, np.ndarray]]] = {}
    for q in range(1, n + 1):
        flip = 1 << (n - q)
        bit = (idx & flip) != 0
        tables[q] = {
            "X": (flip, np.ones(1 << n, dtype=np.complex128)),
            "Y": (flip, np.where(bit, -1j, 1j)),
            "Z": (0, np.where(bit, -1.0 + 0j, 1.0 + 0j)),
        }
    return tables


def _expectations(state: PureState, subset: tuple[int, ...], axes_list: list[tuple[str, ...]]) -> np.ndarray:
    """Real expectation values of the given axis assignments on `subset`.

    <P> = sum_i conj(psi[i ^ mask]) * phase[i] * psi[i] for each string P.
    numpy's pairwise summation keeps the accumulation order deterministic.
    """
    n = state.n_qubits
    psi = state.amplitudes
    tables = _axis_tables(n)
    idx = np.arange(1 << n)

    masks = np.empty(len(axes_list), dtype=np.intp)
    phases = np.empty((len(axes_list), 1 << n), dtype=np.complex128)
    for row, axes in enumerate(axes_list):
        mask = 0
        phase = None
        for q, axis in zip(subset, axes):
            qmask, qphase = tables[q][axis]
            mask ^= qmask
            phase = qphase if phase is None else phase * qphase
        masks[row] = mask
        phases[row] = phase

    vals = np.einsum("si,si,i->s", psi.conj()[idx[None, :] ^ masks[:, None]], phases, psi)
    assert float(np.max(np.abs(vals.imag))) < _IMAG_ATOL, "Pauli expectation has imaginary residue"
    return vals.real


def pauli_expectation(state: PureState, pauli: Mapping[int, str]) -> float:
    """Expectation value of one Pauli string given as {qubit label: axis}.

    Unassigned qubits act as identity.  The value lies in [-1, 1].
    """
    if not pauli:
        raise ValueError("Pauli string must have non-empty support")
    support = check_subset(sorted(pauli), state.n_qubits)
    axes = []
    for q in support:
        axis = str(pauli[q]).upper()
        if axis not in AXES:
            raise ValueError(f"unknown Pauli axis {pauli[q]!r} on qubit {q}; expected one of {AXES}")
        axes.append(axis)
    return float(_expectations(state, support, [tuple(axes)])[0])


def invariant_F(state: PureState, subset: Iterable[int]) -> float:
    """Sum of squared expectations over all 3^|subset| Pauli-axis assignments."""
    sub = check_subset(subset, state.n_qubits)
    k = len(sub)
    total = 0.0
    batch = max(1, _BATCH_LIMIT // (1 << state.n_qubits))
    assignments = itertools.product(AXES, repeat=k)
    while True:
        chunk = list(itertools.islice(assignments, batch))
        if not chunk:
            break
        vals = _expectations(state, sub, chunk)
        total += float(np.sum(vals * vals))
    return total


@dataclass(frozen=True)
class InvariantTable:
    """Invariant values F_B for every subset B with 1 <= |B| <= max_size."""

    n_qubits: int
    max_size: int
    values: dict[tuple[int, ...], float]

    def __getitem__(self, subset: Iterable[int]) -> float:
        return self.values[tuple(subset)]

    def subsets(self, size: int) -> list[tuple[int, ...]]:
        return [s for s in self.values if len(s) == size]

    def size_sum(self, size: int) -> float:
        """Sum of F_B over all subsets of the given size."""
        return float(sum(self.values[s] for s in self.subsets(size)))


def invariant_table(state: PureState, max_size: int) -> InvariantTable:
    """Complete table of F values for all subsets of size 1..max_size."""
    n = state.n_qubits
    if not 1 <= max_size <= n:
        raise ValueError(f"max_size must be in [1, {n}], got {max_size}")
    values: dict[tuple[int, ...], float] = {}
    for k in range(1, max_size + 1):
        for sub in itertools.combinations(range(1, n + 1), k):
            f = invariant_F(state, sub)
            assert f >= -1e-10 and f <= 3.0**k + 1e-9
            values[sub] = f
    return InvariantTable(n, max_size, values)


def purity_from_invariants(table: InvariantTable, subset: Iterable[int]) -> float:
    """Marginal purity reconstructed from the invariant table alone.

    Requires the table to cover every non-empty subset of `subset`; raises
    ValueError on an incomplete table.
    """
    sub = check_subset(subset, table.n_qubits)
    k = len(sub)
    if k > table.max_size:
        raise ValueError(f"table covers subsets up to size {table.max_size}, asked for size {k}")
    total = 1.0
    for size in range(1, k + 1):
        for inner in itertools.combinations(sub, size):
            if inner not in table.values:
                raise ValueError(f"invariant table is missing subset {inner}")
            total += table.values[inner]
    return total / (1 << k)
