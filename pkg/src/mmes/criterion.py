"""Constant-plus-invariants decompositions of the average subsystem purity.

Two decompositions live side by side:

* the printed per-n formulas for n in {2, 3, 4, 5, 6, 8}, each of the form
  pi_ME = C + K with K a fixed combination of the invariants F_B and their
  complements I_B = 1 - F_B, evaluated verbatim, and
* an exact decomposition valid for every n >= 2,

      pi_ME = 2**-m + sum over non-empty B with |B| <= m of w_B * F_B,
      w_B = 2**-m * C(n - |B|, m - |B|) / C(n, m),   m = floor(n/2),

  obtained by substituting the Pauli-basis purity identity into the average.

The printed formulas for n in {3, 4, 8} regroup to the exact one; for
n in {2, 5, 6} their coefficients differ from it, and :func:`formula_audit`
quantifies the mismatch on any given state.  Verdicts therefore compare the
directly computed pi_ME against the constant C rather than testing K = 0.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .invariants import InvariantTable, invariant_table
from .states import (
    PureState,
    avg_subsystem_purity,
    half_size,
    purity_profile,
    uniformity_degree,
)


class FormulaUnavailableError(ValueError):
    """No closed-form constant C is known for this qubit count."""


# Lower bound C of the average subsystem purity, by qubit count.  No constant
# is known for n = 7 or n >= 9.
_PAPER_C: dict[int, Fraction] = {
    2: Fraction(1, 2),
    3: Fraction(1, 2),
    4: Fraction(1, 3),
    5: Fraction(1, 4),
    6: Fraction(1, 8),
    8: Fraction(6, 70),
}

SUPPORTED_N = tuple(sorted(_PAPER_C))


@dataclass(frozen=True)
class CriterionFormula:
    """One printed pi_ME = C + K formula, kept verbatim as term data.

    Each term is (subsets, coefficient, use_complement): the coefficient
    multiplies the sum of F_B (or of I_B = 1 - F_B) over the listed subsets.
    """

    n: int
    c: Fraction
    terms: tuple[tuple[tuple[tuple[int, ...], ...], Fraction, bool], ...]
    max_subset_size: int = field(init=False)

    def __post_init__(self):
        size = max(len(s) for subsets, _, _ in self.terms for s in subsets)
        object.__setattr__(self, "max_subset_size", size)

    def evaluate_k(self, table: InvariantTable) -> float:
        total = 0.0
        for subsets, coef, use_complement in self.terms:
            s = math.fsum(
                (1.0 - table[b]) if use_complement else table[b] for b in subsets
            )
            total += float(coef) * s
        return total


def _all_subsets(n: int, size: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.combinations(range(1, n + 1), size))


def _build_formulas() -> dict[int, CriterionFormula]:
    frac = Fraction
    formulas = {
        # K = F_1 (the single-qubit invariant of qubit 1 only, as printed).
        2: CriterionFormula(2, _PAPER_C[2], ((((1,),), frac(1), False),)),
        3: CriterionFormula(3, _PAPER_C[3], ((_all_subsets(3, 1), frac(1, 6), False),)),
        # K = K1 + K2 with K1 on F-singles and K2 on complements I.
        4: CriterionFormula(
            4,
            _PAPER_C[4],
            (
                (_all_subsets(4, 1), frac(1, 6), False),
                (_all_subsets(4, 1), frac(1, 24), True),
                (_all_subsets(4, 2), frac(-1, 24), True),
            ),
        ),
        # The printed pair list is read as all C(5,2) pairs.
        5: CriterionFormula(
            5,
            _PAPER_C[5],
            (
                (_all_subsets(5, 1), frac(1, 40), False),
                (_all_subsets(5, 2), frac(1, 40), False),
            ),
        ),
        6: CriterionFormula(
            6,
            _PAPER_C[6],
            (
                (_all_subsets(6, 1), frac(1, 100), False),
                (_all_subsets(6, 2), frac(1, 100), False),
                (_all_subsets(6, 3), frac(1, 100), False),
            ),
        ),
        8: CriterionFormula(
            8,
            _PAPER_C[8],
            (
                (_all_subsets(8, 1), frac(11, 280), False),
                (_all_subsets(8, 2), frac(1, 70), False),
                (_all_subsets(8, 3), frac(1, 280), False),
                (_all_subsets(8, 1), frac(9, 1120), True),
                (_all_subsets(8, 2), frac(1, 1120), True),
                (_all_subsets(8, 3), frac(-1, 1120), True),
                (_all_subsets(8, 4), frac(-1, 1120), True),
            ),
        ),
    }
    return formulas


FORMULAS: dict[int, CriterionFormula] = _build_formulas()


def paper_constant_C(n: int) -> Fraction:
    """Lower bound C of pi_ME for n in {2, 3, 4, 5, 6, 8}."""
    try:
        return _PAPER_C[n]
    except KeyError:
        raise FormulaUnavailableError(
            f"no closed-form lower bound C is known for n = {n}"
        ) from None


def paper_K(state: PureState, table: InvariantTable | None = None) -> float:
    """Evaluate the printed K formula verbatim on `state`."""
    n = state.n_qubits
    if n not in FORMULAS:
        raise FormulaUnavailableError(f"no printed K formula for n = {n}")
    formula = FORMULAS[n]
    if table is None:
        table = invariant_table(state, formula.max_subset_size)
    elif table.max_size < formula.max_subset_size:
        raise ValueError(
            f"table covers size {table.max_size}, formula needs {formula.max_subset_size}"
        )
    return formula.evaluate_k(table)


def decomposition_weight(n: int, subset_size: int) -> Fraction:
    """Exact weight w_B of F_B in the decomposition of pi_ME, by |B|."""
    m = half_size(n)
    if not 1 <= subset_size <= m:
        raise ValueError(f"subset size must be in [1, {m}], got {subset_size}")
    return Fraction(math.comb(n - subset_size, m - subset_size), (1 << m) * math.comb(n, m))


class ExactDecomposition(NamedTuple):
    pi_me: float
    weights: dict[tuple[int, ...], Fraction]
    residual: float


def exact_decomposition(state: PureState, table: InvariantTable | None = None) -> ExactDecomposition:
    """pi_ME reconstructed from invariants, with its residual against the
    directly computed average.

    Returns (reconstructed pi_ME, per-subset weights, |reconstructed - direct|).
    """
    n = state.n_qubits
    if n < 2:
        raise ValueError("decomposition needs at least 2 qubits")
    m = half_size(n)
    if table is None:
        table = invariant_table(state, m)
    weights = {
        sub: decomposition_weight(n, size)
        for size in range(1, m + 1)
        for sub in itertools.combinations(range(1, n + 1), size)
    }
    reconstructed = 2.0**-m + math.fsum(float(weights[s]) * table[s] for s in weights)
    direct = avg_subsystem_purity(state)
    return ExactDecomposition(reconstructed, weights, abs(reconstructed - direct))


def exact_K(state: PureState, table: InvariantTable | None = None) -> float:
    """The invariant-weighted part of the exact decomposition: pi_ME - 2**-floor(n/2)."""
    decomp = exact_decomposition(state, table)
    return decomp.pi_me - 2.0 ** -half_size(state.n_qubits)


@dataclass(frozen=True)
class AuditRecord:
    """Mismatch between a printed formula and the directly computed average."""

    n: int
    pi_me: float
    c_paper: Fraction
    k_paper: float
    delta: float  # (C + K_paper) - pi_ME; zero when the printed formula is exact


def formula_audit(state: PureState, table: InvariantTable | None = None) -> AuditRecord:
    """Compare C + K of the printed formula against the direct pi_ME."""
    n = state.n_qubits
    c = paper_constant_C(n)
    k = paper_K(state, table)
    pi_me = avg_subsystem_purity(state)
    return AuditRecord(n, pi_me, c, k, (float(c) + k) - pi_me)


class Verdict(enum.Enum):
    MMES = "MMES"
    NOT_MMES = "NotMMES"
    UNKNOWN_BOUND = "UnknownBound"


@dataclass(frozen=True)
class CriterionReport:
    """Full analysis of one state against the purity criterion."""

    n: int
    pi_me: float
    c_paper: Fraction | None
    k_paper: float | None
    k_exact: float
    decomposition_residual: float
    uniformity: int
    verdict: Verdict
    audit_delta: float | None
    sigma_me: float
    profile_summary: dict[int, dict[float, int]]


def _profile_summary(state: PureState, max_size: int) -> dict[int, dict[float, int]]:
    summary: dict[int, dict[float, int]] = {}
    for size in range(1, max_size + 1):
        counts: dict[float, int] = {}
        for _, p in purity_profile(state, size):
            key = round(p, 12)
            counts[key] = counts.get(key, 0) + 1
        summary[size] = dict(sorted(counts.items()))
    return summary


def mmes_verdict(state: PureState, tol: float = 1e-9) -> CriterionReport:
    """Classify `state` as MMES / NotMMES, or UnknownBound when no C is known.

    The verdict compares the directly computed pi_ME against C, so the
    printed-coefficient inconsistencies for n in {2, 5, 6} cannot affect it;
    K_paper is still reported for reference.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    n = state.n_qubits
    m = half_size(n)
    table = invariant_table(state, max(m, FORMULAS[n].max_subset_size) if n in FORMULAS else m)
    decomp = exact_decomposition(state, table)
    pi_me = avg_subsystem_purity(state)
    k_exact = decomp.pi_me - 2.0**-m

    if n in FORMULAS:
        c = _PAPER_C[n]
        k_paper = paper_K(state, table)
        delta = (float(c) + k_paper) - pi_me
        if abs(pi_me - float(c)) <= tol:
            verdict = Verdict.MMES
        elif pi_me > float(c) + tol:
            verdict = Verdict.NOT_MMES
        else:
            raise ArithmeticError(
                f"pi_ME = {pi_me!r} lies below the proven lower bound {c} for n = {n}"
            )
    else:
        c = None
        k_paper = None
        delta = None
        verdict = Verdict.UNKNOWN_BOUND

    profile = purity_profile(state, m)
    values = [p for _, p in profile]
    mean = math.fsum(values) / len(values)
    sigma = math.sqrt(math.fsum((v - mean) ** 2 for v in values) / len(values))

    return CriterionReport(
        n=n,
        pi_me=pi_me,
        c_paper=c,
        k_paper=k_paper,
        k_exact=k_exact,
        decomposition_residual=decomp.residual,
        uniformity=uniformity_degree(state, tol),
        verdict=verdict,
        audit_delta=delta,
        sigma_me=sigma,
        profile_summary=_profile_summary(state, m),
    )
