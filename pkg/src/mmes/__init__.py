"""Maximally multi-qubit entangled states: purity criteria and search.

Core objects: dense pure states (:mod:`mmes.states`), Pauli/local-unitary
invariants (:mod:`mmes.invariants`), the constant-plus-invariants purity
decompositions and verdicts (:mod:`mmes.criterion`), a catalog of named
states (:mod:`mmes.catalog`), and numerical purity minimization
(:mod:`mmes.optimize`).  The `mmes` command line fronts all of it.
"""

from .states import (
    PureState,
    avg_subsystem_purity,
    haar_random_state,
    make_state,
    partial_trace,
    purity,
    purity_profile,
    subsystem_purity,
    uniformity_degree,
)
from .invariants import (
    InvariantTable,
    invariant_F,
    invariant_table,
    pauli_expectation,
    purity_from_invariants,
)
from .criterion import (
    CriterionReport,
    Verdict,
    exact_decomposition,
    formula_audit,
    mmes_verdict,
    paper_K,
    paper_constant_C,
)
from .catalog import (
    CatalogEntry,
    LocalUnitary,
    apply_local_unitary,
    catalog_state,
    reorder_qubits,
    u2468,
)
from .optimize import OptimizerConfig, minimize, sigma_me

__version__ = "0.1.0"

__all__ = [
    "PureState",
    "avg_subsystem_purity",
    "haar_random_state",
    "make_state",
    "partial_trace",
    "purity",
    "purity_profile",
    "subsystem_purity",
    "uniformity_degree",
    "InvariantTable",
    "invariant_F",
    "invariant_table",
    "pauli_expectation",
    "purity_from_invariants",
    "CriterionReport",
    "Verdict",
    "exact_decomposition",
    "formula_audit",
    "mmes_verdict",
    "paper_K",
    "paper_constant_C",
    "CatalogEntry",
    "LocalUnitary",
    "apply_local_unitary",
    "catalog_state",
    "reorder_qubits",
    "u2468",
    "OptimizerConfig",
    "minimize",
    "sigma_me",
]
