"""Catalog of named multi-qubit states with known purity properties.

Every entry is built from exact symbolic amplitudes (integers, signs, powers
of the cube root of unity over a common normalizer) and rendered to floating
amplitudes at construction, so golden-value tests stay exact to roundoff.

The 8-qubit entry exists in two forms: `zha8_printed` transcribes a published
64-term expansion written in qubit order (1,2,7,8),(3,4,5,6) and permutes it
to canonical order, while `zha8_constructed` applies the explicit 16x16 local
unitary U_2468 to a product of four Bell pairs.  The constructed state is the
source of truth whenever the two disagree; `construction_equivalence` reports
their overlap and any differing basis terms.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import criterion
from .states import PureState, make_state


class MalformedSourceError(ValueError):
    """A printed state cannot be realized as written (e.g. a short ket)."""


class RepairFailedError(RuntimeError):
    """No unique completion of a malformed printed term passes the oracle."""


class EntryStatus(enum.Enum):
    VERIFIED = "Verified"
    PRINTED_WITH_TYPO = "PrintedWithTypo"
    REPAIRED = "Repaired"


@dataclass(frozen=True)
class ExpectedValues:
    """Golden values an entry is checked against (exact where known)."""

    pi_me: Fraction | None = None
    k_paper: Fraction | None = None
    uniformity: int | None = None
    sigma_me: Fraction | None = None
    verdict: criterion.Verdict | None = None


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    state: PureState
    expected: ExpectedValues
    status: EntryStatus
    source: str
    note: str = ""


@dataclass(frozen=True)
class LocalUnitary:
    """k-qubit unitary with the qubit ordering its rows/columns assume.

    Basis labels are |q_t1 q_t2 ... q_tk> with targets[0] the most
    significant bit.
    """

    matrix: np.ndarray
    targets: tuple[int, ...]

    @property
    def arity(self) -> int:
        return len(self.targets)

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"unitary must be square, got shape {mat.shape}")
        if mat.shape[0] != 1 << len(self.targets):
            raise ValueError(
                f"matrix dimension {mat.shape[0]} does not match {len(self.targets)} targets"
            )
        dev = np.max(np.abs(mat.conj().T @ mat - np.eye(mat.shape[0])))
        if dev > 1e-12:
            raise ValueError(f"matrix is not unitary: max |U^H U - I| = {dev:.3e}")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)


def _state_from_terms(n: int, terms: dict[str, complex]) -> PureState:
    """Build a normalized state from {bitstring: coefficient} terms."""
    amps = np.zeros(1 << n, dtype=np.complex128)
    for bits, coef in terms.items():
        if len(bits) != n or set(bits) - {"0", "1"}:
            raise MalformedSourceError(
                f"ket |{bits}> has {len(bits)} bits, expected {n}"
            )
        amps[int(bits, 2)] += coef
    return make_state(n, amps, normalize=True)


def bell2() -> PureState:
    return _state_from_terms(2, {"00": 1, "11": 1})


def ghz(n: int) -> PureState:
    return _state_from_terms(n, {"0" * n: 1, "1" * n: 1})


def product(n: int) -> PureState:
    return _state_from_terms(n, {"0" * n: 1})


def hs4() -> PureState:
    """Four-qubit state with third-root-of-unity phases and pi_ME = 1/3."""
    w = cmath.exp(2j * math.pi / 3)
    return _state_from_terms(
        4,
        {"0011": 1, "1100": 1, "0101": w, "1010": w, "0110": w * w, "1001": w * w},
    )


def yc4() -> PureState:
    """Four-qubit state used for teleportation/dense coding; pi_ME = 1/3."""
    return _state_from_terms(
        4,
        {
            "0000": 1, "0011": -1, "0101": -1, "0110": 1,
            "1001": 1, "1010": 1, "1100": 1, "1111": 1,
        },
    )


def brown5() -> PureState:
    """Five-qubit state with all 1- and 2-qubit marginals completely mixed."""
    terms: dict[str, complex] = {}
    pairs = {
        "001": [("01", 1), ("10", -1)],  # phi-
        "010": [("00", 1), ("11", -1)],  # psi-
        "100": [("01", 1), ("10", 1)],   # phi+
        "111": [("00", 1), ("11", 1)],   # psi+
    }
    for head, tail in pairs.items():
        for bits, sign in tail:
            terms[head + bits] = sign
    return _state_from_terms(5, terms)


# Printed 16-term expansion of the six-qubit entry; the fourth term appears
# with a 5-bit ket in the source and cannot be realized as written.
_BORRAS6_TERMS: tuple[tuple[str, int], ...] = (
    ("000000", 1), ("111000", 1), ("001001", -1), ("11000", 1),
    ("011010", 1), ("100010", -1), ("010011", -1), ("101011", -1),
    ("010100", 1), ("101100", -1), ("011101", 1), ("100101", 1),
    ("001110", 1), ("110110", 1), ("000111", 1), ("111111", -1),
)


def bellprod8() -> PureState:
    """Product of four Bell pairs on qubit pairs (1,2), (3,4), (5,6), (7,8)."""
    bell = bell2().amplitudes
    amps = bell
    for _ in range(3):
        amps = np.kron(amps, bell)
    return make_state(8, amps)


# 16x16 local unitary on qubits (2,4,6,8) mapping four Bell pairs to the
# 8-qubit minimizer; overall factor 1/2, basis |q2 q4 q6 q8> with qubit 2
# as the most significant bit.
_U2468_ROWS = np.array(
    [
        [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0],
        [0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 1],
        [0, 0, 1, 0, -1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, -1],
        [1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, -1, 0, 0, -1, 0],
        [0, 0, 0, 0, 0, 0, 1, 1, 0, 0, -1, 0, -1, 0, 0, 0],
        [0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0],
        [0, -1, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, -1, 0, 0, -1, 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 0, 1, 0, 0, 0],
        [0, -1, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0],
        [0, 1, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, -1, 0, 0, 1, 0, -1, 0, 0, 0],
        [1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0],
        [0, 0, 1, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1],
        [0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -1],
        [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0],
    ],
    dtype=np.complex128,
)


def u2468() -> LocalUnitary:
    """The explicit 16x16 local unitary acting on qubits 2, 4, 6, 8."""
    return LocalUnitary(_U2468_ROWS / 2.0, (2, 4, 6, 8))


def apply_local_unitary(state: PureState, targets: Sequence[int], u: LocalUnitary) -> PureState:
    """Apply a k-qubit unitary to the given target qubits.

    `targets` are distinct labels in [1, n]; their order fixes which tensor
    slot of the unitary acts on which qubit (targets[0] = most significant).
    """
    n = state.n_qubits
    targets = tuple(int(t) for t in targets)
    if len(targets) != u.arity:
        raise ValueError(f"unitary acts on {u.arity} qubits, got {len(targets)} targets")
    if len(set(targets)) != len(targets):
        raise ValueError(f"target labels must be distinct, got {targets}")
    for t in targets:
        if not 1 <= t <= n:
            raise ValueError(f"qubit label {t} out of range [1, {n}]")
    axes = [t - 1 for t in targets]
    rest = [i for i in range(n) if i + 1 not in targets]
    order = axes + rest
    psi = state.amplitudes.reshape([2] * n).transpose(order).reshape(1 << len(targets), -1)
    psi = u.matrix @ psi
    inverse = np.argsort(order)
    out = psi.reshape([2] * n).transpose(inverse).reshape(-1)
    return make_state(n, out)


def reorder_qubits(state: PureState, permutation: Sequence[int]) -> PureState:
    """Relabel qubits: input qubit i becomes output qubit permutation[i-1].

    The permutation must be a bijection on [1, n].  Purity profiles permute
    accordingly; the averaged purity is unchanged.
    """
    n = state.n_qubits
    perm = tuple(int(p) for p in permutation)
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"permutation must be a bijection on [1, {n}], got {perm}")
    # Output axis perm[i]-1 receives input axis i.
    inverse = [0] * n
    for i, p in enumerate(perm):
        inverse[p - 1] = i
    out = state.amplitudes.reshape([2] * n).transpose(inverse).reshape(-1)
    return make_state(n, out)


# The printed 64-term 8-qubit expansion, written as four products of a
# (1,2,7,8)-group ket and a (3,4,5,6)-group ket, all with amplitude +-1/8.
_ZHA8_LINES: tuple[tuple[tuple[tuple[str, int], ...], tuple[tuple[str, int], ...]], ...] = (
    (
        (("0000", 1), ("0011", 1), ("1101", -1), ("1110", 1)),
        (("0000", 1), ("0111", 1), ("1001", -1), ("1110", 1)),
    ),
    (
        (("0001", -1), ("0010", 1), ("1100", 1), ("1111", 1)),
        (("0001", 1), ("0110", 1), ("1000", 1), ("1111", -1)),
    ),
    (
        (("0100", 1), ("0111", -1), ("1001", 1), ("1010", 1)),
        (("0011", -1), ("0100", 1), ("1010", 1), ("1101", 1)),
    ),
    (
        (("0101", 1), ("0110", 1), ("1000", 1), ("1011", -1)),
        (("0010", -1), ("0101", 1), ("1011", -1), ("1100", -1)),
    ),
)

_ZHA8_QUBIT_ORDER = (1, 2, 7, 8, 3, 4, 5, 6)


def zha8_printed() -> PureState:
    """The printed 64-term expansion, permuted into canonical qubit order."""
    terms: dict[str, complex] = {}
    for left, right in _ZHA8_LINES:
        for lbits, lsign in left:
            for rbits, rsign in right:
                terms[lbits + rbits] = lsign * rsign
    raw = _state_from_terms(8, terms)
    return reorder_qubits(raw, _ZHA8_QUBIT_ORDER)


def zha8_constructed() -> PureState:
    """Image of four Bell pairs under U_2468: the authoritative 8-qubit entry."""
    return apply_local_unitary(bellprod8(), (2, 4, 6, 8), u2468())


@dataclass(frozen=True)
class EquivalenceReport:
    """Overlap between the constructed and printed 8-qubit states."""

    overlap: float  # |<constructed|printed>|, 1 means equal up to global phase
    differing_terms: tuple[tuple[str, complex, complex], ...]  # (bits, constructed, printed)


def construction_equivalence(atol: float = 1e-9) -> EquivalenceReport:
    """Compare the two 8-qubit forms term by term, after aligning global phase."""
    built = zha8_constructed().amplitudes
    printed = zha8_printed().amplitudes
    inner = np.vdot(built, printed)
    overlap = float(abs(inner))
    phase = inner / abs(inner) if abs(inner) > 0 else 1.0
    aligned = printed / phase
    diffs = []
    for i in range(built.size):
        if abs(built[i] - aligned[i]) > atol:
            diffs.append((format(i, "08b"), complex(built[i]), complex(aligned[i])))
    return EquivalenceReport(overlap, tuple(diffs))


def borras6_repair_candidates() -> list[str]:
    """All distinct single-bit completions of the malformed 5-bit ket."""
    short = next(bits for bits, _ in _BORRAS6_TERMS if len(bits) != 6)
    seen: list[str] = []
    for pos in range(len(short) + 1):
        for bit in "01":
            cand = short[:pos] + bit + short[pos:]
            if cand not in seen:
                seen.append(cand)
    return seen


def borras6_repaired(k_tol: float = 1e-10) -> CatalogEntry:
    """Repair the malformed six-qubit entry by its unique valid completion.

    A completion survives when the resulting 16-term state has unit norm
    (all kets distinct) and the invariant-weighted part of its purity
    decomposition vanishes.  Exactly one survivor is required.
    """
    fixed = [(bits, sign) for bits, sign in _BORRAS6_TERMS if len(bits) == 6]
    sign_missing = next(sign for bits, sign in _BORRAS6_TERMS if len(bits) != 6)
    used = {bits for bits, _ in fixed}
    survivors: list[tuple[str, PureState]] = []
    for cand in borras6_repair_candidates():
        if cand in used:
            continue  # collides with a printed term: norm cannot be 1
        amps = np.zeros(64, dtype=np.complex128)
        for bits, sign in fixed + [(cand, sign_missing)]:
            amps[int(bits, 2)] = sign / 4.0
        if abs(np.linalg.norm(amps) - 1.0) > 1e-12:
            continue
        state = make_state(6, amps)
        if abs(criterion.exact_K(state)) < k_tol:
            survivors.append((cand, state))
    if len(survivors) != 1:
        raise RepairFailedError(
            f"expected exactly one valid completion, found {len(survivors)}: "
            f"{[bits for bits, _ in survivors]}"
        )
    bits, state = survivors[0]
    return CatalogEntry(
        name="borras6_repaired",
        state=state,
        expected=ExpectedValues(
            pi_me=Fraction(1, 8),
            k_paper=Fraction(0),
            uniformity=3,
            sigma_me=Fraction(0),
            verdict=criterion.Verdict.MMES,
        ),
        status=EntryStatus.REPAIRED,
        source="six-qubit state of Borras, Plastino, Batle, Zander, Casas, Plastino (2007)",
        note=f"malformed ket completed to |{bits}>",
    )


_FIXED_EXPECTED: dict[str, ExpectedValues] = {
    "bell2": ExpectedValues(Fraction(1, 2), Fraction(0), 1, Fraction(0), criterion.Verdict.MMES),
    "ghz3": ExpectedValues(Fraction(1, 2), Fraction(0), 1, Fraction(0), criterion.Verdict.MMES),
    "hs4": ExpectedValues(Fraction(1, 3), Fraction(0), 1, None, criterion.Verdict.MMES),
    "yc4": ExpectedValues(Fraction(1, 3), Fraction(0), 1, None, criterion.Verdict.MMES),
    "brown5": ExpectedValues(Fraction(1, 4), Fraction(0), 2, Fraction(0), criterion.Verdict.MMES),
    "ghz8": ExpectedValues(Fraction(1, 2), Fraction(29, 70), 1, Fraction(0), criterion.Verdict.NOT_MMES),
    "product8": ExpectedValues(Fraction(1), Fraction(64, 70), 0, Fraction(0), criterion.Verdict.NOT_MMES),
    "bellprod8": ExpectedValues(Fraction(19, 70), Fraction(13, 70), 1, None, criterion.Verdict.NOT_MMES),
    "zha8_printed": ExpectedValues(Fraction(6, 70), Fraction(0), 3, None, criterion.Verdict.MMES),
    "zha8_constructed": ExpectedValues(Fraction(6, 70), Fraction(0), 3, None, criterion.Verdict.MMES),
}

_SOURCES: dict[str, str] = {
    "bell2": "two-qubit Bell state (|00> + |11>)/sqrt(2)",
    "hs4": "four-qubit state of Higuchi and Sudbery (2000)",
    "yc4": "four-qubit state of Yeo and Chua (2006)",
    "brown5": "five-qubit state of Brown, Stepney, Sudbery, Braunstein (2005)",
    "borras6_printed": "six-qubit state of Borras et al. (2007) as printed, one ket short a bit",
    "bellprod8": "product of four Bell pairs on (1,2)(3,4)(5,6)(7,8)",
    "zha8_printed": "printed 64-term expansion of the 8-qubit minimizer",
    "zha8_constructed": "U_2468 applied to four Bell pairs",
}

#: Names accepted by :func:`catalog_state`; ghz<n> and product<n> for 2 <= n <= 12.
CATALOG_NAMES = (
    "bell2",
    "ghz<n>",
    "product<n>",
    "hs4",
    "yc4",
    "brown5",
    "borras6_printed",
    "borras6_repaired",
    "bellprod8",
    "zha8_printed",
    "zha8_constructed",
)


def _ghz_expected(n: int) -> ExpectedValues:
    if n == 1:
        return ExpectedValues()
    verdict = None
    k_paper = None
    if n in criterion.SUPPORTED_N:
        verdict = (
            criterion.Verdict.MMES
            if Fraction(1, 2) == criterion.paper_constant_C(n)
            else criterion.Verdict.NOT_MMES
        )
    if n in (2, 3):
        k_paper = Fraction(0)
    if n == 8:
        k_paper = Fraction(29, 70)
    return ExpectedValues(Fraction(1, 2), k_paper, 1, Fraction(0), verdict)


def _product_expected(n: int) -> ExpectedValues:
    verdict = criterion.Verdict.NOT_MMES if n in criterion.SUPPORTED_N else None
    return ExpectedValues(Fraction(1), None, 0, Fraction(0), verdict) if n > 1 else ExpectedValues()


def catalog_state(name: str) -> CatalogEntry:
    """Look up a catalog entry by name.

    Raises KeyError for unknown names, MalformedSourceError for
    `borras6_printed` (the printed form cannot be normalized).
    """
    key = name.lower()
    if key == "borras6_printed":
        short = next(bits for bits, _ in _BORRAS6_TERMS if len(bits) != 6)
        raise MalformedSourceError(
            f"borras6_printed: ket |{short}> has {len(short)} bits in a 6-qubit state"
        )
    if key == "borras6_repaired":
        return borras6_repaired()

    builders = {
        "bell2": bell2,
        "hs4": hs4,
        "yc4": yc4,
        "brown5": brown5,
        "bellprod8": bellprod8,
        "zha8_printed": zha8_printed,
        "zha8_constructed": zha8_constructed,
    }
    if key in builders:
        return CatalogEntry(
            name=key,
            state=builders[key](),
            expected=_FIXED_EXPECTED.get(key, ExpectedValues()),
            status=EntryStatus.VERIFIED,
            source=_SOURCES.get(key, ""),
        )
    for prefix, builder, expected in (
        ("ghz", ghz, _ghz_expected),
        ("product", product, _product_expected),
    ):
        if key.startswith(prefix) and key[len(prefix):].isdigit():
            n = int(key[len(prefix):])
            if not 1 <= n <= 12:
                raise KeyError(f"{name}: qubit count out of range [1, 12]")
            return CatalogEntry(
                name=key,
                state=builder(n),
                expected=expected(n),
                status=EntryStatus.VERIFIED,
                source=f"{prefix} state on {n} qubits",
            )
    raise KeyError(f"unknown catalog state {name!r}")


#: Entries exercised by `mmes verify-catalog`, in display order.
VERIFY_LIST = (
    "bell2",
    "ghz3",
    "hs4",
    "yc4",
    "brown5",
    "borras6_printed",
    "borras6_repaired",
    "ghz8",
    "product8",
    "bellprod8",
    "zha8_printed",
    "zha8_constructed",
)
