"""
Separability witnesses and two-party entanglement measures.

Ordinary qubit pairs use f = det x_ij. Two-superqubit tables use the
graded witnesses

    f0 = det(x_ij x22 + æ_i2 æ_2j)     (even tables)
    f1 = det(æ_ij æ22 − x_i2 x_2j)     (odd tables)

with i, j ∈ {0, 1}. Every entry is even, so the determinants are evaluated
exactly over the commutative even subalgebra.
"""

import logging
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from core.config import get_config
from core.errors import (
    FormatError,
    NoninvertibleError,
    NotNormalizedError,
    ParityError,
    UndefinedTangleError,
)
from core.types import Parity, TableKind
from entangle.multistate import TwoPartyTable
from grassmann import GrassmannElement
from supermatrix import SuperMatrix, sm_berezinian, sm_det_even

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# Witnesses
# ----------------------------------------------------------------------


def witness_f(t: TwoPartyTable) -> GrassmannElement:
    """f, f0 or f1 depending on the table kind."""
    y = t.element
    if t.kind == TableKind.QUBIT:
        rows = [[y(i, j) for j in range(2)] for i in range(2)]
    elif t.kind == TableKind.SUPER_EVEN:
        rows = [
            [y(i, j) * y(2, 2) + y(i, 2) * y(2, j) for j in range(2)]
            for i in range(2)
        ]
    else:
        rows = [
            [y(i, j) * y(2, 2) - y(i, 2) * y(2, j) for j in range(2)]
            for i in range(2)
        ]
    return sm_det_even(rows)


def _max_minor(body: np.ndarray) -> float:
    rows, cols = body.shape
    largest = 0.0
    for r0, r1 in combinations(range(rows), 2):
        for c0, c1 in combinations(range(cols), 2):
            minor = body[r0, c0] * body[r1, c1] - body[r0, c1] * body[r1, c0]
            largest = max(largest, abs(minor))
    return largest


@dataclass(frozen=True)
class SeparabilityVerdict:
    """Outcome of the separability test.

    For super tables the verdict only checks necessary conditions: the
    witness vanishes and the body table has rank at most one.
    """

    separable: bool
    max_minor: float
    witness_norm: float
    necessary_only: bool

    @property
    def method(self) -> str:
        return "witness+body-rank" if self.necessary_only else "rank-1"


def is_separable(t: TwoPartyTable, tol: float | None = None) -> SeparabilityVerdict:
    tol = get_config().default_tolerance if tol is None else tol
    max_minor = _max_minor(t.body_array())
    witness_norm = witness_f(t).norm_r()
    if t.kind == TableKind.QUBIT:
        return SeparabilityVerdict(
            separable=max_minor <= tol,
            max_minor=max_minor,
            witness_norm=witness_norm,
            necessary_only=False,
        )
    separable = max_minor <= tol and witness_norm <= tol
    logger.debug(
        f"Separability of {t.kind.value} table: minor {max_minor:.3e}, "
        f"witness {witness_norm:.3e}"
    )
    return SeparabilityVerdict(
        separable=separable,
        max_minor=max_minor,
        witness_norm=witness_norm,
        necessary_only=True,
    )


# ----------------------------------------------------------------------
# Ordinary measures
# ----------------------------------------------------------------------


def _qubit_amplitudes(t: TwoPartyTable | np.ndarray, force: bool) -> np.ndarray:
    if isinstance(t, TwoPartyTable):
        if t.kind != TableKind.QUBIT:
            raise FormatError(
                f"Concurrence needs a qubit table, got {t.kind.value}; use "
                "superconcurrence for super tables"
            )
        x = t.body_array()
    else:
        x = np.asarray(t, dtype=complex)
        if x.shape != (2, 2):
            raise FormatError(f"Concurrence needs a 2×2 table, got {x.shape}")
    deviation = abs(float(np.sum(np.abs(x) ** 2)) - 1.0)
    if deviation > get_config().normalization_tolerance:
        if not force:
            raise NotNormalizedError(
                f"Two-qubit amplitudes must satisfy Σ|x_ij|² = 1 (off by "
                f"{deviation:.3e})"
            )
        logger.warning(f"Measuring an unnormalized state (off by {deviation:.3e})")
    return x


def _qubit_det(x: np.ndarray) -> complex:
    return complex(x[0, 0] * x[1, 1] - x[0, 1] * x[1, 0])


def concurrence(t: TwoPartyTable | np.ndarray, force: bool = False) -> float:
    """C = 2|det x_ij| for a normalized pair of qubits."""
    f = abs(_qubit_det(_qubit_amplitudes(t, force)))
    return 2 * f


def tangle(t: TwoPartyTable | np.ndarray, force: bool = False) -> float:
    """τ = 4 f f̄; equal to the squared concurrence."""
    f = abs(_qubit_det(_qubit_amplitudes(t, force)))
    return 4 * f * f


# ----------------------------------------------------------------------
# Super measures
# ----------------------------------------------------------------------


def _require_super(t: TwoPartyTable, parity: Parity | int | None) -> Parity:
    if t.kind == TableKind.QUBIT:
        raise FormatError("Super measures need a two-superqubit table")
    if parity is not None and Parity(parity) != t.parity:
        raise ParityError(
            f"Requested the parity-{int(parity)} measure on a "
            f"{t.kind.value} table"
        )
    return t.parity


def superconcurrence(
    t: TwoPartyTable, parity: Parity | int | None = None
) -> float:
    """2‖f0‖_R or 2‖f1‖_R."""
    _require_super(t, parity)
    return 2 * witness_f(t).norm_r()


@dataclass(frozen=True)
class SupertangleResult:
    """Both sides of τ·c = 4 f f^♯ and the solved τ when it exists."""

    parity: Parity
    value: GrassmannElement | None
    coefficient: GrassmannElement
    rhs: GrassmannElement
    implicit_only: bool

    def residual(self, tau: GrassmannElement | None = None) -> float:
        tau = self.value if tau is None else tau
        if tau is None:
            raise ValueError("No supertangle value to check")
        return (tau * self.coefficient - self.rhs).norm_r()

    @property
    def consistent(self) -> bool:
        """The relation is solvable only if the right side has no body."""
        if not self.implicit_only:
            return True
        return abs(self.rhs.body) <= get_config().default_tolerance


def supertangle(
    t: TwoPartyTable, parity: Parity | int | None = None
) -> SupertangleResult:
    """Even: τ0 = 4 f0 f0^♯ / (x22 x22^♯). Odd: implicit relation only."""
    parity = _require_super(t, parity)
    f = witness_f(t)
    y22 = t.element(2, 2)
    coefficient = y22 * y22.superstar()
    rhs = f * f.superstar() * 4

    if parity == Parity.ODD:
        logger.info("Odd supertangle reported as an implicit relation only")
        return SupertangleResult(parity, None, coefficient, rhs, implicit_only=True)

    if not coefficient.is_invertible:
        raise UndefinedTangleError(
            "Even supertangle needs invertible x22 x22^♯ (zero body)",
            coefficient=coefficient,
            rhs=rhs,
        )
    value = rhs * coefficient.inverse()
    return SupertangleResult(parity, value, coefficient, rhs, implicit_only=False)


@dataclass(frozen=True)
class BerezinianComparison:
    """Ber of an even table read as a (2|1) supermatrix next to f0."""

    berezinian: GrassmannElement
    scaled: GrassmannElement
    witness: GrassmannElement
    superconcurrence: float
    supertangle: GrassmannElement

    @property
    def gap(self) -> float:
        """‖Ber · x22³ − f0‖_R."""
        return (self.scaled - self.witness).norm_r()


def berezinian_comparison(t: TwoPartyTable) -> BerezinianComparison:
    """Informational comparison; nothing is asserted about the gap."""
    if t.kind != TableKind.SUPER_EVEN:
        raise ParityError("Berezinian comparison needs an even two-superqubit table")
    matrix = SuperMatrix.from_rows(
        2,
        1,
        [[t.element(j, k) for k in range(3)] for j in range(3)],
        t.n,
        Parity.EVEN,
    )
    try:
        ber = sm_berezinian(matrix)
    except NoninvertibleError as exc:
        raise NoninvertibleError(
            "Berezinian comparison needs invertible x22"
        ) from exc
    witness = witness_f(t)
    comparison = BerezinianComparison(
        berezinian=ber,
        scaled=ber * t.element(2, 2) ** 3,
        witness=witness,
        superconcurrence=2 * witness.norm_r(),
        supertangle=supertangle(t).value,
    )
    logger.info(
        f"Ber·x22³ vs f0: gap {comparison.gap:.3e}, "
        f"C0 {comparison.superconcurrence:.6g}"
    )
    return comparison
