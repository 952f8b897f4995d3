"""
Graded operators on (r|s) spaces, their superadjoints and density
supermatrices.
"""

import logging
from dataclasses import dataclass

from core.errors import FormatError, ParityError
from core.types import AdjointConvention, Parity
from grassmann import GrassmannElement
from supermatrix import (
    SuperFormat,
    SuperMatrix,
    sm_superadjoint,
    sm_validate,
)
from superstate.states import SpaceFormat, SuperKet, st_dual, st_inner

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GradedOperator:
    """Homogeneous operator T given by its supermatrix; π_T = deg T."""

    matrix: SuperMatrix

    def __post_init__(self) -> None:
        report = sm_validate(self.matrix)
        if not report.ok:
            raise ParityError(
                f"Operator matrix breaks its parity layout: {report.describe()}"
            )

    @property
    def parity(self) -> Parity:
        return self.matrix.parity

    @property
    def space(self) -> SpaceFormat:
        return SpaceFormat(self.matrix.format.p, self.matrix.format.q)

    def compose(self, other: "GradedOperator") -> "GradedOperator":
        """self ∘ other; degrees add."""
        return GradedOperator(self.matrix @ other.matrix)

    def adjoint(
        self,
        convention: AdjointConvention = AdjointConvention.INVERSE_SUPERTRANSPOSE,
    ) -> "GradedOperator":
        return GradedOperator(sm_superadjoint(self.matrix, convention))


def st_apply(op: GradedOperator, psi: SuperKet) -> SuperKet:
    """(Tψ)_I = Σ_J T_IJ ψ_J; parity π_ψ ⊞ π_T."""
    fmt = op.matrix.format
    if (fmt.p, fmt.q) != (psi.format.r, psi.format.s):
        raise FormatError(
            f"Operator format {fmt} does not act on space {psi.format}"
        )
    if op.matrix.n != psi.n:
        raise FormatError(
            f"Algebra mismatch: algebra_n {op.matrix.n} vs {psi.n}"
        )
    coords = psi.coords
    image = []
    for row in op.matrix.entries:
        total = GrassmannElement.zero(psi.n)
        for entry, value in zip(row, coords, strict=True):
            total = total + entry * value
        image.append(total)
    return SuperKet.from_coords(
        psi.format, psi.parity.plus(op.parity), image, psi.n
    )


def st_superadjoint_check(
    op: GradedOperator,
    phi: SuperKet,
    psi: SuperKet,
    convention: AdjointConvention = AdjointConvention.INVERSE_SUPERTRANSPOSE,
) -> float:
    """‖⟨Tφ‖ψ⟩ − (−1)^{π_φ π_T}⟨φ‖T^‡ψ⟩‖_R."""
    phi.require_homogeneous("adjoint check")
    psi.require_homogeneous("adjoint check")
    lhs = st_inner(st_apply(op, phi), psi)
    rhs = st_inner(phi, st_apply(op.adjoint(convention), psi))
    if phi.parity and op.parity:
        rhs = -rhs
    return (lhs - rhs).norm_r()


def adjoint_matrix_element_residual(
    op: GradedOperator,
    phi: SuperKet,
    psi: SuperKet,
    convention: AdjointConvention = AdjointConvention.INVERSE_SUPERTRANSPOSE,
) -> float:
    """‖⟨φ‖T^‡‖ψ⟩ − ε·⟨ψ‖T‖φ⟩^♯‖_R with the graded sign ε."""
    a, b, t = int(phi.parity), int(psi.parity), int(op.parity)
    lhs = st_inner(phi, st_apply(op.adjoint(convention), psi))
    rhs = st_inner(psi, st_apply(op, phi)).superstar()
    if (a * b + b + (a + b) * t) % 2:
        rhs = -rhs
    return (lhs - rhs).norm_r()


def st_outer(psi: SuperKet) -> SuperMatrix:
    """Density supermatrix ρ_rc = ψ_c β_r with β the dual coordinates.

    For an even (2|1) superqubit the odd row comes out negated, and
    str ρ = (−1)^π ⟨ψ‖ψ⟩.
    """
    dual = st_dual(psi).coords
    coords = psi.coords
    rows = [[value * dual[r] for value in coords] for r in range(len(coords))]
    return SuperMatrix(
        SuperFormat(psi.format.r, psi.format.s),
        Parity.EVEN,
        tuple(map(tuple, rows)),
        psi.n,
    )
