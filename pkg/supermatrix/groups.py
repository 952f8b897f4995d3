"""
Invariant tensors and (super)group membership predicates.

SL2/SU2 act on ordinary qubits, OSp(2|1)/uOSp(2|1) on (2|1) superqubits.
Group membership is form preservation: Mᵀ E_sl M = E_sl and
M^sT E_osp M = E_osp.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np

from core.config import get_config
from core.errors import FormatError, ParityError
from core.types import GroupName, Parity
from grassmann import GrassmannElement
from supermatrix.matrix import (
    SuperFormat,
    SuperMatrix,
    require_valid,
    sm_body_array,
    sm_residual,
    sm_superadjoint,
    sm_supertranspose,
)

logger = logging.getLogger(__name__)

QUBIT_FORMAT = SuperFormat(2, 0)
SUPERQUBIT_FORMAT = SuperFormat(2, 1)

E_SL_BODY = np.array([[0.0, 1.0], [-1.0, 0.0]])


@dataclass(frozen=True)
class InvariantTensor:
    """E_sl on (2|0) or its orthosymplectic extension E_osp on (2|1)."""

    kind: Literal["E_sl", "E_osp"]
    matrix: SuperMatrix


def e_sl(n: int = 0) -> InvariantTensor:
    return InvariantTensor(
        "E_sl", SuperMatrix.from_rows(2, 0, E_SL_BODY.tolist(), n)
    )


def e_osp(n: int = 0) -> InvariantTensor:
    rows = [[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]
    return InvariantTensor("E_osp", SuperMatrix.from_rows(2, 1, rows, n))


def osp_algebra_element(
    a: Sequence[Sequence[GrassmannElement]],
    c: Sequence[GrassmannElement],
    n: int,
) -> SuperMatrix:
    """General solution K of K^sT E_osp + E_osp K = 0.

    The even 2×2 block is made traceless, the odd row c fixes B = E_sl cᵀ
    and the odd-odd entry vanishes.
    """
    half_trace = (a[0][0] + a[1][1]) * 0.5
    zero = GrassmannElement.zero(n)
    for value in c:
        if not value.has_parity(Parity.ODD):
            raise ParityError("The odd row of an osp element must be odd")
    rows = [
        [a[0][0] - half_trace, a[0][1], c[1]],
        [a[1][0], a[1][1] - half_trace, -c[0]],
        [c[0], c[1], zero],
    ]
    return SuperMatrix.from_rows(2, 1, rows, n)


class GroupCheck(NamedTuple):
    member: bool
    residual: float


def _qubit_body(m: SuperMatrix) -> np.ndarray:
    if m.format != QUBIT_FORMAT or not m.is_body_only:
        raise FormatError(
            f"{QUBIT_FORMAT} body-only matrix expected, got {m.format}"
        )
    return sm_body_array(m)


def _osp_residual(m: SuperMatrix) -> float:
    if m.format != SUPERQUBIT_FORMAT or m.parity != Parity.EVEN:
        raise FormatError(
            f"deg-0 {SUPERQUBIT_FORMAT} matrix expected, got {m.format} "
            f"deg {int(m.parity)}"
        )
    require_valid(m, "orthosymplectic check")
    form = e_osp(m.n).matrix
    return sm_residual(sm_supertranspose(m) @ form @ m, form)


def sm_group_check(
    m: SuperMatrix, group: GroupName | str, tol: float | None = None
) -> GroupCheck:
    """Membership predicate with its residual.

    Args:
        m: candidate group element.
        group: SL2, SU2, OSP21 or UOSP21.
        tol: acceptance threshold on the residual (configured default).

    Returns:
        GroupCheck(member, residual).
    """
    group = GroupName(group)
    tol = get_config().default_tolerance if tol is None else tol

    if group in (GroupName.SL2, GroupName.SU2):
        body = _qubit_body(m)
        residual = abs(np.linalg.det(body) - 1.0)
        if group == GroupName.SU2:
            unitary = np.abs(body.conj().T @ body - np.eye(2)).max()
            residual = max(residual, float(unitary))
    else:
        residual = _osp_residual(m)
        if group == GroupName.UOSP21:
            identity = SuperMatrix.identity(m.format, m.n)
            residual = max(
                residual, sm_residual(sm_superadjoint(m) @ m, identity)
            )

    residual = float(residual)
    logger.debug(f"{group.value} residual {residual:.3e}")
    return GroupCheck(member=residual <= tol, residual=residual)
