"""
sdTr: the determinant-like functional on (2|1) supermatrices.

The template ½·str((M E_osp)^sT (M E_osp)) admits several sign and ordering
arrangements. ``calibrate_sdtr`` evaluates all of them against two oracles:
on body-only matrices diag(M₂, 0) the value must equal det M₂, and on outer
products of two even superqubit coordinate vectors it must vanish. The
surviving arrangement is pinned in the calibration file and used by
``sm_sdtr`` by default.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from core.config import get_config
from core.errors import CalibrationError, FormatError, ParityError
from core.types import Parity, SdtrArrangement
from grassmann import GrassmannElement
from grassmann.sampling import random_element
from supermatrix.groups import SUPERQUBIT_FORMAT, e_osp
from supermatrix.matrix import (
    SuperMatrix,
    require_valid,
    sm_supertrace,
    sm_supertranspose,
)

logger = logging.getLogger(__name__)

CALIBRATION_ALGEBRA_N = 4


def _product_transpose(m: SuperMatrix, form: SuperMatrix) -> SuperMatrix:
    shifted = m @ form
    return sm_supertranspose(shifted) @ shifted


def _form_sandwich(m: SuperMatrix, form: SuperMatrix) -> SuperMatrix:
    return (form @ sm_supertranspose(m)) @ (form @ m)


def _form_chain(m: SuperMatrix, form: SuperMatrix) -> SuperMatrix:
    return ((form @ sm_supertranspose(m)) @ form) @ m


ARRANGEMENTS: dict[
    SdtrArrangement, tuple[Callable[[SuperMatrix, SuperMatrix], SuperMatrix], float]
] = {
    SdtrArrangement.PRODUCT_TRANSPOSE_POS: (_product_transpose, 0.5),
    SdtrArrangement.PRODUCT_TRANSPOSE_NEG: (_product_transpose, -0.5),
    SdtrArrangement.FORM_SANDWICH_POS: (_form_sandwich, 0.5),
    SdtrArrangement.FORM_SANDWICH_NEG: (_form_sandwich, -0.5),
    SdtrArrangement.FORM_CHAIN_POS: (_form_chain, 0.5),
    SdtrArrangement.FORM_CHAIN_NEG: (_form_chain, -0.5),
}


def _resolve(calibration: SdtrArrangement | str | None) -> SdtrArrangement:
    if calibration is None:
        calibration = get_config().sdtr_arrangement
        if calibration is None:
            raise CalibrationError(
                "sdTr arrangement is not calibrated; run calibrate-sdtr"
            )
    try:
        return SdtrArrangement(calibration)
    except ValueError as exc:
        raise CalibrationError(
            f"Unknown sdTr arrangement id {calibration!r}"
        ) from exc


def evaluate_arrangement(
    m: SuperMatrix, arrangement: SdtrArrangement
) -> GrassmannElement:
    build, factor = ARRANGEMENTS[arrangement]
    return sm_supertrace(build(m, e_osp(m.n).matrix)) * factor


def sm_sdtr(
    m: SuperMatrix, calibration: SdtrArrangement | str | None = None
) -> GrassmannElement:
    """sdTr M under the given (or pinned) arrangement."""
    if m.format != SUPERQUBIT_FORMAT:
        raise FormatError(f"sdTr needs a (2|1) matrix, got {m.format}")
    if m.parity != Parity.EVEN:
        raise ParityError("sdTr needs a deg-0 matrix")
    require_valid(m, "sdTr")
    return evaluate_arrangement(m, _resolve(calibration))


# ----------------------------------------------------------------------
# Calibration
# ----------------------------------------------------------------------


def embedded_body(body: np.ndarray, n: int) -> SuperMatrix:
    """diag(M₂, 0) as a (2|1) deg-0 matrix."""
    rows = [
        [complex(body[0][0]), complex(body[0][1]), 0.0],
        [complex(body[1][0]), complex(body[1][1]), 0.0],
        [0.0, 0.0, 0.0],
    ]
    return SuperMatrix.from_rows(2, 1, rows, n)


def outer_product_matrix(
    u: list[GrassmannElement], v: list[GrassmannElement]
) -> SuperMatrix:
    """M_rc = u_r v_c for two even (2|1) coordinate vectors."""
    return SuperMatrix.from_rows(
        2, 1, [[a * b for b in v] for a in u], u[0].n
    )


def random_superqubit_coordinates(
    rng: np.random.Generator, n: int
) -> list[GrassmannElement]:
    return [
        random_element(rng, n, Parity.EVEN, terms=2),
        random_element(rng, n, Parity.EVEN, terms=2),
        random_element(rng, n, Parity.ODD, terms=2),
    ]


@dataclass
class CalibrationResult:
    """Pinned arrangement plus the per-candidate evidence table."""

    arrangement: SdtrArrangement
    survivors: list[SdtrArrangement]
    evidence: list[dict] = field(default_factory=list)


def calibrate_sdtr(
    seed: int = 0, tol: float | None = None, samples: int = 100
) -> CalibrationResult:
    """Run both oracles over every candidate arrangement.

    Args:
        seed: numpy seed for the sample matrices.
        tol: residual tolerance for both oracles.
        samples: matrices per oracle.

    Returns:
        The surviving arrangement class (first member pinned).

    Raises:
        CalibrationError: zero survivors or more than one class.
        A tolerance of 0 or less always leaves no survivors.
    """
    tol = get_config().default_tolerance if tol is None else tol
    if tol <= 0:
        logger.warning(
            f"Calibration tolerance {tol} is below float round-off; "
            "no arrangement can survive"
        )
    rng = np.random.default_rng(seed)
    n = CALIBRATION_ALGEBRA_N

    det_cases = []
    for _ in range(samples):
        body = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        det_cases.append((embedded_body(body, n), complex(np.linalg.det(body))))
    outer_cases = [
        outer_product_matrix(
            random_superqubit_coordinates(rng, n),
            random_superqubit_coordinates(rng, n),
        )
        for _ in range(samples)
    ]

    values: dict[SdtrArrangement, list[GrassmannElement]] = {}
    evidence = []
    for arrangement in SdtrArrangement:
        det_values = [evaluate_arrangement(m, arrangement) for m, _ in det_cases]
        outer_values = [evaluate_arrangement(m, arrangement) for m in outer_cases]
        det_residual = max(
            (value - target).norm_r()
            for value, (_, target) in zip(det_values, det_cases, strict=True)
        )
        outer_residual = max(value.norm_r() for value in outer_values)
        survived = 0 < tol and det_residual <= tol and outer_residual <= tol
        values[arrangement] = det_values + outer_values
        evidence.append(
            {
                "arrangement": arrangement.value,
                "det_residual": det_residual,
                "outer_residual": outer_residual,
                "survived": survived,
            }
        )
        logger.debug(
            f"sdTr candidate {arrangement.value}: det residual "
            f"{det_residual:.3e}, outer residual {outer_residual:.3e}"
        )

    survivors = [
        SdtrArrangement(row["arrangement"]) for row in evidence if row["survived"]
    ]
    if not survivors:
        raise CalibrationError(
            f"No sdTr arrangement survived at tolerance {tol}", evidence
        )
    classes: list[list[SdtrArrangement]] = []
    for arrangement in survivors:
        for group in classes:
            reference = values[group[0]]
            if all(
                (a - b).norm_r() <= tol
                for a, b in zip(values[arrangement], reference, strict=True)
            ):
                group.append(arrangement)
                break
        else:
            classes.append([arrangement])
    if len(classes) > 1:
        raise CalibrationError(
            f"{len(classes)} non-equivalent sdTr arrangements survived", evidence
        )

    pinned = classes[0][0]
    logger.info(f"sdTr calibration pinned {pinned.value}")
    return CalibrationResult(
        arrangement=pinned, survivors=survivors, evidence=evidence
    )
