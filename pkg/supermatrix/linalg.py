"""
Determinant, inverse, Berezinian and series functions of supermatrices.

Body-level linear algebra goes through numpy; the Grassmann corrections are
finite because souls are nilpotent.
"""

import logging
from collections.abc import Sequence
from itertools import permutations

import numpy as np

from core.config import get_config
from core.errors import (
    FormatError,
    NoninvertibleError,
    NumericError,
    ParityError,
)
from core.types import Parity
from grassmann import GrassmannElement
from supermatrix.matrix import (
    SuperFormat,
    SuperMatrix,
    require_valid,
    sm_body_array,
    sm_norm,
    sm_split,
    sm_supertrace,
)

logger = logging.getLogger(__name__)

# Body matrices with a larger condition number count as singular
MAX_BODY_CONDITION = 1e12


def _permutation_sign(perm: Sequence[int]) -> int:
    inversions = sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )
    return -1 if inversions & 1 else 1


def sm_det_even(
    rows: SuperMatrix | Sequence[Sequence[GrassmannElement]],
) -> GrassmannElement:
    """Leibniz determinant over the commutative even subalgebra.

    Args:
        rows: square array of even elements, or a supermatrix whose
            entries are all even.

    Returns:
        The determinant as an even Grassmann element.
    """
    if isinstance(rows, SuperMatrix):
        rows = rows.entries
    size = len(rows)
    if size == 0 or any(len(row) != size for row in rows):
        raise FormatError("Determinant needs a non-empty square array")
    cap = get_config().det_size_cap
    if size > cap:
        raise FormatError(
            f"Determinant size {size} exceeds the configured cap {cap}"
        )
    n = rows[0][0].n
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            if not value.has_parity(Parity.EVEN):
                raise ParityError(
                    f"Determinant entry ({i},{j}) is not even; only the "
                    "even subalgebra commutes"
                )

    total = GrassmannElement.zero(n)
    for perm in permutations(range(size)):
        term = GrassmannElement.scalar(_permutation_sign(perm), n)
        for i, j in enumerate(perm):
            term = term * rows[i][j]
            if term.is_zero:
                break
        total = total + term
    return total


def _body_inverse(body: np.ndarray) -> np.ndarray:
    try:
        if np.linalg.cond(body) > MAX_BODY_CONDITION:
            raise np.linalg.LinAlgError("ill-conditioned body")
        return np.linalg.inv(body)
    except np.linalg.LinAlgError as exc:
        raise NoninvertibleError(
            f"Body matrix is singular or ill-conditioned: {exc}"
        ) from exc


def sm_inverse(m: SuperMatrix) -> SuperMatrix:
    """M⁻¹ = (I + M_b⁻¹M_s)⁻¹ M_b⁻¹ with a finite Neumann series."""
    if m.parity != Parity.EVEN:
        raise ParityError("Only deg-0 supermatrices are inverted")
    require_valid(m, "inverse")
    split = sm_split(m)
    body_inverse = SuperMatrix.from_body(
        m.format, _body_inverse(sm_body_array(split.body)), m.n
    )
    step = -(body_inverse @ split.soul)
    identity = SuperMatrix.identity(m.format, m.n)
    term = identity
    series = identity
    for _ in range(m.n):
        term = term @ step
        if sm_norm(term) == 0.0:
            break
        series = series + term
    return series @ body_inverse


def _sub_matrix(
    m: SuperMatrix, rows: range, columns: range
) -> list[list[GrassmannElement]]:
    return [[m.entries[i][j] for j in columns] for i in rows]


def _product(
    left: list[list[GrassmannElement]],
    right: list[list[GrassmannElement]],
    n: int,
) -> list[list[GrassmannElement]]:
    inner = len(right)
    return [
        [
            sum(
                (left[i][k] * right[k][j] for k in range(inner)),
                GrassmannElement.zero(n),
            )
            for j in range(len(right[0]))
        ]
        for i in range(len(left))
    ]


def sm_berezinian(m: SuperMatrix) -> GrassmannElement:
    """Ber M = det(A − B D⁻¹ C) · (det D)⁻¹ for deg-0 M."""
    if m.parity != Parity.EVEN:
        raise ParityError("Berezinian is defined for deg-0 supermatrices")
    require_valid(m, "Berezinian")
    p, q, n = m.format.p, m.format.q, m.n
    size = m.size
    if q == 0:
        return sm_det_even(m.entries)

    d_block = SuperMatrix(
        SuperFormat(q, 0),
        Parity.EVEN,
        tuple(tuple(row) for row in _sub_matrix(m, range(p, size), range(p, size))),
        n,
    )
    try:
        d_inverse = sm_inverse(d_block)
    except NoninvertibleError as exc:
        raise NoninvertibleError(
            "Berezinian is not defined for noninvertible D block"
        ) from exc
    d_det_inverse = sm_det_even(d_block.entries).inverse()
    if p == 0:
        return d_det_inverse

    a = _sub_matrix(m, range(p), range(p))
    b = _sub_matrix(m, range(p), range(p, size))
    c = _sub_matrix(m, range(p, size), range(p))
    correction = _product(
        _product(b, [list(row) for row in d_inverse.entries], n), c, n
    )
    schur = [
        [a[i][j] - correction[i][j] for j in range(p)] for i in range(p)
    ]
    return sm_det_even(schur) * d_det_inverse


def sm_exp(m: SuperMatrix, term_cap: int | None = None) -> SuperMatrix:
    """Σ M^k / k! with term-norm stopping."""
    if m.parity != Parity.EVEN:
        raise ParityError("Exponential is defined for deg-0 supermatrices")
    require_valid(m, "exponential")
    config = get_config()
    cap = term_cap or config.exp_term_cap
    term = SuperMatrix.identity(m.format, m.n)
    total = term
    for k in range(1, cap + 1):
        term = (term @ m) * (1 / k)
        total = total + term
        size = sm_norm(term)
        if size < config.exp_term_tolerance:
            logger.debug(f"exp series converged after {k} terms")
            return total
    raise NumericError(
        f"Exponential series did not converge within {cap} terms "
        f"(last term norm {size:.3e})"
    )


def sm_log(m: SuperMatrix, term_cap: int | None = None) -> SuperMatrix:
    """Σ_{k≥1} (−1)^{k+1} (M − I)^k / k for a body close to the identity."""
    if m.parity != Parity.EVEN:
        raise ParityError("Logarithm is defined for deg-0 supermatrices")
    require_valid(m, "logarithm")
    config = get_config()
    cap = term_cap or config.exp_term_cap
    shift = m - SuperMatrix.identity(m.format, m.n)
    radius = float(np.linalg.norm(sm_body_array(shift), 2))
    if radius >= 1.0:
        raise NumericError(
            f"Logarithm series needs ‖M_body − I‖ < 1, got {radius:.3f}"
        )
    power = shift
    total = shift
    for k in range(2, cap + 1):
        power = power @ shift
        term = power * ((-1) ** (k + 1) / k)
        total = total + term
        if sm_norm(term) < config.exp_term_tolerance:
            return total
    raise NumericError(
        f"Logarithm series did not converge within {cap} terms"
    )


def berezinian_of_exp(k: SuperMatrix) -> tuple[GrassmannElement, GrassmannElement]:
    """(Ber e^K, e^{str K}), the two sides of the trace-determinant law."""
    return sm_berezinian(sm_exp(k)), sm_supertrace(k).exp()

