"""
Qudits, superqudits and the cross-qutrit.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from core.config import get_config
from core.errors import FormatError, NotNormalizedError
from core.types import Parity
from grassmann import GrassmannElement
from superstate import SuperKet, st_body, st_inner

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Qudit:
    """Ordinary d-level amplitudes."""

    amps: tuple[complex, ...]

    @property
    def d(self) -> int:
        return len(self.amps)

    @property
    def norm_squared(self) -> float:
        return float(sum(abs(x) ** 2 for x in self.amps))

    def as_array(self) -> np.ndarray:
        return np.array(self.amps, dtype=complex)


@dataclass(frozen=True)
class SuperQudit:
    """A superket with its normalization verdict.

    ``normalized`` is None for odd states, which have no normalization
    condition.
    """

    ket: SuperKet
    normalized: bool | None

    @property
    def parity(self) -> Parity:
        return self.ket.parity

    def body(self) -> Qudit:
        return make_qudit(st_body(self.ket), force=not self.normalized)


@dataclass(frozen=True)
class CrossQutrit:
    """Unnormalized ε-product of two qutrits and its squared norm."""

    qudit: Qudit
    norm_squared: float


def make_qudit(amps: Sequence[complex], force: bool = False) -> Qudit:
    """Validate Σ|x_i|² = 1; ``force`` keeps unnormalized input."""
    values = tuple(complex(x) for x in amps)
    if not values:
        raise FormatError("A qudit needs at least one amplitude")
    qudit = Qudit(values)
    deviation = abs(qudit.norm_squared - 1.0)
    if deviation > get_config().normalization_tolerance:
        if not force:
            raise NotNormalizedError(
                f"Qudit amplitudes must satisfy Σ|x|² = 1 (off by "
                f"{deviation:.3e})"
            )
        logger.warning(f"Keeping unnormalized qudit (off by {deviation:.3e})")
    return qudit


def superqudit_norm(ket: SuperKet) -> GrassmannElement:
    """Σ x^♯x − Σ æ^♯æ for an even superket."""
    return st_inner(ket, ket)


def make_superqudit(ket: SuperKet, force: bool = False) -> SuperQudit:
    """Check the even normalization condition as a Grassmann identity."""
    ket.require_homogeneous("superqudit")
    if ket.parity == Parity.ODD:
        logger.info("Odd superqudit kept without a normalization condition")
        return SuperQudit(ket, normalized=None)

    deviation = (superqudit_norm(ket) - 1.0).norm_r()
    normalized = deviation <= get_config().normalization_tolerance
    if not normalized:
        if not force:
            raise NotNormalizedError(
                "Even superqudit must satisfy Σ x^♯x − Σ æ^♯æ = 1 "
                f"(off by {deviation:.3e} in ‖·‖_R)"
            )
        logger.warning(
            f"Keeping unnormalized superqudit (off by {deviation:.3e})"
        )
    return SuperQudit(ket, normalized=normalized)


def cross_qutrit(a: Qudit, b: Qudit) -> CrossQutrit:
    """Component i = Σ ε_ijk x_j x′_k."""
    if a.d != 3 or b.d != 3:
        raise FormatError(
            f"Cross-qutrit needs two qutrits, got d={a.d} and d={b.d}"
        )
    product = np.cross(a.as_array(), b.as_array())
    qudit = Qudit(tuple(complex(x) for x in product))
    return CrossQutrit(qudit=qudit, norm_squared=qudit.norm_squared)
