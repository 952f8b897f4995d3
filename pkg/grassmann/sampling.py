"""Seeded random Grassmann elements for calibration and property checks."""

import numpy as np

from core.types import Parity
from grassmann.element import GrassmannElement


def random_coefficient(rng: np.random.Generator, scale: float = 1.0) -> complex:
    re, im = rng.normal(0.0, scale, size=2)
    return complex(re, im)


def random_element(
    rng: np.random.Generator,
    n: int,
    parity: Parity | None = None,
    terms: int = 3,
    body: bool | None = None,
    scale: float = 1.0,
    body_scale: float = 1.0,
) -> GrassmannElement:
    """Sparse random element.

    Args:
        rng: numpy generator driving every draw.
        n: generator count.
        parity: restrict monomials to one parity; None mixes both.
        terms: number of non-unit monomials to draw (capped by availability).
        body: include a unit coefficient; defaults to True unless odd.
        scale: standard deviation of the soul coefficients.
        body_scale: standard deviation of the body coefficient.

    Returns:
        The element, canonicalized.
    """
    if body is None:
        body = parity != Parity.ODD
    candidates = [
        mask
        for mask in range(1, 1 << n)
        if parity is None or mask.bit_count() % 2 == int(parity)
    ]
    coefficients: dict[int, complex] = {}
    if body and parity != Parity.ODD:
        coefficients[0] = random_coefficient(rng, body_scale)
    if candidates and terms > 0:
        picks = rng.choice(
            len(candidates), size=min(terms, len(candidates)), replace=False
        )
        for pick in sorted(int(p) for p in picks):
            coefficients[candidates[pick]] = random_coefficient(rng, scale)
    return GrassmannElement(n, coefficients)
