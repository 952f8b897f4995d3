"""
Sparse elements of the complex Grassmann algebra Λ_N(ℂ).

Elements are immutable maps from monomial bit masks to complex
coefficients. Coefficients below the configured zero threshold are dropped
on construction, so every stored element is in canonical sparse form.
"""

import cmath
import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from numbers import Number
from types import MappingProxyType
from typing import NamedTuple

from core.config import get_config
from core.errors import (
    FormatError,
    NoninvertibleError,
    ParityError,
    UnsupportedConventionError,
)
from core.types import Parity
from grassmann import monomials

logger = logging.getLogger(__name__)


def zero_threshold() -> float:
    """Coefficients below this magnitude are dropped."""
    return get_config().zero_threshold


Scalar = complex | float | int


@dataclass(frozen=True, slots=True, eq=False)
class GrassmannElement:
    """Finite complex combination of canonical monomials."""

    n: int
    terms: Mapping[int, complex]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise FormatError(f"algebra_n must be non-negative, got {self.n}")
        limit = 1 << self.n
        threshold = zero_threshold()
        clean: dict[int, complex] = {}
        for mask, coefficient in self.terms.items():
            if not 0 <= mask < limit:
                raise FormatError(
                    f"Monomial {monomials.generators(mask)} uses generators "
                    f"beyond algebra_n={self.n}"
                )
            value = complex(coefficient)
            if abs(value) >= threshold and value != 0:
                clean[mask] = value
        object.__setattr__(self, "terms", MappingProxyType(clean))

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "GrassmannElement":
        return cls(n, {})

    @classmethod
    def one(cls, n: int) -> "GrassmannElement":
        return cls(n, {monomials.UNIT: 1.0})

    @classmethod
    def scalar(cls, value: Scalar, n: int) -> "GrassmannElement":
        return cls(n, {monomials.UNIT: complex(value)})

    @classmethod
    def generator(cls, index: int, n: int) -> "GrassmannElement":
        """The generator θ_index (one-based)."""
        return cls(n, {monomials.mask_from_generators([index], n): 1.0})

    @classmethod
    def from_generators(
        cls, gens: Iterable[int], coefficient: Scalar, n: int
    ) -> "GrassmannElement":
        """coefficient · θ_{g1}...θ_{gk} for a strictly increasing list."""
        return cls(n, {monomials.mask_from_generators(gens, n): coefficient})

    # ------------------------------------------------------------------
    # Decompositions
    # ------------------------------------------------------------------

    @property
    def body(self) -> complex:
        return self.terms.get(monomials.UNIT, 0j)

    @property
    def soul(self) -> "GrassmannElement":
        return GrassmannElement(
            self.n,
            {m: c for m, c in self.terms.items() if m != monomials.UNIT},
        )

    @property
    def even(self) -> "GrassmannElement":
        return GrassmannElement(
            self.n,
            {m: c for m, c in self.terms.items() if not m.bit_count() & 1},
        )

    @property
    def odd(self) -> "GrassmannElement":
        return GrassmannElement(
            self.n,
            {m: c for m, c in self.terms.items() if m.bit_count() & 1},
        )

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_invertible(self) -> bool:
        return abs(self.body) > zero_threshold()

    @property
    def parity(self) -> Parity | None:
        """Parity of a homogeneous element, None when inhomogeneous.

        Zero counts as even.
        """
        degrees = {m.bit_count() & 1 for m in self.terms}
        if len(degrees) > 1:
            return None
        return Parity(degrees.pop()) if degrees else Parity.EVEN

    @property
    def is_homogeneous(self) -> bool:
        return self.parity is not None

    def has_parity(self, parity: Parity) -> bool:
        """True for zero and for homogeneous elements of ``parity``."""
        return self.is_zero or self.parity == parity

    def canonical_terms(self) -> list[tuple[int, complex]]:
        """Terms ordered by degree, then by generator list."""
        return sorted(
            self.terms.items(),
            key=lambda item: (
                item[0].bit_count(),
                monomials.generators(item[0]),
            ),
        )

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _coerce(self, other: object) -> "GrassmannElement":
        if isinstance(other, GrassmannElement):
            if other.n != self.n:
                raise FormatError(
                    f"Algebra mismatch: algebra_n {self.n} vs {other.n}"
                )
            return other
        if isinstance(other, Number):
            return GrassmannElement.scalar(complex(other), self.n)
        return NotImplemented

    def __add__(self, other: object) -> "GrassmannElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self.terms)
        for mask, coefficient in other.terms.items():
            acc[mask] = acc.get(mask, 0j) + coefficient
        return GrassmannElement(self.n, acc)

    __radd__ = __add__

    def __neg__(self) -> "GrassmannElement":
        return GrassmannElement(
            self.n, {m: -c for m, c in self.terms.items()}
        )

    def __sub__(self, other: object) -> "GrassmannElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> "GrassmannElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: object) -> "GrassmannElement":
        if isinstance(other, Number):
            factor = complex(other)
            return GrassmannElement(
                self.n, {m: c * factor for m, c in self.terms.items()}
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict[int, complex] = {}
        for left, a in self.terms.items():
            for right, b in other.terms.items():
                if left & right:
                    continue
                mask = left | right
                sign = monomials.reorder_sign(left, right)
                acc[mask] = acc.get(mask, 0j) + sign * a * b
        return GrassmannElement(self.n, acc)

    def __rmul__(self, other: object) -> "GrassmannElement":
        if isinstance(other, Number):
            return self * other
        return NotImplemented

    def __truediv__(self, other: object) -> "GrassmannElement":
        if isinstance(other, Number):
            return self * (1 / complex(other))
        if isinstance(other, GrassmannElement):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, exponent: int) -> "GrassmannElement":
        result = GrassmannElement.one(self.n)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return self.n == other.n and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    # ------------------------------------------------------------------
    # Involutions, inverse, exponential, norm
    # ------------------------------------------------------------------

    def star(self) -> "GrassmannElement":
        """Ordinary involution: antilinear antiautomorphism, θ_i* = θ_i."""
        return GrassmannElement(
            self.n,
            {
                m: monomials.reversal_sign(m) * c.conjugate()
                for m, c in self.terms.items()
            },
        )

    def superstar(self) -> "GrassmannElement":
        """Superinvolution ♯ with the paired generator convention."""
        if self.n % 2:
            raise UnsupportedConventionError(
                f"superstar needs an even generator count, got N={self.n}"
            )
        acc: dict[int, complex] = {}
        for mask, coefficient in self.terms.items():
            sign, image = monomials.superstar_image(mask)
            acc[image] = sign * coefficient.conjugate()
        return GrassmannElement(self.n, acc)

    def inverse(self) -> "GrassmannElement":
        """body⁻¹ · Σ (−soul/body)^k, finite by nilpotence."""
        body = self.body
        if abs(body) <= zero_threshold():
            raise NoninvertibleError(
                "Element has zero body and is not invertible"
            )
        step = self.soul * (-1 / body)
        term = GrassmannElement.one(self.n)
        total = term
        for _ in range(self.n):
            term = term * step
            if term.is_zero:
                break
            total = total + term
        return total * (1 / body)

    def exp(self) -> "GrassmannElement":
        """e^body · Σ soul^k / k!."""
        soul = self.soul
        term = GrassmannElement.one(self.n)
        total = term
        for k in range(1, self.n + 1):
            term = term * soul * (1 / k)
            if term.is_zero:
                break
            total = total + term
        return total * cmath.exp(self.body)

    def norm_r(self) -> float:
        """ℓ1 norm over the canonical monomial basis."""
        return float(sum(abs(c) for c in self.terms.values()))

    def isclose(self, other: object, tol: float) -> bool:
        other = self._coerce(other)
        masks = set(self.terms) | set(other.terms)
        return all(
            abs(self.terms.get(m, 0j) - other.terms.get(m, 0j)) <= tol
            for m in masks
        )

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for mask, coefficient in self.canonical_terms():
            word = "".join(f"θ{g}" for g in monomials.generators(mask))
            value = coefficient.real if coefficient.imag == 0 else coefficient
            if not word:
                parts.append(f"{value}")
            elif value == 1:
                parts.append(word)
            else:
                parts.append(f"({value}){word}")
        return " + ".join(parts)


class Decomposition(NamedTuple):
    """The body/soul and even/odd splits of an element."""

    body: complex
    soul: GrassmannElement
    even: GrassmannElement
    odd: GrassmannElement
    invertible: bool


# ----------------------------------------------------------------------
# Functional interface
# ----------------------------------------------------------------------


def g_mul(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    """Graded product of two elements over the same algebra."""
    if a.n != b.n:
        raise FormatError(f"Algebra mismatch: algebra_n {a.n} vs {b.n}")
    return a * b


def g_decompose(z: GrassmannElement) -> Decomposition:
    return Decomposition(
        body=z.body,
        soul=z.soul,
        even=z.even,
        odd=z.odd,
        invertible=z.is_invertible,
    )


def g_supercommutator(
    y: GrassmannElement, z: GrassmannElement
) -> GrassmannElement:
    """yz − (−1)^{deg y · deg z} zy for homogeneous y, z."""
    deg_y, deg_z = y.parity, z.parity
    if deg_y is None or deg_z is None:
        raise ParityError("Supercommutator needs homogeneous elements")
    sign = -1 if deg_y and deg_z else 1
    return g_mul(y, z) - g_mul(z, y) * sign


def g_star(z: GrassmannElement) -> GrassmannElement:
    return z.star()


def g_superstar(z: GrassmannElement) -> GrassmannElement:
    return z.superstar()


def g_inverse(z: GrassmannElement) -> GrassmannElement:
    return z.inverse()


def g_exp(z: GrassmannElement) -> GrassmannElement:
    return z.exp()


def g_norm_r(z: GrassmannElement) -> float:
    return z.norm_r()


def g_isclose(
    a: GrassmannElement, b: GrassmannElement, tol: float
) -> bool:
    return a.isclose(b, tol)


def as_element(value: "GrassmannElement | Scalar", n: int) -> GrassmannElement:
    """Lift a complex number into Λ_n; elements pass through unchanged."""
    if isinstance(value, GrassmannElement):
        if value.n != n:
            raise FormatError(
                f"Algebra mismatch: algebra_n {value.n} vs {n}"
            )
        return value
    return GrassmannElement.scalar(value, n)
