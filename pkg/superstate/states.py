"""
Graded kets and bras over an (r|s) super Hilbert space.

Coordinates multiply the basis kets from the right: ‖ψ⟩ = Σ ‖I⟩ ψ_I, with
the first r basis vectors even and the last s odd. A coordinate on slot I
of a parity-π state has parity |I| ⊞ π. Bras carry left coordinates,
⟨ψ‖ = Σ β_I ⟨I‖, and are only produced by ``st_dual`` (or by scaling an
existing bra).
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from core.errors import FormatError, ParityError
from core.types import Parity, ScaleSide
from grassmann import GrassmannElement, as_element

logger = logging.getLogger(__name__)

_DUAL_TOKEN = object()


@dataclass(frozen=True, slots=True)
class SpaceFormat:
    """(r|s): r even and s odd basis vectors."""

    r: int
    s: int

    def __post_init__(self) -> None:
        if self.r < 1 or self.s < 0:
            raise FormatError(
                f"Invalid space format ({self.r}|{self.s}): need r >= 1, s >= 0"
            )

    @property
    def size(self) -> int:
        return self.r + self.s

    def slot_parity(self, index: int) -> int:
        return 0 if index < self.r else 1

    def __str__(self) -> str:
        return f"({self.r}|{self.s})"


def _lift_coords(
    values: Sequence[object], n: int
) -> tuple[GrassmannElement, ...]:
    return tuple(as_element(value, n) for value in values)


@dataclass(frozen=True, eq=False)
class _GradedVector:
    format: SpaceFormat
    parity: Parity
    even_coords: tuple[GrassmannElement, ...]
    odd_coords: tuple[GrassmannElement, ...]
    n: int = 0

    def _setup(self) -> None:
        if len(self.even_coords) != self.format.r:
            raise FormatError(
                f"{self.format} needs {self.format.r} even-slot coordinates, "
                f"got {len(self.even_coords)}"
            )
        if len(self.odd_coords) != self.format.s:
            raise FormatError(
                f"{self.format} needs {self.format.s} odd-slot coordinates, "
                f"got {len(self.odd_coords)}"
            )
        object.__setattr__(self, "parity", Parity(self.parity))
        object.__setattr__(
            self, "even_coords", _lift_coords(self.even_coords, self.n)
        )
        object.__setattr__(
            self, "odd_coords", _lift_coords(self.odd_coords, self.n)
        )

    @property
    def coords(self) -> tuple[GrassmannElement, ...]:
        return self.even_coords + self.odd_coords

    def coordinate_parity(self, index: int) -> Parity:
        return self.parity.plus(self.format.slot_parity(index))

    @property
    def is_homogeneous(self) -> bool:
        return all(
            value.has_parity(self.coordinate_parity(index))
            for index, value in enumerate(self.coords)
        )

    def require_homogeneous(self, operation: str) -> None:
        if not self.is_homogeneous:
            raise ParityError(
                f"{operation} needs a homogeneous state: every slot-I "
                f"coordinate of a parity-{int(self.parity)} state must have "
                "parity |I| + π"
            )

    def residual(self, other: "_GradedVector") -> float:
        """Max coordinate distance in ‖·‖_R."""
        if other.format != self.format:
            raise FormatError(
                f"Format mismatch: {self.format} vs {other.format}"
            )
        return max(
            (a - b).norm_r()
            for a, b in zip(self.coords, other.coords, strict=True)
        )


@dataclass(frozen=True, eq=False)
class SuperKet(_GradedVector):
    """‖ψ⟩ = Σ ‖I⟩ ψ_I with right coordinates."""

    def __post_init__(self) -> None:
        self._setup()

    @classmethod
    def from_coords(
        cls,
        fmt: SpaceFormat,
        parity: Parity,
        coords: Sequence[object],
        n: int,
    ) -> "SuperKet":
        coords = list(coords)
        if len(coords) != fmt.size:
            raise FormatError(
                f"{fmt} needs {fmt.size} coordinates, got {len(coords)}"
            )
        return cls(fmt, parity, tuple(coords[: fmt.r]), tuple(coords[fmt.r :]), n)


@dataclass(frozen=True, eq=False)
class SuperBra(_GradedVector):
    """⟨ψ‖ = Σ β_I ⟨I‖ with left coordinates; built by ``st_dual``."""

    _token: object = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self._token is not _DUAL_TOKEN:
            raise TypeError("SuperBra values are produced by st_dual only")
        self._setup()

    def pair(self, ket: SuperKet) -> GrassmannElement:
        """Σ β_I ψ_I with orthonormal basis pairing ⟨I‖J⟩ = δ_IJ."""
        if ket.format != self.format:
            raise FormatError(
                f"Format mismatch: {self.format} vs {ket.format}"
            )
        if ket.n != self.n:
            raise FormatError(
                f"Algebra mismatch: algebra_n {self.n} vs {ket.n}"
            )
        total = GrassmannElement.zero(self.n)
        for left, right in zip(self.coords, ket.coords, strict=True):
            total = total + left * right
        return total


def _make_bra(
    fmt: SpaceFormat, parity: Parity, coords: list[GrassmannElement], n: int
) -> SuperBra:
    return SuperBra(
        fmt, parity, tuple(coords[: fmt.r]), tuple(coords[fmt.r :]), n, _DUAL_TOKEN
    )


# ----------------------------------------------------------------------
# Operations
# ----------------------------------------------------------------------


def st_dual(state: SuperKet | SuperBra) -> SuperBra | SuperKet:
    """The double-dagger map in either direction.

    Ket to bra uses (‖I⟩z)^‡ = (−1)^{|I|·deg z} z^♯⟨I‖; bra to ket uses
    (z⟨I‖)^‡ = (−1)^{|I|(deg z+1)} ‖I⟩z^♯. Two applications give (−1)^π.
    """
    fmt, parity = state.format, int(state.parity)
    coords = []
    for index, value in enumerate(state.coords):
        slot = fmt.slot_parity(index)
        if isinstance(state, SuperKet):
            flip = slot and not parity
        else:
            flip = slot and parity
        starred = value.superstar()
        coords.append(-starred if flip else starred)
    if isinstance(state, SuperKet):
        return _make_bra(fmt, state.parity, coords, state.n)
    return SuperKet.from_coords(fmt, state.parity, coords, state.n)


def st_inner(phi: SuperKet, psi: SuperKet) -> GrassmannElement:
    """⟨φ‖ψ⟩; exactly zero between states of opposite parity."""
    if phi.format != psi.format:
        raise FormatError(f"Format mismatch: {phi.format} vs {psi.format}")
    phi.require_homogeneous("inner product")
    psi.require_homogeneous("inner product")
    if phi.parity != psi.parity:
        return GrassmannElement.zero(psi.n)
    return st_dual(phi).pair(psi)


def st_scale(
    state: SuperKet | SuperBra,
    z: GrassmannElement,
    side: ScaleSide | str = ScaleSide.RIGHT,
) -> SuperKet | SuperBra:
    """Multiply a ket or bra by a homogeneous scalar on either side."""
    side = ScaleSide(side)
    deg = z.parity
    if deg is None:
        raise ParityError("Scaling needs a homogeneous Grassmann scalar")
    if z.n != state.n:
        raise FormatError(f"Algebra mismatch: algebra_n {state.n} vs {z.n}")
    fmt = state.format
    is_ket = isinstance(state, SuperKet)
    coords = []
    for index, value in enumerate(state.coords):
        # z passes the basis vector on the far side of the coordinate
        crosses = (side == ScaleSide.LEFT) == is_ket
        sign = -1 if crosses and deg and fmt.slot_parity(index) else 1
        product = z * value if side == ScaleSide.LEFT else value * z
        coords.append(product * sign if sign < 0 else product)
    parity = state.parity.plus(deg)
    if is_ket:
        return SuperKet.from_coords(fmt, parity, coords, state.n)
    return _make_bra(fmt, parity, coords, state.n)


def st_body(psi: SuperKet) -> np.ndarray:
    """Bodies of the even-slot coordinates of an even state."""
    if psi.parity != Parity.EVEN:
        raise ParityError(
            "Body map is defined for even states only; odd states have no "
            "ordinary limit"
        )
    return np.array([value.body for value in psi.even_coords], dtype=complex)
