"""
Multi-party (super)states, graded tensor products and two-party tables.

Amplitudes are keyed by basis-label tuples. A label's degree is the number
of odd-slot indices it contains, mod 2, and every amplitude of a parity-k
state satisfies deg y ⊞ deg label = k.
"""

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from types import MappingProxyType

import numpy as np

from core.config import get_config
from core.errors import FormatError, NotNormalizedError, ParityError
from core.types import Parity, TableKind
from entangle.qudits import Qudit, SuperQudit
from grassmann import GrassmannElement, as_element
from superstate import SpaceFormat, SuperKet, st_body

logger = logging.getLogger(__name__)

Label = tuple[int, ...]
FormatLike = SpaceFormat | tuple[int, int] | int

SUPERQUBIT = SpaceFormat(2, 1)
QUBIT = SpaceFormat(2, 0)
SUPER_SLOTS = tuple(f"{j}{k}" for j in range(3) for k in range(3))
QUBIT_SLOTS = tuple(f"{j}{k}" for j in range(2) for k in range(2))


def _as_format(value: FormatLike) -> SpaceFormat:
    if isinstance(value, SpaceFormat):
        return value
    if isinstance(value, int):
        return SpaceFormat(value, 0)
    r, s = value
    return SpaceFormat(r, s)


@dataclass(frozen=True)
class MultiState:
    """n-party amplitude map over graded basis labels."""

    formats: tuple[SpaceFormat, ...]
    parity: Parity
    amplitudes: Mapping[Label, GrassmannElement]
    n: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "formats", tuple(self.formats))
        object.__setattr__(self, "parity", Parity(self.parity))
        clean = {}
        for label, value in self.amplitudes.items():
            label = tuple(label)
            self._check_label(label)
            element = as_element(value, self.n)
            if element.is_zero:
                continue
            deg = element.parity
            if deg is None or deg.plus(self.label_parity(label)) != self.parity:
                raise ParityError(
                    f"Amplitude {label} breaks deg y ⊞ deg label = "
                    f"{int(self.parity)}"
                )
            clean[label] = element
        object.__setattr__(self, "amplitudes", MappingProxyType(clean))

    def _check_label(self, label: Label) -> None:
        if len(label) != len(self.formats):
            raise FormatError(
                f"Label {label} does not match {len(self.formats)} parties"
            )
        for index, fmt in zip(label, self.formats, strict=True):
            if not 0 <= index < fmt.size:
                raise FormatError(f"Label {label} outside format {fmt}")

    @property
    def parties(self) -> int:
        return len(self.formats)

    def label_parity(self, label: Label) -> int:
        return (
            sum(
                fmt.slot_parity(index)
                for index, fmt in zip(label, self.formats, strict=True)
            )
            % 2
        )

    def amplitude(self, label: Label) -> GrassmannElement:
        return self.amplitudes.get(tuple(label), GrassmannElement.zero(self.n))

    @property
    def is_ordinary(self) -> bool:
        return all(fmt.s == 0 for fmt in self.formats) and all(
            not value.soul.terms for value in self.amplitudes.values()
        )


def make_multistate(
    formats: Sequence[FormatLike],
    amplitudes: Mapping[Label, object],
    n: int = 0,
    parity: Parity | None = None,
    force: bool = False,
) -> MultiState:
    """Validated multi-party state.

    Args:
        formats: per-party (r|s) formats; an int d means (d|0).
        amplitudes: label tuple → element or complex.
        n: generator count of the amplitudes.
        parity: total parity; inferred from the first nonzero amplitude.
        force: keep ordinary amplitudes that miss Σ|x|² = 1.

    Returns:
        The state.
    """
    formats = tuple(_as_format(fmt) for fmt in formats)
    lifted = {
        tuple(label): as_element(value, n) for label, value in amplitudes.items()
    }
    nonzero = {label: value for label, value in lifted.items() if not value.is_zero}
    if not nonzero:
        raise NotNormalizedError("The zero vector is not a state")
    if parity is None:
        label, value = next(iter(nonzero.items()))
        if len(label) != len(formats):
            raise FormatError(
                f"Label {label} does not match {len(formats)} parties"
            )
        if value.parity is None:
            raise ParityError(f"Amplitude {label} is inhomogeneous")
        label_parity = sum(
            fmt.slot_parity(i) for i, fmt in zip(label, formats, strict=True)
        )
        parity = value.parity.plus(label_parity % 2)
    state = MultiState(formats, parity, nonzero, n)

    if state.is_ordinary:
        total = sum(abs(value.body) ** 2 for value in state.amplitudes.values())
        deviation = abs(total - 1.0)
        if deviation > get_config().normalization_tolerance:
            if not force:
                raise NotNormalizedError(
                    f"Amplitudes must satisfy Σ|x|² = 1 (off by {deviation:.3e})"
                )
            logger.warning(f"Keeping unnormalized state (off by {deviation:.3e})")
    return state


def _as_ket(state: SuperKet | Qudit, n: int) -> SuperKet:
    if isinstance(state, SuperKet):
        return state
    return SuperKet.from_coords(
        SpaceFormat(state.d, 0), Parity.EVEN, list(state.amps), n
    )


def _as_multistate(state: "MultiState | SuperKet | Qudit", n: int) -> MultiState:
    if isinstance(state, MultiState):
        return state
    ket = _as_ket(state, n)
    return MultiState(
        (ket.format,),
        ket.parity,
        {(index,): value for index, value in enumerate(ket.coords)},
        ket.n,
    )


def _algebra_n(*states: object) -> int:
    sizes = {s.n for s in states if isinstance(s, SuperKet | MultiState)}
    if len(sizes) > 1:
        raise FormatError(f"Algebra mismatch: algebra_n values {sorted(sizes)}")
    return sizes.pop() if sizes else 0


def tensor_states(
    a: MultiState | SuperKet | Qudit, b: SuperKet | Qudit
) -> MultiState:
    """Graded tensor product with right-coordinate amplitudes.

    The amplitude of (I, J) is y_I y′_J, except that when the second factor
    is odd the product of two odd basis labels picks up a minus sign. That
    sign makes the separability witnesses vanish on every parity branch.
    """
    n = _algebra_n(a, b)
    left = _as_multistate(a, n)
    right = _as_ket(b, n)
    odd_right = right.parity == Parity.ODD
    amplitudes: dict[Label, GrassmannElement] = {}
    for label, y in left.amplitudes.items():
        left_odd = left.label_parity(label)
        for index, y_prime in enumerate(right.coords):
            value = y * y_prime
            if odd_right and left_odd and right.format.slot_parity(index):
                value = -value
            amplitudes[label + (index,)] = value
    return MultiState(
        left.formats + (right.format,),
        left.parity.plus(right.parity),
        amplitudes,
        n,
    )


def tensor_many(states: Iterable[SuperKet | Qudit]) -> MultiState:
    """Left fold of ``tensor_states`` over two or more parties."""
    states = list(states)
    if len(states) < 2:
        raise FormatError("A tensor product needs at least two states")
    result: MultiState | SuperKet | Qudit = states[0]
    for state in states[1:]:
        result = tensor_states(result, state)
    return result


# ----------------------------------------------------------------------
# Two-party tables
# ----------------------------------------------------------------------


def slot_parity_counts(kind: TableKind | str) -> tuple[int, int]:
    """(even slots, odd slots) of a two-superqubit table of this kind."""
    kind = TableKind(kind)
    if kind == TableKind.QUBIT:
        return 4, 0
    k = 0 if kind == TableKind.SUPER_EVEN else 1
    odd = sum(
        1
        for label in SUPER_SLOTS
        if (k + (label[0] == "2") + (label[1] == "2")) % 2
    )
    return len(SUPER_SLOTS) - odd, odd


@dataclass(frozen=True)
class TwoPartyTable:
    """Amplitudes y_jk of two qubits (2×2) or two superqubits (3×3)."""

    kind: TableKind
    slots: Mapping[str, GrassmannElement]
    n: int = 0

    def __post_init__(self) -> None:
        kind = TableKind(self.kind)
        object.__setattr__(self, "kind", kind)
        names = QUBIT_SLOTS if kind == TableKind.QUBIT else SUPER_SLOTS
        unknown = set(self.slots) - set(names)
        if unknown:
            raise FormatError(
                f"Unknown slots {sorted(unknown)} for a {kind.value} table"
            )
        slots = {
            name: as_element(self.slots.get(name, 0.0), self.n) for name in names
        }
        for name, value in slots.items():
            expected = self.slot_parity(name)
            if not value.has_parity(expected):
                raise ParityError(
                    f"Slot {name} of a {kind.value} table must be "
                    f"{'odd' if expected else 'even'}"
                )
        object.__setattr__(self, "slots", MappingProxyType(slots))

    @property
    def parity(self) -> Parity:
        return Parity.ODD if self.kind == TableKind.SUPER_ODD else Parity.EVEN

    def slot_parity(self, name: str) -> Parity:
        if self.kind == TableKind.QUBIT:
            return Parity.EVEN
        return self.parity.plus((name[0] == "2") + (name[1] == "2"))

    def element(self, j: int, k: int) -> GrassmannElement:
        return self.slots[f"{j}{k}"]

    @property
    def dim(self) -> int:
        return 2 if self.kind == TableKind.QUBIT else 3

    def body_array(self) -> np.ndarray:
        return np.array(
            [[self.element(j, k).body for k in range(self.dim)] for j in range(self.dim)],
            dtype=complex,
        )

    @classmethod
    def from_multistate(cls, state: MultiState) -> "TwoPartyTable":
        if state.formats == (QUBIT, QUBIT):
            kind = TableKind.QUBIT
        elif state.formats == (SUPERQUBIT, SUPERQUBIT):
            kind = (
                TableKind.SUPER_ODD
                if state.parity == Parity.ODD
                else TableKind.SUPER_EVEN
            )
        else:
            raise FormatError(
                "Two-party tables need two qubits or two (2|1) superqubits, "
                f"got {[str(fmt) for fmt in state.formats]}"
            )
        return cls(
            kind,
            {f"{j}{k}": value for (j, k), value in state.amplitudes.items()},
            state.n,
        )

    def to_multistate(self) -> MultiState:
        fmt = QUBIT if self.kind == TableKind.QUBIT else SUPERQUBIT
        return MultiState(
            (fmt, fmt),
            self.parity,
            {(int(name[0]), int(name[1])): value for name, value in self.slots.items()},
            self.n,
        )


def body_state(state: MultiState | SuperQudit) -> np.ndarray:
    """Bodies of the even amplitudes; super-only slots are dropped."""
    if isinstance(state, SuperQudit):
        return st_body(state.ket)
    if state.parity != Parity.EVEN:
        raise ParityError(
            "Body map is defined for even states only; odd states have no "
            "ordinary limit"
        )
    shape = tuple(fmt.r for fmt in state.formats)
    body = np.zeros(shape, dtype=complex)
    for label in np.ndindex(*shape):
        body[label] = state.amplitude(label).body
    return body
