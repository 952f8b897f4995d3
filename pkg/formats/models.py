"""
Pydantic models for the element, matrix, state and table file formats.

Every model converts to and from its domain object and renders canonical
text: compact JSON with default separators and one trailing newline, terms
ordered by degree and then by generator list. A canonical file therefore
survives parse and serialize byte for byte.
"""

import json
from pathlib import Path
from typing import TypeVar

from pydantic import (
    BaseModel,
    Field,
    ValidationError,
    field_validator,
    model_validator,
)

from core.errors import InputError
from core.types import Parity, TableKind
from entangle import MultiState, TwoPartyTable
from grassmann import GrassmannElement
from grassmann.monomials import generators, mask_from_generators
from supermatrix import SuperFormat, SuperMatrix
from superstate import SpaceFormat, SuperKet

FileModel = TypeVar("FileModel", bound="CanonicalModel")


class CanonicalModel(BaseModel):
    """Base class adding canonical text output."""

    def to_text(self) -> str:
        return json.dumps(self.model_dump(mode="json")) + "\n"


class TermPayload(CanonicalModel):
    """One monomial coefficient."""

    gens: list[int] = Field(
        ..., description="Strictly increasing generator indices; [] is 1"
    )
    re: float = Field(..., description="Real part of the coefficient")
    im: float = Field(..., description="Imaginary part of the coefficient")

    @field_validator("gens")
    def gens_must_be_canonical(cls, v):
        """Generators are 1-based and strictly increasing."""
        if any(g < 1 for g in v):
            raise ValueError("Generator indices start at 1")
        if any(a >= b for a, b in zip(v, v[1:])):
            raise ValueError(
                "Generator indices must be strictly increasing (canonical form)"
            )
        return v


class ElementFile(CanonicalModel):
    """{"n": N, "terms": [...]}"""

    n: int = Field(..., ge=0, description="Generator count of the algebra")
    terms: list[TermPayload] = Field(
        default_factory=list, description="Nonzero terms in canonical order"
    )

    @field_validator("terms")
    def terms_must_be_unique(cls, v):
        """Each monomial appears at most once."""
        seen = [tuple(term.gens) for term in v]
        if len(set(seen)) != len(seen):
            raise ValueError("Duplicate monomial in element terms")
        return v

    @model_validator(mode="after")
    def gens_within_algebra(self):
        """Every generator index is at most n."""
        for term in self.terms:
            if term.gens and term.gens[-1] > self.n:
                raise ValueError(
                    f"Generator {term.gens[-1]} is beyond algebra_n={self.n}"
                )
        return self

    @classmethod
    def from_domain(cls, z: GrassmannElement) -> "ElementFile":
        return cls(
            n=z.n,
            terms=[
                TermPayload(gens=generators(mask), re=value.real, im=value.imag)
                for mask, value in z.canonical_terms()
            ],
        )

    def to_domain(self) -> GrassmannElement:
        terms: dict[int, complex] = {}
        for term in self.terms:
            mask = mask_from_generators(term.gens, self.n)
            terms[mask] = complex(term.re, term.im)
        return GrassmannElement(self.n, terms)


class MatrixFile(CanonicalModel):
    """{"p", "q", "parity", "n", "entries": [[element, ...], ...]}"""

    p: int = Field(..., ge=0, description="Even block size")
    q: int = Field(..., ge=0, description="Odd block size")
    parity: Parity = Field(..., description="Matrix parity (0 or 1)")
    n: int = Field(..., ge=0, description="Generator count of the algebra")
    entries: list[list[ElementFile]] = Field(
        ..., description="Row-major (p+q)×(p+q) entries"
    )

    @classmethod
    def from_domain(cls, m: SuperMatrix) -> "MatrixFile":
        return cls(
            p=m.format.p,
            q=m.format.q,
            parity=m.parity,
            n=m.n,
            entries=[[ElementFile.from_domain(z) for z in row] for row in m.entries],
        )

    def to_domain(self) -> SuperMatrix:
        rows = [[value.to_domain() for value in row] for row in self.entries]
        return SuperMatrix(
            SuperFormat(self.p, self.q),
            self.parity,
            tuple(tuple(row) for row in rows),
            self.n,
        )


class StateFile(CanonicalModel):
    """{"r", "s", "parity", "n", "even": [...], "odd": [...]}"""

    r: int = Field(..., ge=1, description="Number of even basis vectors")
    s: int = Field(..., ge=0, description="Number of odd basis vectors")
    parity: Parity = Field(..., description="State parity (0 or 1)")
    n: int = Field(..., ge=0, description="Generator count of the algebra")
    even: list[ElementFile] = Field(..., description="Even-slot coordinates")
    odd: list[ElementFile] = Field(
        default_factory=list, description="Odd-slot coordinates"
    )

    @classmethod
    def from_domain(cls, ket: SuperKet) -> "StateFile":
        return cls(
            r=ket.format.r,
            s=ket.format.s,
            parity=ket.parity,
            n=ket.n,
            even=[ElementFile.from_domain(z) for z in ket.even_coords],
            odd=[ElementFile.from_domain(z) for z in ket.odd_coords],
        )

    def to_domain(self) -> SuperKet:
        return SuperKet(
            SpaceFormat(self.r, self.s),
            self.parity,
            tuple(value.to_domain() for value in self.even),
            tuple(value.to_domain() for value in self.odd),
            self.n,
        )


class TableFile(CanonicalModel):
    """{"kind", "n", "slots": {"00": element, ...}}"""

    kind: TableKind = Field(..., description="qubit, super-even or super-odd")
    n: int = Field(..., ge=0, description="Generator count of the algebra")
    slots: dict[str, ElementFile] = Field(
        ..., description="Amplitude per two-digit slot name"
    )

    @classmethod
    def from_domain(cls, t: TwoPartyTable) -> "TableFile":
        return cls(
            kind=t.kind,
            n=t.n,
            slots={
                name: ElementFile.from_domain(value)
                for name, value in t.slots.items()
            },
        )

    def to_domain(self) -> TwoPartyTable:
        return TwoPartyTable(
            self.kind,
            {name: value.to_domain() for name, value in self.slots.items()},
            self.n,
        )


class AmplitudePayload(CanonicalModel):
    label: list[int] = Field(..., description="Basis index per party")
    value: ElementFile = Field(..., description="Amplitude")


class MultiStateFile(CanonicalModel):
    """{"formats": [[r, s], ...], "parity", "n", "amplitudes": [...]}"""

    formats: list[tuple[int, int]] = Field(
        ..., min_length=1, description="(r, s) per party"
    )
    parity: Parity = Field(..., description="Total parity")
    n: int = Field(..., ge=0, description="Generator count of the algebra")
    amplitudes: list[AmplitudePayload] = Field(
        ..., description="Nonzero amplitudes in label order"
    )

    @classmethod
    def from_domain(cls, state: MultiState) -> "MultiStateFile":
        return cls(
            formats=[(fmt.r, fmt.s) for fmt in state.formats],
            parity=state.parity,
            n=state.n,
            amplitudes=[
                AmplitudePayload(
                    label=list(label),
                    value=ElementFile.from_domain(state.amplitudes[label]),
                )
                for label in sorted(state.amplitudes)
            ],
        )

    def to_domain(self) -> MultiState:
        return MultiState(
            tuple(SpaceFormat(r, s) for r, s in self.formats),
            self.parity,
            {
                tuple(item.label): item.value.to_domain()
                for item in self.amplitudes
            },
            self.n,
        )


# ----------------------------------------------------------------------
# File access
# ----------------------------------------------------------------------


def parse_text(text: str, model: type[FileModel]):
    """Parse canonical text straight into the domain object."""
    try:
        return model.model_validate_json(text).to_domain()
    except ValidationError as exc:
        raise InputError(f"{model.__name__}: {exc}") from exc


def read_file(path: Path | str, model: type[FileModel]):
    """Load a file of the given format as its domain object."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"Cannot read {path}: {exc}") from exc
    return parse_text(text, model)
