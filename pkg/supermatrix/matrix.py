"""
(p|q)-format supermatrices over Λ_N(ℂ).

A supermatrix carries a declared total parity. For parity 0 the diagonal
blocks A (p×p) and D (q×q) hold even elements and the off-diagonal blocks
B (p×q), C (q×p) odd ones; parity 1 swaps the assignment. Construction
only checks shapes and the algebra size, so malformed layouts can be built
and diagnosed with ``sm_validate``; operations that rely on the layout
validate first and raise ``ParityError``.
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field
from numbers import Number
from typing import NamedTuple

import numpy as np

from core.errors import FormatError, ParityError
from core.types import AdjointConvention, Parity
from grassmann import GrassmannElement, as_element

logger = logging.getLogger(__name__)

Entry = GrassmannElement | complex | float | int


@dataclass(frozen=True, slots=True)
class SuperFormat:
    """Block sizes (p|q) of a square supermatrix."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 0 or self.q < 0 or self.p + self.q < 1:
            raise FormatError(
                f"Invalid format ({self.p}|{self.q}): need p, q >= 0 and "
                "p + q >= 1"
            )

    @property
    def size(self) -> int:
        return self.p + self.q

    def index_parity(self, index: int) -> int:
        """0 for rows/columns in the even block, 1 for the odd block."""
        return 0 if index < self.p else 1

    def __str__(self) -> str:
        return f"({self.p}|{self.q})"


@dataclass(frozen=True, slots=True, eq=False)
class SuperMatrix:
    """Square block matrix with Grassmann entries and a declared parity."""

    format: SuperFormat
    parity: Parity
    entries: tuple[tuple[GrassmannElement, ...], ...]
    n: int = field(default=0)

    def __post_init__(self) -> None:
        size = self.format.size
        rows = [list(row) for row in self.entries]
        if len(rows) != size or any(len(row) != size for row in rows):
            raise FormatError(
                f"Format {self.format} needs a {size}x{size} entry array"
            )
        lifted = tuple(
            tuple(as_element(value, self.n) for value in row) for row in rows
        )
        object.__setattr__(self, "entries", lifted)
        object.__setattr__(self, "parity", Parity(self.parity))

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def from_rows(
        cls,
        p: int,
        q: int,
        rows: Iterable[Iterable[Entry]],
        n: int,
        parity: Parity = Parity.EVEN,
    ) -> "SuperMatrix":
        return cls(
            SuperFormat(p, q),
            parity,
            tuple(tuple(row) for row in rows),
            n,
        )

    @classmethod
    def identity(cls, fmt: SuperFormat, n: int) -> "SuperMatrix":
        size = fmt.size
        rows = [[1.0 if i == j else 0.0 for j in range(size)] for i in range(size)]
        return cls(fmt, Parity.EVEN, tuple(map(tuple, rows)), n)

    @classmethod
    def zeros(
        cls, fmt: SuperFormat, n: int, parity: Parity = Parity.EVEN
    ) -> "SuperMatrix":
        size = fmt.size
        rows = tuple(tuple(0.0 for _ in range(size)) for _ in range(size))
        return cls(fmt, parity, rows, n)

    @classmethod
    def from_body(
        cls, fmt: SuperFormat, body: np.ndarray, n: int
    ) -> "SuperMatrix":
        """Deg-0 matrix from a complex array (off-diagonal blocks ignored)."""
        size = fmt.size
        rows = [
            [
                complex(body[i][j])
                if fmt.index_parity(i) == fmt.index_parity(j)
                else 0.0
                for j in range(size)
            ]
            for i in range(size)
        ]
        return cls(fmt, Parity.EVEN, tuple(map(tuple, rows)), n)

    # ------------------------------------------------------------------
    # Access
    # ------------------------------------------------------------------

    @property
    def size(self) -> int:
        return self.format.size

    def __getitem__(self, index: tuple[int, int]) -> GrassmannElement:
        row, column = index
        return self.entries[row][column]

    def block(self, name: str) -> list[list[GrassmannElement]]:
        """One of the blocks "A", "B", "C", "D" as nested lists."""
        p, size = self.format.p, self.size
        rows, columns = {
            "A": (range(0, p), range(0, p)),
            "B": (range(0, p), range(p, size)),
            "C": (range(p, size), range(0, p)),
            "D": (range(p, size), range(p, size)),
        }[name]
        return [[self.entries[i][j] for j in columns] for i in rows]

    def required_parity(self, row: int, column: int) -> Parity:
        """Parity an entry must have under this matrix's parity."""
        crossing = self.format.index_parity(row) ^ self.format.index_parity(
            column
        )
        return self.parity.plus(crossing)

    @property
    def is_body_only(self) -> bool:
        return all(
            all(not value.soul.terms for value in row) for row in self.entries
        )

    def map_entries(self, func, parity: Parity | None = None) -> "SuperMatrix":
        return SuperMatrix(
            self.format,
            self.parity if parity is None else parity,
            tuple(tuple(func(value) for value in row) for row in self.entries),
            self.n,
        )

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _check_compatible(self, other: "SuperMatrix") -> None:
        if other.format != self.format:
            raise FormatError(
                f"Format mismatch: {self.format} vs {other.format}"
            )
        if other.n != self.n:
            raise FormatError(
                f"Algebra mismatch: algebra_n {self.n} vs {other.n}"
            )

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check_compatible(other)
        if other.parity != self.parity:
            raise ParityError(
                "Cannot add supermatrices of different parity "
                f"({int(self.parity)} and {int(other.parity)})"
            )
        return SuperMatrix(
            self.format,
            self.parity,
            tuple(
                tuple(a + b for a, b in zip(row_a, row_b, strict=True))
                for row_a, row_b in zip(
                    self.entries, other.entries, strict=True
                )
            ),
            self.n,
        )

    def __neg__(self) -> "SuperMatrix":
        return self.map_entries(lambda value: -value)

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        return self + (-other)

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        return sm_mul(self, other)

    def __mul__(self, other: object) -> "SuperMatrix":
        if isinstance(other, Number):
            factor = complex(other)
            return self.map_entries(lambda value: value * factor)
        return NotImplemented

    def __rmul__(self, other: object) -> "SuperMatrix":
        """Left multiplication by a complex or homogeneous Grassmann scalar."""
        if isinstance(other, Number):
            return self * other
        if isinstance(other, GrassmannElement):
            deg = other.parity
            if deg is None:
                raise ParityError("Scalar factor must be homogeneous")
            return self.map_entries(
                lambda value: other * value, self.parity.plus(deg)
            )
        return NotImplemented

    def body_array(self) -> np.ndarray:
        return sm_body_array(self)

    def __str__(self) -> str:
        rows = ["  [" + ", ".join(str(v) for v in row) + "]" for row in self.entries]
        return f"SuperMatrix{self.format} deg {int(self.parity)}\n" + "\n".join(
            rows
        )


class Violation(NamedTuple):
    row: int
    column: int
    required: Parity
    found: Parity | None


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the parity-layout check."""

    violations: list[Violation]

    @property
    def ok(self) -> bool:
        return not self.violations

    def describe(self) -> str:
        return "; ".join(
            f"({v.row},{v.column}) needs parity {int(v.required)}, found "
            f"{'inhomogeneous' if v.found is None else int(v.found)}"
            for v in self.violations
        )


class MatrixSplit(NamedTuple):
    body: SuperMatrix
    soul: SuperMatrix
    even_part: SuperMatrix
    odd_part: SuperMatrix


# ----------------------------------------------------------------------
# Operations
# ----------------------------------------------------------------------


def sm_validate(m: SuperMatrix) -> ValidationReport:
    """List the entries that break the block parity layout."""
    violations = []
    for i, row in enumerate(m.entries):
        for j, value in enumerate(row):
            required = m.required_parity(i, j)
            if not value.has_parity(required):
                violations.append(Violation(i, j, required, value.parity))
    return ValidationReport(violations)


def require_valid(m: SuperMatrix, operation: str) -> None:
    report = sm_validate(m)
    if not report.ok:
        raise ParityError(
            f"{operation} needs a homogeneous deg-{int(m.parity)} "
            f"supermatrix: {report.describe()}"
        )


def sm_mul(m: SuperMatrix, n: SuperMatrix) -> SuperMatrix:
    """Row-column product; the parities add mod 2."""
    m._check_compatible(n)
    size = m.size
    zero = GrassmannElement.zero(m.n)
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            acc = zero
            for k in range(size):
                left = m.entries[i][k]
                if left.is_zero:
                    continue
                right = n.entries[k][j]
                if right.is_zero:
                    continue
                acc = acc + left * right
            row.append(acc)
        rows.append(tuple(row))
    return SuperMatrix(m.format, m.parity.plus(n.parity), tuple(rows), m.n)


def sm_split(m: SuperMatrix) -> MatrixSplit:
    """Body/soul split and the diagonal/off-diagonal block masks."""
    fmt = m.format
    zero = GrassmannElement.zero(m.n)
    body_rows, even_rows, odd_rows = [], [], []
    for i, row in enumerate(m.entries):
        body_row, even_row, odd_row = [], [], []
        for j, value in enumerate(row):
            diagonal = fmt.index_parity(i) == fmt.index_parity(j)
            allowed = m.required_parity(i, j) == Parity.EVEN
            body_row.append(
                GrassmannElement.scalar(value.body, m.n) if allowed else zero
            )
            even_row.append(value if diagonal else zero)
            odd_row.append(zero if diagonal else value)
        body_rows.append(tuple(body_row))
        even_rows.append(tuple(even_row))
        odd_rows.append(tuple(odd_row))
    body = SuperMatrix(fmt, m.parity, tuple(body_rows), m.n)
    return MatrixSplit(
        body=body,
        soul=m - body,
        even_part=SuperMatrix(fmt, m.parity, tuple(even_rows), m.n),
        odd_part=SuperMatrix(fmt, m.parity, tuple(odd_rows), m.n),
    )


def _transpose_sign(fmt: SuperFormat, parity: Parity, i: int, j: int) -> int:
    # (M^sT)_ij = (-1)^((|i|+|j|)(|i|+deg M)) M_ji
    a, b = fmt.index_parity(i), fmt.index_parity(j)
    return -1 if ((a ^ b) & (a ^ int(parity))) else 1


def _supertranspose(m: SuperMatrix, inverse: bool) -> SuperMatrix:
    fmt = m.format
    size = m.size
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            sign = _transpose_sign(fmt, m.parity, i, j)
            if inverse and fmt.index_parity(i) != fmt.index_parity(j):
                sign = -sign
            value = m.entries[j][i]
            row.append(value if sign > 0 else -value)
        rows.append(tuple(row))
    return SuperMatrix(fmt, m.parity, tuple(rows), m.n)


def sm_supertranspose(m: SuperMatrix) -> SuperMatrix:
    """deg 0: [[Aᵀ, Cᵀ], [−Bᵀ, Dᵀ]]; deg 1: [[Aᵀ, −Cᵀ], [Bᵀ, Dᵀ]]."""
    require_valid(m, "supertranspose")
    return _supertranspose(m, inverse=False)


def sm_inverse_supertranspose(m: SuperMatrix) -> SuperMatrix:
    """(sT)⁻¹ = (sT)³: the supertranspose with off-diagonal signs flipped."""
    require_valid(m, "inverse supertranspose")
    return _supertranspose(m, inverse=True)


def sm_supertrace(m: SuperMatrix) -> GrassmannElement:
    """tr A − tr D for deg 0, tr A + tr D for deg 1."""
    require_valid(m, "supertrace")
    total = GrassmannElement.zero(m.n)
    odd_sign = 1 if m.parity == Parity.ODD else -1
    for i in range(m.size):
        value = m.entries[i][i]
        if m.format.index_parity(i):
            value = value * odd_sign
        total = total + value
    return total


def sm_superadjoint(
    m: SuperMatrix,
    convention: AdjointConvention = AdjointConvention.INVERSE_SUPERTRANSPOSE,
) -> SuperMatrix:
    """Entrywise superstar followed by the chosen supertranspose."""
    require_valid(m, "superadjoint")
    starred = m.map_entries(lambda value: value.superstar())
    inverse = convention == AdjointConvention.INVERSE_SUPERTRANSPOSE
    return _supertranspose(starred, inverse=inverse)


def sm_body_array(m: SuperMatrix) -> np.ndarray:
    """Unit-monomial coefficients as a complex array."""
    return np.array(
        [[value.body for value in row] for row in m.entries], dtype=complex
    )


def sm_residual(m: SuperMatrix, n: SuperMatrix) -> float:
    """Max over entries of ‖m_ij − n_ij‖_R."""
    m._check_compatible(n)
    return max(
        (a - b).norm_r()
        for row_a, row_b in zip(m.entries, n.entries, strict=True)
        for a, b in zip(row_a, row_b, strict=True)
    )


def sm_norm(m: SuperMatrix) -> float:
    """Max over entries of ‖m_ij‖_R."""
    return max(value.norm_r() for row in m.entries for value in row)

