# noqa: D100

from enum import Enum, IntEnum


class Parity(IntEnum):
    """Z2 grading label; addition is mod 2."""

    EVEN = 0
    ODD = 1

    def plus(self, *others: "Parity | int") -> "Parity":
        """Graded sum, the box-plus of two or more parities."""
        total = int(self)
        for other in others:
            total += int(other)
        return Parity(total % 2)

    @property
    def sign(self) -> int:
        """(-1)^parity."""
        return -1 if self is Parity.ODD else 1


class ScaleSide(str, Enum):
    """Side on which a Grassmann scalar multiplies a state."""

    LEFT = "left"
    RIGHT = "right"


class AdjointConvention(str, Enum):
    """Which supertranspose follows the entrywise superstar in M^‡.

    ``INVERSE_SUPERTRANSPOSE`` applies (sT)^3 = (sT)^-1 and is the one that
    satisfies the operator adjoint identity with the graded inner product.
    ``SUPERTRANSPOSE`` is the literal (M^#)^sT.
    """

    INVERSE_SUPERTRANSPOSE = "inverse_supertranspose"
    SUPERTRANSPOSE = "supertranspose"


class GroupName(str, Enum):
    """Local (S)LOCC groups with a membership predicate."""

    SL2 = "SL2"
    SU2 = "SU2"
    OSP21 = "OSP21"
    UOSP21 = "UOSP21"


class TableKind(str, Enum):
    """Two-party amplitude table layouts."""

    QUBIT = "qubit"
    SUPER_EVEN = "super-even"
    SUPER_ODD = "super-odd"


class SdtrArrangement(str, Enum):
    """Candidate sign/ordering arrangements of the sdTr template."""

    PRODUCT_TRANSPOSE_POS = "product_transpose_pos"
    PRODUCT_TRANSPOSE_NEG = "product_transpose_neg"
    FORM_SANDWICH_POS = "form_sandwich_pos"
    FORM_SANDWICH_NEG = "form_sandwich_neg"
    FORM_CHAIN_POS = "form_chain_pos"
    FORM_CHAIN_NEG = "form_chain_neg"
