import pytest

from core.errors import FormatError, ParityError
from core.types import AdjointConvention, Parity
from grassmann import GrassmannElement
from supermatrix import SuperFormat, SuperMatrix, sm_supertrace
from superstate import (
    GradedOperator,
    SpaceFormat,
    SuperKet,
    adjoint_matrix_element_residual,
    st_apply,
    st_inner,
    st_outer,
    st_superadjoint_check,
)

N = 4


def theta(index: int) -> GrassmannElement:
    return GrassmannElement.generator(index, N)


def raising() -> GradedOperator:
    """Deg-0 operator with a single odd entry in the B block."""
    return GradedOperator(SuperMatrix.from_rows(1, 1, [[0, theta(1)], [0, 0]], N))


def ket(coords, parity=Parity.EVEN, fmt=SpaceFormat(1, 1)) -> SuperKet:
    return SuperKet.from_coords(fmt, parity, coords, N)


class TestGradedOperator:
    def test_rejects_broken_layout(self):
        with pytest.raises(ParityError):
            GradedOperator(SuperMatrix.from_rows(1, 1, [[theta(1), 0], [0, 1]], N))

    def test_compose_adds_degrees(self):
        odd = GradedOperator(
            SuperMatrix.from_rows(1, 1, [[0, 1.0], [1.0, 0]], N, Parity.ODD)
        )
        assert odd.compose(odd).parity is Parity.EVEN
        assert odd.compose(raising()).parity is Parity.ODD
        assert odd.space == SpaceFormat(1, 1)


class TestApply:
    def test_identity(self):
        psi = ket([0.6, theta(3)])
        identity = GradedOperator(SuperMatrix.identity(SuperFormat(1, 1), N))
        assert st_apply(identity, psi).residual(psi) == 0

    def test_odd_operator_flips_parity(self):
        swap = GradedOperator(
            SuperMatrix.from_rows(1, 1, [[0, 1.0], [1.0, 0]], N, Parity.ODD)
        )
        image = st_apply(swap, ket([1.0, 0.0]))
        assert image.parity is Parity.ODD
        assert image.coords[1].body == 1
        assert image.is_homogeneous

    def test_format_mismatch(self):
        with pytest.raises(FormatError):
            st_apply(raising(), ket([1.0, 0.0, 0.0], fmt=SpaceFormat(2, 1)))


class TestAdjoint:
    def test_identity_under_default_convention(self):
        phi = ket([1.0, theta(3)])
        psi = ket([1.0, 0.0])
        assert st_superadjoint_check(raising(), phi, psi) <= 1e-12

    def test_literal_supertranspose_breaks_identity(self):
        phi = ket([1.0, theta(3)])
        psi = ket([1.0, 0.0])
        residual = st_superadjoint_check(
            raising(), phi, psi, AdjointConvention.SUPERTRANSPOSE
        )
        assert residual == pytest.approx(2.0)

    def test_adjoint_layout(self):
        adjoint = raising().adjoint()
        assert adjoint.matrix[1, 0] == theta(1).superstar()
        assert adjoint.matrix[0, 1].is_zero

    def test_matrix_element(self):
        phi = ket([1.0, theta(3)])
        psi = ket([1.0, 0.0])
        assert adjoint_matrix_element_residual(raising(), phi, psi) <= 1e-12


class TestDensity:
    @pytest.mark.parametrize(
        "coords, parity",
        [
            ([0.6, 0.8j + theta(1) * theta(2), theta(3)], Parity.EVEN),
            ([theta(1), 2 * theta(4), 0.5], Parity.ODD),
        ],
    )
    def test_supertrace_matches_norm(self, coords, parity):
        psi = ket(coords, parity, SpaceFormat(2, 1))
        rho = st_outer(psi)
        expected = st_inner(psi, psi) * parity.sign
        assert sm_supertrace(rho).isclose(expected, 1e-12)

    def test_layout(self):
        psi = ket([0.6, 0.8j, theta(3)], Parity.EVEN, SpaceFormat(2, 1))
        rho = st_outer(psi)
        assert rho.parity is Parity.EVEN
        assert rho[0, 1] == GrassmannElement.scalar(0.8j * 0.6, N)
        assert rho[2, 2] == -(theta(3) * theta(3).superstar())


if __name__ == "__main__":
    pytest.main([__file__])
