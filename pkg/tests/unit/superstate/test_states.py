import numpy as np
import pytest

from core.errors import FormatError, ParityError
from core.types import Parity, ScaleSide
from grassmann import GrassmannElement
from superstate import (
    SpaceFormat,
    SuperBra,
    SuperKet,
    st_body,
    st_dual,
    st_inner,
    st_scale,
)

N = 4
SUPERQUBIT = SpaceFormat(2, 1)


def theta(index: int) -> GrassmannElement:
    return GrassmannElement.generator(index, N)


def even_ket() -> SuperKet:
    return SuperKet.from_coords(
        SUPERQUBIT, Parity.EVEN, [0.6, 0.8j + theta(1) * theta(2), theta(3)], N
    )


def odd_ket() -> SuperKet:
    return SuperKet.from_coords(
        SUPERQUBIT, Parity.ODD, [theta(1), 2 * theta(4), 0.5], N
    )


class TestSpaceFormat:
    def test_slots(self):
        assert SUPERQUBIT.size == 3
        assert [SUPERQUBIT.slot_parity(i) for i in range(3)] == [0, 0, 1]

    def test_needs_an_even_slot(self):
        with pytest.raises(FormatError):
            SpaceFormat(0, 1)


class TestKets:
    def test_coordinate_count(self):
        with pytest.raises(FormatError):
            SuperKet.from_coords(SUPERQUBIT, Parity.EVEN, [1.0, 0.0], N)

    def test_homogeneity(self):
        assert even_ket().is_homogeneous
        assert odd_ket().is_homogeneous
        broken = SuperKet.from_coords(
            SUPERQUBIT, Parity.EVEN, [theta(1), 0.0, 0.0], N
        )
        assert not broken.is_homogeneous
        with pytest.raises(ParityError):
            st_inner(broken, broken)

    def test_bras_come_from_dual(self):
        with pytest.raises(TypeError):
            SuperBra(SUPERQUBIT, Parity.EVEN, (1.0, 0.0), (0.0,), N)
        assert isinstance(st_dual(even_ket()), SuperBra)

    def test_body(self):
        body = st_body(even_ket())
        assert np.allclose(body, [0.6, 0.8j])
        with pytest.raises(ParityError):
            st_body(odd_ket())


class TestDual:
    def test_even_slot_coordinates_are_starred(self):
        bra = st_dual(even_ket())
        assert bra.coords[0] == GrassmannElement.scalar(0.6, N)
        assert bra.coords[1] == (0.8j + theta(1) * theta(2)).superstar()
        assert bra.coords[2] == -theta(3).superstar()

    @pytest.mark.parametrize("make, sign", [(even_ket, 1), (odd_ket, -1)])
    def test_applied_twice(self, make, sign):
        ket = make()
        back = st_dual(st_dual(ket))
        assert isinstance(back, SuperKet)
        expected = SuperKet.from_coords(
            ket.format, ket.parity, [value * sign for value in ket.coords], N
        )
        assert back.residual(expected) == 0


class TestInner:
    def test_ordinary_qubit(self):
        ket = SuperKet.from_coords(SpaceFormat(2, 0), Parity.EVEN, [3.0, 4.0j], N)
        assert st_inner(ket, ket) == GrassmannElement.scalar(25.0, N)

    def test_opposite_parities_are_orthogonal(self):
        assert st_inner(even_ket(), odd_ket()).is_zero
        assert st_inner(odd_ket(), even_ket()).is_zero

    def test_norm_body_is_nonnegative(self):
        for ket in (even_ket(), odd_ket()):
            value = st_inner(ket, ket).body
            assert abs(value.imag) <= 1e-12
            assert value.real >= 0

    def test_even_body_matches_ordinary_norm(self):
        assert st_inner(even_ket(), even_ket()).body == pytest.approx(1.0)

    def test_format_mismatch(self):
        other = SuperKet.from_coords(SpaceFormat(1, 1), Parity.EVEN, [1.0, 0.0], N)
        with pytest.raises(FormatError):
            st_inner(even_ket(), other)


class TestScale:
    def test_right_scaling_by_odd_scalar(self):
        ket = SuperKet.from_coords(SUPERQUBIT, Parity.EVEN, [1.0, 0.0, 0.0], N)
        scaled = st_scale(ket, theta(1))
        assert scaled.parity is Parity.ODD
        assert scaled.coords[0] == theta(1)
        assert scaled.is_homogeneous

    def test_left_scaling_flips_odd_slots(self):
        ket = SuperKet.from_coords(SUPERQUBIT, Parity.EVEN, [0.0, 0.0, theta(2)], N)
        left = st_scale(ket, theta(1), ScaleSide.LEFT)
        assert left.coords[2] == -(theta(1) * theta(2))
        right = st_scale(ket, theta(1), "right")
        assert right.coords[2] == theta(2) * theta(1)

    def test_even_scalar_is_side_independent(self):
        z = 2 + theta(1) * theta(2)
        left = st_scale(even_ket(), z, ScaleSide.LEFT)
        right = st_scale(even_ket(), z, ScaleSide.RIGHT)
        assert left.residual(right) <= 1e-12

    def test_inhomogeneous_scalar(self):
        with pytest.raises(ParityError):
            st_scale(even_ket(), 1 + theta(1))


if __name__ == "__main__":
    pytest.main([__file__])
