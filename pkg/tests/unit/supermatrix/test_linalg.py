import numpy as np
import pytest

from core.errors import FormatError, NoninvertibleError, NumericError, ParityError
from core.types import Parity
from grassmann import GrassmannElement
from supermatrix import (
    SuperFormat,
    SuperMatrix,
    sm_berezinian,
    sm_det_even,
    sm_exp,
    sm_inverse,
    sm_log,
    sm_residual,
    sm_supertrace,
)
from supermatrix.linalg import berezinian_of_exp

N = 4
TOL = 1e-9


def theta(index: int) -> GrassmannElement:
    return GrassmannElement.generator(index, N)


def small_generator() -> SuperMatrix:
    return SuperMatrix.from_rows(
        1,
        1,
        [
            [0.1 + 0.2 * theta(1) * theta(2), 0.2 * theta(1)],
            [0.3 * theta(2), -0.05 + 0.1j * theta(3) * theta(4)],
        ],
        N,
    )


class TestDeterminant:
    def test_two_by_two(self):
        rows = [
            [GrassmannElement.scalar(1, N), GrassmannElement.scalar(2, N)],
            [GrassmannElement.scalar(3, N), 4 + theta(1) * theta(2)],
        ]
        assert sm_det_even(rows) == -2 + theta(1) * theta(2)

    def test_odd_entries_rejected(self):
        with pytest.raises(ParityError):
            sm_det_even([[theta(1)]])

    def test_size_cap(self):
        rows = [[GrassmannElement.scalar(1, N)] * 7 for _ in range(7)]
        with pytest.raises(FormatError, match="cap"):
            sm_det_even(rows)


class TestInverse:
    def test_even_matrix(self):
        m = SuperMatrix.from_rows(
            1, 1, [[2.0, theta(1)], [theta(2), 1 + theta(3) * theta(4)]], N
        )
        identity = SuperMatrix.identity(m.format, N)
        assert sm_residual(m @ sm_inverse(m), identity) <= TOL
        assert sm_residual(sm_inverse(m) @ m, identity) <= TOL

    def test_singular_body(self):
        m = SuperMatrix.from_rows(1, 1, [[1.0, 0], [0, theta(1) * theta(2)]], N)
        with pytest.raises(NoninvertibleError):
            sm_inverse(m)

    def test_odd_matrix_rejected(self):
        with pytest.raises(ParityError):
            sm_inverse(SuperMatrix.zeros(SuperFormat(1, 1), N, Parity.ODD))


class TestBerezinian:
    def test_one_one_closed_form(self):
        a, beta, gamma, d = 2.0, theta(1), theta(2), 1 + theta(3) * theta(4)
        m = SuperMatrix.from_rows(1, 1, [[a, beta], [gamma, d]], N)
        d_inv = d.inverse()
        expected = a * d_inv - beta * gamma * d_inv * d_inv
        assert sm_berezinian(m).isclose(expected, TOL)

    def test_body_ratio(self):
        m = SuperMatrix.from_rows(
            2, 1, [[1.0, 2.0, 0], [3.0, 4.0, 0], [0, 0, 2.0]], N
        )
        assert sm_berezinian(m).body == pytest.approx(-1.0)

    def test_ordinary_format(self):
        m = SuperMatrix.from_rows(2, 0, [[1.0, 2.0], [3.0, 4.0]], N)
        assert sm_berezinian(m).body == pytest.approx(-2.0)

    def test_pure_odd_format(self):
        m = SuperMatrix.from_rows(0, 1, [[4.0]], N)
        assert sm_berezinian(m).body == pytest.approx(0.25)

    def test_noninvertible_d(self):
        m = SuperMatrix.from_rows(
            1, 1, [[1.0, theta(1)], [theta(2), theta(3) * theta(4)]], N
        )
        with pytest.raises(NoninvertibleError, match="D block"):
            sm_berezinian(m)

    def test_odd_matrix_rejected(self):
        with pytest.raises(ParityError):
            sm_berezinian(SuperMatrix.zeros(SuperFormat(1, 1), N, Parity.ODD))

    def test_multiplicative(self):
        m = SuperMatrix.from_rows(
            1, 1, [[2.0, theta(1)], [theta(2), 1 + theta(3) * theta(4)]], N
        )
        k = SuperMatrix.from_rows(
            1, 1, [[1 + theta(1) * theta(3), 0.5 * theta(4)], [theta(3), 3.0]], N
        )
        product = sm_berezinian(m @ k)
        assert product.isclose(sm_berezinian(m) * sm_berezinian(k), TOL)


class TestSeries:
    def test_exp_of_zero(self):
        fmt = SuperFormat(2, 1)
        assert sm_residual(
            sm_exp(SuperMatrix.zeros(fmt, N)), SuperMatrix.identity(fmt, N)
        ) == 0

    def test_exp_of_body_diagonal(self):
        m = SuperMatrix.from_rows(1, 1, [[0.5, 0], [0, -1.0j]], N)
        body = sm_exp(m).body_array()
        assert np.allclose(np.diag(body), [np.exp(0.5), np.exp(-1.0j)])

    def test_log_inverts_exp(self):
        k = small_generator()
        assert sm_residual(sm_log(sm_exp(k)), k) <= TOL

    def test_log_outside_radius(self):
        m = SuperMatrix.from_rows(1, 1, [[3.0, 0], [0, 1.0]], N)
        with pytest.raises(NumericError):
            sm_log(m)

    def test_exp_term_cap(self):
        m = SuperMatrix.from_rows(1, 1, [[30.0, 0], [0, 1.0]], N)
        with pytest.raises(NumericError, match="did not converge"):
            sm_exp(m, term_cap=5)

    def test_berezinian_of_exp(self):
        ber, trace_exp = berezinian_of_exp(small_generator())
        assert ber.isclose(trace_exp, TOL)
        expected_body = np.exp(0.1 + 0.05)
        assert sm_supertrace(small_generator()).body == pytest.approx(0.15)
        assert ber.body == pytest.approx(expected_body)


if __name__ == "__main__":
    pytest.main([__file__])
