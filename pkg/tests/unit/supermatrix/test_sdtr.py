import numpy as np
import pytest

from core.errors import CalibrationError, FormatError, ParityError
from core.types import Parity, SdtrArrangement
from supermatrix import SuperFormat, SuperMatrix, calibrate_sdtr, sm_sdtr
from supermatrix.sdtr import (
    CALIBRATION_ALGEBRA_N,
    embedded_body,
    outer_product_matrix,
    random_superqubit_coordinates,
)

PINNED = SdtrArrangement.FORM_SANDWICH_NEG
N = CALIBRATION_ALGEBRA_N


class TestSdtr:
    def test_body_determinant(self):
        body = np.array([[1.0, 2.0], [3.0, 4.0 + 1.0j]])
        value = sm_sdtr(embedded_body(body, N), calibration=PINNED)
        assert value.body == pytest.approx(np.linalg.det(body))
        assert value.soul.is_zero

    def test_outer_product_vanishes(self):
        rng = np.random.default_rng(3)
        m = outer_product_matrix(
            random_superqubit_coordinates(rng, N),
            random_superqubit_coordinates(rng, N),
        )
        assert sm_sdtr(m, calibration=PINNED).norm_r() <= 1e-10

    def test_string_id(self):
        m = embedded_body(np.eye(2), N)
        assert sm_sdtr(m, calibration="form_sandwich_neg").body == pytest.approx(1)

    def test_unknown_arrangement(self):
        m = embedded_body(np.eye(2), N)
        with pytest.raises(CalibrationError, match="Unknown"):
            sm_sdtr(m, calibration="nonsense")

    def test_wrong_format(self):
        with pytest.raises(FormatError):
            sm_sdtr(SuperMatrix.identity(SuperFormat(1, 1), N), PINNED)

    def test_odd_matrix(self):
        m = SuperMatrix.zeros(SuperFormat(2, 1), N, Parity.ODD)
        with pytest.raises(ParityError):
            sm_sdtr(m, PINNED)


class TestCalibration:
    def test_pins_a_single_class(self):
        result = calibrate_sdtr(seed=0, samples=20)
        assert PINNED in result.survivors
        assert len(result.evidence) == len(SdtrArrangement)
        body = np.array([[0.5, -1.0], [2.0, 1.5j]])
        m = embedded_body(body, N)
        pinned_value = sm_sdtr(m, result.arrangement)
        assert pinned_value.isclose(sm_sdtr(m, PINNED), 1e-10)

    def test_evidence_rows(self):
        result = calibrate_sdtr(seed=1, samples=5)
        rows = {row["arrangement"]: row for row in result.evidence}
        assert rows[PINNED.value]["survived"]
        assert rows[PINNED.value]["det_residual"] <= 1e-10

    def test_zero_tolerance_has_no_survivors(self):
        with pytest.raises(CalibrationError) as excinfo:
            calibrate_sdtr(seed=0, tol=0.0, samples=3)
        assert len(excinfo.value.evidence) == len(SdtrArrangement)
        assert not any(row["survived"] for row in excinfo.value.evidence)
        rows = {row["arrangement"]: row for row in excinfo.value.evidence}
        assert rows[PINNED.value]["det_residual"] <= 1e-10


if __name__ == "__main__":
    pytest.main([__file__])
