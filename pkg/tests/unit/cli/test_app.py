import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from app import app
from core.config import reset_config
from core.types import Parity, TableKind
from entangle import TwoPartyTable
from formats import MatrixFile, StateFile, TableFile
from grassmann import GrassmannElement
from supermatrix import SuperFormat, SuperMatrix
from superstate import SpaceFormat, SuperKet
from verification.suites import SUITES, Suite

runner = CliRunner()


def theta(index: int, n: int) -> GrassmannElement:
    return GrassmannElement.generator(index, n)


def report_of(result) -> dict:
    line = next(row for row in result.output.splitlines() if row.startswith("{"))
    return json.loads(line)


def body_of(payload: dict) -> float:
    unit = [term for term in payload["terms"] if term["gens"] == []]
    return unit[0]["re"] if unit else 0.0


class CliCase:
    def setup_method(self):
        reset_config()

    def teardown_method(self):
        reset_config()

    def write(self, path: Path, model) -> str:
        path.write_text(model.to_text(), encoding="utf-8")
        return str(path)

    def matrix(self, tmp_path: Path, m: SuperMatrix, name="m.json") -> str:
        return self.write(tmp_path / name, MatrixFile.from_domain(m))

    def state(self, tmp_path: Path, ket: SuperKet, name="s.json") -> str:
        return self.write(tmp_path / name, StateFile.from_domain(ket))

    def table(self, tmp_path: Path, t: TwoPartyTable, name="t.json") -> str:
        return self.write(tmp_path / name, TableFile.from_domain(t))


class TestMatrixCommands(CliCase):
    def sample(self) -> SuperMatrix:
        return SuperMatrix.from_rows(1, 1, [[2.0, theta(1, 2)], [theta(2, 2), 1.0]], 2)

    def test_ber(self, tmp_path):
        result = runner.invoke(app, ["ber", self.matrix(tmp_path, self.sample())])
        assert result.exit_code == 0, result.output
        assert result.output.startswith("ber = 2.0 + (-1.0)θ1θ2")
        payload = report_of(result)
        assert payload["measure"] == "ber"
        assert payload["parity"] == 0
        assert payload["value"]["terms"][1] == {"gens": [1, 2], "re": -1.0, "im": 0.0}

    def test_output_file(self, tmp_path):
        out = tmp_path / "report.json"
        path = self.matrix(tmp_path, self.sample())
        result = runner.invoke(app, ["str", path, "-o", str(out)])
        assert result.exit_code == 0
        payload = json.loads(out.read_text(encoding="utf-8"))
        assert body_of(payload["value"]) == 1.0
        assert "{" not in result.output

    def test_stranspose(self, tmp_path):
        path = self.matrix(tmp_path, self.sample())
        result = runner.invoke(app, ["stranspose", path, "--inverse"])
        assert result.exit_code == 0
        payload = report_of(result)
        assert payload["details"] == {"inverse": True}
        lower_left = payload["value"]["entries"][1][0]
        assert lower_left["terms"] == [{"gens": [1], "re": 1.0, "im": 0.0}]

    def test_group_check(self, tmp_path):
        identity = SuperMatrix.identity(SuperFormat(2, 0), 0)
        path = self.matrix(tmp_path, identity)
        result = runner.invoke(app, ["group-check", path, "--group", "SL2"])
        assert result.exit_code == 0
        assert "member" in result.output
        assert report_of(result)["details"]["member"] is True

    def test_missing_file(self, tmp_path):
        result = runner.invoke(app, ["ber", str(tmp_path / "absent.json")])
        assert result.exit_code == 1
        assert "InputError" in result.output

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"p": 1}', encoding="utf-8")
        result = runner.invoke(app, ["ber", str(path)])
        assert result.exit_code == 1

    def test_domain_error(self, tmp_path):
        odd = SuperMatrix.from_rows(
            1, 1, [[theta(1, 2), 1.0], [1.0, theta(2, 2)]], 2, Parity.ODD
        )
        result = runner.invoke(app, ["ber", self.matrix(tmp_path, odd)])
        assert result.exit_code == 2
        assert "ParityError" in result.output

    def test_generator_beyond_algebra(self, tmp_path):
        path = tmp_path / "m.json"
        entry = '{"n": 1, "terms": [{"gens": [2], "re": 1.0, "im": 0.0}]}'
        path.write_text(
            f'{{"p": 1, "q": 0, "parity": 0, "n": 1, "entries": [[{entry}]]}}',
            encoding="utf-8",
        )
        result = runner.invoke(app, ["ber", str(path)])
        assert result.exit_code == 1
        assert "InputError" in result.output
        assert "beyond algebra_n=1" in result.output

    def test_undecodable_file(self, tmp_path):
        path = tmp_path / "m.json"
        path.write_bytes(b"\xff\xfe\x00{")
        result = runner.invoke(app, ["ber", str(path)])
        assert result.exit_code == 1
        assert "error: InputError: Cannot read" in result.output

    def test_usage_error(self):
        result = runner.invoke(app, ["ber"])
        assert result.exit_code == 2


class TestSdtrCommands(CliCase):
    def body_matrix(self) -> SuperMatrix:
        rows = [[1.0, 2.0, 0.0], [3.0, 4.0, 0.0], [0.0, 0.0, 0.0]]
        return SuperMatrix.from_rows(2, 1, rows, 4)

    def test_explicit_arrangement(self, tmp_path):
        path = self.matrix(tmp_path, self.body_matrix())
        result = runner.invoke(
            app, ["sdtr", path, "--arrangement", "form_sandwich_neg"]
        )
        assert result.exit_code == 0, result.output
        payload = report_of(result)
        assert payload["calibration"] == "form_sandwich_neg"
        assert body_of(payload["value"]) == pytest.approx(-2.0)

    def test_pin_from_config_file(self, tmp_path):
        config = tmp_path / "calibration.env"
        config.write_text("SDTR_ARRANGEMENT=form_chain_neg\n", encoding="utf-8")
        path = self.matrix(tmp_path, self.body_matrix())
        result = runner.invoke(app, ["sdtr", path, "--config", str(config)])
        assert result.exit_code == 0, result.output
        payload = report_of(result)
        assert payload["calibration"] == "form_chain_neg"
        assert body_of(payload["value"]) == pytest.approx(-2.0)

    def test_uncalibrated(self, tmp_path):
        path = self.matrix(tmp_path, self.body_matrix())
        result = runner.invoke(
            app, ["sdtr", path, "--config", str(tmp_path / "none.env")]
        )
        assert result.exit_code == 2
        assert "CalibrationError" in result.output

    def test_calibrate_writes_pin(self, tmp_path):
        config = tmp_path / "calibration.env"
        result = runner.invoke(
            app, ["calibrate-sdtr", "--samples", "5", "--config", str(config)]
        )
        assert result.exit_code == 0, result.output
        assert "pinned form_sandwich_neg" in result.output
        assert "SDTR_ARRANGEMENT=form_sandwich_neg" in config.read_text()
        payload = report_of(result)
        assert len(payload["evidence"]) == 6
        assert payload["path"] == str(config)

    def test_calibrate_without_survivors(self, tmp_path):
        config = tmp_path / "calibration.env"
        result = runner.invoke(
            app,
            ["calibrate-sdtr", "--samples", "3", "--tol", "0", "--config", str(config)],
        )
        assert result.exit_code == 2
        assert "no unique survivor" in result.output
        assert "CalibrationError" in result.output
        assert not config.exists()


class TestStateCommands(CliCase):
    def superqubit(self) -> SuperKet:
        return SuperKet.from_coords(
            SpaceFormat(2, 1), Parity.EVEN, [0.6, 0.8, theta(1, 2)], 2
        )

    def qudit(self, amps, tmp_path, name) -> str:
        ket = SuperKet.from_coords(SpaceFormat(len(amps), 0), Parity.EVEN, amps, 0)
        return self.state(tmp_path, ket, name)

    def test_inner(self, tmp_path):
        path = self.state(tmp_path, self.superqubit())
        result = runner.invoke(app, ["inner", path, path])
        assert result.exit_code == 0
        value = report_of(result)["value"]
        assert body_of(value) == pytest.approx(1.0)
        assert value["terms"][1] == {"gens": [1, 2], "re": 1.0, "im": 0.0}

    def test_outer(self, tmp_path):
        path = self.state(tmp_path, self.superqubit())
        result = runner.invoke(app, ["outer", path])
        assert result.exit_code == 0
        payload = report_of(result)
        assert payload["value"]["p"] == 2 and payload["value"]["q"] == 1
        assert body_of(payload["details"]["supertrace"]) == pytest.approx(1.0)

    def test_tensor(self, tmp_path):
        a = self.qudit([0.6, 0.8], tmp_path, "a.json")
        b = self.qudit([1.0, 0.0], tmp_path, "b.json")
        result = runner.invoke(app, ["tensor", a, b])
        assert result.exit_code == 0
        assert "tensor: 2 parties, parity 0, 2 nonzero amplitudes" in result.output
        value = report_of(result)["value"]
        assert [item["label"] for item in value["amplitudes"]] == [[0, 0], [1, 0]]

    def test_tensor_needs_two_files(self, tmp_path):
        a = self.qudit([1.0, 0.0], tmp_path, "a.json")
        result = runner.invoke(app, ["tensor", a])
        assert result.exit_code == 1

    def test_cross(self, tmp_path):
        a = self.qudit([1.0, 0.0, 0.0], tmp_path, "a.json")
        b = self.qudit([0.0, 1.0, 0.0], tmp_path, "b.json")
        result = runner.invoke(app, ["cross", a, b])
        assert result.exit_code == 0
        payload = report_of(result)
        assert payload["value"] == [[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]
        assert payload["details"]["norm_squared"] == pytest.approx(1.0)

    def test_cross_unnormalized(self, tmp_path):
        a = self.qudit([1.0, 1.0, 0.0], tmp_path, "a.json")
        b = self.qudit([0.0, 1.0, 0.0], tmp_path, "b.json")
        result = runner.invoke(app, ["cross", a, b])
        assert result.exit_code == 2
        assert "NotNormalizedError" in result.output
        forced = runner.invoke(app, ["cross", a, b, "--force-unnormalized"])
        assert forced.exit_code == 0


class TestEntanglementCommands(CliCase):
    def qubits(self, tmp_path, **slots) -> str:
        return self.table(tmp_path, TwoPartyTable(TableKind.QUBIT, slots))

    def test_concurrence(self, tmp_path):
        path = self.qubits(tmp_path, **{"00": 0.6, "11": 0.8})
        result = runner.invoke(app, ["concurrence", path])
        assert result.exit_code == 0
        assert report_of(result)["value"] == pytest.approx(0.96)

    def test_concurrence_unnormalized(self, tmp_path):
        path = self.qubits(tmp_path, **{"00": 1.0, "11": 1.0})
        result = runner.invoke(app, ["concurrence", path])
        assert result.exit_code == 2
        assert "NotNormalizedError" in result.output
        forced = runner.invoke(app, ["concurrence", path, "--force-unnormalized"])
        assert forced.exit_code == 0
        assert report_of(forced)["value"] == pytest.approx(2.0)

    def test_concurrence_of_super_table(self, tmp_path):
        t = TwoPartyTable(TableKind.SUPER_EVEN, {"00": 1.0})
        result = runner.invoke(app, ["concurrence", self.table(tmp_path, t)])
        assert result.exit_code == 2
        assert "FormatError" in result.output

    def test_superconcurrence(self, tmp_path):
        t = TwoPartyTable(TableKind.SUPER_EVEN, {"00": 0.6, "11": 0.8, "22": 1.0})
        path = self.table(tmp_path, t)
        result = runner.invoke(app, ["superconcurrence", path])
        assert result.exit_code == 0
        payload = report_of(result)
        assert payload["value"] == pytest.approx(0.96)
        assert payload["parity"] == 0
        mismatch = runner.invoke(app, ["superconcurrence", path, "--parity", "1"])
        assert mismatch.exit_code == 2
        assert "ParityError" in mismatch.output

    def test_tangle(self, tmp_path):
        path = self.qubits(tmp_path, **{"00": 0.6, "11": 0.8})
        result = runner.invoke(app, ["tangle", path])
        assert result.exit_code == 0
        assert report_of(result)["value"] == pytest.approx(0.9216)

    def test_even_supertangle(self, tmp_path):
        t = TwoPartyTable(TableKind.SUPER_EVEN, {"00": 0.6, "11": 0.8, "22": 1.0})
        result = runner.invoke(app, ["tangle", self.table(tmp_path, t)])
        assert result.exit_code == 0
        payload = report_of(result)
        assert payload["measure"] == "supertangle"
        assert body_of(payload["value"]) == pytest.approx(0.9216)

    def test_odd_supertangle(self, tmp_path):
        t = TwoPartyTable(
            TableKind.SUPER_ODD,
            {"00": theta(1, 4), "22": theta(2, 4), "12": 1.0, "21": 1.0},
            4,
        )
        result = runner.invoke(app, ["tangle", self.table(tmp_path, t)])
        assert result.exit_code == 0
        assert "implicit relation only" in result.output
        payload = report_of(result)
        assert payload["value"] is None
        assert payload["details"]["implicit_only"] is True
        assert payload["details"]["consistent"] is True

    def test_undefined_supertangle(self, tmp_path):
        t = TwoPartyTable(TableKind.SUPER_EVEN, {"00": 0.6, "11": 0.8})
        result = runner.invoke(app, ["tangle", self.table(tmp_path, t)])
        assert result.exit_code == 2
        assert "UndefinedTangleError" in result.output

    def test_separable(self, tmp_path):
        product = self.qubits(tmp_path, **{"00": 0.6, "01": 0.8})
        result = runner.invoke(app, ["separable", product])
        assert result.exit_code == 0
        assert "separable: separable (rank-1)" in result.output
        assert report_of(result)["value"] is True


class TestVerify(CliCase):
    NAMES = ["grassmann.anticommutation", "entangle.slot_counts"]

    def args(self, *extra: str) -> list[str]:
        names = [arg for name in self.NAMES for arg in ("--suite", name)]
        return ["verify", "--iters", "5", *names, *extra]

    def test_pass(self):
        result = runner.invoke(app, self.args())
        assert result.exit_code == 0, result.output
        assert result.output.startswith("verify PASS: 2/2 suites")

    def test_deterministic(self):
        first = runner.invoke(app, self.args("--seed", "7"))
        second = runner.invoke(app, self.args("--seed", "7"))
        assert first.output == second.output
        assert report_of(first)["seed"] == 7

    def test_unknown_suite(self):
        result = runner.invoke(app, ["verify", "--suite", "no.such.suite"])
        assert result.exit_code == 1
        assert "no.such.suite" in result.output

    def test_failing_suite(self, monkeypatch):
        failing = Suite("zz.failing", lambda rng, samples: [1.0], tol=0.5)
        monkeypatch.setitem(SUITES, failing.name, failing)
        result = runner.invoke(app, ["verify", "--suite", failing.name])
        assert result.exit_code == 2
        assert "verify FAIL: 0/1 suites (failed: zz.failing)" in result.output


if __name__ == "__main__":
    pytest.main([__file__])
