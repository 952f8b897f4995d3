from pathlib import Path

import pytest

from core.errors import InputError, ParityError
from core.types import Parity, TableKind
from entangle import TwoPartyTable, make_multistate
from formats import (
    ElementFile,
    MatrixFile,
    MultiStateFile,
    StateFile,
    TableFile,
    parse_text,
    read_file,
)
from grassmann import GrassmannElement
from supermatrix import SuperMatrix
from superstate import SpaceFormat, SuperKet

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def golden(snapshot):
    snapshot.snapshot_dir = GOLDEN
    return snapshot


def theta(index: int, n: int) -> GrassmannElement:
    return GrassmannElement.generator(index, n)


class TestCanonicalText:
    def test_element(self, golden):
        z = 3 + GrassmannElement.from_generators([1, 2], 2.0, 4) + theta(3, 4)
        golden.assert_match(ElementFile.from_domain(z).to_text(), "element.json")

    def test_matrix(self, golden):
        m = SuperMatrix.from_rows(1, 1, [[2.0, theta(1, 2)], [theta(2, 2), 1.0]], 2)
        golden.assert_match(MatrixFile.from_domain(m).to_text(), "matrix.json")

    def test_state(self, golden):
        ket = SuperKet.from_coords(
            SpaceFormat(2, 1), Parity.EVEN, [0.6, 0.8, theta(1, 2)], 2
        )
        golden.assert_match(StateFile.from_domain(ket).to_text(), "state.json")

    def test_table(self, golden):
        table = TwoPartyTable(TableKind.QUBIT, {"00": 0.6, "11": 0.8})
        golden.assert_match(TableFile.from_domain(table).to_text(), "table.json")

    def test_multistate(self, golden):
        state = make_multistate([2, 2], {(1, 1): 0.8, (0, 0): 0.6})
        golden.assert_match(
            MultiStateFile.from_domain(state).to_text(), "multistate.json"
        )


class TestParse:
    @pytest.mark.parametrize(
        "name, model",
        [
            ("element.json", ElementFile),
            ("matrix.json", MatrixFile),
            ("state.json", StateFile),
            ("table.json", TableFile),
            ("multistate.json", MultiStateFile),
        ],
    )
    def test_golden_files_reserialize_unchanged(self, name, model):
        text = (GOLDEN / name).read_text(encoding="utf-8")
        value = read_file(GOLDEN / name, model)
        assert model.from_domain(value).to_text() == text

    def test_element_values(self):
        z = read_file(GOLDEN / "element.json", ElementFile)
        assert z.body == 3
        assert z.n == 4
        assert z.odd == theta(3, 4)

    def test_matrix_values(self):
        m = read_file(GOLDEN / "matrix.json", MatrixFile)
        assert m.format.size == 2
        assert m[0, 1] == theta(1, 2)

    def test_invalid_json(self):
        with pytest.raises(InputError):
            parse_text("{not json", ElementFile)

    def test_missing_field(self):
        with pytest.raises(InputError):
            parse_text('{"terms": []}', ElementFile)

    def test_non_canonical_generators(self):
        text = '{"n": 3, "terms": [{"gens": [2, 1], "re": 1.0, "im": 0.0}]}'
        with pytest.raises(InputError, match="strictly increasing"):
            parse_text(text, ElementFile)

    def test_duplicate_monomial(self):
        term = '{"gens": [1], "re": 1.0, "im": 0.0}'
        with pytest.raises(InputError, match="Duplicate"):
            parse_text(f'{{"n": 2, "terms": [{term}, {term}]}}', ElementFile)

    def test_generator_beyond_algebra(self):
        text = '{"n": 2, "terms": [{"gens": [3], "re": 1.0, "im": 0.0}]}'
        with pytest.raises(InputError, match="beyond algebra_n=2"):
            parse_text(text, ElementFile)

    def test_table_parity_layout(self):
        text = (
            '{"kind": "super-even", "n": 0, "slots": '
            '{"02": {"n": 0, "terms": [{"gens": [], "re": 1.0, "im": 0.0}]}}}'
        )
        with pytest.raises(ParityError):
            parse_text(text, TableFile)

    def test_unreadable_file(self, tmp_path):
        with pytest.raises(InputError, match="Cannot read"):
            read_file(tmp_path / "missing.json", ElementFile)

    def test_undecodable_file(self, tmp_path):
        path = tmp_path / "element.json"
        path.write_bytes(b"\xff\xfe\x00{")
        with pytest.raises(InputError, match="Cannot read"):
            read_file(path, ElementFile)


if __name__ == "__main__":
    pytest.main([__file__])
