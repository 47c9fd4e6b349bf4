"""
Algebra document parsing, validation and canonical output.
"""

import io
import json
from fractions import Fraction

import pytest

from liefol import algebra_file
from liefol.errors import AlgebraFileError, SplitError
from liefol.foliation import Split
from liefol.lie_core import StructureConstants

HEISENBERG = {"dim": 3, "brackets": [{"i": 0, "j": 1, "coeffs": {"2": "1"}}]}


def test_load_from_file(write_doc):
    doc = algebra_file.load(write_doc(HEISENBERG))
    A = algebra_file.to_structure_constants(doc)
    assert A.tensor[1, 0, 2] == -1
    assert algebra_file.split_of(doc) is None


def test_load_from_stdin():
    doc = algebra_file.load('-', io.StringIO(json.dumps(HEISENBERG)))
    assert doc.dim == 3


def test_approx_conversion():
    doc = algebra_file.parse_document(json.dumps(HEISENBERG))
    A = algebra_file.to_structure_constants(doc, exact=False, tolerance=1e-6)
    assert not A.exact
    assert A.tolerance == 1e-6


def test_unreadable_file(tmp_path):
    with pytest.raises(AlgebraFileError, match="cannot read file"):
        algebra_file.load(str(tmp_path / 'missing.json'))


def test_malformed_json_reports_position():
    with pytest.raises(AlgebraFileError) as exc:
        algebra_file.parse_document('{"dim": 3,\n  "brackets": [}', 'broken.json')
    assert exc.value.location.startswith('broken.json:2:')


@pytest.mark.parametrize("data,field", [
    ({"dim": 0}, "dim"),
    ({"dim": 2, "extra": 1}, "extra"),
    ({"dim": 2, "brackets": [{"i": 0, "j": 1, "coeffs": {"0": "0.5"}}]}, "brackets.0.coeffs"),
    ({"dim": 2, "labels": ["X", "X"]}, "labels"),
    ({"dim": 3, "labels": ["X"]}, "labels"),
    ({"dim": 2, "labels": ["X", "Y", "Z"]}, "labels"),
])
def test_schema_violations_name_the_field(data, field):
    with pytest.raises(AlgebraFileError) as exc:
        algebra_file.parse_document(json.dumps(data))
    assert field in exc.value.location


def test_out_of_range_index():
    doc = algebra_file.parse_document(json.dumps(
        {"dim": 2, "brackets": [{"i": 0, "j": 1, "coeffs": {"2": "1"}}]}
    ))
    with pytest.raises(AlgebraFileError, match="out of range"):
        algebra_file.to_structure_constants(doc)


def test_conflicting_antisymmetric_entries():
    doc = algebra_file.parse_document(json.dumps({"dim": 2, "brackets": [
        {"i": 0, "j": 1, "coeffs": {"0": "1"}},
        {"i": 1, "j": 0, "coeffs": {"0": "1"}},
    ]}))
    with pytest.raises(AlgebraFileError, match="antisymmetry"):
        algebra_file.to_structure_constants(doc)


def test_consistent_mirrored_entries_are_accepted():
    doc = algebra_file.parse_document(json.dumps({"dim": 2, "brackets": [
        {"i": 0, "j": 1, "coeffs": {"0": "1/2"}},
        {"i": 1, "j": 0, "coeffs": {"0": "-1/2"}},
    ]}))
    assert algebra_file.to_structure_constants(doc).tensor[0, 1, 0] == Fraction(1, 2)


def test_repeated_entry_ignores_zero_coefficients():
    doc = algebra_file.parse_document(json.dumps({"dim": 3, "brackets": [
        {"i": 0, "j": 1, "coeffs": {"2": "1"}},
        {"i": 0, "j": 1, "coeffs": {"2": "1", "1": "0"}},
        {"i": 1, "j": 0, "coeffs": {"2": "-1", "0": "0"}},
    ]}))
    assert algebra_file.to_structure_constants(doc).tensor[0, 1, 2] == 1


def test_repeated_entry_with_a_different_value():
    doc = algebra_file.parse_document(json.dumps({"dim": 3, "brackets": [
        {"i": 0, "j": 1, "coeffs": {"2": "1"}},
        {"i": 0, "j": 1, "coeffs": {"2": "2"}},
    ]}))
    with pytest.raises(AlgebraFileError, match="given twice"):
        algebra_file.to_structure_constants(doc)


def test_self_bracket_must_vanish():
    doc = algebra_file.parse_document(json.dumps(
        {"dim": 2, "brackets": [{"i": 1, "j": 1, "coeffs": {"0": "1"}}]}
    ))
    with pytest.raises(AlgebraFileError, match="must vanish"):
        algebra_file.to_structure_constants(doc)


def test_bad_split_in_document():
    doc = algebra_file.parse_document(json.dumps({"dim": 2, "split": {"vertical": [5]}}))
    with pytest.raises(SplitError):
        algebra_file.split_of(doc)


def test_canonical_output():
    doc = algebra_file.parse_document(json.dumps({"dim": 3, "brackets": [
        {"i": 1, "j": 0, "coeffs": {"2": "-2/4", "0": "0"}},
    ]}))
    canonical = algebra_file.canonicalize(doc)
    assert canonical.brackets[0].model_dump() == {'i': 0, 'j': 1, 'coeffs': {2: '1/2'}}
    text = algebra_file.dumps(canonical)
    assert text.endswith('\n')
    assert algebra_file.dumps(algebra_file.parse_document(text)) == text


def test_from_structure_constants_keeps_split_and_labels():
    A = StructureConstants.from_brackets(4, {(3, 2): {3: 2}})
    doc = algebra_file.from_structure_constants(A, Split.from_vertical(4, (2, 3)), ['X', 'Y', 'Z', 'W'])
    data = json.loads(algebra_file.dumps(doc))
    assert data['split'] == {'vertical': [2, 3]}
    assert data['labels'] == ['X', 'Y', 'Z', 'W']
    assert data['brackets'] == [{'i': 2, 'j': 3, 'coeffs': {'3': '-2'}}]
    assert 'family' not in data


def test_approx_values_are_written_as_rationals():
    A = StructureConstants.from_brackets(2, {(0, 1): {0: 0.25}}, exact=False)
    doc = algebra_file.from_structure_constants(A)
    assert doc.brackets[0].coeffs == {0: '1/4'}
