"""
Algebra document loading and saving.
JSON documents with rational coefficients written as strings, validated with pydantic.
"""

import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, TextIO

from pydantic import BaseModel, ConfigDict, Field, ValidationError, ValidationInfo, field_validator

from liefol.errors import AlgebraFileError
from liefol.foliation import Split
from liefol.lie_core import StructureConstants, format_scalar, parse_rational, zeros

RATIONAL_HINT = 'rationals are strings like "3", "-1/2"'


# === Pydantic Models ===

class BracketEntry(BaseModel):
    model_config = ConfigDict(extra='forbid')

    i: int = Field(ge=0)
    j: int = Field(ge=0)
    coeffs: Dict[int, str]

    @field_validator('coeffs')
    @classmethod
    def _rational_strings(cls, value: Dict[int, str]) -> Dict[int, str]:
        for k, text in value.items():
            try:
                parse_rational(text)
            except ValueError:
                raise ValueError(f"coefficient {k}: {text!r} is not a rational ({RATIONAL_HINT})") from None
        return value


class SplitSection(BaseModel):
    model_config = ConfigDict(extra='forbid')

    vertical: List[int]


class FamilySection(BaseModel):
    model_config = ConfigDict(extra='forbid')

    id: str
    parameters: Dict[str, str] = {}


class AlgebraFile(BaseModel):
    model_config = ConfigDict(extra='forbid')

    dim: int = Field(ge=1)
    brackets: List[BracketEntry] = []
    split: Optional[SplitSection] = None
    labels: Optional[List[str]] = None
    family: Optional[FamilySection] = None

    @field_validator('labels')
    @classmethod
    def _one_label_per_basis_vector(cls, value: Optional[List[str]], info: ValidationInfo) -> Optional[List[str]]:
        if value is None:
            return value
        if len(set(value)) != len(value):
            raise ValueError("labels must be distinct")
        dim = info.data.get('dim')
        if dim is not None and len(value) != dim:
            raise ValueError(f"expected {dim} labels, got {len(value)}")
        return value


# === Loading ===

def read_source(source: str, stdin: Optional[TextIO] = None) -> str:
    """Text of a file path, or of standard input for "-"."""
    if source == '-':
        return (stdin or sys.stdin).read()
    try:
        return Path(source).read_text(encoding='utf-8')
    except OSError as e:
        raise AlgebraFileError(f"cannot read file: {e.strerror or e}", location=source) from e


def parse_document(text: str, source: str = '<input>') -> AlgebraFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise AlgebraFileError(f"malformed JSON: {e.msg}", location=f"{source}:{e.lineno}:{e.colno}") from e
    try:
        return AlgebraFile.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        field = '.'.join(str(part) for part in first['loc']) or '<root>'
        more = f" (+{e.error_count() - 1} more)" if e.error_count() > 1 else ""
        raise AlgebraFileError(f"{first['msg']}{more}", location=f"{source}: field {field}") from e


def to_structure_constants(
    doc: AlgebraFile,
    exact: bool = True,
    tolerance: Optional[float] = None
) -> StructureConstants:
    """Apply the antisymmetric closure; conflicting entries are rejected."""
    n = doc.dim
    c = zeros((n, n, n), exact=True)
    given: Dict[tuple, Dict[int, Fraction]] = {}
    for index, entry in enumerate(doc.brackets):
        where = f"brackets[{index}]"
        i, j = entry.i, entry.j
        bad = [x for x in (i, j, *entry.coeffs) if not 0 <= x < n]
        if bad:
            raise AlgebraFileError(f"index {bad[0]} out of range for dimension {n}", location=where)
        coeffs = {k: q for k, q in ((k, parse_rational(v)) for k, v in entry.coeffs.items()) if q}
        if i == j:
            if coeffs:
                raise AlgebraFileError(f"[e{i}, e{i}] must vanish", location=where)
            continue
        if (i, j) in given and given[(i, j)] != coeffs:
            raise AlgebraFileError(f"bracket [e{i}, e{j}] given twice with different values", location=where)
        if (j, i) in given:
            if {k: -v for k, v in given[(j, i)].items()} != coeffs:
                raise AlgebraFileError(f"[e{i}, e{j}] conflicts with [e{j}, e{i}] (antisymmetry)", location=where)
        given[(i, j)] = coeffs
        for k, value in coeffs.items():
            c[i, j, k] = value
            c[j, i, k] = -value
    A = StructureConstants(c)
    return A if exact else A.to_approx(tolerance)


def split_of(doc: AlgebraFile) -> Optional[Split]:
    if doc.split is None:
        return None
    return Split.from_vertical(doc.dim, doc.split.vertical)


def load(source: str, stdin: Optional[TextIO] = None) -> AlgebraFile:
    return parse_document(read_source(source, stdin), source)


# === Saving ===

def _rational_text(value) -> str:
    if isinstance(value, float):
        value = Fraction(value).limit_denominator(10 ** 9)
    return format_scalar(Fraction(value))


def from_structure_constants(
    A: StructureConstants,
    split: Optional[Split] = None,
    labels: Optional[List[str]] = None,
    family: Optional[FamilySection] = None
) -> AlgebraFile:
    """Canonical document: i < j, nonzero coefficients only, reduced fractions."""
    brackets = [
        BracketEntry(i=i, j=j, coeffs={k: _rational_text(v) for k, v in sorted(coeffs.items())})
        for i, j, coeffs in A.nonzero_brackets()
    ]
    return AlgebraFile(
        dim=A.dim,
        brackets=brackets,
        split=SplitSection(vertical=list(split.vertical)) if split else None,
        labels=list(labels) if labels else None,
        family=family,
    )


def dumps(doc: AlgebraFile) -> str:
    return json.dumps(doc.model_dump(mode='json', exclude_none=True), sort_keys=True, indent=2) + '\n'


def canonicalize(doc: AlgebraFile) -> AlgebraFile:
    A = to_structure_constants(doc)
    return from_structure_constants(A, split_of(doc), doc.labels, doc.family)
