"""Shared fixtures and strategies for the liefol test suites."""

import json
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from liefol.lie_core import StructureConstants

# Small rationals keep exact arithmetic fast
rationals = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 5))
sparse_rationals = st.one_of(st.just(Fraction(0)), rationals)


@pytest.fixture
def heisenberg():
    """[e0, e1] = e2"""
    return StructureConstants.from_brackets(3, {(0, 1): {2: 1}})


@pytest.fixture
def abelian4():
    return StructureConstants.abelian(4)


@pytest.fixture
def write_doc(tmp_path):
    """Write an algebra document and return its path as a string."""
    def _write(data, name='algebra.json'):
        path = tmp_path / name
        path.write_text(data if isinstance(data, str) else json.dumps(data), encoding='utf-8')
        return str(path)
    return _write
