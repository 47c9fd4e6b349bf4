"""
Nil and Sol series, their closed-form Ricci operators, and the horizontal
Ricci comparison in dimension three and above.
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rationals
from liefol.errors import HypothesisError, InvalidAlgebraError, SeriesRangeError
from liefol.foliation import analyze
from liefol.lie_core import validate
from liefol.metric_geometry import ricci
from liefol.series import (
    THREE_DIMENSIONAL_SPLIT,
    NilSpec,
    SolSpec,
    ThreeDimensionalSpec,
    nil,
    nil_split,
    parse_alphas,
    ricci_closed_form,
    sample_three_dimensional,
    sol,
    sol_split,
    spec_for,
    theorem2_gap,
    three_dimensional,
    three_dimensional_gap,
)


# === Nil ===

@pytest.mark.parametrize("n", range(1, 11))
def test_nil_ricci_matches_closed_form(n):
    spec = NilSpec(n)
    A = nil(spec)
    assert validate(A).valid
    computed = ricci(A)
    assert computed.is_diagonal()
    expected = [Fraction(-n, 2), Fraction(-1, 2)] + [Fraction(0)] * (n - 1) + [Fraction(1, 2)]
    assert computed.diagonal() == expected
    assert not (computed.ric - ricci_closed_form(spec).ric).any()


def test_nil_labels_and_dimension():
    spec = NilSpec(2)
    assert spec.dim == 4
    assert spec.labels() == ['W', 'X1', 'X2', 'X3']


def test_nil_needs_positive_n():
    with pytest.raises(SeriesRangeError):
        NilSpec(0)


@pytest.mark.parametrize("k", [0, 3])
def test_nil_split_range(k):
    with pytest.raises(SeriesRangeError):
        nil_split(NilSpec(2), k)


@pytest.mark.parametrize("n", range(2, 11))
def test_nil_gap_is_half_of_n_minus_one(n):
    assert theorem2_gap(NilSpec(n)) == Fraction(n - 1, 2)


def test_nil_split_is_conformal_with_minimal_leaves_for_every_k():
    spec = NilSpec(4)
    for k in range(1, 5):
        report = analyze(nil(spec), nil_split(spec, k))
        assert report.conformal and report.minimal and report.vertical_integrable


# === Sol ===

@given(st.lists(rationals, min_size=1, max_size=8))
@settings(max_examples=60, deadline=None)
def test_sol_ricci_matches_closed_form(alphas):
    spec = SolSpec(tuple(alphas))
    A = sol(spec)
    assert validate(A).valid
    assert not (ricci(A).ric - ricci_closed_form(spec).ric).any()


def test_sol_closed_form_values():
    spec = SolSpec((5, 1, -1))
    # Ric(W) = -|alpha|^2, Ric(X_k) = -alpha_k * (alpha_1 + ... + alpha_n)
    assert ricci_closed_form(spec).diagonal() == [-27, -25, -5, 5]


def test_sol_gap():
    assert theorem2_gap(SolSpec((5, 1, -1))) == 2
    # alpha_2^2 + ... + alpha_n^2
    assert theorem2_gap(SolSpec((1, 2, -2))) == 8
    assert theorem2_gap(SolSpec((3, 0, 0))) == 0


def test_sol_gap_needs_minimal_leaves():
    with pytest.raises(HypothesisError):
        theorem2_gap(SolSpec((1, 1)))
    with pytest.raises(HypothesisError):
        theorem2_gap(SolSpec((1,)))


def test_gap_needs_k_equal_one():
    with pytest.raises(HypothesisError):
        theorem2_gap(NilSpec(3), k=2)


def test_sol_split_range(caplog):
    spec = SolSpec((1, 2, 3))
    with pytest.raises(SeriesRangeError):
        sol_split(spec, 3)
    assert spec.in_stated_range(1)
    assert not spec.in_stated_range(2)
    with caplog.at_level('WARNING', logger='liefol.series'):
        split = sol_split(spec, 2)
    assert split.vertical == (3,)
    assert 'outside' in caplog.text


def test_parse_alphas():
    assert parse_alphas("5, 1,-1/2").alphas == (5, 1, Fraction(-1, 2))
    with pytest.raises(SeriesRangeError):
        parse_alphas("1,x")
    with pytest.raises(SeriesRangeError):
        parse_alphas("")


def test_spec_for():
    assert spec_for('nil', '3') == NilSpec(3)
    assert spec_for('sol', '1,2') == SolSpec((1, 2))
    with pytest.raises(SeriesRangeError):
        spec_for('nil', 'three')
    with pytest.raises(SeriesRangeError):
        spec_for('heis', '3')


# === Dimension three ===

def test_three_dimensional_rejects_non_lie_parameters():
    with pytest.raises(InvalidAlgebraError):
        three_dimensional(ThreeDimensionalSpec(a=1, r=1))


def test_three_dimensional_foliation_has_geodesic_leaves():
    A = three_dimensional(ThreeDimensionalSpec(a=2, b=1))
    report = analyze(A, THREE_DIMENSIONAL_SPLIT)
    assert report.conformal and report.minimal and report.totally_geodesic


@given(st.integers(0, 10 ** 6))
@settings(max_examples=100, deadline=None)
def test_three_dimensional_gap_vanishes(seed):
    spec = sample_three_dimensional(random.Random(seed))
    assert validate(three_dimensional(spec)).valid
    assert three_dimensional_gap(spec) == (0, 0)


def test_three_dimensional_spec_dict():
    spec = ThreeDimensionalSpec(r=Fraction(1, 2), theta=3)
    assert spec.to_dict() == {'a': '0', 'b': '0', 'r': '1/2', 's': '0', 'theta': '3'}
