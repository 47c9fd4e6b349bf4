"""
Splits, second fundamental forms and foliation predicates.
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liefol.errors import SplitError
from liefol.families import FAMILY_CATALOG, Params4D, assemble, constraint_residuals, family, sample_parameters
from liefol.foliation import (
    Split,
    analyze,
    conformal_adjoint_check,
    horizontal_ricci_defect,
    proposition4_predicates,
    second_fundamental_forms,
)
from liefol.lie_core import StructureConstants
from liefol.series import NilSpec, SolSpec, nil, nil_split, sol, sol_split

SPLIT = Split.from_vertical(4, (2, 3))


# === Split ===

def test_split_from_vertical_sorts_and_complements():
    split = Split.from_vertical(5, [4, 1])
    assert split.vertical == (1, 4)
    assert split.horizontal == (0, 2, 3)
    assert split.to_dict() == {'vertical': [1, 4], 'horizontal': [0, 2, 3]}


@pytest.mark.parametrize("vertical,horizontal", [
    ((), (0, 1)),
    ((0, 1), ()),
    ((0, 0), (1,)),
    ((0, 1), (1, 2)),
    ((0,), (2,)),
])
def test_bad_splits_are_rejected(vertical, horizontal):
    with pytest.raises(SplitError):
        Split(vertical, horizontal)


def test_out_of_range_vertical_index():
    with pytest.raises(SplitError):
        Split.from_vertical(3, [3])


def test_split_must_match_dimension(heisenberg):
    with pytest.raises(SplitError):
        analyze(heisenberg, SPLIT)


# === Predicates ===

def test_abelian_foliation_is_totally_geodesic(abelian4):
    report = analyze(abelian4, SPLIT)
    assert all(report.predicates().values())
    assert report.conformal_vector.is_zero()


def test_nil_foliation():
    """Riemannian with minimal, non-geodesic leaves."""
    spec = NilSpec(2)
    report = analyze(nil(spec), nil_split(spec, 1))
    assert report.vertical_integrable
    assert report.conformal
    assert report.riemannian
    assert report.minimal
    assert not report.totally_geodesic
    assert not report.horizontal_integrable


def test_sol_foliation_is_minimal_when_vertical_alphas_cancel():
    spec = SolSpec((5, 1, -1))
    report = analyze(sol(spec), sol_split(spec, 1))
    assert report.conformal and report.minimal and not report.totally_geodesic
    assert report.to_dict(spec.labels())['conformal_vector'] == {'X2': '0', 'X3': '0'}

    unbalanced = SolSpec((5, 1, 1))
    assert not analyze(sol(unbalanced), sol_split(unbalanced, 1)).minimal


def test_second_fundamental_forms_are_symmetric():
    spec = NilSpec(3)
    forms = second_fundamental_forms(nil(spec), nil_split(spec, 2))
    p, q = forms.vertical.shape[0], forms.horizontal.shape[0]
    assert all(forms.vertical_form(a, b).equals(forms.vertical_form(b, a)) for a in range(p) for b in range(p))
    assert all(forms.horizontal_form(a, b).equals(forms.horizontal_form(b, a)) for a in range(q) for b in range(q))


def test_non_integrable_vertical_distribution():
    # [Z, W] = X leaves V
    A = StructureConstants.from_brackets(4, {(2, 3): {0: 1}})
    report = analyze(A, SPLIT)
    assert not report.vertical_integrable
    with pytest.raises(SplitError):
        conformal_adjoint_check(A, SPLIT)


def test_non_conformal_split():
    # ad_W stretches X but not Y
    A = StructureConstants.from_brackets(4, {(3, 0): {0: 1}})
    assert not analyze(A, SPLIT).conformal
    assert not conformal_adjoint_check(A, SPLIT)


def test_report_dict_uses_labels():
    spec = NilSpec(2)
    data = analyze(nil(spec), nil_split(spec, 1)).to_dict(spec.labels())
    assert data['split'] == {'vertical': [2, 3], 'horizontal': [0, 1]}
    assert set(data['conformal_vector']) == {'X2', 'X3'}
    assert data['minimal'] is True


# === Closed forms against geometry ===

@given(st.integers(0, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_closed_form_predicates_match_analyze(seed):
    rng = random.Random(seed)
    fid = rng.choice(list(FAMILY_CATALOG))
    p = family(fid, sample_parameters(fid, rng))
    A = assemble(p)
    report = analyze(A, SPLIT)
    assert report.vertical_integrable and report.conformal and report.minimal
    assert conformal_adjoint_check(A, SPLIT)
    assert proposition4_predicates(p) == (report.totally_geodesic, report.riemannian, report.horizontal_integrable)


def test_closed_form_predicates_on_g1_member():
    p = family('g1', {'lambda': 1, 'r': 1, 'w1': 1, 'w2': 0})
    assert constraint_residuals(p).is_zero()
    # z's vanish but w1 != 0, alpha = a = 0, theta2 = 1
    assert proposition4_predicates(p) == (False, True, False)


def test_horizontal_ricci_defect_needs_two_dimensional_h():
    spec = NilSpec(2)
    with pytest.raises(SplitError):
        horizontal_ricci_defect(nil(spec), nil_split(spec, 2))


def test_horizontal_ricci_defect_of_nil():
    spec = NilSpec(3)
    diff, off = horizontal_ricci_defect(nil(spec), nil_split(spec, 1))
    assert diff == Fraction(-1)
    assert off == 0


def test_params_tolerance_mode():
    p = Params4D(lam=1.0, w1=1e-12)
    assert not p.exact
    assert proposition4_predicates(p, tolerance=1e-9)[0]
