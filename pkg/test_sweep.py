"""
Randomized sweep: per-sample checks and report determinism.
"""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liefol.errors import LiefolError
from liefol.families import assemble, random_params4d
from liefol.lie_core import validate
from liefol.sweep import (
    _jacobi_holds,
    check_family_sample,
    check_residual_sample,
    check_series_sample,
    derive_seed,
    nil_checks,
    run_sweep,
)


def test_derive_seed_is_stable_and_distinct():
    assert derive_seed(7, 'g1', 0) == derive_seed(7, 'g1', 0)
    assert derive_seed(7, 'g1', 0) != derive_seed(7, 'g1', 1)
    assert derive_seed(7, 'g1', 0) != derive_seed(8, 'g1', 0)


@pytest.mark.parametrize("family_id", ['g1', 'g5', 'g13', 'g20'])
def test_family_samples_pass(family_id):
    for index in range(3):
        assert check_family_sample(family_id, derive_seed(0, family_id, index)) == []


def test_residual_and_series_samples_pass():
    for index in range(5):
        assert check_residual_sample(derive_seed(0, 'residuals', index)) == []
        assert check_series_sample(derive_seed(0, 'series', index)) == []


def test_nil_checks():
    assert nil_checks() == []


def test_run_sweep_report():
    report = run_sweep(['g1'], samples=3, seed=7)
    assert report['families'] == ['g1']
    assert report['results']['g1']['samples'] == 3
    assert report['total_failures'] == 0
    assert 'nil' not in report
    assert run_sweep(['g1'], samples=3, seed=7) == report


def test_worker_count_does_not_change_the_report():
    assert run_sweep(['g2', 'g9'], samples=2, seed=11, workers=2) == run_sweep(['g2', 'g9'], samples=2, seed=11)


def test_unknown_family():
    with pytest.raises(LiefolError):
        run_sweep(['g0'], samples=1)


def test_single_suite_selection():
    report = run_sweep(samples=20, seed=3, suites=('residuals',))
    assert report['suites'] == ['residuals']
    assert report['families'] == []
    assert set(report['results']) == {'residuals'}
    assert report['results']['residuals']['samples'] == 20
    assert 'nil' not in report
    assert report['total_failures'] == 0


def test_series_suite_includes_nil_checks():
    report = run_sweep(['g4'], samples=2, seed=3, suites=('series',))
    assert report['families'] == []
    assert set(report['results']) == {'series'}
    assert report['nil']['failures'] == []


def test_unknown_suite():
    with pytest.raises(LiefolError):
        run_sweep(samples=1, suites=('everything',))


@given(st.integers(0, 10 ** 6))
@settings(max_examples=100, deadline=None)
def test_triple_check_matches_full_validation(seed):
    p = random_params4d(random.Random(seed))
    assert _jacobi_holds(assemble(p).tensor) == validate(assemble(p)).valid
