"""
Levi-Civita connection, curvature and Ricci tensor of left-invariant metrics.
"""

import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liefol.errors import InvalidAlgebraError
from liefol.families import FAMILY_CATALOG, assemble, family, sample_parameters
from liefol.lie_core import StructureConstants, Vector
from liefol.metric_geometry import connection, curvature, ricci, scalar_curvature, sectional_curvature


def _member(seed):
    rng = random.Random(seed)
    fid = rng.choice(list(FAMILY_CATALOG))
    return assemble(family(fid, sample_parameters(fid, rng)))


def test_abelian_is_flat(abelian4):
    assert not np.any(curvature(abelian4).R)
    assert ricci(abelian4).diagonal() == [0, 0, 0, 0]
    assert scalar_curvature(abelian4) == 0


def test_heisenberg_connection(heisenberg):
    # nabla_e0 e1 = e2 / 2
    nabla = connection(heisenberg)
    assert nabla.covariant(0, 1).equals(Vector.of([0, 0, Fraction(1, 2)]))
    assert nabla.covariant(1, 0).equals(Vector.of([0, 0, Fraction(-1, 2)]))


def test_heisenberg_curvature(heisenberg):
    assert sectional_curvature(heisenberg, 0, 1) == Fraction(-3, 4)
    assert sectional_curvature(heisenberg, 0, 2) == Fraction(1, 4)
    assert ricci(heisenberg).diagonal() == [Fraction(-1, 2), Fraction(-1, 2), Fraction(1, 2)]
    assert ricci(heisenberg).is_diagonal()
    assert scalar_curvature(heisenberg) == Fraction(-1, 2)


def test_sectional_curvature_needs_distinct_vectors(heisenberg):
    with pytest.raises(ValueError):
        sectional_curvature(heisenberg, 1, 1)


def test_ricci_rejects_non_lie_algebras():
    A = StructureConstants.from_brackets(3, {(0, 1): {1: 1}, (0, 2): {0: 1}})
    with pytest.raises(InvalidAlgebraError):
        ricci(A)


def test_ricci_labels(heisenberg):
    data = ricci(heisenberg).to_dict(['X', 'Y', 'Z'])
    assert data['diagonal'] == {'X': '-1/2', 'Y': '-1/2', 'Z': '1/2'}
    assert data['is_diagonal'] is True
    assert data['matrix'][2] == ['0', '0', '1/2']


@given(st.integers(0, 10 ** 6))
@settings(max_examples=25, deadline=None)
def test_connection_is_metric_and_ricci_symmetric(seed):
    A = _member(seed)
    gamma = connection(A).gamma
    # <nabla_i e_j, e_k> + <e_j, nabla_i e_k> = 0
    assert not np.any(gamma + np.transpose(gamma, (0, 2, 1)))
    ric = ricci(A).ric
    assert not np.any(ric - ric.T)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=25, deadline=None)
def test_ricci_is_the_trace_of_curvature(seed):
    A = _member(seed)
    R = curvature(A).R
    assert not np.any(ricci(A).ric - np.einsum('ijki->jk', R))


@given(st.integers(0, 10 ** 6))
@settings(max_examples=15, deadline=None)
def test_approx_mode_agrees_with_exact(seed):
    A = _member(seed)
    exact = ricci(A).ric
    approx = ricci(A.to_approx()).ric
    assert np.allclose(approx, exact.astype(float), atol=1e-9)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=20, deadline=None)
def test_curvature_symmetries(seed):
    R = curvature(_member(seed)).R
    assert not np.any(R + np.transpose(R, (1, 0, 2, 3)))
    assert not np.any(R + np.transpose(R, (0, 1, 3, 2)))
    assert not np.any(R - np.transpose(R, (2, 3, 0, 1)))
    # first Bianchi: R(i,j)k + R(j,k)i + R(k,i)j = 0
    assert not np.any(R + np.transpose(R, (2, 0, 1, 3)) + np.transpose(R, (1, 2, 0, 3)))


@given(st.integers(0, 10 ** 6))
@settings(max_examples=25, deadline=None)
def test_connection_is_torsion_free(seed):
    A = _member(seed)
    gamma = connection(A).gamma
    # nabla_i e_j - nabla_j e_i = [e_i, e_j]
    assert not np.any(gamma - np.transpose(gamma, (1, 0, 2)) - A.tensor)


def _so3(t=1):
    return StructureConstants.from_brackets(3, {(0, 1): {2: t}, (1, 2): {0: t}, (2, 0): {1: t}})


def test_so3_has_constant_positive_curvature():
    A = _so3()
    assert [sectional_curvature(A, i, j) for i, j in ((0, 1), (0, 2), (1, 2))] == [Fraction(1, 4)] * 3
    ric = ricci(A)
    assert ric.is_diagonal()
    assert ric.diagonal() == [Fraction(1, 2)] * 3
    assert scalar_curvature(A) == Fraction(3, 2)


@given(st.integers(-6, 6).filter(bool))
@settings(max_examples=12, deadline=None)
def test_ricci_scales_quadratically_with_the_bracket(t):
    assert ricci(_so3(t)).diagonal() == [Fraction(t * t, 2)] * 3
