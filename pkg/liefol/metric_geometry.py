"""
Levi-Civita connection, curvature and Ricci data of the left-invariant metric
that makes the structure-constant frame orthonormal.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence

import numpy as np

from liefol.lie_core import (
    StructureConstants,
    Vector,
    _frozen,
    format_scalar,
    require_valid,
    Scalar,
)


def _half(A: StructureConstants):
    return Fraction(1, 2) if A.exact else 0.5


@dataclass(frozen=True, eq=False)
class ConnectionCoefficients:
    """gamma[i][j][k] = <nabla_{e_i} e_j, e_k>"""
    gamma: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'gamma', _frozen(self.gamma))

    @property
    def dim(self) -> int:
        return self.gamma.shape[0]

    def covariant(self, i: int, j: int) -> Vector:
        """nabla_{e_i} e_j"""
        return Vector(self.gamma[i, j].copy())


@dataclass(frozen=True, eq=False)
class CurvatureTensor:
    """R[i][j][k][l] = <R(e_i, e_j) e_k, e_l>"""
    R: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'R', _frozen(self.R))


@dataclass(frozen=True, eq=False)
class RicciTensor:
    ric: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'ric', _frozen(self.ric))

    @property
    def dim(self) -> int:
        return self.ric.shape[0]

    def diagonal(self) -> list:
        return [self.ric[i, i] for i in range(self.dim)]

    def is_diagonal(self, tolerance: float = 0) -> bool:
        n = self.dim
        return all(abs(self.ric[i, j]) <= tolerance for i in range(n) for j in range(n) if i != j)

    def labelled_diagonal(self, labels: Optional[Sequence[str]] = None) -> Dict[str, Scalar]:
        labels = labels or [f"e{i}" for i in range(self.dim)]
        return {label: value for label, value in zip(labels, self.diagonal())}

    def to_dict(self, labels: Optional[Sequence[str]] = None, tolerance: float = 0) -> dict:
        return {
            'diagonal': {k: format_scalar(v) for k, v in self.labelled_diagonal(labels).items()},
            'is_diagonal': self.is_diagonal(tolerance),
            'matrix': [[format_scalar(x) for x in row] for row in self.ric],
        }


def connection(A: StructureConstants, check: bool = True) -> ConnectionCoefficients:
    """Koszul formula in an orthonormal frame: gamma_ijk = (c_ijk - c_jki + c_kij) / 2."""
    if check:
        require_valid(A)
    c = A.tensor
    gamma = (c - np.transpose(c, (2, 0, 1)) + np.transpose(c, (1, 2, 0))) * _half(A)
    return ConnectionCoefficients(gamma)


def curvature(A: StructureConstants, connection_coefficients: Optional[ConnectionCoefficients] = None) -> CurvatureTensor:
    """R(e_i,e_j)e_k = nabla_i nabla_j e_k - nabla_j nabla_i e_k - nabla_[e_i,e_j] e_k."""
    G = (connection_coefficients or connection(A)).gamma
    c = A.tensor
    R = (
        np.einsum('jkm,iml->ijkl', G, G)
        - np.einsum('ikm,jml->ijkl', G, G)
        - np.einsum('ijm,mkl->ijkl', c, G)
    )
    return CurvatureTensor(R)


def ricci(A: StructureConstants, check: bool = True) -> RicciTensor:
    """ric[j][k] = sum_i R[i][j][k][i], contracted without materializing R."""
    G = connection(A, check).gamma
    c = A.tensor
    ric = (
        np.einsum('jkm,imi->jk', G, G)
        - np.einsum('ikm,jmi->jk', G, G)
        - np.einsum('ijm,mki->jk', c, G)
    )
    return RicciTensor(ric)


def sectional_curvature(A: StructureConstants, i: int, j: int) -> Scalar:
    """K of the plane spanned by the orthonormal pair e_i, e_j."""
    if i == j:
        raise ValueError("sectional curvature needs two distinct basis vectors")
    return curvature(A).R[i, j, j, i]


def scalar_curvature(A: StructureConstants) -> Scalar:
    ric = ricci(A).ric
    return sum(ric[i, i] for i in range(A.dim))
