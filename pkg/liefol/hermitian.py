"""
Almost Hermitian structures adapted to a 2+2 split of a 4-dimensional
metric Lie algebra, and their integrability.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Dict, Tuple

import numpy as np

from liefol.errors import AlmostComplexError, SplitError
from liefol.foliation import Split
from liefol.lie_core import StructureConstants, _frozen, as_array, identity, is_zero, zeros

if TYPE_CHECKING:
    from liefol.families import Params4D


@dataclass(frozen=True, eq=False)
class AlmostComplexStructure:
    """J[k][i] = coefficient of e_k in J e_i. Orthogonal with J^2 = -Id."""
    J: np.ndarray
    name: str = "J"

    def __post_init__(self):
        J = np.asarray(self.J)
        n = J.shape[0]
        if J.ndim != 2 or J.shape != (n, n) or n % 2:
            raise AlmostComplexError(f"almost complex structure needs an even square matrix, got {J.shape}")
        exact = J.dtype == object
        tol = 0 if exact else 1e-12
        if not is_zero(J.dot(J) + identity(n, exact), tol):
            raise AlmostComplexError(f"{self.name}^2 is not -Id")
        if not is_zero(J.T.dot(J) - identity(n, exact), tol):
            raise AlmostComplexError(f"{self.name} is not orthogonal")
        object.__setattr__(self, 'J', _frozen(J))

    @property
    def dim(self) -> int:
        return self.J.shape[0]

    def preserves(self, split: Split) -> bool:
        return all(self.J[k, i] == 0 for i in split.vertical for k in split.horizontal) and all(
            self.J[k, i] == 0 for i in split.horizontal for k in split.vertical
        )

    def negated(self) -> "AlmostComplexStructure":
        return AlmostComplexStructure(-self.J, f"-{self.name}")


def adapted_structures(split: Split, exact: bool = True) -> Tuple[AlmostComplexStructure, AlmostComplexStructure]:
    """
    With H = (X, Y) and V = (Z, W): J1 X = Y, J1 Z = W; J2 agrees on H and sends W to Z.
    """
    if split.dim != 4 or len(split.vertical) != 2:
        raise SplitError("adapted almost Hermitian structures need dimension 4 with a 2+2 split")
    one = Fraction(1) if exact else 1.0
    (x, y), (z, w) = split.horizontal, split.vertical

    J1 = zeros((4, 4), exact)
    J1[y, x], J1[x, y] = one, -one
    J1[w, z], J1[z, w] = one, -one

    J2 = J1.copy()
    J2[w, z], J2[z, w] = -one, one
    return AlmostComplexStructure(J1, "J1"), AlmostComplexStructure(J2, "J2")


def nijenhuis(A: StructureConstants, J: AlmostComplexStructure) -> np.ndarray:
    """N(e_i, e_j) = [Je_i, Je_j] - J[Je_i, e_j] - J[e_i, Je_j] - [e_i, e_j], as N[i][j][k]."""
    if J.dim != A.dim:
        raise AlmostComplexError(f"{J.name} has dimension {J.dim}, algebra has {A.dim}")
    c = A.tensor
    M = J.J if (J.J.dtype == object) == A.exact else as_array(J.J, A.exact)
    return (
        np.einsum('pi,qj,pqk->ijk', M, M, c)
        - np.einsum('km,pi,pjm->ijk', M, M, c)
        - np.einsum('km,qj,iqm->ijk', M, M, c)
        - c
    )


def is_integrable(A: StructureConstants, J: AlmostComplexStructure) -> bool:
    return A.is_zero(nijenhuis(A, J))


def integrability_closed_form(p: "Params4D", tolerance: float = 0) -> Tuple[bool, bool]:
    """J1: 2z1 - z4 - w2 = 2z2 + z3 + w1 = 0.  J2: 2z1 + z4 + w2 = 2z2 - z3 - w1 = 0."""
    zero = lambda *xs: all(abs(x) <= tolerance for x in xs)  # noqa: E731
    j1 = zero(2 * p.z1 - p.z4 - p.w2, 2 * p.z2 + p.z3 + p.w1)
    j2 = zero(2 * p.z1 + p.z4 + p.w2, 2 * p.z2 - p.z3 - p.w1)
    return j1, j2


def holomorphic_summary(p: "Params4D", tolerance: float = 0) -> Dict[str, bool]:
    """Which adapted structure, if any, makes the normal-form foliation holomorphic."""
    j1, j2 = integrability_closed_form(p, tolerance)
    return {'J1': j1, 'J2': j2, 'holomorphic': j1 or j2}
