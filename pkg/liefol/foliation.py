"""
Orthogonal vertical/horizontal splittings of a metric Lie algebra.
Second fundamental forms and the foliation predicates built on them.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Dict, Optional, Sequence, Tuple

import numpy as np

from liefol.errors import SplitError
from liefol.lie_core import StructureConstants, Vector, format_scalar, is_zero, zeros
from liefol.metric_geometry import connection, ricci

if TYPE_CHECKING:
    from liefol.families import Params4D


@dataclass(frozen=True)
class Split:
    """Coordinate split: vertical and horizontal index sets, each sorted."""
    vertical: Tuple[int, ...]
    horizontal: Tuple[int, ...]

    def __post_init__(self):
        vertical, horizontal = tuple(sorted(self.vertical)), tuple(sorted(self.horizontal))
        object.__setattr__(self, 'vertical', vertical)
        object.__setattr__(self, 'horizontal', horizontal)
        if not vertical or not horizontal:
            raise SplitError("vertical and horizontal index sets must both be non-empty")
        if len(set(vertical)) != len(vertical) or len(set(horizontal)) != len(horizontal):
            raise SplitError("repeated index in split")
        if set(vertical) & set(horizontal):
            raise SplitError(f"vertical and horizontal overlap: {sorted(set(vertical) & set(horizontal))}")
        if set(vertical) | set(horizontal) != set(range(self.dim)):
            raise SplitError(f"split does not cover 0..{self.dim - 1}")

    @classmethod
    def from_vertical(cls, dim: int, vertical: Sequence[int]) -> "Split":
        bad = [v for v in vertical if not 0 <= v < dim]
        if bad:
            raise SplitError(f"vertical indices out of range for dimension {dim}: {bad}")
        return cls(tuple(vertical), tuple(i for i in range(dim) if i not in set(vertical)))

    @property
    def dim(self) -> int:
        return len(self.vertical) + len(self.horizontal)

    def to_dict(self) -> dict:
        return {'vertical': list(self.vertical), 'horizontal': list(self.horizontal)}


def _check_split(A: StructureConstants, split: Split):
    if split.dim != A.dim:
        raise SplitError(f"split covers {split.dim} indices but the algebra has dimension {A.dim}")


@dataclass(frozen=True, eq=False)
class SecondFundamentalForms:
    """
    vertical[a][b] = B^V(V_a, V_b), a horizontal vector;
    horizontal[a][b] = B^H(H_a, H_b), a vertical vector.
    Vectors carry full-frame coordinates.
    """
    split: Split
    vertical: np.ndarray
    horizontal: np.ndarray

    def vertical_form(self, a: int, b: int) -> Vector:
        return Vector(self.vertical[a, b].copy())

    def horizontal_form(self, a: int, b: int) -> Vector:
        return Vector(self.horizontal[a, b].copy())


def second_fundamental_forms(A: StructureConstants, split: Split, check: bool = True) -> SecondFundamentalForms:
    """B^V(U,V) = H(nabla_U V + nabla_V U)/2 and B^H(X,Y) = V(nabla_X Y + nabla_Y X)/2."""
    _check_split(A, split)
    G = connection(A, check).gamma
    sym = (G + np.transpose(G, (1, 0, 2))) * (Fraction(1, 2) if A.exact else 0.5)

    def restrict(block: Tuple[int, ...], target: Tuple[int, ...]) -> np.ndarray:
        out = zeros((len(block), len(block), A.dim), A.exact)
        for (a, i), (b, j) in itertools.product(enumerate(block), repeat=2):
            for k in target:
                out[a, b, k] = sym[i, j, k]
        return out

    return SecondFundamentalForms(
        split,
        restrict(split.vertical, split.horizontal),
        restrict(split.horizontal, split.vertical),
    )



@dataclass(frozen=True, eq=False)
class FoliationReport:
    split: Split
    vertical_integrable: bool
    conformal: bool
    conformal_vector: Optional[Vector]
    riemannian: bool
    minimal: bool
    totally_geodesic: bool
    horizontal_integrable: bool

    def predicates(self) -> Dict[str, bool]:
        return {
            'vertical_integrable': self.vertical_integrable,
            'conformal': self.conformal,
            'riemannian': self.riemannian,
            'minimal': self.minimal,
            'totally_geodesic': self.totally_geodesic,
            'horizontal_integrable': self.horizontal_integrable,
        }

    def to_dict(self, labels: Optional[Sequence[str]] = None) -> dict:
        labels = labels or [f"e{i}" for i in range(self.split.dim)]
        data = {**self.predicates(), 'split': self.split.to_dict()}
        data['conformal_vector'] = (
            {labels[v]: format_scalar(self.conformal_vector[v]) for v in self.split.vertical}
            if self.conformal_vector is not None else None
        )
        return data


def _closed(A: StructureConstants, block: Tuple[int, ...], complement: Tuple[int, ...]) -> bool:
    """[block, block] has no component along the complement."""
    c = A.tensor
    return all(
        A.is_zero(c[i, j, k])
        for i, j in itertools.combinations(block, 2)
        for k in complement
    )


def analyze(A: StructureConstants, split: Split, check: bool = True) -> FoliationReport:
    forms = second_fundamental_forms(A, split, check)
    tol = A.tolerance
    q = len(split.horizontal)

    BH = forms.horizontal
    conformal = all(is_zero(BH[a, a] - BH[0, 0], tol) for a in range(q)) and all(
        is_zero(BH[a, b], tol) for a in range(q) for b in range(q) if a != b
    )
    conformal_vector = Vector(BH[0, 0].copy()) if conformal else None

    BV = forms.vertical
    trace = sum((BV[a, a] for a in range(len(split.vertical))), zeros(A.dim, A.exact))

    return FoliationReport(
        split=split,
        vertical_integrable=_closed(A, split.vertical, split.horizontal),
        conformal=conformal,
        conformal_vector=conformal_vector,
        riemannian=conformal and conformal_vector.is_zero(tol),
        minimal=is_zero(trace, tol),
        totally_geodesic=is_zero(BV, tol),
        horizontal_integrable=_closed(A, split.horizontal, split.vertical),
    )


def adjoint_block(A: StructureConstants, split: Split, v: int) -> np.ndarray:
    """Horizontal block of ad_{e_v}: M[a][b] = <[e_v, H_b], H_a>."""
    H = split.horizontal
    return np.array([[A.tensor[v, y, k] for y in H] for k in H], dtype=A.tensor.dtype)


def conformal_adjoint_check(A: StructureConstants, split: Split) -> bool:
    """
    Each vertical element acts on the horizontal space by a conformal map
    (M + M^T a multiple of the identity), and V -> gl(H) is a representation.
    """
    _check_split(A, split)
    if not _closed(A, split.vertical, split.horizontal):
        raise SplitError("vertical distribution is not integrable")
    tol = A.tolerance
    blocks = {v: adjoint_block(A, split, v) for v in split.vertical}
    q = len(split.horizontal)

    for M in blocks.values():
        S = M + M.T
        if not (is_zero(S - np.diag([S[0, 0]] * q), tol)):
            return False

    c = A.tensor
    for v1, v2 in itertools.combinations(split.vertical, 2):
        lhs = sum((blocks[k] * c[v1, v2, k] for k in split.vertical), zeros((q, q), A.exact))
        rhs = blocks[v1].dot(blocks[v2]) - blocks[v2].dot(blocks[v1])
        if not is_zero(lhs - rhs, tol):
            return False
    return True


def proposition4_predicates(p: "Params4D", tolerance: float = 0) -> Tuple[bool, bool, bool]:
    """(totally_geodesic, riemannian, horizontal_integrable) of the normal form, read off its constants."""
    zero = lambda *xs: all(abs(x) <= tolerance for x in xs)  # noqa: E731
    totally_geodesic = zero(p.z1, p.z2, p.z3 + p.w1, p.z4 + p.w2)
    riemannian = zero(p.alpha, p.a)
    horizontal_integrable = zero(p.theta1, p.theta2)
    return totally_geodesic, riemannian, horizontal_integrable


def horizontal_ricci_defect(A: StructureConstants, split: Split, check: bool = True):
    """(Ric(X,X) - Ric(Y,Y), Ric(X,Y)) for a two-dimensional horizontal space H = span{X, Y}."""
    _check_split(A, split)
    if len(split.horizontal) != 2:
        raise SplitError("horizontal space must be two-dimensional")
    x, y = split.horizontal
    ric = ricci(A, check).ric
    return ric[x, x] - ric[y, y], ric[x, y]
