"""
Structure-constant representation of finite-dimensional algebras.
Bracket evaluation, Jacobi validation and orthonormal frame changes.

Exact mode stores numpy object arrays of Fraction; approx mode stores float64
arrays and compares against a tolerance.
"""

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from liefol import config
from liefol.errors import DimensionMismatchError, InvalidAlgebraError

Scalar = Union[Fraction, float]

_RATIONAL = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


# === Scalars ===

def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or an integer literal. Decimal strings are rejected."""
    text = text.strip()
    if not _RATIONAL.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


def to_scalar(value, exact: bool = True) -> Scalar:
    """Coerce ints, Fractions, floats and rational strings to the mode's scalar type. Floats convert exactly."""
    if isinstance(value, str):
        value = parse_rational(value) if _RATIONAL.match(value.strip()) else float(value)
    if exact:
        return Fraction(value)
    return float(value)


def format_scalar(value: Scalar) -> Union[str, float]:
    """Exact rationals render as "p/q" strings, floats stay floats."""
    if isinstance(value, (float, np.floating)):
        return float(value)
    return str(Fraction(value))


def rational_sqrt(value: Scalar) -> Optional[Fraction]:
    """Exact square root of a non-negative rational, or None when irrational."""
    value = Fraction(value)
    if value < 0:
        return None
    p, q = value.numerator, value.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def is_zero(value, tolerance: float = 0) -> bool:
    """Scalar or array zero test: exact when tolerance is 0."""
    if isinstance(value, np.ndarray):
        if value.size == 0:
            return True
        return bool(np.all(np.abs(value) <= tolerance))
    return bool(abs(value) <= tolerance)


def zeros(shape, exact: bool = True) -> np.ndarray:
    if exact:
        return np.full(shape, Fraction(0), dtype=object)
    return np.zeros(shape, dtype=float)


def as_array(data, exact: bool = True) -> np.ndarray:
    """Array of the mode's scalar type from nested sequences or another array."""
    arr = np.asarray(data, dtype=object)
    if exact:
        out = np.empty(arr.shape, dtype=object)
        for idx in np.ndindex(arr.shape):
            out[idx] = to_scalar(arr[idx], exact=True)
        return out
    return np.array([float(x) for x in arr.reshape(-1)], dtype=float).reshape(arr.shape)


def identity(n: int, exact: bool = True) -> np.ndarray:
    out = zeros((n, n), exact)
    for i in range(n):
        out[i, i] = Fraction(1) if exact else 1.0
    return out


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


# === Vectors ===

@dataclass(frozen=True, eq=False)
class Vector:
    """Coordinates in the fixed orthonormal frame."""
    coords: np.ndarray

    def __post_init__(self):
        if self.coords.ndim != 1:
            raise DimensionMismatchError("vector coordinates must be one-dimensional")
        object.__setattr__(self, 'coords', _frozen(self.coords))

    @classmethod
    def of(cls, values: Iterable, exact: bool = True) -> "Vector":
        return cls(as_array(list(values), exact))

    @classmethod
    def basis(cls, dim: int, index: int, exact: bool = True) -> "Vector":
        coords = zeros(dim, exact)
        coords[index] = Fraction(1) if exact else 1.0
        return cls(coords)

    @classmethod
    def zero(cls, dim: int, exact: bool = True) -> "Vector":
        return cls(zeros(dim, exact))

    @property
    def dim(self) -> int:
        return self.coords.shape[0]

    def __add__(self, other: "Vector") -> "Vector":
        _check_dims(self.dim, other.dim)
        return Vector(self.coords + other.coords)

    def __sub__(self, other: "Vector") -> "Vector":
        _check_dims(self.dim, other.dim)
        return Vector(self.coords - other.coords)

    def __neg__(self) -> "Vector":
        return Vector(-self.coords)

    def __rmul__(self, scalar) -> "Vector":
        return Vector(self.coords * scalar)

    def is_zero(self, tolerance: float = 0) -> bool:
        return is_zero(self.coords, tolerance)

    def equals(self, other: "Vector", tolerance: float = 0) -> bool:
        return self.dim == other.dim and is_zero(self.coords - other.coords, tolerance)

    def __getitem__(self, index: int) -> Scalar:
        return self.coords[index]

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self) -> str:
        return f"Vector({[format_scalar(x) for x in self.coords]})"


def _check_dims(*dims: int):
    if len(set(dims)) > 1:
        raise DimensionMismatchError(f"dimension mismatch: {dims}")


# === Structure constants ===

@dataclass(frozen=True, eq=False)
class StructureConstants:
    """
    c[i][j][k] = coefficient of e_k in [e_i, e_j], orthonormal frame implicit.
    Antisymmetry is enforced at construction; the array is read-only.
    """
    tensor: np.ndarray
    tolerance_override: Optional[float] = field(default=None)

    def __post_init__(self):
        t = self.tensor
        if t.ndim != 3 or not (t.shape[0] == t.shape[1] == t.shape[2]) or t.shape[0] < 1:
            raise DimensionMismatchError(f"structure constants must be n x n x n, got {t.shape}")
        object.__setattr__(self, 'tensor', _frozen(t))
        violations = antisymmetry_violations(t, self.tolerance)
        if violations:
            raise InvalidAlgebraError(
                f"structure constants are not antisymmetric at {violations[:5]}"
            )

    @classmethod
    def from_brackets(
        cls,
        dim: int,
        brackets: Mapping[Tuple[int, int], Mapping[int, object]],
        exact: bool = True,
        tolerance: Optional[float] = None
    ) -> "StructureConstants":
        """Build from {(i, j): {k: coeff}} with antisymmetric closure."""
        c = zeros((dim, dim, dim), exact)
        for (i, j), coeffs in brackets.items():
            for k, value in coeffs.items():
                if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                    raise DimensionMismatchError(f"bracket index out of range: [{i},{j}] -> {k}")
                value = to_scalar(value, exact)
                if i == j:
                    if value != 0:
                        raise InvalidAlgebraError(f"[e{i}, e{i}] must vanish")
                    continue
                c[i, j, k] = value
                c[j, i, k] = -value
        return cls(c, tolerance)

    @classmethod
    def abelian(cls, dim: int, exact: bool = True) -> "StructureConstants":
        return cls(zeros((dim, dim, dim), exact))

    @property
    def dim(self) -> int:
        return self.tensor.shape[0]

    @property
    def exact(self) -> bool:
        return self.tensor.dtype == object

    @property
    def tolerance(self) -> float:
        if self.exact:
            return 0
        if self.tolerance_override is not None:
            return self.tolerance_override
        largest = float(np.max(np.abs(self.tensor))) if self.tensor.size else 0.0
        return config.TOLERANCE_SCALE * (1 + largest)

    def is_zero(self, value) -> bool:
        return is_zero(value, self.tolerance)

    def to_approx(self, tolerance: Optional[float] = None) -> "StructureConstants":
        return StructureConstants(as_array(self.tensor, exact=False), tolerance)

    def nonzero_brackets(self) -> Iterator[Tuple[int, int, Dict[int, Scalar]]]:
        """Yield (i, j, {k: coeff}) for i < j with a nonzero bracket."""
        n = self.dim
        for i, j in itertools.combinations(range(n), 2):
            coeffs = {k: self.tensor[i, j, k] for k in range(n) if not self.is_zero(self.tensor[i, j, k])}
            if coeffs:
                yield i, j, coeffs

    def equals(self, other: "StructureConstants", tolerance: Optional[float] = None) -> bool:
        if self.dim != other.dim:
            return False
        tol = max(self.tolerance, other.tolerance) if tolerance is None else tolerance
        return is_zero(self.tensor - other.tensor, tol)

    def __repr__(self) -> str:
        entries = [
            f"[e{i},e{j}]=" + "+".join(f"{format_scalar(v)}e{k}" for k, v in coeffs.items())
            for i, j, coeffs in self.nonzero_brackets()
        ]
        return f"StructureConstants(dim={self.dim}, {', '.join(entries) or 'abelian'})"


def antisymmetry_violations(tensor: np.ndarray, tolerance: float = 0) -> List[Tuple[int, int, int]]:
    n = tensor.shape[0]
    bad = []
    for i, j, k in itertools.product(range(n), repeat=3):
        if j < i:
            continue
        if abs(tensor[i, j, k] + tensor[j, i, k]) > tolerance:
            bad.append((i, j, k))
    return bad


# === Operations ===

def bracket(A: StructureConstants, u: Vector, v: Vector) -> Vector:
    """[u, v] = sum u_i v_j c[i][j][k] e_k."""
    _check_dims(A.dim, u.dim, v.dim)
    return Vector(np.einsum('i,j,ijk->k', u.coords, v.coords, A.tensor))


def jacobiator(A: StructureConstants, u: Vector, v: Vector, w: Vector) -> Vector:
    """[[u,v],w] + [[w,u],v] + [[v,w],u]."""
    _check_dims(A.dim, u.dim, v.dim, w.dim)
    return (
        bracket(A, bracket(A, u, v), w)
        + bracket(A, bracket(A, w, u), v)
        + bracket(A, bracket(A, v, w), u)
    )


def basis_jacobiator(tensor: np.ndarray, i: int, j: int, k: int) -> np.ndarray:
    """Jacobiator of three basis elements straight from the tensor."""
    return (
        np.dot(tensor[i, j], tensor[:, k, :])
        + np.dot(tensor[k, i], tensor[:, j, :])
        + np.dot(tensor[j, k], tensor[:, i, :])
    )


@dataclass(frozen=True, eq=False)
class ValidationReport:
    valid: bool
    antisymmetry_violations: List[Tuple[int, int, int]]
    max_residual: Scalar
    worst_triple: Optional[Tuple[int, int, int]]
    residual: Optional[Vector]
    tolerance: float

    def to_dict(self) -> dict:
        return {
            'valid': self.valid,
            'antisymmetry_violations': [list(t) for t in self.antisymmetry_violations],
            'max_residual': format_scalar(self.max_residual),
            'worst_triple': list(self.worst_triple) if self.worst_triple else None,
            'residual': [format_scalar(x) for x in self.residual] if self.residual is not None else None,
            'tolerance': self.tolerance,
        }


def validate(A: Union[StructureConstants, np.ndarray], tolerance: Optional[float] = None) -> ValidationReport:
    """
    Report antisymmetry violations and the largest Jacobiator over basis triples i<j<k.
    Accepts a raw array so data rejected by the StructureConstants constructor can still be inspected.
    """
    if isinstance(A, StructureConstants):
        tensor, tol = A.tensor, A.tolerance if tolerance is None else tolerance
    else:
        tensor = np.asarray(A)
        exact = tensor.dtype == object
        tol = 0 if exact else (tolerance if tolerance is not None else
                               config.TOLERANCE_SCALE * (1 + float(np.max(np.abs(tensor)))))
    n = tensor.shape[0]
    violations = antisymmetry_violations(tensor, tol)

    max_residual: Scalar = Fraction(0) if tensor.dtype == object else 0.0
    worst, worst_vector = None, None
    for i, j, k in itertools.combinations(range(n), 3):
        residual = basis_jacobiator(tensor, i, j, k)
        size = max(abs(x) for x in residual)
        if size > max_residual:
            max_residual, worst, worst_vector = size, (i, j, k), Vector(np.array(residual, dtype=tensor.dtype))

    valid = not violations and bool(max_residual <= tol)
    return ValidationReport(valid, violations, max_residual, worst, worst_vector, tol)


def require_valid(A: StructureConstants) -> None:
    report = validate(A)
    if not report.valid:
        raise InvalidAlgebraError(
            f"not a Lie algebra: Jacobi residual {format_scalar(report.max_residual)} "
            f"at basis triple {report.worst_triple}"
        )


def change_frame(A: StructureConstants, Q: np.ndarray) -> StructureConstants:
    """
    Structure constants in the orthonormal frame whose vectors are the columns of Q.
    c'[i][j][k] = sum Q[p][i] Q[q][j] c[p][q][s] Q[s][k].
    """
    Q = np.asarray(Q)
    _check_dims(A.dim, Q.shape[0], Q.shape[1])
    exact = A.exact and Q.dtype == object
    tensor = A.tensor if exact else as_array(A.tensor, exact=False)
    Q = Q if exact else as_array(Q, exact=False)
    tol = 0 if exact else config.TOLERANCE_SCALE * 10
    if not is_zero(Q.T.dot(Q) - identity(A.dim, exact), tol):
        raise DimensionMismatchError("frame change matrix is not orthogonal")
    # one index at a time
    rotated = np.einsum('pi,pqs->iqs', Q, tensor)
    rotated = np.einsum('qj,iqs->ijs', Q, rotated)
    rotated = np.einsum('ijs,sk->ijk', rotated, Q)
    return StructureConstants(rotated, None if exact else A.tolerance_override)


def permutation_matrix(order: Sequence[int], exact: bool = True) -> np.ndarray:
    """Q whose column i is e_{order[i]}."""
    n = len(order)
    Q = zeros((n, n), exact)
    for col, row in enumerate(order):
        Q[row, col] = Fraction(1) if exact else 1.0
    return Q


def matrix_rank(matrix: np.ndarray, tolerance: float = 0) -> int:
    """Row-reduction rank; exact on Fraction arrays."""
    m = [list(row) for row in np.asarray(matrix)]
    rank, rows = 0, len(m)
    cols = len(m[0]) if rows else 0
    for col in range(cols):
        pivot = max(range(rank, rows), key=lambda r: abs(m[r][col]), default=None)
        if pivot is None or abs(m[pivot][col]) <= tolerance:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(rows):
            if r != rank and m[r][col] != 0:
                factor = m[r][col] / m[rank][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def derived_dimension(A: StructureConstants) -> int:
    """Dimension of [g, g]."""
    n = A.dim
    return matrix_rank(A.tensor.reshape(n * n, n), A.tolerance)


def is_abelian(A: StructureConstants) -> bool:
    return A.is_zero(A.tensor)
