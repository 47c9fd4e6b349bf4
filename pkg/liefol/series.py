"""
Nilpotent and solvable series of metric Lie algebras carrying minimal
conformal foliations, with their Ricci operators in closed form.

Frames list W first: Nil^{n+2} uses (W, X1, ..., X_{n+1}) and Sol^{n+1} uses
(W, X1, ..., X_n). The three-dimensional algebras use (X, Y, W).
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from liefol import config
from liefol.errors import HypothesisError, InvalidAlgebraError, SeriesRangeError
from liefol.foliation import Split, analyze, horizontal_ricci_defect
from liefol.lie_core import Scalar, StructureConstants, parse_rational, to_scalar, zeros
from liefol.metric_geometry import RicciTensor, ricci

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NilSpec:
    """[W, X_k] = X_{k+1} for k = 1..n."""
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise SeriesRangeError(f"Nil series needs n >= 1, got {self.n}")

    @property
    def dim(self) -> int:
        return self.n + 2

    def labels(self) -> List[str]:
        return ["W"] + [f"X{k}" for k in range(1, self.n + 2)]


@dataclass(frozen=True)
class SolSpec:
    """[W, X_k] = alpha_k X_k for k = 1..n."""
    alphas: Tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.alphas) < 1:
            raise SeriesRangeError("Sol series needs at least one alpha")
        object.__setattr__(self, 'alphas', tuple(to_scalar(a) for a in self.alphas))

    @property
    def n(self) -> int:
        return len(self.alphas)

    @property
    def dim(self) -> int:
        return self.n + 1

    def labels(self) -> List[str]:
        return ["W"] + [f"X{k}" for k in range(1, self.n + 1)]

    def in_stated_range(self, k: int) -> bool:
        return 1 <= k <= self.n - 2


def nil(spec: NilSpec) -> StructureConstants:
    c = zeros((spec.dim,) * 3)
    for k in range(1, spec.n + 1):
        c[0, k, k + 1] = Fraction(1)
        c[k, 0, k + 1] = Fraction(-1)
    return StructureConstants(c)


def nil_split(spec: NilSpec, k: int) -> Split:
    """H = {W, X1..Xk}, V = {X_{k+1}..X_{n+1}}."""
    if not 1 <= k <= spec.n:
        raise SeriesRangeError(f"Nil split index must lie in 1..{spec.n}, got {k}")
    return Split.from_vertical(spec.dim, range(k + 1, spec.dim))


def sol(spec: SolSpec) -> StructureConstants:
    c = zeros((spec.dim,) * 3)
    for k, alpha in enumerate(spec.alphas, start=1):
        c[0, k, k] = alpha
        c[k, 0, k] = -alpha
    return StructureConstants(c)


def sol_split(spec: SolSpec, k: int) -> Split:
    """H = {W, X1..Xk}. k = n-1 is accepted beyond the usual range 1..n-2."""
    if not 1 <= k <= spec.n - 1:
        raise SeriesRangeError(f"Sol split index must lie in 1..{spec.n - 1}, got {k}")
    if not spec.in_stated_range(k):
        logger.warning(f"Sol split k={k} lies outside 1..{spec.n - 2}")
    return Split.from_vertical(spec.dim, range(k + 1, spec.dim))


def ricci_closed_form(spec) -> RicciTensor:
    """Diagonal Ricci operator predicted for the series member."""
    diag: List[Scalar]
    if isinstance(spec, NilSpec):
        half = Fraction(1, 2)
        diag = [Fraction(-spec.n, 2), -half] + [Fraction(0)] * (spec.n - 1) + [half]
    elif isinstance(spec, SolSpec):
        total = sum(spec.alphas, Fraction(0))
        diag = [-sum((a * a for a in spec.alphas), Fraction(0))] + [-a * total for a in spec.alphas]
    else:
        raise TypeError(f"unsupported series spec {type(spec).__name__}")
    ric = zeros((len(diag), len(diag)))
    for i, value in enumerate(diag):
        ric[i, i] = value
    return RicciTensor(ric)


def algebra(spec) -> StructureConstants:
    if isinstance(spec, NilSpec):
        return nil(spec)
    if isinstance(spec, SolSpec):
        return sol(spec)
    raise TypeError(f"unsupported series spec {type(spec).__name__}")


def theorem2_gap(spec, k: int = 1) -> Scalar:
    """
    Ric(X1, X1) - Ric(W, W) for the split with H = {W, X1}. Nonzero values show
    that the horizontal Ricci curvature of a conformal foliation with minimal
    leaves need not be isotropic once the dimension exceeds three.
    """
    if k != 1:
        raise HypothesisError("the curvature comparison needs a two-dimensional horizontal space (k = 1)")
    if isinstance(spec, NilSpec):
        A, split = nil(spec), nil_split(spec, 1)
    elif isinstance(spec, SolSpec):
        if spec.n < 2:
            raise HypothesisError("Sol split with k = 1 needs n >= 2")
        A, split = sol(spec), sol_split(spec, 1)
    else:
        raise TypeError(f"unsupported series spec {type(spec).__name__}")

    report = analyze(A, split)
    if not (report.vertical_integrable and report.conformal and report.minimal):
        raise HypothesisError("foliation is not conformal with minimal leaves")
    ric = ricci(A).ric
    return ric[1, 1] - ric[0, 0]


# === Three-dimensional algebras ===

@dataclass(frozen=True)
class ThreeDimensionalSpec:
    """
    Frame (X, Y, W), V = {W}:
        [W,X] = aX + bY,  [W,Y] = -bX + aY,  [Y,X] = rX + sY + theta W
    """
    a: Scalar = Fraction(0)
    b: Scalar = Fraction(0)
    r: Scalar = Fraction(0)
    s: Scalar = Fraction(0)
    theta: Scalar = Fraction(0)

    def __post_init__(self):
        for name in ('a', 'b', 'r', 's', 'theta'):
            object.__setattr__(self, name, to_scalar(getattr(self, name)))

    def jacobi_residuals(self) -> Tuple[Scalar, Scalar, Scalar]:
        return (
            self.a * self.r + self.b * self.s,
            self.b * self.r - self.a * self.s,
            self.a * self.theta,
        )

    def to_dict(self) -> Dict[str, str]:
        return {name: str(getattr(self, name)) for name in ('a', 'b', 'r', 's', 'theta')}


THREE_DIMENSIONAL_SPLIT = Split(vertical=(2,), horizontal=(0, 1))


def three_dimensional(spec: ThreeDimensionalSpec) -> StructureConstants:
    """A conformal foliation with geodesic leaves on a 3-dimensional metric Lie algebra."""
    if any(x != 0 for x in spec.jacobi_residuals()):
        raise InvalidAlgebraError(
            "Jacobi identity needs a*r + b*s = b*r - a*s = a*theta = 0, "
            f"got {', '.join(str(x) for x in spec.jacobi_residuals())}"
        )
    return StructureConstants.from_brackets(3, {
        (2, 0): {0: spec.a, 1: spec.b},
        (2, 1): {0: -spec.b, 1: spec.a},
        (1, 0): {0: spec.r, 1: spec.s, 2: spec.theta},
    })


def sample_three_dimensional(rng: random.Random, bound: int = config.PARAMETER_BOUND) -> ThreeDimensionalSpec:
    """Either a = b = 0 with (r, s, theta) free, or r = s = 0 with a*theta = 0."""
    draw = lambda: Fraction(rng.randint(-bound, bound), rng.randint(1, bound))  # noqa: E731
    if rng.random() < 0.5:
        return ThreeDimensionalSpec(r=draw(), s=draw(), theta=draw())
    a, b = draw(), draw()
    return ThreeDimensionalSpec(a=a, b=b, theta=draw() if a == 0 else Fraction(0))


def three_dimensional_gap(spec: ThreeDimensionalSpec) -> Tuple[Scalar, Scalar]:
    """(Ric(X,X) - Ric(Y,Y), Ric(X,Y)); both vanish for every admissible spec."""
    return horizontal_ricci_defect(three_dimensional(spec), THREE_DIMENSIONAL_SPLIT)


def parse_alphas(text: str) -> SolSpec:
    """"5,1,-1" or "1/2,-1/2" -> SolSpec."""
    try:
        return SolSpec(tuple(parse_rational(part) for part in text.split(',') if part.strip()))
    except ValueError as e:
        raise SeriesRangeError(f"bad alpha list {text!r}: {e}") from e


def spec_for(kind: str, value: str):
    """Series spec from CLI-style arguments: ("nil", "3") or ("sol", "5,1,-1")."""
    if kind == 'nil':
        try:
            return NilSpec(int(value))
        except ValueError as e:
            raise SeriesRangeError(f"bad Nil size {value!r}") from e
    if kind == 'sol':
        return parse_alphas(value)
    raise SeriesRangeError(f"unknown series {kind!r}")


def split_for(spec, k: int) -> Split:
    return nil_split(spec, k) if isinstance(spec, NilSpec) else sol_split(spec, k)
