"""
Normalized four-dimensional bracket form for conformal foliations with minimal
leaves, the twenty families of solutions, their Jacobi constraint systems, frame
normalization and the case-by-case classifier.

Frame order is (X, Y, Z, W) with V = span{Z, W}:

    [W,Z] = lam W
    [Z,X] = alpha X + beta Y + z1 Z + w1 W
    [Z,Y] = -beta X + alpha Y + z2 Z + w2 W
    [W,X] = a X + b Y + z3 Z - z1 W
    [W,Y] = -b X + a Y + z4 Z - z2 W
    [Y,X] = r X + theta1 Z + theta2 W
"""

import dataclasses
import logging
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Tuple

import numpy as np

from liefol import config
from liefol.errors import (
    ClassificationGapError,
    FamilyConstraintError,
    LiefolError,
    NormalizationError,
    ResidualError,
    SplitError,
)
from liefol.foliation import Split, analyze
from liefol.lie_core import (
    Scalar,
    StructureConstants,
    change_frame,
    format_scalar,
    permutation_matrix,
    rational_sqrt,
    zeros,
)

logger = logging.getLogger(__name__)

X, Y, Z, W = 0, 1, 2, 3

PARAM_NAMES = (
    'lam', 'alpha', 'beta', 'a', 'b', 'r',
    'z1', 'z2', 'z3', 'z4', 'w1', 'w2', 'theta1', 'theta2',
)

# External spelling of field names; "lambda" is a Python keyword
DISPLAY_NAMES = {name: ('lambda' if name == 'lam' else name) for name in PARAM_NAMES}


def canonical_name(name: str) -> str:
    name = name.strip()
    return 'lam' if name == 'lambda' else name


# === Params4D ===

@dataclass(frozen=True)
class Params4D:
    """The fourteen structure constants of the normalized bracket form."""
    lam: Scalar = Fraction(0)
    alpha: Scalar = Fraction(0)
    beta: Scalar = Fraction(0)
    a: Scalar = Fraction(0)
    b: Scalar = Fraction(0)
    r: Scalar = Fraction(0)
    z1: Scalar = Fraction(0)
    z2: Scalar = Fraction(0)
    z3: Scalar = Fraction(0)
    z4: Scalar = Fraction(0)
    w1: Scalar = Fraction(0)
    w2: Scalar = Fraction(0)
    theta1: Scalar = Fraction(0)
    theta2: Scalar = Fraction(0)

    def __post_init__(self):
        values = [getattr(self, name) for name in PARAM_NAMES]
        # One float makes the whole record approximate
        exact = not any(isinstance(v, (float, np.floating)) for v in values)
        for name, value in zip(PARAM_NAMES, values):
            object.__setattr__(self, name, Fraction(value) if exact else float(value))

    @classmethod
    def from_mapping(cls, values: Mapping[str, Scalar]) -> "Params4D":
        data = {canonical_name(k): v for k, v in values.items()}
        unknown = sorted(set(data) - set(PARAM_NAMES))
        if unknown:
            raise LiefolError(f"unknown parameter(s): {', '.join(unknown)}")
        return cls(**data)

    @classmethod
    def from_structure_constants(cls, A: StructureConstants) -> "Params4D":
        """Read the constants off an algebra already in the normalized frame."""
        if A.dim != 4:
            raise NormalizationError(f"normal form needs dimension 4, got {A.dim}")
        c = A.tensor
        return cls(
            lam=c[W, Z, W],
            alpha=c[Z, X, X], beta=c[Z, X, Y], z1=c[Z, X, Z], w1=c[Z, X, W],
            z2=c[Z, Y, Z], w2=c[Z, Y, W],
            a=c[W, X, X], b=c[W, X, Y], z3=c[W, X, Z], z4=c[W, Y, Z],
            r=c[Y, X, X], theta1=c[Y, X, Z], theta2=c[Y, X, W],
        )

    @property
    def exact(self) -> bool:
        return isinstance(self.lam, Fraction)

    def replace(self, **changes) -> "Params4D":
        return dataclasses.replace(self, **changes)

    def values(self) -> Dict[str, Scalar]:
        return {name: getattr(self, name) for name in PARAM_NAMES}

    def equals(self, other: "Params4D", tolerance: float = 0) -> bool:
        return all(abs(getattr(self, n) - getattr(other, n)) <= tolerance for n in PARAM_NAMES)

    def to_dict(self) -> Dict[str, object]:
        return {DISPLAY_NAMES[name]: format_scalar(value) for name, value in self.values().items()}


def assemble(p: Params4D) -> StructureConstants:
    """Structure constants of the normalized bracket form in frame (X, Y, Z, W)."""
    brackets = {
        (W, Z): {W: p.lam},
        (Z, X): {X: p.alpha, Y: p.beta, Z: p.z1, W: p.w1},
        (Z, Y): {X: -p.beta, Y: p.alpha, Z: p.z2, W: p.w2},
        (W, X): {X: p.a, Y: p.b, Z: p.z3, W: -p.z1},
        (W, Y): {X: -p.b, Y: p.a, Z: p.z4, W: -p.z2},
        (Y, X): {X: p.r, Z: p.theta1, W: p.theta2},
    }
    return StructureConstants.from_brackets(4, brackets, exact=p.exact)


def swap_vertical(p: Params4D) -> Params4D:
    """
    Constants in the frame (X, Y, W, Z). Only meaningful for an abelian vertical
    space, where the exchange keeps the normalized shape.
    """
    if p.lam != 0:
        raise LiefolError("Z/W exchange requires lambda = 0")
    return Params4D(
        alpha=p.a, beta=p.b, a=p.alpha, b=p.beta, r=p.r,
        z1=-p.z1, z2=-p.z2, z3=p.w1, z4=p.w2, w1=p.z3, w2=p.z4,
        theta1=p.theta2, theta2=p.theta1,
    )


# === Family catalog ===

class FamilyId(str, Enum):
    G1 = "g1"
    G2 = "g2"
    G3 = "g3"
    G4 = "g4"
    G5 = "g5"
    G6 = "g6"
    G7 = "g7"
    G8 = "g8"
    G9 = "g9"
    G10 = "g10"
    G11 = "g11"
    G12 = "g12"
    G13 = "g13"
    G14 = "g14"
    G15 = "g15"
    G16 = "g16"
    G17 = "g17"
    G18 = "g18"
    G19 = "g19"
    G20 = "g20"

    @classmethod
    def parse(cls, text: str) -> "FamilyId":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise LiefolError(f"unknown family {text!r}; expected g1..g20") from None


Condition = Tuple[str, Callable[[Dict[str, Scalar]], bool]]


@dataclass(frozen=True)
class FamilySpec:
    id: FamilyId
    case: str
    parameters: Tuple[str, ...]
    build: Callable[..., Dict[str, Scalar]]
    hard: Tuple[Condition, ...] = ()
    routing: Tuple[Condition, ...] = ()

    def to_dict(self) -> dict:
        return {
            'id': self.id.value,
            'case': self.case,
            'parameters': [DISPLAY_NAMES[p] for p in self.parameters],
            'constraints': [text for text, _ in self.hard],
            'routing': [text for text, _ in self.routing],
        }


def _g5(alpha, a, beta, b, r):
    D = a * beta - alpha * b
    k = r / (2 * D)
    return dict(
        alpha=alpha, a=a, beta=beta, b=b, r=r,
        z1=k * (beta * b - alpha * a), w1=k * (alpha ** 2 - beta ** 2),
        z2=k * (alpha * b + beta * a), w2=-2 * k * alpha * beta,
        z3=k * (b ** 2 - a ** 2), z4=2 * k * a * b,
        theta1=-a * r ** 2 / (2 * D), theta2=alpha * r ** 2 / (2 * D),
    )


def _g6(z1, z2, z3, r, theta1, theta2):
    return dict(
        z1=z1, z2=z2, z3=z3, r=r, theta1=theta1, theta2=theta2,
        w1=-z1 ** 2 / z3, z4=z3 * (r + 2 * z2) / (2 * z1), w2=z1 * (r - 2 * z2) / (2 * z3),
    )


def _conformal_pair(alpha, a, w1, w2):
    return dict(
        z1=-a * w1 / alpha, z2=-a * w2 / alpha,
        z3=-a ** 2 * w1 / alpha ** 2, z4=-a ** 2 * w2 / alpha ** 2,
    )


def _nonzero(*names: str) -> Condition:
    keys = [canonical_name(n) for n in names]
    return (
        " != 0, ".join(names) + " != 0",
        lambda v: all(v[k] != 0 for k in keys),
    )


FAMILY_CATALOG: Dict[FamilyId, FamilySpec] = {spec.id: spec for spec in (
    FamilySpec(
        FamilyId.G1, 'A', ('lam', 'r', 'w1', 'w2'),
        lambda lam, r, w1, w2: dict(lam=lam, r=r, w1=w1, w2=w2, theta2=r * w1 / lam),
        hard=(_nonzero('lambda', 'r'),),
    ),
    FamilySpec(
        FamilyId.G2, 'A', ('lam', 'alpha', 'beta', 'w1', 'w2'),
        lambda lam, alpha, beta, w1, w2: dict(lam=lam, alpha=alpha, beta=beta, w1=w1, w2=w2),
        hard=(_nonzero('lambda'),),
        routing=(("(lambda - alpha)^2 + beta^2 != 0",
                  lambda v: (v['lam'] - v['alpha']) ** 2 + v['beta'] ** 2 != 0),),
    ),
    FamilySpec(
        FamilyId.G3, 'A', ('alpha', 'beta', 'w1', 'w2', 'theta2'),
        lambda alpha, beta, w1, w2, theta2: dict(
            lam=-2 * alpha, alpha=alpha, beta=beta, w1=w1, w2=w2, theta2=theta2),
        hard=(_nonzero('theta2'), ("alpha != 0 (lambda = -2 alpha != 0)", lambda v: v['alpha'] != 0)),
    ),
    FamilySpec(
        FamilyId.G4, 'B', ('lam', 'z2', 'w1', 'w2'),
        lambda lam, z2, w1, w2: dict(
            lam=lam, alpha=lam, z2=z2, w1=w1, w2=w2, r=-z2, theta2=-z2 * w1 / lam),
        hard=(_nonzero('lambda'),),
    ),
    FamilySpec(
        FamilyId.G5, 'C', ('alpha', 'a', 'beta', 'b', 'r'), _g5,
        hard=(_nonzero('r'),
              ("a*beta - alpha*b != 0", lambda v: v['a'] * v['beta'] - v['alpha'] * v['b'] != 0)),
    ),
    FamilySpec(
        FamilyId.G6, 'D', ('z1', 'z2', 'z3', 'r', 'theta1', 'theta2'), _g6,
        hard=(_nonzero('z1', 'z3'),),
        routing=(_nonzero('r'),),
    ),
    FamilySpec(
        FamilyId.G7, 'D', ('z2', 'w1', 'w2', 'theta1', 'theta2'),
        lambda z2, w1, w2, theta1, theta2: dict(
            z2=z2, w1=w1, w2=w2, theta1=theta1, theta2=theta2, r=2 * z2),
        hard=(_nonzero('w1'),),
        routing=(("z2 != 0 (r = 2 z2 != 0)", lambda v: v['z2'] != 0),),
    ),
    FamilySpec(
        FamilyId.G8, 'D', ('z2', 'z4', 'w2', 'r', 'theta1', 'theta2'),
        lambda z2, z4, w2, r, theta1, theta2: dict(
            z2=z2, z4=z4, w2=w2, r=r, theta1=theta1, theta2=theta2),
        routing=(_nonzero('r'),),
    ),
    FamilySpec(
        FamilyId.G9, 'D', ('z2', 'z3', 'z4', 'theta1', 'theta2'),
        lambda z2, z3, z4, theta1, theta2: dict(
            z2=z2, z3=z3, z4=z4, theta1=theta1, theta2=theta2, r=-2 * z2),
        hard=(_nonzero('z3'),),
        routing=(("z2 != 0 (r = -2 z2 != 0)", lambda v: v['z2'] != 0),),
    ),
    FamilySpec(
        FamilyId.G10, 'E', ('alpha', 'a', 'beta', 'b'),
        lambda alpha, a, beta, b: dict(alpha=alpha, a=a, beta=beta, b=b),
        hard=(("alpha*b - a*beta != 0", lambda v: v['alpha'] * v['b'] - v['a'] * v['beta'] != 0),),
    ),
    FamilySpec(
        FamilyId.G11, 'F', ('z1', 'z2', 'z3', 'w1', 'theta1', 'theta2'),
        lambda z1, z2, z3, w1, theta1, theta2: dict(
            z1=z1, z2=z2, z3=z3, w1=w1, theta1=theta1, theta2=theta2,
            w2=z2 * w1 / z1, z4=z2 * z3 / z1),
        hard=(_nonzero('z1'),),
    ),
    FamilySpec(
        FamilyId.G12, 'F', ('z3', 'w1', 'w2', 'theta1', 'theta2'),
        lambda z3, w1, w2, theta1, theta2: dict(
            z3=z3, w1=w1, w2=w2, theta1=theta1, theta2=theta2, z4=z3 * w2 / w1),
        hard=(_nonzero('w1'),),
    ),
    FamilySpec(
        FamilyId.G13, 'F', ('z3', 'z4', 'theta1', 'theta2'),
        lambda z3, z4, theta1, theta2: dict(z3=z3, z4=z4, theta1=theta1, theta2=theta2),
        hard=(_nonzero('z3'),),
    ),
    FamilySpec(
        FamilyId.G14, 'F', ('z2', 'z4', 'w2', 'theta1', 'theta2'),
        lambda z2, z4, w2, theta1, theta2: dict(z2=z2, z4=z4, w2=w2, theta1=theta1, theta2=theta2),
    ),
    FamilySpec(
        FamilyId.G15, 'F', ('alpha', 'w1', 'w2'),
        lambda alpha, w1, w2: dict(alpha=alpha, w1=w1, w2=w2),
        hard=(_nonzero('alpha'),),
    ),
    FamilySpec(
        FamilyId.G16, 'F', ('beta', 'w1', 'w2', 'theta1', 'theta2'),
        lambda beta, w1, w2, theta1, theta2: dict(
            beta=beta, w1=w1, w2=w2, theta1=theta1, theta2=theta2),
        hard=(_nonzero('beta'),),
    ),
    FamilySpec(
        FamilyId.G17, 'F', ('alpha', 'a', 'w1', 'w2'),
        lambda alpha, a, w1, w2: dict(alpha=alpha, a=a, w1=w1, w2=w2, **_conformal_pair(alpha, a, w1, w2)),
        hard=(_nonzero('alpha', 'a'),),
    ),
    FamilySpec(
        FamilyId.G18, 'F', ('beta', 'b', 'z3', 'z4', 'theta1', 'theta2'),
        lambda beta, b, z3, z4, theta1, theta2: dict(
            beta=beta, b=b, z3=z3, z4=z4, theta1=theta1, theta2=theta2,
            z1=beta * z3 / b, z2=beta * z4 / b,
            w1=-beta ** 2 * z3 / b ** 2, w2=-beta ** 2 * z4 / b ** 2),
        hard=(_nonzero('beta', 'b'),),
    ),
    FamilySpec(
        FamilyId.G19, 'F', ('alpha', 'beta', 'w1', 'w2'),
        lambda alpha, beta, w1, w2: dict(alpha=alpha, beta=beta, w1=w1, w2=w2),
        hard=(_nonzero('alpha', 'beta'),),
    ),
    FamilySpec(
        FamilyId.G20, 'F', ('alpha', 'a', 'beta', 'w1', 'w2'),
        lambda alpha, a, beta, w1, w2: dict(
            alpha=alpha, a=a, beta=beta, b=beta * a / alpha, w1=w1, w2=w2,
            **_conformal_pair(alpha, a, w1, w2)),
        hard=(_nonzero('alpha', 'a', 'beta'),),
    ),
)}


def _coerce_parameters(spec: FamilySpec, params: Mapping[str, Scalar], exact: Optional[bool]) -> Dict[str, Scalar]:
    values = {canonical_name(k): v for k, v in params.items()}
    missing = [DISPLAY_NAMES[p] for p in spec.parameters if p not in values]
    unknown = [k for k in values if k not in spec.parameters]
    if missing or unknown:
        detail = []
        if missing:
            detail.append(f"missing {', '.join(missing)}")
        if unknown:
            detail.append(f"unexpected {', '.join(sorted(unknown))}")
        expected = ', '.join(DISPLAY_NAMES[p] for p in spec.parameters)
        raise FamilyConstraintError(
            spec.id.value, "parameters",
            f"{spec.id.value}({expected}): {'; '.join(detail)}",
        )
    if exact is None:
        exact = not any(isinstance(v, float) for v in values.values())
    return {k: (Fraction(v) if exact else float(v)) for k, v in values.items()}


def family(family_id, params: Mapping[str, Scalar], exact: Optional[bool] = None) -> Params4D:
    """Full normal-form constants of one family member, derived entries filled in."""
    spec = FAMILY_CATALOG[FamilyId(family_id)]
    values = _coerce_parameters(spec, params, exact)
    for text, holds in spec.hard:
        if not holds(values):
            raise FamilyConstraintError(spec.id.value, text)
    return Params4D(**spec.build(**values))


def free_parameters(family_id, p: Params4D) -> Dict[str, Scalar]:
    spec = FAMILY_CATALOG[FamilyId(family_id)]
    return {name: getattr(p, name) for name in spec.parameters}


# === Constraint residuals ===

@dataclass(frozen=True)
class ResidualSet:
    """Residual vectors of the Jacobi system selected for p."""
    system: str
    components: Dict[str, Tuple[Scalar, ...]]

    def flat(self) -> List[Scalar]:
        return [x for values in self.components.values() for x in values]

    def max_abs(self) -> Scalar:
        return max((abs(x) for x in self.flat()), default=0)

    def is_zero(self, tolerance: float = 0) -> bool:
        return all(abs(x) <= tolerance for x in self.flat())

    def to_dict(self) -> dict:
        return {
            'system': self.system,
            'zero': self.is_zero(),
            'components': {k: [format_scalar(x) for x in v] for k, v in self.components.items()},
        }


def _horizontal_jacobi(p: Params4D) -> Dict[str, Tuple[Scalar, ...]]:
    """Jacobiators of (X, Y, Z) and (X, Y, W), components along X, Y, Z, W."""
    lam, al, be, a, b, r = p.lam, p.alpha, p.beta, p.a, p.b, p.r
    z1, z2, z3, z4, w1, w2, t1, t2 = p.z1, p.z2, p.z3, p.z4, p.w1, p.w2, p.theta1, p.theta2
    return {
        'jacobi_xyz': (
            -al * r - be * z1 - b * w1 - al * z2 - a * w2,
            r * be + al * z1 + a * w1 - be * z2 - b * w2,
            r * z1 - 2 * al * t1 + w1 * z4 - w2 * z3,
            r * w1 - lam * t2 - 2 * al * t2 + 2 * z1 * w2 - 2 * z2 * w1,
        ),
        'jacobi_xyw': (
            -a * r - be * z3 + b * z1 - al * z4 + a * z2,
            r * b + al * z3 - a * z1 - be * z4 + b * z2,
            r * z3 - 2 * a * t1 + 2 * z2 * z3 - 2 * z1 * z4,
            -r * z1 + lam * t1 - 2 * a * t2 + z3 * w2 - z4 * w1,
        ),
    }


def _equa_top(p: Params4D) -> Tuple[Scalar, ...]:
    """-2 M L - r N with M the (z, w) block and L = [[alpha, beta], [a, b]]."""
    M = ((p.z1, p.w1), (p.z2, p.w2), (p.z3, -p.z1), (p.z4, -p.z2))
    L = ((p.alpha, p.beta), (p.a, p.b))
    N = ((p.beta, p.alpha), (p.alpha, -p.beta), (p.b, p.a), (p.a, -p.b))
    return tuple(
        -2 * (M[i][0] * L[0][j] + M[i][1] * L[1][j]) - p.r * N[i][j]
        for i in range(4) for j in range(2)
    )


def constraint_residuals(p: Params4D, tolerance: float = 0) -> ResidualSet:
    """
    Residuals of the quadratic system that is equivalent to the Jacobi identity
    for the normal form. The system is selected by whether lambda and r vanish.
    """
    lam, al, be, a, b, r = p.lam, p.alpha, p.beta, p.a, p.b, p.r
    z1, z2, z3, z4, w1, w2, t1, t2 = p.z1, p.z2, p.z3, p.z4, p.w1, p.w2, p.theta1, p.theta2

    if abs(lam) > tolerance:
        d = lam - al
        return ResidualSet('vertical-nonabelian', {
            'vertical_adjoint': (lam * a, lam * b),
            'equa_ab': (be * z1 + d * z2, be * z4 - d * z3, d * z1 - be * z2, d * z4 + be * z3),
            **_horizontal_jacobi(p),
        })

    if abs(r) > tolerance:
        return ResidualSet('vertical-abelian', {
            'equa_top': _equa_top(p),
            'equa_funny': (
                -a * t2 - al * t1,
                z3 * w2 - z4 * w1 - 2 * a * t2 - r * z1,
                2 * z2 * z3 - 2 * z1 * z4 - 2 * a * t1 + r * z3,
                2 * z1 * w2 - 2 * z2 * w1 - 2 * al * t2 + r * w1,
            ),
        })

    return ResidualSet('symmetric', {
        'linear': (
            al * z1 + a * w1, be * z1 + b * w1,
            al * z2 + a * w2, be * z2 + b * w2,
            al * z3 - a * z1, be * z3 - b * z1,
            al * z4 - a * z2, be * z4 - b * z2,
        ),
        'quadratic': (
            -a * t2 - al * t1,
            z3 * w2 - z4 * w1 - 2 * a * t2,
            z2 * z3 - z1 * z4 - a * t1,
            z1 * w2 - z2 * w1 - al * t2,
        ),
    })


# === Classification ===

@dataclass(frozen=True)
class CaseTag:
    case: str
    discriminants: Dict[str, object]

    def to_dict(self) -> dict:
        return {'case': self.case, 'discriminants': dict(self.discriminants)}


@dataclass(frozen=True)
class Classification:
    case: CaseTag
    family: FamilyId
    parameters: Dict[str, Scalar]
    swapped: bool = False

    def to_dict(self) -> dict:
        return {
            **self.case.to_dict(),
            'family': self.family.value,
            'parameters': {DISPLAY_NAMES[k]: format_scalar(v) for k, v in self.parameters.items()},
            'swapped': self.swapped,
        }


def classify(p: Params4D, tolerance: float = 0) -> Classification:
    """Case analysis of a normal form; returns the family and its recovered parameters."""
    residuals = constraint_residuals(p, tolerance)
    if not residuals.is_zero(tolerance):
        raise ResidualError(
            f"constraint residuals do not vanish (max {format_scalar(residuals.max_abs())}, "
            f"system {residuals.system})"
        )
    nz = lambda x: bool(abs(x) > tolerance)  # noqa: E731
    swapped = False
    q = p
    disc: Dict[str, object] = {'lambda != 0': nz(p.lam)}

    if nz(p.lam):
        disc['(lambda - alpha)^2 + beta^2 != 0'] = nz(p.lam - p.alpha) or nz(p.beta)
        if disc['(lambda - alpha)^2 + beta^2 != 0']:
            case = 'A'
            disc['r != 0'] = nz(p.r)
            if nz(p.r):
                fid = FamilyId.G1
            else:
                disc['theta2 != 0'] = nz(p.theta2)
                fid = FamilyId.G3 if nz(p.theta2) else FamilyId.G2
        else:
            case, fid = 'B', FamilyId.G4
    elif nz(p.r):
        disc['r != 0'] = True
        disc['a*beta - alpha*b != 0'] = nz(p.a * p.beta - p.alpha * p.b)
        if disc['a*beta - alpha*b != 0']:
            case, fid = 'C', FamilyId.G5
        else:
            case = 'D'
            disc.update({'z1 != 0': nz(p.z1), 'w1 != 0': nz(p.w1), 'z3 != 0': nz(p.z3)})
            if nz(p.z1):
                fid = FamilyId.G6
            elif nz(p.w1):
                fid = FamilyId.G7
            elif not nz(p.z3):
                fid = FamilyId.G8
            else:
                fid = FamilyId.G9
    else:
        disc['r != 0'] = False
        disc['alpha*b - a*beta != 0'] = nz(p.alpha * p.b - p.a * p.beta)
        if disc['alpha*b - a*beta != 0']:
            case, fid = 'E', FamilyId.G10
        else:
            case = 'F'
            pattern = tuple(nz(v) for v in (p.alpha, p.a, p.beta, p.b))
            disc["Lambda"] = "(" + ", ".join(
                name if on else "0" for name, on in zip(("alpha", "a", "beta", "b"), pattern)
            ) + ")"
            if pattern in _MIRRORED:
                q, swapped = swap_vertical(p), True
                pattern = (pattern[1], pattern[0], pattern[3], pattern[2])
            if pattern == (False, False, False, False):
                disc.update({'z1 != 0': nz(p.z1), 'w1 != 0': nz(p.w1), 'z3 != 0': nz(p.z3)})
                if nz(p.z1):
                    fid = FamilyId.G11
                elif nz(p.w1):
                    fid = FamilyId.G12
                elif nz(p.z3):
                    fid = FamilyId.G13
                else:
                    fid = FamilyId.G14
            elif pattern not in _LAMBDA_PATTERNS:
                raise ClassificationGapError(f"no family for Lambda pattern {pattern}")
            else:
                fid = _LAMBDA_PATTERNS[pattern]

    parameters = free_parameters(fid, q)
    try:
        rebuilt = family(fid, parameters, exact=p.exact)
    except FamilyConstraintError as e:
        raise ClassificationGapError(f"case {case} selected {fid.value} but {e}") from e
    if not rebuilt.equals(q, tolerance):
        raise ClassificationGapError(
            f"case {case} selected {fid.value} but its constants do not reproduce the input"
        )
    return Classification(CaseTag(case, disc), fid, parameters, swapped)


# (alpha, a, beta, b) nonzero patterns of Case F with Lambda != 0
_LAMBDA_PATTERNS = {
    (True, False, False, False): FamilyId.G15,
    (False, False, True, False): FamilyId.G16,
    (True, True, False, False): FamilyId.G17,
    (False, False, True, True): FamilyId.G18,
    (True, False, True, False): FamilyId.G19,
    (True, True, True, True): FamilyId.G20,
}

# Patterns handled by exchanging Z and W
_MIRRORED = {
    (False, True, False, False),
    (False, False, False, True),
    (False, True, False, True),
}


# === Frame normalization ===

@dataclass(frozen=True, eq=False)
class NormalizedFrame:
    """Normal-form constants, the frame change that reaches them and the rotated algebra."""
    params: Params4D
    rotation: np.ndarray
    exact: bool
    structure: StructureConstants

    def to_dict(self) -> dict:
        return {
            'params': self.params.to_dict(),
            'exact': self.exact,
            'rotation': [[format_scalar(x) for x in row] for row in self.rotation],
        }


class _Irrational(Exception):
    pass


def _unit(u: Tuple[Scalar, Scalar], exact: bool) -> Tuple[Scalar, Scalar]:
    norm2 = u[0] ** 2 + u[1] ** 2
    if exact:
        root = rational_sqrt(norm2)
        if root is None:
            raise _Irrational()
        return u[0] / root, u[1] / root
    norm = norm2 ** 0.5
    return u[0] / norm, u[1] / norm


def _plane_rotation(i: int, j: int, first, second, exact: bool) -> np.ndarray:
    """Identity except columns i and j, which become first and second in the (e_i, e_j) plane."""
    Q = permutation_matrix(range(4), exact)
    Q[i, i], Q[j, i] = first
    Q[i, j], Q[j, j] = second
    return Q


def _normalize(A: StructureConstants, order: Tuple[int, ...], exact: bool) -> NormalizedFrame:
    if not exact and A.exact:
        A = A.to_approx()
    total = permutation_matrix(order, exact)
    current = change_frame(A, total)

    u = (current.tensor[Z, W, Z], current.tensor[Z, W, W])
    if not (current.is_zero(u[0]) and current.is_zero(u[1])):
        p, q = _unit((-u[0], -u[1]), exact)
        # W' = -u/|u| = pZ + qW and Z' = qZ - pW give [W', Z'] = -[Z, W] = |u| W'
        Q = _plane_rotation(Z, W, (q, -p), (p, q), exact)
        current, total = change_frame(current, Q), total.dot(Q)

    h = (current.tensor[Y, X, X], current.tensor[Y, X, Y])
    if not (current.is_zero(h[0]) and current.is_zero(h[1])):
        p, q = _unit(h, exact)
        # X' = pX + qY, Y' = -qX + pY leaves [Y, X] unchanged and puts its H-part on X'
        Q = _plane_rotation(X, Y, (p, q), (-q, p), exact)
        current, total = change_frame(current, Q), total.dot(Q)

    params = Params4D.from_structure_constants(current)
    if not assemble(params).equals(current, current.tolerance):
        raise NormalizationError("rotated brackets are not of the normalized form")
    return NormalizedFrame(params, total, exact, current)


def normalize_frame(A: StructureConstants, split: Split) -> NormalizedFrame:
    """
    Rotate V so that [W, Z] = lambda W with lambda >= 0, and H so that the
    H-part of [Y, X] is r X with r >= 0, then read off the normal form.
    Rotations with irrational entries switch the computation to approx mode.

    With u = [Z, W] the new vertical pair is W' = -u/|u|, Z' = qZ - pW (W' = pZ + qW),
    a proper rotation with [W', Z'] = |u| W'. For [Z, W] = Z + W this gives
    W' = -(Z + W)/sqrt(2) and lambda = sqrt(2); a normal form is left unchanged.
    """
    if A.dim != 4 or len(split.vertical) != 2:
        raise SplitError("normalization needs dimension 4 with a 2+2 split")
    report = analyze(A, split)
    failed = [name for name in ('vertical_integrable', 'conformal', 'minimal') if not getattr(report, name)]
    if failed:
        raise NormalizationError(f"foliation is not {', '.join(failed)}")

    order = split.horizontal + split.vertical
    if A.exact:
        try:
            return _normalize(A, order, exact=True)
        except _Irrational:
            logger.info("normalizing rotation is irrational; continuing in approx mode")
    return _normalize(A, order, exact=False)


def random_rotation(rng: random.Random, exact: bool = True, bound: int = config.PARAMETER_BOUND) -> np.ndarray:
    """Block rotation of H and of V with rational cosines, (1 - t^2, 2t) / (1 + t^2)."""
    Q = zeros((4, 4), exact)
    for i, j in ((X, Y), (Z, W)):
        t = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        cos, sin = (1 - t ** 2) / (1 + t ** 2), 2 * t / (1 + t ** 2)
        if not exact:
            cos, sin = float(cos), float(sin)
        Q[i, i], Q[j, i] = cos, sin
        Q[i, j], Q[j, j] = -sin, cos
    return Q


# === Sampling ===

def random_rational(rng: random.Random, bound: int = config.PARAMETER_BOUND) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def sample_parameters(
    family_id,
    rng: random.Random,
    bound: int = config.PARAMETER_BOUND,
    max_rejections: int = config.MAX_REJECTIONS
) -> Dict[str, Fraction]:
    """Small rational free parameters meeting the family's constraints and routing conditions."""
    spec = FAMILY_CATALOG[FamilyId(family_id)]
    for _ in range(max_rejections):
        values = {name: random_rational(rng, bound) for name in spec.parameters}
        if all(holds(values) for _, holds in spec.hard + spec.routing):
            return values
    raise LiefolError(f"{spec.id.value}: no admissible draw within {max_rejections} attempts")


def random_params4d(rng: random.Random, zero_probability: float = 0.5, bound: int = config.PARAMETER_BOUND) -> Params4D:
    """Unconstrained draw; each constant is zero with the given probability."""
    return Params4D(**{
        name: (Fraction(0) if rng.random() < zero_probability else random_rational(rng, bound))
        for name in PARAM_NAMES
    })
