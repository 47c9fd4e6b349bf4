"""
Report assembly and rendering.
Builds the report sections shared by the CLI and the HTTP service, and renders
them as sorted-key JSON or as a colored plain-text outline.
"""

import json
import os
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple

from liefol.errors import ClassificationGapError, NormalizationError, ResidualError
from liefol.families import FAMILY_CATALOG, classify, constraint_residuals, normalize_frame
from liefol.foliation import Split, analyze, conformal_adjoint_check, proposition4_predicates
from liefol.hermitian import adapted_structures, holomorphic_summary, is_integrable
from liefol.lie_core import StructureConstants, derived_dimension, format_scalar, validate
from liefol.metric_geometry import ricci, scalar_curvature
from liefol.series import (
    NilSpec,
    SolSpec,
    algebra,
    ricci_closed_form,
    split_for,
    theorem2_gap,
)

GREEN = '\033[92m'
RED = '\033[91m'
BLUE = '\033[94m'
RESET = '\033[0m'


# === Sections ===

def check_report(
    A: StructureConstants,
    split: Optional[Split] = None,
    labels: Optional[Sequence[str]] = None
) -> Tuple[Dict[str, Any], bool]:
    """Validation, Ricci data and (with a split) foliation and Hermitian predicates."""
    validation = validate(A)
    report: Dict[str, Any] = {
        'command': 'check',
        'dim': A.dim,
        'exact': A.exact,
        'validation': validation.to_dict(),
    }
    if not validation.valid:
        return report, False

    ric = ricci(A, check=False)
    report['ricci'] = ric.to_dict(labels, A.tolerance)
    report['scalar_curvature'] = format_scalar(scalar_curvature(A))
    report['derived_dimension'] = derived_dimension(A)

    if split is not None:
        foliation = analyze(A, split, check=False)
        report['foliation'] = foliation.to_dict(labels)
        if foliation.vertical_integrable:
            report['conformal_adjoint'] = conformal_adjoint_check(A, split)
        if A.dim == 4 and len(split.vertical) == 2:
            J1, J2 = adapted_structures(split, A.exact)
            report['hermitian'] = {'J1': is_integrable(A, J1), 'J2': is_integrable(A, J2)}
    return report, True


def classify_report(A: StructureConstants, split: Split) -> Tuple[Dict[str, Any], bool]:
    """Normalize the frame, then run the case analysis on the normal form."""
    validation = validate(A)
    report: Dict[str, Any] = {'command': 'classify', 'validation': validation.to_dict()}
    if not validation.valid:
        return report, False
    try:
        frame = normalize_frame(A, split)
    except NormalizationError as e:
        report['error'] = {'type': 'normalization', 'message': str(e)}
        return report, False

    tol = frame.structure.tolerance
    p = frame.params
    report['normal_form'] = frame.to_dict()
    report['residuals'] = constraint_residuals(p, tol).to_dict()
    totally_geodesic, riemannian, horizontal_integrable = proposition4_predicates(p, tol)
    report['closed_form'] = {
        'totally_geodesic': totally_geodesic,
        'riemannian': riemannian,
        'horizontal_integrable': horizontal_integrable,
        **holomorphic_summary(p, tol),
    }
    try:
        report['classification'] = classify(p, tol).to_dict()
    except (ResidualError, ClassificationGapError) as e:
        report['error'] = {'type': type(e).__name__, 'message': str(e)}
        return report, False
    return report, True


def series_report(spec, k: Optional[int] = None) -> Dict[str, Any]:
    """Computed and closed-form Ricci diagonals, plus split predicates when k is given."""
    A = algebra(spec)
    labels = spec.labels()
    computed = ricci(A)
    predicted = ricci_closed_form(spec)
    report: Dict[str, Any] = {
        'command': 'series',
        'kind': 'nil' if isinstance(spec, NilSpec) else 'sol',
        'dim': A.dim,
        'ricci': computed.to_dict(labels),
        'ricci_closed_form': predicted.to_dict(labels),
        'closed_form_matches': A.is_zero(computed.ric - predicted.ric),
    }
    if isinstance(spec, SolSpec):
        report['alphas'] = [format_scalar(a) for a in spec.alphas]
    else:
        report['n'] = spec.n
    if k is not None:
        split = split_for(spec, k)
        foliation = analyze(A, split)
        report['k'] = k
        report['foliation'] = foliation.to_dict(labels)
        if isinstance(spec, SolSpec):
            report['in_stated_range'] = spec.in_stated_range(k)
        if k == 1 and foliation.conformal and foliation.minimal:
            report['theorem2_gap'] = format_scalar(theorem2_gap(spec, 1))
    return report


def catalog_report() -> Dict[str, Any]:
    return {
        'command': 'catalog',
        'families': [spec.to_dict() for spec in FAMILY_CATALOG.values()],
    }


# === Rendering ===

def to_json(report: Dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=str) + '\n'


def _use_color(stream: TextIO) -> bool:
    return 'NO_COLOR' not in os.environ and getattr(stream, 'isatty', lambda: False)()


def _outline(value: Any, indent: int, color: bool) -> List[str]:
    pad = '  ' * indent
    lines: List[str] = []
    if isinstance(value, dict):
        for key in sorted(value):
            item = value[key]
            if isinstance(item, (dict, list)) and item and not _flat_list(item):
                lines.append(f"{pad}{_key(key, color)}:")
                lines.extend(_outline(item, indent + 1, color))
            else:
                lines.append(f"{pad}{_key(key, color)}: {_scalar(item, color)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)) and not _flat_list(item):
                lines.append(f"{pad}-")
                lines.extend(_outline(item, indent + 1, color))
            else:
                lines.append(f"{pad}- {_scalar(item, color)}")
    else:
        lines.append(f"{pad}{_scalar(value, color)}")
    return lines


def _flat_list(value: Any) -> bool:
    return isinstance(value, list) and all(not isinstance(x, (dict, list)) for x in value)


def _key(key: str, color: bool) -> str:
    return f"{BLUE}{key}{RESET}" if color else key


def _scalar(value: Any, color: bool) -> str:
    if isinstance(value, bool):
        text = 'yes' if value else 'no'
        if color:
            return f"{GREEN if value else RED}{text}{RESET}"
        return text
    if isinstance(value, list):
        return '[' + ', '.join(_scalar(x, color) for x in value) + ']'
    if value is None:
        return '-'
    if isinstance(value, dict):
        return '{}'
    return str(value)


def to_pretty(report: Dict[str, Any], stream: Optional[TextIO] = None) -> str:
    color = _use_color(stream) if stream is not None else False
    return '\n'.join(_outline(report, 0, color)) + '\n'


def render(report: Dict[str, Any], stream: TextIO, pretty: bool = False):
    stream.write(to_pretty(report, stream) if pretty else to_json(report))
    stream.flush()
