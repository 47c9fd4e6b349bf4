"""
Randomized sweep suite.
Draws admissible parameters for each family and checks the whole pipeline on
every draw: Jacobi, foliation predicates, closed forms, classification and
normalization after a random rotation. Series and residual suites run alongside.
"""

import hashlib
import itertools
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from liefol import config
from liefol.errors import LiefolError
from liefol.families import (
    FAMILY_CATALOG,
    FamilyId,
    assemble,
    classify,
    constraint_residuals,
    family,
    normalize_frame,
    random_params4d,
    random_rotation,
    sample_parameters,
)
from liefol.foliation import Split, analyze, conformal_adjoint_check, proposition4_predicates
from liefol.hermitian import adapted_structures, integrability_closed_form, is_integrable
from liefol.lie_core import basis_jacobiator, change_frame, validate
from liefol.metric_geometry import ricci
from liefol.series import (
    NilSpec,
    SolSpec,
    nil,
    ricci_closed_form,
    sample_three_dimensional,
    sol,
    theorem2_gap,
    three_dimensional_gap,
)

logger = logging.getLogger(__name__)

SPLIT_4D = Split.from_vertical(4, config.VERTICAL_4D)
MAX_REPORTED_FAILURES = 10
SUITES = ('families', 'residuals', 'series')
TRIPLES_4D = tuple(itertools.combinations(range(4), 3))


def derive_seed(root: int, suite: str, index: int) -> int:
    """Per-sample seed, independent of scheduling order."""
    digest = hashlib.sha256(f"{root}:{suite}:{index}".encode('utf-8')).hexdigest()
    return int(digest[:16], 16)


# === Per-sample checks ===

def check_family_sample(family_id: str, seed: int) -> List[str]:
    """Failed check names for one draw of a family (empty when all pass)."""
    rng = random.Random(seed)
    fid = FamilyId(family_id)
    params = sample_parameters(fid, rng)
    p = family(fid, params)
    A = assemble(p)
    failures = []

    if not validate(A).valid:
        return ['jacobi']
    if not constraint_residuals(p).is_zero():
        failures.append('residuals')

    report = analyze(A, SPLIT_4D, check=False)
    if not (report.vertical_integrable and report.conformal and report.minimal):
        failures.append('conformal_minimal')
    if not conformal_adjoint_check(A, SPLIT_4D):
        failures.append('conformal_adjoint')
    if proposition4_predicates(p) != (report.totally_geodesic, report.riemannian, report.horizontal_integrable):
        failures.append('proposition4')

    J1, J2 = adapted_structures(SPLIT_4D)
    if (is_integrable(A, J1), is_integrable(A, J2)) != integrability_closed_form(p):
        failures.append('hermitian')

    try:
        result = classify(p)
        if result.family != fid or result.parameters != params:
            failures.append('classify_roundtrip')
    except Exception as e:  # any error is a failed round trip
        logger.debug(f"{family_id} seed {seed}: classify raised {e}")
        failures.append('classify_roundtrip')

    try:
        Q = random_rotation(rng)
        rotated = change_frame(A, Q)
        frame = normalize_frame(rotated, SPLIT_4D)
        if not assemble(frame.params).equals(change_frame(rotated, frame.rotation)):
            failures.append('normalize')
        else:
            classify(frame.params, frame.structure.tolerance)
    except Exception as e:
        logger.debug(f"{family_id} seed {seed}: normalization raised {e}")
        failures.append('normalize')
    return failures


def _jacobi_holds(tensor) -> bool:
    return all(not np.any(basis_jacobiator(tensor, i, j, k)) for i, j, k in TRIPLES_4D)


def check_residual_sample(seed: int) -> List[str]:
    """Residual system vanishes exactly when the Jacobiator does."""
    rng = random.Random(seed)
    p = random_params4d(rng, zero_probability=rng.choice((0.5, 0.7, 0.85)))
    if constraint_residuals(p).is_zero() != _jacobi_holds(assemble(p).tensor):
        return ['residual_jacobi']
    return []


def check_series_sample(seed: int) -> List[str]:
    """Sol closed form on random alphas, and the 3-dimensional curvature identity."""
    rng = random.Random(seed)
    failures = []
    n = rng.randint(1, 8)
    spec = SolSpec(tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)))
    A = sol(spec)
    if not A.is_zero(ricci(A).ric - ricci_closed_form(spec).ric):
        failures.append('sol_ricci')
    three = sample_three_dimensional(rng)
    if any(x != 0 for x in three_dimensional_gap(three)):
        failures.append('three_dimensional_ricci')
    return failures


def _run(task: Tuple[str, str, Tuple[int, int]]) -> Tuple[str, int, int, List[str]]:
    suite, family_id, (index, seed) = task
    if suite == 'family':
        failures = check_family_sample(family_id, seed)
    elif suite == 'residuals':
        failures = check_residual_sample(seed)
    else:
        failures = check_series_sample(seed)
    return suite if suite != 'family' else family_id, index, seed, failures


# === Suite ===

def nil_checks(max_n: int = 10) -> List[str]:
    failures = []
    for n in range(1, max_n + 1):
        spec = NilSpec(n)
        A = nil(spec)
        if not A.is_zero(ricci(A).ric - ricci_closed_form(spec).ric):
            failures.append(f"nil_ricci n={n}")
        if theorem2_gap(spec) != Fraction(n - 1, 2):
            failures.append(f"nil_gap n={n}")
    return failures


def _tasks(families: Sequence[FamilyId], samples: int, seed: int, suites: Sequence[str]) -> List[tuple]:
    tasks = []
    for fid in families:
        for i in range(samples):
            tasks.append(('family', fid.value, (i, derive_seed(seed, fid.value, i))))
    for i in range(samples):
        for suite in ('residuals', 'series'):
            if suite in suites:
                tasks.append((suite, '', (i, derive_seed(seed, suite, i))))
    return tasks


def run_sweep(
    families: Optional[Iterable[str]] = None,
    samples: int = config.DEFAULT_SAMPLES,
    seed: int = config.DEFAULT_SEED,
    workers: int = config.SWEEP_WORKERS,
    suites: Optional[Sequence[str]] = None
) -> Dict[str, Any]:
    """
    Run the randomized suites. By default every suite runs when families is None,
    and only the family suite when families are named. The families filter applies
    to the family suite only. Results are reduced in task order, so the report is
    identical for any worker count.
    """
    if suites is None:
        suites = SUITES if families is None else ('families',)
    unknown = [s for s in suites if s not in SUITES]
    if unknown:
        raise LiefolError(f"unknown suite {unknown[0]!r}; expected one of {', '.join(SUITES)}")
    selected = []
    if 'families' in suites:
        selected = list(FAMILY_CATALOG) if families is None else [FamilyId.parse(f) for f in families]
    tasks = _tasks(selected, samples, seed, suites)

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run, tasks, chunksize=max(1, len(tasks) // (workers * 4))))
    else:
        results = [_run(task) for task in tasks]

    groups: Dict[str, Dict[str, Any]] = {}
    for name, index, sample_seed, failures in results:
        group = groups.setdefault(name, {'samples': 0, 'failures': 0, 'failed_checks': {}, 'examples': []})
        group['samples'] += 1
        if failures:
            group['failures'] += 1
            for check in failures:
                group['failed_checks'][check] = group['failed_checks'].get(check, 0) + 1
            if len(group['examples']) < MAX_REPORTED_FAILURES:
                group['examples'].append({'index': index, 'seed': sample_seed, 'checks': failures})

    report: Dict[str, Any] = {
        'command': 'sweep',
        'seed': seed,
        'samples': samples,
        'suites': [s for s in SUITES if s in suites],
        'families': [fid.value for fid in selected],
        'results': groups,
    }
    if 'series' in suites:
        nil_failures = nil_checks()
        report['nil'] = {'checked': 10, 'failures': nil_failures}
    total = sum(g['failures'] for g in groups.values()) + len(report.get('nil', {}).get('failures', []))
    report['total_failures'] = total
    return report
