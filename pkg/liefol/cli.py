"""
Command-line front end.

    liefol check <file>            validate, Ricci data, foliation and Hermitian predicates
    liefol classify <file>         normalize the frame and run the case analysis
    liefol family <id> --param k=v emit an algebra document for a family member
    liefol series nil <n> [--k K]  Nil series member (sol <a1,a2,...> for Sol)
    liefol sweep [--suite S]       randomized round-trip and invariant suites
    liefol catalog                 list the twenty families
    liefol serve                   HTTP service

Reports go to stdout, diagnostics to stderr. Exit codes: 0 ok, 1 failed check, 2 bad input.
"""

import argparse
import logging
import sys
from typing import List, Optional, Sequence, TextIO

from liefol import algebra_file, config, report
from liefol.errors import LiefolError
from liefol.families import FAMILY_CATALOG, DISPLAY_NAMES, FamilyId, assemble, canonical_name, family
from liefol.foliation import Split
from liefol.lie_core import parse_rational
from liefol.logger import get_logger, log_request_timing
from liefol.series import algebra, spec_for, split_for
from liefol.sweep import SUITES, run_sweep

logger = logging.getLogger(__name__)
app_logger = get_logger()


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Raises instead of exiting so run() owns the exit code."""

    def error(self, message):
        raise _UsageError(message)


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    mode = common.add_mutually_exclusive_group()
    mode.add_argument('--exact', dest='exact', action='store_true', default=True,
                      help='exact rational arithmetic (default)')
    mode.add_argument('--approx', dest='exact', action='store_false',
                      help='floating-point arithmetic with a tolerance')
    common.add_argument('--tolerance', type=float, default=None,
                        help='approx-mode zero tolerance (default 1e-9 * (1 + max|c|))')
    common.add_argument('--seed', type=int, default=config.DEFAULT_SEED)
    common.add_argument('--samples', type=int, default=config.DEFAULT_SAMPLES)
    output = common.add_mutually_exclusive_group()
    output.add_argument('--json', dest='pretty', action='store_false', default=False,
                        help='sorted-key JSON report (default)')
    output.add_argument('--pretty', dest='pretty', action='store_true',
                        help='human-readable report; honours NO_COLOR')
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = _Parser(prog='liefol', description='Left-invariant foliation verifier')
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)
    sub.required = True

    check = sub.add_parser('check', parents=[common], help='validate an algebra and report its geometry')
    check.add_argument('file', help='algebra document, or - for stdin')
    check.add_argument('--vertical', help='vertical index list, e.g. 2,3 (overrides the document)')

    classify = sub.add_parser('classify', parents=[common], help='normal form and family of a 4-d algebra')
    classify.add_argument('file', help='algebra document, or - for stdin')
    classify.add_argument('--vertical', help='vertical index list (default: document split, else 2,3)')

    fam = sub.add_parser('family', parents=[common], help='instantiate a family member')
    fam.add_argument('id', help='family id g1..g20')
    fam.add_argument('--param', action='append', default=[], metavar='NAME=VALUE',
                     help='free parameter, rational literal (repeatable)')

    series = sub.add_parser('series', parents=[common], help='Nil or Sol series member')
    series.add_argument('kind', choices=('nil', 'sol'))
    series.add_argument('value', help='n for nil; comma-separated alphas for sol')
    series.add_argument('--k', type=int, default=None, help='split index; H = {W, X1..Xk}')
    series.add_argument('--report', action='store_true',
                        help='emit the Ricci/foliation report instead of the algebra document')

    sweep = sub.add_parser('sweep', parents=[common], help='randomized invariant suite')
    sweep.add_argument('--family', default='all', help='family id or "all"')
    sweep.add_argument('--suite', choices=('all',) + SUITES, default='all',
                       help='run one suite only; residuals and series ignore --family')
    sweep.add_argument('--workers', type=int, default=config.SWEEP_WORKERS)

    sub.add_parser('catalog', parents=[common], help='list the families')

    serve = sub.add_parser('serve', help='run the HTTP service')
    serve.add_argument('--host', default=config.API_HOST)
    serve.add_argument('--port', type=int, default=config.API_PORT)
    return parser


def _index_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise _UsageError(f"bad index list {text!r}") from None


def _parse_params(pairs: Sequence[str]) -> dict:
    params = {}
    for pair in pairs:
        name, sep, value = pair.partition('=')
        if not sep or not name.strip():
            raise _UsageError(f"--param expects NAME=VALUE, got {pair!r}")
        try:
            params[canonical_name(name)] = parse_rational(value)
        except ValueError:
            raise _UsageError(f"--param {name}: {value!r} is not a rational") from None
    return params


# === Commands ===

def _load(args, stdin: TextIO):
    doc = algebra_file.load(args.file, stdin)
    A = algebra_file.to_structure_constants(doc, exact=args.exact, tolerance=args.tolerance)
    return doc, A


def cmd_check(args, stdin: TextIO, stdout: TextIO) -> int:
    with log_request_timing('check') as timer:
        doc, A = _load(args, stdin)
        split = Split.from_vertical(doc.dim, _index_list(args.vertical)) if args.vertical else algebra_file.split_of(doc)
        data, ok = report.check_report(A, split, doc.labels)
    foliation = data.get('foliation', {})
    app_logger.log_check(
        dim=A.dim,
        valid=ok,
        predicates={k: v for k, v in foliation.items() if isinstance(v, bool)},
        response_time=timer.elapsed,
        status='success' if ok else 'invalid',
    )
    report.render(data, stdout, args.pretty)
    return config.EXIT_OK if ok else config.EXIT_INVALID


def cmd_classify(args, stdin: TextIO, stdout: TextIO) -> int:
    with log_request_timing('classify') as timer:
        doc, A = _load(args, stdin)
        if args.vertical:
            split = Split.from_vertical(doc.dim, _index_list(args.vertical))
        else:
            split = algebra_file.split_of(doc) or Split.from_vertical(doc.dim, config.VERTICAL_4D)
        data, ok = report.classify_report(A, split)
    result = data.get('classification') or {}
    app_logger.log_classify(
        case=result.get('case'),
        family=result.get('family'),
        swapped=result.get('swapped', False),
        exact=data.get('normal_form', {}).get('exact', A.exact),
        response_time=timer.elapsed,
        status='success' if ok else 'failed',
    )
    report.render(data, stdout, args.pretty)
    return config.EXIT_OK if ok else config.EXIT_INVALID


def cmd_family(args, stdout: TextIO) -> int:
    fid = FamilyId.parse(args.id)
    params = _parse_params(args.param)
    p = family(fid, params, exact=args.exact)
    spec = FAMILY_CATALOG[fid]
    section = algebra_file.FamilySection(
        id=fid.value,
        parameters={DISPLAY_NAMES[k]: str(v) for k, v in params.items()},
    )
    doc = algebra_file.from_structure_constants(
        assemble(p),
        Split.from_vertical(4, config.VERTICAL_4D),
        list(config.FRAME_LABELS_4D),
        section,
    )
    app_logger.log_family(fid.value, section.parameters)
    logger.info(f"{fid.value} is a case {spec.case} family")
    stdout.write(algebra_file.dumps(doc))
    return config.EXIT_OK


def cmd_series(args, stdout: TextIO) -> int:
    spec = spec_for(args.kind, args.value)
    split = split_for(spec, args.k) if args.k is not None else None
    app_logger.log_series(args.kind, spec.n, args.k)

    if args.report:
        report.render(report.series_report(spec, args.k), stdout, args.pretty)
    else:
        stdout.write(algebra_file.dumps(algebra_file.from_structure_constants(algebra(spec), split, spec.labels())))
    return config.EXIT_OK


def cmd_sweep(args, stdout: TextIO) -> int:
    families = None if args.family == 'all' else [args.family]
    suites = None if args.suite == 'all' else (args.suite,)
    if args.samples < 1:
        raise _UsageError("--samples must be positive")
    with log_request_timing('sweep') as timer:
        data = run_sweep(families, samples=args.samples, seed=args.seed, workers=max(1, args.workers), suites=suites)
    app_logger.log_sweep(
        families=data['families'],
        samples=args.samples,
        seed=args.seed,
        failures=data['total_failures'],
        response_time=timer.elapsed,
    )
    report.render(data, stdout, args.pretty)
    return config.EXIT_OK if data['total_failures'] == 0 else config.EXIT_INVALID


def cmd_serve(args) -> int:
    import uvicorn
    from liefol.api import app

    uvicorn.run(app, host=args.host, port=args.port)
    return config.EXIT_OK


def run(
    argv: Optional[Sequence[str]] = None,
    stdin: Optional[TextIO] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None
) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
        if args.command == 'check':
            return cmd_check(args, stdin, stdout)
        if args.command == 'classify':
            return cmd_classify(args, stdin, stdout)
        if args.command == 'family':
            return cmd_family(args, stdout)
        if args.command == 'series':
            return cmd_series(args, stdout)
        if args.command == 'sweep':
            return cmd_sweep(args, stdout)
        if args.command == 'catalog':
            report.render(report.catalog_report(), stdout, args.pretty)
            return config.EXIT_OK
        return cmd_serve(args)
    except _UsageError as e:
        stderr.write(f"liefol: usage error: {e}\n")
        return config.EXIT_USAGE
    except LiefolError as e:
        app_logger.log_error(
            error_type=type(e).__name__,
            error_message=str(e),
            context={'argv': list(argv) if argv is not None else sys.argv[1:]},
        )
        stderr.write(f"liefol: error: {e}\n")
        return config.EXIT_USAGE
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else config.EXIT_OK


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
