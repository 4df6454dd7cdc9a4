#!/usr/bin/env python3
import argparse
import json
import logging
import multiprocessing as mp
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path

from modules import RunConfig, RunStats, SpectraError, SystemOptimizer, __version__
from modules import config
from modules.cover_bounds import case_sums, certify_case_margin, load_cover_systems, solve_threshold
from modules.forcing_engine import iterate_replication, survivors
from modules.gauss_dim import load_subshift_entries
from modules.intervals import decimal_fraction
from modules.ledger import claims_by_id, load_ledger, run_ledger, with_transposes
from modules.report import cmd_eval, cmd_report_appendixB, cmd_report_theorem1, cmd_report_theorem2, lint_report, write_report
from modules.window_prover import PROVED, Claim, WindowPattern, prove_claim
from modules.worker_functions import dimension_worker

DEFAULTS_FILE = Path(__file__).parent / '.spectragap_defaults.json'
REPORTS = ('theorem1', 'theorem2', 'appendixB')


def setup_logging(verbose: bool = False):
    level = logging.DEBUG if verbose else logging.INFO
    format_str = '%(asctime)s - %(levelname)s - %(message)s'
    logging.basicConfig(level=level, format=format_str, handlers=[logging.StreamHandler(sys.stderr)])


def save_default_config(args):
    existing = load_default_config()
    merged = {
        'preset': getattr(args, 'preset', existing.get('preset', 'default')),
        'precision': getattr(args, 'precision', existing.get('precision')),
        'tol': getattr(args, 'tol', existing.get('tol')),
        'jobs': getattr(args, 'jobs', existing.get('jobs')),
        'data_dir': getattr(args, 'data_dir', existing.get('data_dir')),
    }
    with open(DEFAULTS_FILE, 'w') as f:
        json.dump(merged, f, indent=2)
    print(f'Default configuration saved to {DEFAULTS_FILE}', file=sys.stderr)


def load_default_config() -> dict:
    if DEFAULTS_FILE.exists():
        try:
            with open(DEFAULTS_FILE, 'r') as f:
                return json.load(f) or {}
        except (OSError, json.JSONDecodeError):
            pass
    return {}


def build_config(args) -> RunConfig:
    cfg = RunConfig.from_preset(
        args.preset,
        precision=args.precision,
        tol=decimal_fraction(args.tol) if args.tol else None,
        jobs=args.jobs,
        data_dir=args.data_dir,
        out=args.out,
    )
    for key in ('max_depth', 'lookahead', 'order'):
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, value)
    cfg.validate()
    cfg.apply()
    return cfg


def workers_for(cfg: RunConfig, task_type: str, items: int = 0) -> int:
    if cfg.jobs:
        return cfg.jobs
    return SystemOptimizer().get_optimal_workers(task_type, items)


def emit(payload: str, out: str = None):
    if out:
        os.makedirs(os.path.dirname(os.path.abspath(out)), exist_ok=True)
        with open(out, 'w', encoding='utf-8') as f:
            f.write(payload)
        logging.info(f'Output written to {out}')
    else:
        sys.stdout.write(payload)


def emit_report(report, args) -> int:
    problems = lint_report(report)
    for p in problems:
        logging.error(f'report lint: {p}')
    payload = write_report(report, args.out, getattr(args, 'text', False))
    if not args.out:
        sys.stdout.write(payload)
    return 0 if report.passed and not problems else 1


def run_eval(args, cfg, stats) -> int:
    return emit_report(cmd_eval(args.literal, cfg.tol), args)


def run_prove(args, cfg, stats) -> int:
    if args.pattern:
        index_set = ((int(args.index), None),)
        claim = Claim('adhoc', WindowPattern.parse(args.pattern, tuple(int(ch) for ch in args.alphabet)), args.kind, args.threshold, index_set)
    elif not args.claim_id:
        raise SpectraError('prove needs a claim id or --pattern')
    else:
        ledger = claims_by_id(with_transposes(load_ledger(cfg.path(config.LEDGER_FILE))))
        if args.claim_id not in ledger:
            raise SpectraError(f'no claim {args.claim_id!r} in the ledger')
        claim = ledger[args.claim_id]
    verdict = prove_claim(claim, cfg.max_depth, cfg.tol)
    stats.record_verdict(verdict.status, verdict.nodes)
    lo, hi = verdict.bound.to_decimal(15) if verdict.bound is not None else (None, None)
    record = {'id': verdict.claim_id, 'status': verdict.status, 'bound_lo': lo, 'bound_hi': hi, 'depth_used': verdict.depth_used}
    if verdict.witness is not None:
        record['witness'] = verdict.witness_literal()
    emit(json.dumps(record, indent=2) + '\n', args.out)
    return 0 if verdict.status == PROVED else 1


def run_ledger_cmd(args, cfg, stats) -> int:
    claims = with_transposes(load_ledger(args.ledger or cfg.path(config.LEDGER_FILE)))
    if args.ids:
        wanted = set(args.ids)
        claims = [c for c in claims if c.id in wanted or c.id.split('^')[0] in wanted]
    start = time.time()
    report = run_ledger(claims, workers_for(cfg, 'ledger', len(claims)), cfg.max_depth, cfg.tol, stats)
    stats.timing.add('ledger', time.time() - start)
    emit(report.to_json() + '\n', args.out)
    mismatches = report.printed_mismatches()
    for claim_id in mismatches:
        logging.error(f'{claim_id}: bound does not match the printed value')
    return 0 if report.passed and not mismatches else 1


def run_force(args, cfg, stats) -> int:
    claims = with_transposes(load_ledger(cfg.path(config.LEDGER_FILE))) if args.cite else None
    start = time.time()
    result = survivors(args.lo, args.hi, args.radius, tuple(int(ch) for ch in args.alphabet), cfg.lookahead, workers_for(cfg, 'survivors'), claims, stats)
    stats.timing.add('forcing', time.time() - start)
    emit(result.to_json() + '\n', args.out)
    return 0 if result.windows else 1


def run_replicate(args, cfg, stats) -> int:
    start = time.time()
    claims = with_transposes(load_ledger(cfg.path(config.LEDGER_FILE)))
    results = iterate_replication(args.window, args.bound, args.times, max(cfg.lookahead, config.REPLICATION_LOOKAHEAD), workers_for(cfg, 'survivors'), claims)
    stats.timing.add('forcing', time.time() - start)
    emit(json.dumps([r.to_dict() for r in results], indent=2) + '\n', args.out)
    return 0 if results and all(r.forced for r in results) else 1


def run_cover(args, cfg, stats) -> int:
    systems = load_cover_systems(cfg.path(config.COVER_FILE))
    labels = args.labels or sorted(systems)
    unknown = [label for label in labels if label not in systems]
    if unknown:
        raise SpectraError(f'unknown cover systems: {", ".join(unknown)}')
    records = []
    ok = True
    start = time.time()
    for label in labels:
        cs = systems[label]
        certified = certify_case_margin(cs, args.joint)
        sums = case_sums(cs, cs.s_stated, args.joint)
        s_star = solve_threshold(cs, joint=args.joint)
        records.append({
            'label': label,
            'region': list(cs.region),
            's': str(float(cs.s_stated)),
            'margin': str(float(cs.margin)),
            'case_sums': {name: list(value.to_decimal(9)) for name, value in sorted(sums.items())},
            'certified': certified,
            's_star': f'{float(s_star):.9f}',
            'notes': cs.notes,
        })
        ok = ok and certified
    stats.timing.add('cover', time.time() - start)
    emit(json.dumps(records, indent=2) + '\n', args.out)
    return 0 if ok else 1


def run_dim(args, cfg, stats) -> int:
    entries = load_subshift_entries(cfg.path(config.SUBSHIFT_FILE))
    if args.names:
        entries = [e for e in entries if e['name'] in set(args.names)]
        if not entries:
            raise SpectraError(f'no subshift named {", ".join(args.names)}')
    worker_config = {'order': cfg.order}
    workers = workers_for(cfg, 'dimension', len(entries))
    results = {}
    start = time.time()
    if workers <= 1:
        for idx, entry in enumerate(entries):
            results[idx] = dimension_worker((entry, worker_config))
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = {executor.submit(dimension_worker, (entry, worker_config)): idx for idx, entry in enumerate(entries)}
            for done, future in enumerate(as_completed(futures), 1):
                idx = futures[future]
                try:
                    results[idx] = future.result()
                except SpectraError as e:
                    logging.error(f'{entries[idx]["name"]}: {e}')
                    results[idx] = (entries[idx]['name'], None, 0.0)
                logging.info(f'[{done}/{len(entries)}] {entries[idx]["name"]} done')
    stats.timing.add('dimension', time.time() - start)
    records = []
    for idx in range(len(entries)):
        name, estimate, seconds = results[idx]
        record = {'name': name, 'reference': entries[idx].get('reference')}
        if estimate is not None:
            record.update(estimate.to_dict())
            record['seconds'] = f'{seconds:.2f}'
        records.append(record)
    emit(json.dumps(records, indent=2) + '\n', args.out)
    return 0 if all(results[i][1] is not None for i in results) else 1


def run_report(args, cfg, stats) -> int:
    if args.which == 'theorem1':
        report = cmd_report_theorem1(cfg, radius=args.radius, stats=stats)
    elif args.which == 'theorem2':
        report = cmd_report_theorem2(cfg, args.region, stats)
    else:
        report = cmd_report_appendixB(cfg, args.region, not args.no_estimates, stats)
    return emit_report(report, args)


def print_final_stats(stats: RunStats):
    print('\n' + '=' * 55, file=sys.stderr)
    print('RUN STATISTICS', file=sys.stderr)
    print('=' * 55, file=sys.stderr)
    if stats.claims_total():
        print(f'Claims: {stats.claims_proved} proved, {stats.claims_refuted} refuted, {stats.claims_inconclusive} inconclusive', file=sys.stderr)
        print(f'Nodes visited: {stats.nodes_visited}', file=sys.stderr)
        print(f'Throughput: {stats.claims_per_second():.1f} claims/s', file=sys.stderr)
    if stats.windows_generated:
        print(f'Windows: {stats.windows_generated} generated, {stats.windows_eliminated} eliminated ({stats.elimination_ratio():.1%})', file=sys.stderr)
    for phase, seconds in stats.timing.get_breakdown().items():
        if seconds > 0:
            print(f'{phase.capitalize()} time: {seconds:.1f} s', file=sys.stderr)
    print(f'Total time: {stats.elapsed_time():.1f} s', file=sys.stderr)
    print('=' * 55, file=sys.stderr)


def build_parser(defaults: dict) -> argparse.ArgumentParser:
    script = os.path.basename(__file__)
    parser = argparse.ArgumentParser(
        description='Continued fractions, the Markov and Lagrange spectra near 3.7097 and the dimension of M minus L',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=f"""
Examples
    # Values of one sequence
    python {script} eval "(3322212)"

    # Prove the whole claim ledger with 8 workers
    python {script} --jobs 8 ledger --out out/ledger.json

    # Forced windows and replication
    python {script} force 3.7096992 3.7096999 --radius 9
    python {script} replicate --times 3

    # Reports
    python {script} report theorem1
    python {script} report theorem2 --region sqrt10-sqrt13
    python {script} --preset quick report appendixB --text

Notes
    - Sequence literals: digits, an optional '*' after the origin digit and
      periodic blocks in parentheses, e.g. (21)12212332221233*22212(12)
    - JSON goes to stdout unless --out is given; logs go to stderr
    - Exit code 0 only when the command passes
    - Saved defaults are read from {DEFAULTS_FILE.name} next to this script

Presets
    quick       lower precision and order, for a fast sanity pass
    default     the reference configuration
    thorough    higher precision, deeper search and order 24
        """,
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('--preset', choices=('quick', 'default', 'thorough'), default=defaults.get('preset', 'default'), help='Run preset from presets.json (default: default)')
    parser.add_argument('--precision', type=int, default=defaults.get('precision'), metavar='BITS', help=f'Working precision in bits (default: preset, {config.PRECISION_BITS})')
    parser.add_argument('--tol', default=defaults.get('tol'), metavar='DEC', help='Enclosure width, as a decimal such as 1e-20 (default: preset)')
    parser.add_argument('--jobs', type=int, default=defaults.get('jobs'), metavar='N', help='Parallel workers (default: auto from CPU and RAM)')
    parser.add_argument('--data-dir', default=defaults.get('data_dir') or config.DATA_DIR, metavar='DIR', help='Directory with the ledger, cover, block, region and subshift files')
    parser.add_argument('--out', default=None, metavar='PATH', help='Write the JSON result here instead of stdout')
    parser.add_argument('--default', action='store_true', help='Save the global flags as defaults for future runs')
    parser.add_argument('--verbose', '-v', action='store_true', help='Debug logging')

    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('eval', help='lambda_0, Markov and Lagrange values of a sequence literal')
    p.add_argument('literal')
    p.add_argument('--text', action='store_true', help='Human-readable output')
    p.set_defaults(handler=run_eval)

    p = sub.add_parser('prove', help='Prove one ledger claim or an ad hoc claim')
    p.add_argument('claim_id', nargs='?', help='Ledger id such as l1.i or l1.i^t')
    p.add_argument('--pattern', help='Window literal of an ad hoc claim')
    p.add_argument('--kind', choices=('upper', 'lower', 'disjunctive'), default='upper')
    p.add_argument('--threshold', default='3.7')
    p.add_argument('--index', default='0', help='Position of the ad hoc claim (default: 0)')
    p.add_argument('--alphabet', default='123')
    p.add_argument('--max-depth', type=int, default=None)
    p.set_defaults(handler=run_prove)

    p = sub.add_parser('ledger', help='Prove every claim of the ledger')
    p.add_argument('--ledger', default=None, metavar='PATH', help='Ledger file (default: data dir)')
    p.add_argument('--ids', nargs='+', metavar='ID', help='Only these claims (with their transposes)')
    p.add_argument('--max-depth', type=int, default=None)
    p.set_defaults(handler=run_ledger_cmd)

    p = sub.add_parser('force', help='Windows compatible with lambda_0 in (LO, HI)')
    p.add_argument('lo')
    p.add_argument('hi')
    p.add_argument('--radius', type=int, default=9)
    p.add_argument('--alphabet', default='123')
    p.add_argument('--lookahead', type=int, default=None)
    p.add_argument('--cite', action='store_true', help='Match eliminated windows against ledger claims')
    p.set_defaults(handler=run_force)

    p = sub.add_parser('replicate', help='Left replication of the forced window')
    p.add_argument('--window', default=config.REPLICATION_SEED)
    p.add_argument('--bound', default=config.REPLICATION_BOUND)
    p.add_argument('--times', type=int, default=1)
    p.add_argument('--lookahead', type=int, default=None)
    p.set_defaults(handler=run_replicate)

    p = sub.add_parser('cover', help='Case sums and thresholds of the cover systems')
    p.add_argument('labels', nargs='*', help='Cover labels (default: all)')
    p.add_argument('--joint', action='store_true', help='Maximise each case sum jointly over r')
    p.set_defaults(handler=run_cover)

    p = sub.add_parser('dim', help='Heuristic Hausdorff dimension of Gauss-Cantor sets')
    p.add_argument('names', nargs='*', help='Subshift names (default: all)')
    p.add_argument('--order', type=int, default=None)
    p.set_defaults(handler=run_dim)

    p = sub.add_parser('report', help='Assemble a report')
    p.add_argument('which', choices=REPORTS)
    p.add_argument('--region', nargs='+', default=None, metavar='LABEL', help='Only these regions (theorem2, appendixB)')
    p.add_argument('--radius', type=int, default=9, help='Survivor radius (theorem1)')
    p.add_argument('--no-estimates', action='store_true', help='Skip the heuristic dimension estimates (appendixB)')
    p.add_argument('--max-depth', type=int, default=None)
    p.add_argument('--order', type=int, default=None)
    p.add_argument('--text', action='store_true', help='Human-readable output')
    p.set_defaults(handler=run_report)
    return parser


def main(argv=None) -> int:
    defaults = load_default_config()
    parser = build_parser(defaults)
    args = parser.parse_args(argv)
    setup_logging(args.verbose)
    if args.default:
        save_default_config(args)

    print(f'spectragap {__version__}', file=sys.stderr)
    print('=' * 55, file=sys.stderr)
    stats = RunStats()
    try:
        cfg = build_config(args)
        print(f'Command: {args.command}, preset: {args.preset}, precision: {cfg.precision} bits, tol: {float(cfg.tol):.1e}', file=sys.stderr)
        code = args.handler(args, cfg, stats)
    except SpectraError as e:
        logging.error(str(e))
        return 1
    finally:
        stats.timing.total_time = stats.elapsed_time()
    print_final_stats(stats)
    return code


if __name__ == '__main__':
    mp.set_start_method('spawn', force=True)
    sys.exit(main())
