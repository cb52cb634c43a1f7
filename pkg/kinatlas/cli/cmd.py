#!/usr/bin/env python
# encoding: utf-8
#
# Command-line front end: plan queries, verify atlases, classify singularities, compute cohomology bounds and draw
# planar paths.

import sys
import json
import argparse
import logging

from kinatlas.core.workspace import work_distance
from kinatlas.core.paths import MotionPath
from kinatlas.mechanisms import load_mechanism, load_query
from kinatlas.roadmaps import default_atlas
from kinatlas.singularity import check_classification
from kinatlas.cohomology import load_model, bound_report
from kinatlas.verify.harness import HarnessConfig, run_suites, SUITES
from kinatlas.verify.faults import inject_fault, FAULTS
from kinatlas.cli.svg import render_svg
from kinatlas.settings import load_tolerances
from kinatlas.errors import (InvalidInput, VariantMismatch, DimensionError, Unsupported, SizeError, Unreachable,
                             NoChart, BranchDomainError, SingularEncounter, NewtonDivergence, StartMismatch,
                             KinAtlasError)

# Set up logger for this module:
logger = logging.getLogger(__name__)

EXIT_PASS, EXIT_VIOLATION, EXIT_INPUT, EXIT_PLANNING = 0, 1, 2, 3

INPUT_ERRORS = (InvalidInput, VariantMismatch, DimensionError, Unsupported, SizeError, OSError)
PLANNING_ERRORS = (Unreachable, NoChart, BranchDomainError, SingularEncounter, NewtonDivergence, StartMismatch)


def to_json_text(js):
    return json.dumps(js, indent=2, sort_keys=True) + "\n"


def emit(js, filename=None):
    """Write JSON to a file, or to stdout."""
    text = to_json_text(js)
    if filename:
        with open(filename, 'w') as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def build_parser():
    parser = argparse.ArgumentParser('kinatlas', description='Roadmap atlases for robot-arm kinematic maps.')
    parser.add_argument('-v', '--verbose', action='store_true', help='Verbose logging.')
    parser.add_argument('--tolerances', dest='tolerances', type=str, default=None,
                        help="YAML file overriding the numeric tolerances. [default: %(default)s]")

    # Set up for sub-commands:
    subparsers = parser.add_subparsers(help='Action to perform', dest='action')

    plan_parser = subparsers.add_parser('plan', help="Plan a path for one query with the mechanism's atlas.")
    plan_parser.add_argument('mechanism', type=str, help="Mechanism JSON file.")
    plan_parser.add_argument('query', type=str, help="Query JSON file.")
    plan_parser.add_argument('--out', dest='out', type=str, default=None,
                             help="File to write the plan JSON to [default: stdout]")
    plan_parser.add_argument('--csv', dest='csv', type=str, default=None,
                             help="File to write the path CSV to. [default: %(default)s]")

    verify_parser = subparsers.add_parser('verify', help="Run the property harness on the mechanism's atlas.")
    verify_parser.add_argument('mechanism', type=str, help="Mechanism JSON file.")
    verify_parser.add_argument('--suite', dest='suite', default='all', choices=list(SUITES) + ['all'],
                               help="Which suite to run. [default: %(default)s]")
    verify_parser.add_argument('--seed', dest='seed', type=int, default=None, help="Random seed. [default: 0]")
    verify_parser.add_argument('--samples', dest='samples', type=int, default=None,
                               help="Random queries per suite. [default: 1000]")
    verify_parser.add_argument('--delta', dest='delta', type=float, default=None,
                               help="Continuity probe radius. [default: 1e-4]")
    verify_parser.add_argument('--config', dest='config', type=str, default=None,
                               help="YAML harness configuration; flags override it. [default: %(default)s]")
    verify_parser.add_argument('--inject-fault', dest='fault', default='none', choices=['none'] + list(FAULTS),
                               help="Break the atlas on purpose, to check the harness. [default: %(default)s]")
    verify_parser.add_argument('--fault-chart', dest='fault_chart', type=int, default=0,
                               help="Chart the fault is injected into. [default: %(default)s]")
    verify_parser.add_argument('--out', dest='out', type=str, default=None,
                               help="File to write the report JSON to [default: stdout]")

    singular_parser = subparsers.add_parser('singular', help="Compare the analytic singular locus with numerical rank.")
    singular_parser.add_argument('mechanism', type=str, help="Mechanism JSON file.")
    singular_parser.add_argument('--samples', dest='samples', type=int, default=10000,
                                 help="Random configurations. [default: %(default)s]")
    singular_parser.add_argument('--seed', dest='seed', type=int, default=0, help="Random seed. [default: %(default)s]")

    bound_parser = subparsers.add_parser('tc-bound', help="Cohomological lower bound on the number of charts.")
    bound_parser.add_argument('model', type=str, help="Cohomology model JSON file.")

    svg_parser = subparsers.add_parser('export-svg', help="Draw a planar mechanism following a path CSV.")
    svg_parser.add_argument('mechanism', type=str, help="Mechanism JSON file.")
    svg_parser.add_argument('path', type=str, help="Path CSV file, as written by 'plan --csv'.")
    svg_parser.add_argument('--out', dest='out', type=str, required=True, help="SVG file to write.")

    return parser


def cmd_plan(args):
    mech = load_mechanism(args.mechanism)
    q = load_query(args.query, mech)
    atlas = default_atlas(mech)
    index, path = atlas.plan(q)
    residual = work_distance(mech.forward(path.end), q.target)
    if args.csv:
        path.write_csv(args.csv)
    emit({
        'chart': index,
        'label': atlas[index].label,
        'atlas': atlas.label,
        'start': list(path.start),
        'end': list(path.end),
        'samples': len(path),
        'residual': residual,
        'path_csv': args.csv,
    }, args.out)
    print("endpoint residual: %.3e" % residual, file=sys.stderr)
    return EXIT_PASS


def cmd_verify(args, tolerances=None):
    mech = load_mechanism(args.mechanism)
    overrides = dict(seed=args.seed, samples=args.samples, delta=args.delta, tolerances=tolerances)
    if args.config:
        cfg = HarnessConfig.from_yaml(args.config, **overrides)
    else:
        cfg = HarnessConfig().replace(**overrides)
    atlas = inject_fault(default_atlas(mech), args.fault, args.fault_chart)
    suites = SUITES if args.suite == 'all' else (args.suite,)
    reports = run_suites(atlas, cfg, suites)
    passed = all(r.passed for r in reports.values())
    emit({
        'mechanism': mech.to_json(),
        'atlas': atlas.label,
        'chart_count': len(atlas),
        'seed': cfg.seed,
        'samples': cfg.samples,
        'delta': cfg.delta,
        'fault': args.fault,
        'passed': passed,
        'suites': {name: r.to_json() for name, r in reports.items()},
    }, args.out)
    return EXIT_PASS if passed else EXIT_VIOLATION


def cmd_singular(args):
    mech = load_mechanism(args.mechanism)
    if args.samples < 1:
        raise InvalidInput("--samples must be positive")
    result = check_classification(mech, args.samples, args.seed)
    emit(result)
    return EXIT_PASS if result['disagreements'] == 0 else EXIT_VIOLATION


def cmd_tc_bound(args):
    emit(bound_report(load_model(args.model)))
    return EXIT_PASS


def cmd_export_svg(args):
    mech = load_mechanism(args.mechanism)
    path = MotionPath.read_csv(args.path)
    svg = render_svg(mech, path)
    with open(args.out, 'w') as f:
        f.write(svg)
    return EXIT_PASS


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    # Set up overall logging config:
    logging.basicConfig(level=logging.WARNING, format='%(asctime)s: %(levelname)s - %(name)s - %(message)s')
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    if args.action is None:
        parser.print_help()
        return EXIT_INPUT

    try:
        tolerances = load_tolerances(args.tolerances) if args.tolerances else None
        if args.action == 'plan':
            return cmd_plan(args)
        elif args.action == 'verify':
            return cmd_verify(args, tolerances)
        elif args.action == 'singular':
            return cmd_singular(args)
        elif args.action == 'tc-bound':
            return cmd_tc_bound(args)
        elif args.action == 'export-svg':
            return cmd_export_svg(args)
    except INPUT_ERRORS as e:
        logger.error("%s: %s" % (type(e).__name__, e))
        return EXIT_INPUT
    except PLANNING_ERRORS as e:
        logger.error("Planning failed, %s: %s" % (type(e).__name__, e))
        return EXIT_PLANNING
    except KinAtlasError as e:
        logger.error("%s: %s" % (type(e).__name__, e))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
