"""
Command-line entry point for the simplicial cone projection engine.

CLI Contract:
- One subcommand, one output document
- Loads CSV inputs, computes, prints, exits
- No loops, menus, or interactivity
- Diagnostics go to stderr as a single "ERROR: ..." line

Exit Codes:
- 0: Success
- 1: Computation failure (loop, iteration budget, failed certificate,
     numerical failure of the Gram solves)
- 2: Usage or input error (bad flags, unreadable or mismatched files,
     singular generators, dimension above the exact guard)
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np
from pydantic import ValidationError

# Add parent directory to path for imports
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from cli.documents import VERSION, OracleDocument, ProjectionDocument
from cli.matrix_io import MatrixFileError, format_matrix, read_matrix, read_vector
from engine import (
    ConeError,
    HeuristicConfig,
    NoSectorFound,
    SimplicialCone,
    SolveFailure,
    StartPolicy,
    Status,
    build_cone,
    get_tolerances,
    heuristic_project,
    moreau_check,
    project,
    profile_names,
    scaled_tol,
)
from probabilistic import (
    Distribution,
    ExperimentConfig,
    emit_csv,
    format_table,
    run_experiment_detailed,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

_TOL = get_tolerances()


def _error(message: str, code: int = EXIT_USAGE) -> int:
    print(f"ERROR: {message}", file=sys.stderr)
    return code


def _sign_tol(args) -> float:
    """--tol when given, otherwise the sign band of the selected --profile."""
    if args.tol is not None:
        return args.tol
    return get_tolerances(args.profile)["sign"]


def load_instance(cone_file: str, point_file: Optional[str] = None):
    """Read a cone and (optionally) a point, checking that dimensions agree."""
    cone = build_cone(read_matrix(cone_file))
    if point_file is None:
        return cone, None
    x = read_vector(point_file)
    if x.shape[0] != cone.dim:
        raise MatrixFileError(
            f"{point_file}: has {x.shape[0]} entries, cone in {cone_file} has dimension {cone.dim}"
        )
    return cone, x


def run_projection(cone: SimplicialCone, x: np.ndarray, config: Optional[HeuristicConfig] = None) -> Dict:
    """
    Core of `project` - testable without the CLI layer.

    Returns:
        Projection document as a JSON-ready dictionary
    """
    result = heuristic_project(cone, x, config)
    return ProjectionDocument.from_result(result).model_dump(mode="json")


def _projection_csv(document: Dict) -> str:
    stats = document["stats"]
    rows = [
        ("status", document["status"]),
        ("final_set", " ".join(str(k) for k in document["final_set"])),
        ("iterations", stats["iterations"]),
        ("total_changes", stats["total_changes"]),
        ("changes_per_iteration", " ".join(str(c) for c in stats["changes_per_iteration"])),
        ("increase_iterations", stats["increase_iterations"]),
        ("loop_detected", stats["loop_detected"]),
        ("restarts_used", stats["restarts_used"]),
        ("shortcut", stats["shortcut"] or ""),
    ]
    rows += [(f"projection_{k + 1}", v) for k, v in enumerate(document["projection"])]
    rows += [(f"polar_projection_{k + 1}", v) for k, v in enumerate(document["polar_projection"])]
    return "key,value\n" + "".join(f"{key},{value}\n" for key, value in rows)


def cmd_project(args) -> int:
    """Execute the project command: heuristic projection."""
    try:
        cone, x = load_instance(args.cone, args.point)
        config = HeuristicConfig(
            sign_tol=_sign_tol(args),
            max_iterations=args.max_iter,
            max_restarts=args.restarts,
            restart_seed=args.seed,
            initial_set=StartPolicy(args.start),
        )
        document = run_projection(cone, x, config)
    except (SolveFailure, NoSectorFound) as e:
        return _error(str(e), EXIT_FAILURE)
    except (MatrixFileError, ConeError, ValidationError) as e:
        return _error(str(e).splitlines()[0])

    if args.format == "csv":
        sys.stdout.write(_projection_csv(document))
    else:
        print(json.dumps(document, indent=2))
    return EXIT_OK if document["status"] == Status.CONVERGED.value else EXIT_FAILURE


def cmd_oracle(args) -> int:
    """Execute the oracle command: exact projection by sector enumeration."""
    try:
        cone, x = load_instance(args.cone, args.point)
        tol = scaled_tol(_sign_tol(args), x)
        result = project(cone, x, tol=tol, max_dim_guard=args.guard)
    except (SolveFailure, NoSectorFound) as e:
        return _error(str(e), EXIT_FAILURE)
    except (MatrixFileError, ConeError) as e:
        return _error(str(e))
    document = OracleDocument.from_result(result, pruned=cone.subdual)
    print(json.dumps(document.model_dump(mode="json"), indent=2))
    return EXIT_OK


def cmd_polar(args) -> int:
    """Execute the polar command: print U = -(E^{-1})^T as CSV."""
    try:
        cone, _ = load_instance(args.cone)
    except (MatrixFileError, ConeError) as e:
        return _error(str(e))
    sys.stdout.write(format_matrix(cone.polar_generators))
    return EXIT_OK


def cmd_check(args) -> int:
    """Execute the check command: Moreau certificate for a candidate projection."""
    try:
        cone, x = load_instance(args.cone, args.point)
        p = read_vector(args.projection)
        if p.shape[0] != cone.dim:
            raise MatrixFileError(
                f"{args.projection}: has {p.shape[0]} entries, cone in {args.cone} has dimension {cone.dim}"
            )
        certificate = moreau_check(cone, x, p, tol=scaled_tol(args.tol, x))
    except (MatrixFileError, ConeError) as e:
        return _error(str(e))
    print(json.dumps(certificate.model_dump(mode="json"), indent=2))
    return EXIT_OK if certificate.passed else EXIT_FAILURE


def parse_sizes(text: str) -> List[int]:
    """Comma-separated positive integers."""
    try:
        sizes = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"--sizes must be comma-separated integers, got '{text}'")
    if not sizes or any(n < 1 for n in sizes):
        raise ValueError(f"--sizes must be positive integers, got '{text}'")
    return sizes


def cmd_experiment(args) -> int:
    """Execute the experiment command: Monte Carlo table plus CSV files."""
    try:
        config = ExperimentConfig(
            sizes=parse_sizes(args.sizes),
            trials_per_size=args.trials,
            master_seed=args.seed,
            generator_distribution=Distribution(args.dist),
            heuristic=HeuristicConfig(max_restarts=args.restarts),
        )
    except (ValueError, ValidationError) as e:
        return _error(str(e).splitlines()[0])
    if args.workers < 1:
        return _error(f"--workers must be positive, got {args.workers}")

    report = run_experiment_detailed(config, workers=args.workers)
    summary_csv, detail_csv = emit_csv(
        report.aggregates,
        report.records if args.out_detail else None,
    )
    try:
        if args.out_summary:
            Path(args.out_summary).write_text(summary_csv)
        if args.out_detail:
            Path(args.out_detail).write_text(detail_csv)
    except OSError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_FAILURE

    print(format_table(report.aggregates))
    # loops are data, not failure
    return EXIT_OK


def _add_instance_args(parser: argparse.ArgumentParser, with_point: bool = True) -> None:
    parser.add_argument('cone', help='CSV generator matrix (columns are generators, no header)')
    if with_point:
        parser.add_argument('point', help='CSV point (single column)')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='cone-project',
        description='Simplicial cone projection - exact and heuristic metric projection',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  cone-project project cone.csv x.csv             # Heuristic projection (JSON)
  cone-project oracle cone.csv x.csv              # Exact projection by enumeration
  cone-project polar cone.csv                     # Polar matrix U as CSV
  cone-project check cone.csv x.csv p.csv         # Moreau certificate
  cone-project experiment --sizes 2,10 --trials 1000

Output Schema (project, JSON):
  {
    "projection": [0.5, 0.5],
    "polar_projection": [-0.5, 0.5],
    "final_set": [2],
    "status": "Converged",
    "stats": {"iterations": 2, "total_changes": 1, "changes_per_iteration": [1, 0],
              "increase_iterations": 0, "loop_detected": false, "restarts_used": 0,
              "shortcut": null},
    "version": "1.0"
  }

Exit codes: 0 success, 1 loop/budget/failed certificate/solve failure, 2 usage or input error.
"""
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {VERSION}')
    parser.add_argument(
        '--verbose', '-v',
        action='store_true',
        help='Log debug traces (iterations, swaps) to stderr'
    )

    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    project_parser = subparsers.add_parser(
        'project',
        help='Project a point with the heuristic swap iteration',
    )
    _add_instance_args(project_parser)
    project_parser.add_argument('--tol', type=float, default=None,
                                help='Sign tolerance, scaled by (1 + ||x||) (default: from --profile)')
    project_parser.add_argument('--profile', choices=profile_names(), default='default',
                                help='Tolerance profile: default (1e-10) or strict (1e-12)')
    project_parser.add_argument('--max-iter', type=int, default=int(_TOL["max_iterations"]),
                                help='Iteration budget (default: 100)')
    project_parser.add_argument('--restarts', type=int, default=0,
                                help='Random restarts after a loop (default: 0)')
    project_parser.add_argument('--seed', type=int, default=0,
                                help='Seed for random starts and restarts (default: 0)')
    project_parser.add_argument('--start', choices=['all', 'random'], default='all',
                                help='Initial index set: all generators or random (default: all)')
    project_parser.add_argument('--format', choices=['json', 'csv'], default='json',
                                help='Output format (default: json)')

    oracle_parser = subparsers.add_parser(
        'oracle',
        help='Exact projection by enumerating all 2^n sectors',
    )
    _add_instance_args(oracle_parser)
    oracle_parser.add_argument('--tol', type=float, default=None,
                               help='Sign tolerance, scaled by (1 + ||x||) (default: from --profile)')
    oracle_parser.add_argument('--profile', choices=profile_names(), default='default',
                               help='Tolerance profile: default (1e-10) or strict (1e-12)')
    oracle_parser.add_argument('--guard', type=int, default=int(_TOL["max_dim_guard"]),
                               help='Largest dimension to enumerate (default: 15, max: 25)')

    polar_parser = subparsers.add_parser('polar', help='Print the polar matrix U = -(E^-1)^T')
    _add_instance_args(polar_parser, with_point=False)

    check_parser = subparsers.add_parser('check', help='Moreau certificate for a candidate projection')
    _add_instance_args(check_parser)
    check_parser.add_argument('projection', help='CSV candidate projection (single column)')
    check_parser.add_argument('--tol', type=float, default=_TOL["certificate"],
                              help='Certificate tolerance, scaled by (1 + ||x||) (default: 1e-7)')

    experiment_parser = subparsers.add_parser('experiment', help='Monte Carlo evaluation of the heuristic')
    experiment_parser.add_argument('--sizes', default='2,3,5,10',
                                   help='Comma-separated cone dimensions (default: 2,3,5,10)')
    experiment_parser.add_argument('--trials', type=int, default=1000,
                                   help='Trials per size (default: 1000)')
    experiment_parser.add_argument('--seed', type=int, default=0, help='Master seed (default: 0)')
    experiment_parser.add_argument('--dist', choices=[d.value for d in Distribution], default='normal',
                                   help='Generator entry distribution (default: normal)')
    experiment_parser.add_argument('--restarts', type=int, default=0,
                                   help='Random restarts after a loop (default: 0)')
    experiment_parser.add_argument('--workers', type=int, default=1,
                                   help='Worker processes (default: 1)')
    experiment_parser.add_argument('--out-summary', help='Write the summary CSV here')
    experiment_parser.add_argument('--out-detail', help='Write the per-trial detail CSV here')

    return parser


COMMANDS = {
    'project': cmd_project,
    'oracle': cmd_oracle,
    'polar': cmd_polar,
    'check': cmd_check,
    'experiment': cmd_experiment,
}


def main(argv: Optional[list] = None) -> int:
    """
    Main CLI entry point.

    Args:
        argv: Optional argument list (for testing). If None, uses sys.argv.

    Returns:
        Exit code (0 success, 1 computation failure, 2 usage error)
    """
    if argv is None:
        argv = sys.argv[1:]

    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    if args.command is None:
        parser.print_usage(sys.stderr)
        return _error("a command is required")

    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
