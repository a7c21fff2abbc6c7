"""
Run the heuristic projection sweep over the standard cone dimensions.

Prints the per-size table (changes, iterations, share of iterations with
increasing changes, loop rate) at desk scale and re-checks small sizes
against exact enumeration.

Run:
    python run_monte_carlo.py                 # 10,000 trials for n <= 30, 1,000 above
    python run_monte_carlo.py --scale 0.1     # a tenth of that
"""

import argparse
import time
from pathlib import Path

from probabilistic import (
    SWEEP_SIZES,
    ExperimentConfig,
    emit_csv,
    format_table,
    oracle_sweep,
    run_experiment_detailed,
)

OUTPUT_DIR = Path(__file__).parent / "outputs"


def trials_for(n: int, scale: float) -> int:
    base = 10_000 if n <= 30 else 1_000
    return max(1, int(base * scale))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Heuristic projection sweep")
    parser.add_argument("--scale", type=float, default=1.0, help="Multiply trial counts (default: 1.0)")
    parser.add_argument("--max-size", type=int, default=100, help="Largest dimension (default: 100)")
    parser.add_argument("--seed", type=int, default=0, help="Master seed (default: 0)")
    parser.add_argument("--workers", type=int, default=1, help="Worker processes (default: 1)")
    args = parser.parse_args(argv)

    print("=" * 72)
    print("HEURISTIC PROJECTION ON SIMPLICIAL CONES - MONTE CARLO SWEEP")
    print("=" * 72)
    print()

    sizes = [n for n in SWEEP_SIZES if n <= args.max_size]
    aggregates = []
    records = []
    start_time = time.time()
    for n in sizes:
        config = ExperimentConfig(sizes=[n], trials_per_size=trials_for(n, args.scale), master_seed=args.seed)
        report = run_experiment_detailed(config, workers=args.workers)
        aggregates.extend(report.aggregates)
        records.extend(report.records)
        print(f"  n={n:>4}: {config.trials_per_size:,} trials done")
    elapsed_time = time.time() - start_time

    print()
    print(format_table(aggregates))
    print()
    print(f"Sweep completed in {elapsed_time:.2f} seconds")
    print(f"Largest iteration count observed: {max(a.max_iterations for a in aggregates)}")
    print()

    print("Exact enumeration cross-check (n <= 8):")
    print("-" * 40)
    for n in range(2, 9):
        config = ExperimentConfig(sizes=[n], trials_per_size=1, master_seed=args.seed)
        sweep = oracle_sweep(n, trials_for(n, args.scale * 0.1), config)
        print(
            f"  n={n}: {sweep.matched_exact}/{sweep.converged} converged runs match, "
            f"{sweep.certified} certified, worst deviation {sweep.worst_deviation:.2e}"
        )
    print()

    OUTPUT_DIR.mkdir(exist_ok=True)
    summary_csv, detail_csv = emit_csv(aggregates, records)
    (OUTPUT_DIR / "sweep_summary.csv").write_text(summary_csv)
    (OUTPUT_DIR / "sweep_detail.csv").write_text(detail_csv)
    print(f"CSV written to {OUTPUT_DIR}/sweep_summary.csv and sweep_detail.csv")
    print("=" * 72)
    return 0


if __name__ == '__main__':
    raise SystemExit(main())
