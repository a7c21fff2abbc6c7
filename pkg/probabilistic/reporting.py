"""
CSV and text rendering of experiment results.

Summary CSV: one row per size with every SizeAggregate field.
Detail CSV: one row per trial, the input for external boxplots and for
re-aggregation.
"""

from __future__ import annotations

from io import StringIO
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import pandas as pd

from probabilistic.schemas import (
    DETAIL_COLUMNS,
    SUMMARY_COLUMNS,
    SizeAggregate,
    TrialRecord,
)


def summary_frame(aggregates: Sequence[SizeAggregate]) -> pd.DataFrame:
    return pd.DataFrame([a.model_dump() for a in aggregates], columns=SUMMARY_COLUMNS)


def detail_frame(records: Sequence[TrialRecord]) -> pd.DataFrame:
    return pd.DataFrame([r.model_dump(mode="json") for r in records], columns=DETAIL_COLUMNS)


def emit_csv(
    aggregates: Sequence[SizeAggregate],
    per_run_details: Optional[Sequence[TrialRecord]] = None,
) -> Tuple[str, Optional[str]]:
    """
    Render the summary CSV and, when records are given, the detail CSV.

    Raises:
        ValueError: If aggregates is empty
    """
    if not aggregates:
        raise ValueError("emit_csv needs at least one aggregate")
    summary = summary_frame(aggregates).to_csv(index=False, lineterminator="\n")
    detail = None
    if per_run_details is not None:
        detail = detail_frame(per_run_details).to_csv(index=False, lineterminator="\n")
    return summary, detail


def read_detail_csv(source: Union[str, Path, StringIO]) -> List[TrialRecord]:
    """Parse a detail CSV back into trial records."""
    frame = pd.read_csv(source)
    missing = set(DETAIL_COLUMNS) - set(frame.columns)
    if missing:
        raise ValueError(f"detail CSV is missing columns: {sorted(missing)}")
    return [TrialRecord(**row) for row in frame[DETAIL_COLUMNS].to_dict(orient="records")]


def read_summary_csv(source: Union[str, Path, StringIO]) -> List[SizeAggregate]:
    frame = pd.read_csv(source)
    return [SizeAggregate(**row) for row in frame[SUMMARY_COLUMNS].to_dict(orient="records")]


def format_table(aggregates: Sequence[SizeAggregate]) -> str:
    """Aligned human-readable table, one line per size."""
    header = (
        f"{'Size':>6}  {'Trials':>7}  {'Changes':>16}  {'Iterations':>14}  "
        f"{'Increases [%]':>15}  {'Loops [%]':>9}  {'Max iter':>8}"
    )
    lines = [header, "-" * len(header)]
    for a in aggregates:
        lines.append(
            f"{a.size:>6}  {a.trials:>7}  "
            f"{a.mean_changes:>8.2f} ± {a.ci_changes:<5.2f}  "
            f"{a.mean_iterations:>6.2f} ± {a.ci_iterations:<5.2f}  "
            f"{a.pct_increase:>7.2f} ± {a.ci_increase:<5.2f}  "
            f"{a.pct_loops:>9.3f}  {a.max_iterations:>8}"
        )
    return "\n".join(lines)
