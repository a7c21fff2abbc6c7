"""Validate a `project` JSON document against the version-locked contract."""

import json
import sys
from pathlib import Path

project_root = Path(__file__).resolve().parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from pydantic import ValidationError

from cli.documents import ProjectionDocument

REFERENCE = Path(__file__).with_name("projection_output.json")


def _fail(message: str) -> None:
    print(f"Error: {message}")
    sys.exit(1)


def validate(path: Path) -> None:
    if not path.exists():
        _fail(f"{path} not found")

    try:
        with path.open() as f:
            data = json.load(f)
    except Exception as exc:
        _fail(f"failed to parse JSON: {exc}")

    with REFERENCE.open() as f:
        reference = json.load(f)

    missing = [key for key in reference if key not in data]
    if missing:
        _fail(f"missing keys: {missing}")
    missing_stats = [key for key in reference["stats"] if key not in data["stats"]]
    if missing_stats:
        _fail(f"missing stats keys: {missing_stats}")

    try:
        document = ProjectionDocument.model_validate(data)
    except ValidationError as exc:
        _fail(f"invalid document: {exc}")

    if len(document.projection) != len(document.polar_projection):
        _fail("projection and polar_projection differ in length")
    if document.final_set != sorted(set(document.final_set)):
        _fail(f"final_set must be sorted and unique, got {document.final_set}")
    n = len(document.projection)
    if any(not 1 <= k <= n for k in document.final_set):
        _fail(f"final_set members must be 1-based indices up to {n}")

    print("✓ Schema validation passed")


if __name__ == "__main__":
    validate(Path(sys.argv[1]) if len(sys.argv) > 1 else Path("/tmp/output.json"))
