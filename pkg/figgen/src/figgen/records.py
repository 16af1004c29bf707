"""Loading and validation of benchmark records CSV files.

The expected schema is the one written by the estimator benchmark harness:
method,p,n,replicate,seed,accuracy,err,solver_iterations,converged,
wall_time_seconds.  Only the columns this package consumes are parsed.
"""

import csv
import io

REQUIRED_COLUMNS = (
    "method",
    "p",
    "n",
    "replicate",
    "seed",
    "accuracy",
    "err",
    "solver_iterations",
    "converged",
    "wall_time_seconds",
)

METRICS = ("accuracy", "err")


class SchemaError(Exception):
    """The input CSV does not match the records schema."""


def parse_records(text: str) -> list[dict]:
    """Parse records CSV text into a list of row dicts with typed fields."""
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        raise SchemaError("empty CSV: no header row")
    for col in REQUIRED_COLUMNS:
        if col not in reader.fieldnames:
            raise SchemaError(f"missing column '{col}'")
    rows = []
    for lineno, row in enumerate(reader, start=2):
        try:
            rows.append(
                {
                    "method": row["method"],
                    "n": int(row["n"]),
                    "accuracy": float(row["accuracy"]),
                    "err": float(row["err"]),
                }
            )
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"bad value on line {lineno}: {exc}") from exc
    if not rows:
        raise SchemaError("no data rows")
    return rows


def load_records(path: str) -> list[dict]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_records(fh.read())
