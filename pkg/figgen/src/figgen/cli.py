"""Command-line entry point.

Exit codes: 0 success, 2 schema or usage error, 4 I/O error.
"""

import sys

import click

from figgen.plot import render_boxplots
from figgen.records import METRICS, SchemaError, load_records


@click.command()
@click.option("--input", "input_path", type=str, required=True, help="Records CSV path.")
@click.option("--metric", type=click.Choice(list(METRICS)), required=True)
@click.option("--out", type=str, required=True, help="Output image path.")
def figgen(input_path, metric, out):
    """Render per-sample-size box plots of a benchmark metric."""
    records = load_records(input_path)
    render_boxplots(records, metric, out)


def main(argv=None) -> int:
    try:
        figgen.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Abort:
        return 130
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 2
    except SchemaError as exc:
        click.echo(f"schema error: {exc}", err=True)
        return 2
    except OSError as exc:
        click.echo(f"I/O error: {exc}", err=True)
        return 4


if __name__ == "__main__":
    sys.exit(main())
