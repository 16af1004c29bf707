"""Command-line interface.

Exit codes: 0 success, 2 configuration error, 3 capacity error, 4 I/O error.
"""

from __future__ import annotations

import json
import sys

import click
import numpy as np

from isinglearn.errors import CapacityError, ConfigError
from isinglearn.estimators import (
    default_global_lambda,
    default_nodewise_lambda,
    fit_global,
    fit_nodewise,
    symmetrize_max,
    symmetrize_min,
)
from isinglearn.harness import (
    ExperimentConfig,
    generate_mixed_coupling,
    records_from_csv,
    records_to_csv,
    run_experiment,
    summarize,
    summary_to_csv,
)
from isinglearn.metrics import SUPPORT_EPS, accuracy, err, fisher_blocks
from isinglearn.model import model_from_json, model_to_json
from isinglearn.samplers import GibbsConfig, dataset_from_csv, dataset_to_csv, sample_exact, sample_gibbs


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


@click.group()
def cli():
    """Learn sparse Ising models from +-1 samples."""


@cli.command()
@click.option("--p", type=int, required=True, help="Node count.")
@click.option("--density", type=float, required=True, help="Fraction of active pairs.")
@click.option("--magnitude", type=float, default=0.5, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=str, required=True, help="Output model JSON ('-' for stdout).")
def generate(p, density, magnitude, seed, out):
    """Generate a mixed-coupling ground-truth model."""
    model = generate_mixed_coupling(p, density, magnitude, seed)
    _write(out, model_to_json(model) + "\n")


@cli.command()
@click.option("--model", "model_path", type=str, required=True, help="Model JSON path.")
@click.option("--n", type=int, required=True, help="Sample count.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--sampler", type=click.Choice(["exact", "gibbs"]), default="exact", show_default=True)
@click.option("--burn-in", type=int, default=1000, show_default=True)
@click.option("--thinning", type=int, default=10, show_default=True)
@click.option("--out", type=str, required=True, help="Output dataset CSV ('-' for stdout).")
def sample(model_path, n, seed, sampler, burn_in, thinning, out):
    """Draw a dataset from a model."""
    model = model_from_json(_read(model_path))
    if sampler == "exact":
        data = sample_exact(model, n, seed)
    else:
        data = sample_gibbs(model, n, GibbsConfig(burn_in=burn_in, thinning=thinning, seed=seed))
    _write(out, dataset_to_csv(data))


@cli.command()
@click.option("--method", type=click.Choice(["nlm", "nlM", "gl"]), required=True)
@click.option("--data", "data_path", type=str, required=True, help="Dataset CSV path.")
@click.option("--lambda", "lam", type=float, default=None, help="Override the default weight.")
@click.option("--eps", type=float, default=SUPPORT_EPS, show_default=True)
@click.option("--out", type=str, required=True, help="Output estimate JSON ('-' for stdout).")
def fit(method, data_path, lam, eps, out):
    """Fit one estimator to a dataset."""
    data = dataset_from_csv(_read(data_path))
    if method == "gl":
        lam_eff = lam if lam is not None else default_global_lambda(data.p, data.n)
        gfit = fit_global(data, lam_eff)
        model, f = gfit.model, gfit.fit
        diagnostics = {
            "iterations": f.iterations,
            "objective": f.objective,
            "kkt_residual": f.kkt_residual,
            "converged": f.converged,
        }
        tag = "GL"
    else:
        lam_eff = lam if lam is not None else default_nodewise_lambda(data.p, data.n)
        raw = fit_nodewise(data, np.full(data.p, lam_eff))
        model = symmetrize_min(raw) if method == "nlm" else symmetrize_max(raw)
        diagnostics = {
            "iterations": sum(f.iterations for f in raw.fits),
            "objective": sum(f.objective for f in raw.fits),
            "kkt_residual": max(f.kkt_residual for f in raw.fits),
            "converged": raw.converged,
        }
        tag = "NLm" if method == "nlm" else "NLM"
    extra = {"method": tag, "lambda": lam_eff, "eps": eps, "diagnostics": diagnostics}
    _write(out, model_to_json(model, extra=extra) + "\n")


@cli.command()
@click.option("--truth", type=str, required=True, help="Ground-truth model JSON.")
@click.option("--estimate", type=str, required=True, help="Estimated model JSON.")
@click.option("--eps", type=float, default=SUPPORT_EPS, show_default=True)
@click.option("--out", type=str, default="-", help="Output metrics JSON ('-' for stdout).")
def evaluate(truth, estimate, eps, out):
    """Accuracy and Err of an estimate against the truth."""
    t = model_from_json(_read(truth))
    e = model_from_json(_read(estimate))
    counts, acc = accuracy(t, e, eps)
    obj = {
        "accuracy": acc,
        "err": err(t, e),
        "tp": counts.tp,
        "tn": counts.tn,
        "fp": counts.fp,
        "fn": counts.fn,
    }
    _write(out, json.dumps(obj, indent=2) + "\n")


@cli.command()
@click.option("--config", "config_path", type=str, required=True, help="Experiment config JSON.")
@click.option("--out", type=str, required=True, help="Output records CSV ('-' for stdout).")
def experiment(config_path, out):
    """Run the full synthetic experiment described by a config file."""
    config = ExperimentConfig.from_json(_read(config_path))
    _write(out, records_to_csv(run_experiment(config)))


@cli.command("summarize")
@click.option("--input", "input_path", type=str, required=True, help="Records CSV path.")
@click.option("--out", type=str, default="-", help="Output stats CSV ('-' for stdout).")
def summarize_cmd(input_path, out):
    """Per-(method, n) mean/median/IQR table from a records CSV."""
    try:
        records = records_from_csv(_read(input_path))
        rows = summarize(records)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    _write(out, summary_to_csv(rows))


@cli.command("check-conditions")
@click.option("--model", "model_path", type=str, required=True, help="Model JSON path.")
@click.option("--scope", type=str, default="global", show_default=True,
              help="'global' or a 1-based node index.")
@click.option("--lambda", "lam", type=float, default=None)
@click.option("--eps", type=float, default=SUPPORT_EPS, show_default=True)
@click.option("--out", type=str, default="-", help="Output report JSON ('-' for stdout).")
def check_conditions(model_path, scope, lam, eps, out):
    """Dependency/incoherence/minimum-signal report (small p, exact)."""
    model = model_from_json(_read(model_path))
    if scope == "global":
        scope_arg: int | str = "global"
    else:
        try:
            scope_arg = int(scope) - 1
        except ValueError:
            raise ConfigError(f"scope must be 'global' or a node index, got {scope!r}")
    report = fisher_blocks(model, scope_arg, lam=lam, eps=eps)
    _write(out, report.to_json() + "\n")


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Abort:
        return 130
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 2
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        return 2
    except CapacityError as exc:
        click.echo(f"capacity error: {exc}", err=True)
        return 3
    except OSError as exc:
        click.echo(f"I/O error: {exc}", err=True)
        return 4
    except (ValueError, IndexError, KeyError) as exc:
        click.echo(f"config error: {exc}", err=True)
        return 2


if __name__ == "__main__":
    sys.exit(main())
