"""Synthetic-experiment orchestration: generate, sample, fit, evaluate, persist.

Every random stage draws its seed from a SHA-256 hash of the master seed and
the stage coordinates, so the record stream is a pure function of the config
regardless of execution order.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import csv
import hashlib
import io
import json
import time

import numpy as np

from isinglearn.errors import ConfigError
from isinglearn.estimators import (
    METHODS,
    default_global_lambda,
    default_nodewise_lambda,
    fit_global,
    fit_nodewise,
    symmetrize_max,
    symmetrize_min,
)
from isinglearn.metrics import SUPPORT_EPS, accuracy, err
from isinglearn.model import ENUMERATION_MAX_NODES, IsingModel, canonical_pairs
from isinglearn.samplers import GibbsConfig, make_rng, sample_exact, sample_gibbs

CSV_HEADER = (
    "method,p,n,replicate,seed,accuracy,err,solver_iterations,converged,wall_time_seconds"
)


def child_seed(master_seed: int, *tags) -> int:
    """Deterministic 64-bit seed from the master seed and stage coordinates."""
    msg = ":".join([str(master_seed)] + [str(t) for t in tags])
    digest = hashlib.sha256(msg.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


def generate_mixed_coupling(p: int, density: float, magnitude: float, seed: int) -> IsingModel:
    """Random support of round(density * p(p-1)/2) pairs, couplings +-magnitude."""
    if not 0 < density <= 1:
        raise ConfigError(f"density must be in (0, 1], got {density}")
    pairs = canonical_pairs(p)
    n_active = int(round(density * len(pairs)))
    if n_active == 0:
        raise ConfigError(f"density {density} rounds to 0 active pairs at p={p}")
    rng = make_rng(seed)
    chosen = rng.choice(len(pairs), size=n_active, replace=False)
    signs = rng.integers(0, 2, size=n_active) * 2 - 1
    theta = np.zeros((p, p))
    for k, s in zip(chosen, signs):
        i, j = pairs[k]
        theta[i, j] = theta[j, i] = s * magnitude
    return IsingModel(p=p, theta=theta)


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: a model family, sample sizes, replicates, methods."""

    p: int
    density: float
    n_list: tuple[int, ...]
    coupling_magnitude: float = 0.5
    replicates: int = 20
    methods: tuple[str, ...] = METHODS
    master_seed: int = 0
    sampler: str = "auto"  # auto | exact | gibbs
    gibbs: GibbsConfig = field(default_factory=GibbsConfig)
    lambda_override: float | None = None
    fresh_model: bool = False
    support_eps: float = SUPPORT_EPS
    record_timings: bool = False

    def __post_init__(self):
        if self.p < 2:
            raise ConfigError(f"p must be >= 2, got {self.p}")
        if not 0 < self.density <= 1:
            raise ConfigError(f"density must be in (0, 1], got {self.density}")
        if self.replicates < 1:
            raise ConfigError("replicates must be >= 1")
        if not self.n_list:
            raise ConfigError("n_list must be nonempty")
        if any(n < 1 for n in self.n_list):
            raise ConfigError("sample sizes must be >= 1")
        bad = [m for m in self.methods if m not in METHODS]
        if bad:
            raise ConfigError(f"unknown methods {bad}; valid: {list(METHODS)}")
        if self.sampler not in ("auto", "exact", "gibbs"):
            raise ConfigError(f"sampler must be auto|exact|gibbs, got {self.sampler!r}")
        object.__setattr__(self, "n_list", tuple(int(n) for n in self.n_list))
        object.__setattr__(self, "methods", tuple(self.methods))

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid config JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise ConfigError("config must be a JSON object")
        gibbs = obj.pop("gibbs", None)
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(obj) - known
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        kwargs = dict(obj)
        if gibbs is not None:
            kwargs["gibbs"] = GibbsConfig(**gibbs)
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc


@dataclass(frozen=True)
class ExperimentRecord:
    """One (method, n, replicate) evaluation row."""

    method: str
    p: int
    n: int
    replicate: int
    seed: int
    accuracy: float
    err: float
    solver_iterations: int
    converged: bool
    wall_time_seconds: float

    def csv_row(self) -> str:
        return ",".join(
            [
                self.method,
                str(self.p),
                str(self.n),
                str(self.replicate),
                str(self.seed),
                repr(self.accuracy),
                repr(self.err),
                str(self.solver_iterations),
                str(self.converged),
                repr(self.wall_time_seconds),
            ]
        )


def _sample(config: ExperimentConfig, model: IsingModel, n: int, seed: int):
    use_exact = config.sampler == "exact" or (
        config.sampler == "auto" and config.p <= ENUMERATION_MAX_NODES
    )
    if use_exact:
        return sample_exact(model, n, seed)
    return sample_gibbs(model, n, replace(config.gibbs, seed=seed))


def run_experiment(config: ExperimentConfig):
    """Yield one record per (n, replicate, method), deterministic in the config.

    By default one ground-truth model is drawn per config and shared across
    replicates (fresh data each time); ``fresh_model`` redraws the support
    per replicate.
    """
    fixed_model = None
    if not config.fresh_model:
        fixed_model = generate_mixed_coupling(
            config.p,
            config.density,
            config.coupling_magnitude,
            child_seed(config.master_seed, config.p, "model"),
        )
    for n in config.n_list:
        for rep in range(config.replicates):
            if config.fresh_model:
                model = generate_mixed_coupling(
                    config.p,
                    config.density,
                    config.coupling_magnitude,
                    child_seed(config.master_seed, config.p, n, rep, "model"),
                )
            else:
                model = fixed_model
            data_seed = child_seed(config.master_seed, config.p, n, rep, "data")
            data = _sample(config, model, n, data_seed)

            estimates = {}
            timings = {}
            diag = {}
            if "NLm" in config.methods or "NLM" in config.methods:
                lam = (
                    config.lambda_override
                    if config.lambda_override is not None
                    else default_nodewise_lambda(config.p, n)
                )
                t0 = time.perf_counter()
                raw = fit_nodewise(data, np.full(config.p, lam))
                elapsed = time.perf_counter() - t0
                iters = sum(f.iterations for f in raw.fits)
                for method, sym in (("NLm", symmetrize_min), ("NLM", symmetrize_max)):
                    if method in config.methods:
                        estimates[method] = sym(raw)
                        timings[method] = elapsed
                        diag[method] = (iters, raw.converged)
            if "GL" in config.methods:
                lam = (
                    config.lambda_override
                    if config.lambda_override is not None
                    else default_global_lambda(config.p, n)
                )
                t0 = time.perf_counter()
                gfit = fit_global(data, lam)
                elapsed = time.perf_counter() - t0
                estimates["GL"] = gfit.model
                timings["GL"] = elapsed
                diag["GL"] = (gfit.fit.iterations, gfit.fit.converged)

            for method in config.methods:
                _, acc = accuracy(model, estimates[method], config.support_eps)
                e = err(model, estimates[method])
                iters, conv = diag[method]
                yield ExperimentRecord(
                    method=method,
                    p=config.p,
                    n=n,
                    replicate=rep,
                    seed=data_seed,
                    accuracy=acc,
                    err=e,
                    solver_iterations=iters,
                    converged=conv,
                    wall_time_seconds=timings[method] if config.record_timings else 0.0,
                )


def records_to_csv(records) -> str:
    lines = [CSV_HEADER]
    lines.extend(r.csv_row() for r in records)
    return "\n".join(lines) + "\n"


def records_from_csv(text: str) -> list[ExperimentRecord]:
    reader = csv.DictReader(io.StringIO(text))
    expected = CSV_HEADER.split(",")
    if reader.fieldnames != expected:
        raise ValueError(f"bad records header {reader.fieldnames}, expected {expected}")
    out = []
    for row in reader:
        out.append(
            ExperimentRecord(
                method=row["method"],
                p=int(row["p"]),
                n=int(row["n"]),
                replicate=int(row["replicate"]),
                seed=int(row["seed"]),
                accuracy=float(row["accuracy"]),
                err=float(row["err"]),
                solver_iterations=int(row["solver_iterations"]),
                converged=row["converged"] == "True",
                wall_time_seconds=float(row["wall_time_seconds"]),
            )
        )
    return out


SUMMARY_HEADER = (
    "method,n,count,"
    "accuracy_mean,accuracy_median,accuracy_q1,accuracy_q3,accuracy_iqr,"
    "err_mean,err_median,err_q1,err_q3,err_iqr"
)


def _quartiles(values: np.ndarray) -> tuple[float, float, float]:
    # linear-interpolation (inclusive) quantiles; the figure generator uses
    # the same rule so tables and plots agree
    q1, med, q3 = np.quantile(values, [0.25, 0.5, 0.75], method="linear")
    return float(q1), float(med), float(q3)


def summarize(records) -> list[dict]:
    """Per-(method, n) mean/median/IQR rows for accuracy and err."""
    records = list(records)
    if not records:
        raise ValueError("no records to summarize")
    keys = sorted(
        {(r.method, r.n) for r in records},
        key=lambda k: (METHODS.index(k[0]) if k[0] in METHODS else len(METHODS), k[1]),
    )
    rows = []
    for method, n in keys:
        group = [r for r in records if r.method == method and r.n == n]
        row = {"method": method, "n": n, "count": len(group)}
        for metric in ("accuracy", "err"):
            vals = np.array([getattr(r, metric) for r in group])
            q1, med, q3 = _quartiles(vals)
            row[f"{metric}_mean"] = float(np.mean(vals))
            row[f"{metric}_median"] = med
            row[f"{metric}_q1"] = q1
            row[f"{metric}_q3"] = q3
            row[f"{metric}_iqr"] = q3 - q1
        rows.append(row)
    return rows


def summary_to_csv(rows: list[dict]) -> str:
    cols = SUMMARY_HEADER.split(",")
    lines = [SUMMARY_HEADER]
    for row in rows:
        lines.append(
            ",".join(str(row[c]) if c in ("method", "n", "count") else repr(row[c]) for c in cols)
        )
    return "\n".join(lines) + "\n"
