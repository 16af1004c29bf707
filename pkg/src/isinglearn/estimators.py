"""The three coupling-matrix estimators.

Node-wise: one l1-penalized logistic regression per node (response = that
node's column, covariates = twice the other columns), symmetrized by keeping
per pair the entry of minimum (N-L-m) or maximum (N-L-M) absolute value.

Global (G-L): a single stacked logistic regression with one shared parameter
per canonical pair, so the output is symmetric by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import math

import numpy as np
import scipy.sparse as sp

from isinglearn.model import Dataset, EdgeVector, IsingModel, canonical_pairs, unpack_edges
from isinglearn.solver import FitResult, LogisticProblem, solve

METHODS = ("NLm", "NLM", "GL")


def default_nodewise_lambda(p: int, n: int) -> float:
    """Per-node default: sqrt(log(p-1)/n)."""
    return math.sqrt(math.log(p - 1) / n)


def default_global_lambda(p: int, n: int) -> float:
    """Global default: sqrt(log(p(p-1)/2)/(p*n))."""
    return math.sqrt(math.log(p * (p - 1) / 2) / (p * n))


@dataclass(frozen=True, eq=False)
class NodewiseRaw:
    """Unsymmetrized node-wise estimate; column r holds node r's coefficients."""

    p: int
    theta_hat: np.ndarray
    fits: tuple[FitResult, ...]

    @property
    def converged(self) -> bool:
        return all(f.converged for f in self.fits)


@dataclass(frozen=True, eq=False)
class GlobalFit:
    """Global-logistic estimate with its solver diagnostics."""

    model: IsingModel
    fit: FitResult


def fit_nodewise(data: Dataset, lambdas) -> NodewiseRaw:
    """Solve the p per-node problems; lambdas is one weight per node."""
    p, n = data.p, data.n
    lambdas = np.asarray(lambdas, dtype=np.float64)
    if lambdas.shape != (p,):
        raise ValueError(f"need {p} lambdas, got shape {lambdas.shape}")
    theta_hat = np.zeros((p, p))
    fits = []
    for r in range(p):
        others = [l for l in range(p) if l != r]
        design = 2.0 * data.x[:, others]
        problem = LogisticProblem(design=design, response=data.x[:, r], lam=float(lambdas[r]))
        fit = solve(problem)
        theta_hat[others, r] = fit.beta
        fits.append(fit)
    return NodewiseRaw(p=p, theta_hat=theta_hat, fits=tuple(fits))


def _symmetrize(raw: NodewiseRaw, keep_max: bool) -> IsingModel:
    theta = np.zeros((raw.p, raw.p))
    for i, j in canonical_pairs(raw.p):
        a = raw.theta_hat[i, j]  # from node j's fit
        b = raw.theta_hat[j, i]  # from node i's fit
        if abs(a) == abs(b):
            v = a  # tie: keep the (i<j) entry
        elif (abs(a) > abs(b)) == keep_max:
            v = a
        else:
            v = b
        theta[i, j] = theta[j, i] = v
    return IsingModel(p=raw.p, theta=theta)


def symmetrize_min(raw: NodewiseRaw) -> IsingModel:
    """Keep, per pair, the entry of smaller absolute value (edge AND)."""
    return _symmetrize(raw, keep_max=False)


def symmetrize_max(raw: NodewiseRaw) -> IsingModel:
    """Keep, per pair, the entry of larger absolute value (edge OR)."""
    return _symmetrize(raw, keep_max=True)


def build_global_design(data: Dataset):
    """Stacked design for the global estimator.

    Responses stack the p data columns in node order (block r = column r).
    The column for canonical pair (i, j) carries 2*x_j on block i's rows and
    2*x_i on block j's rows, zero elsewhere: n*p rows, p(p-1)/2 columns,
    p-1 nonzeros per row, 2n per column.
    """
    n, p = data.n, data.p
    pairs = canonical_pairs(p)
    rows, cols, vals = [], [], []
    base = np.arange(n)
    for k, (i, j) in enumerate(pairs):
        rows.append(i * n + base)
        cols.append(np.full(n, k))
        vals.append(2.0 * data.x[:, j])
        rows.append(j * n + base)
        cols.append(np.full(n, k))
        vals.append(2.0 * data.x[:, i])
    design = sp.csc_array(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(n * p, len(pairs)),
    )
    response = data.x.flatten(order="F")
    return design, response


def fit_global(data: Dataset, lam: float) -> GlobalFit:
    """Solve the stacked problem; loss averages over all n*p rows."""
    design, response = build_global_design(data)
    problem = LogisticProblem(design=design, response=response, lam=lam)
    fit = solve(problem)
    model = unpack_edges(EdgeVector(p=data.p, values=fit.beta))
    return GlobalFit(model=model, fit=fit)
