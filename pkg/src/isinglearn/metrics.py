"""Performance indexes and the dependency/incoherence/minimum-signal checker.

Accuracy counts edge decisions over the p(p-1)/2 canonical pairs; Err is the
sum of squared coupling differences.  The condition checker computes exact
Fisher-information blocks (negated expected Hessians of the log-conditionals)
by enumeration, so it is limited to small node counts.
"""

from __future__ import annotations

from dataclasses import dataclass

import json

import numpy as np
from scipy.special import expit

from isinglearn.errors import CapacityError
from isinglearn.model import IsingModel, all_states, canonical_pairs, enumerate_distribution

FISHER_MAX_NODES = 12
SUPPORT_EPS = 1e-8


@dataclass(frozen=True)
class ConfusionCounts:
    """Edge-decision counts over the canonical pairs."""

    tp: int
    tn: int
    fp: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn


@dataclass(frozen=True, eq=False)
class ConditionReport:
    """Dependency, incoherence, and minimum-signal diagnostics at theta*.

    ``incoherence`` is None when the active block is singular.  With an empty
    active set the blocks degenerate: c_min falls back to the smallest
    eigenvalue of the full Fisher matrix and incoherence to 0.
    """

    scope: str
    d: int
    c_min: float
    incoherence: float | None
    theta_min: float
    lam: float | None
    dependency_ok: bool
    incoherence_ok: bool
    min_signal_ok: bool | None
    fisher: np.ndarray
    active: tuple[int, ...]

    @property
    def alpha(self) -> float | None:
        if self.incoherence is None or self.incoherence >= 1.0:
            return None
        return 1.0 - self.incoherence

    def to_json(self) -> str:
        obj = {
            "scope": self.scope,
            "d": self.d,
            "c_min": self.c_min,
            "incoherence": self.incoherence,
            "alpha": self.alpha,
            "theta_min": self.theta_min,
            "lambda": self.lam,
            "dependency_ok": self.dependency_ok,
            "incoherence_ok": self.incoherence_ok,
            "min_signal_ok": self.min_signal_ok,
            "active": list(self.active),
            "fisher": self.fisher.tolist(),
        }
        return json.dumps(obj, indent=2)


def support_threshold(model: IsingModel, eps: float = SUPPORT_EPS) -> set[tuple[int, int]]:
    """Canonical pairs (0-based) with |theta_ij| > eps."""
    if eps < 0:
        raise ValueError("eps must be >= 0")
    return {(i, j) for i, j in canonical_pairs(model.p) if abs(model.theta[i, j]) > eps}


def accuracy(
    truth: IsingModel, estimate: IsingModel, eps: float = SUPPORT_EPS
) -> tuple[ConfusionCounts, float]:
    """(TP+TN)/(TP+TN+FP+FN) over edge decisions at threshold eps."""
    if truth.p != estimate.p:
        raise ValueError(f"node counts differ: {truth.p} vs {estimate.p}")
    true_s = support_threshold(truth, eps)
    est_s = support_threshold(estimate, eps)
    pairs = canonical_pairs(truth.p)
    tp = sum(1 for pr in pairs if pr in true_s and pr in est_s)
    tn = sum(1 for pr in pairs if pr not in true_s and pr not in est_s)
    fp = sum(1 for pr in pairs if pr not in true_s and pr in est_s)
    fn = sum(1 for pr in pairs if pr in true_s and pr not in est_s)
    counts = ConfusionCounts(tp=tp, tn=tn, fp=fp, fn=fn)
    return counts, (tp + tn) / counts.total


def err(truth: IsingModel, estimate: IsingModel) -> float:
    """Sum over canonical pairs of squared coupling differences."""
    if truth.p != estimate.p:
        raise ValueError(f"node counts differ: {truth.p} vs {estimate.p}")
    iu, ju = np.triu_indices(truth.p, k=1)
    diff = truth.theta[iu, ju] - estimate.theta[iu, ju]
    return float(diff @ diff)


def _node_fisher(model: IsingModel, r: int, states: np.ndarray, probs: np.ndarray) -> np.ndarray:
    # Fisher over coordinates theta_{l r}, l != r: E[eta * (2 x_{-r})(2 x_{-r})']
    # with eta = sigma(f)(1 - sigma(f)), f = 2 theta[:, r] . x.
    others = [l for l in range(model.p) if l != r]
    f = 2.0 * states @ model.theta[:, r]
    s = expit(f)
    eta = s * (1.0 - s)
    a = 2.0 * states[:, others]
    return (a * (probs * eta)[:, None]).T @ a


def _global_design_rows(p: int, states: np.ndarray, r: int) -> np.ndarray:
    # Per-state gradient of node r's conditional field wrt the canonical pairs.
    pairs = canonical_pairs(p)
    out = np.zeros((states.shape[0], len(pairs)))
    for k, (i, j) in enumerate(pairs):
        if r == i:
            out[:, k] = 2.0 * states[:, j]
        elif r == j:
            out[:, k] = 2.0 * states[:, i]
    return out


def fisher_blocks(
    model: IsingModel,
    scope: int | str = "global",
    lam: float | None = None,
    eps: float = SUPPORT_EPS,
) -> ConditionReport:
    """Exact-enumeration condition report for one node or the global problem.

    ``scope`` is a node index for the per-node problem or "global" for the
    stacked one (the global Fisher matrix averages the per-node contributions,
    matching the 1/(np)-scaled objective).
    """
    if model.p > FISHER_MAX_NODES:
        raise CapacityError(f"p={model.p} exceeds condition-checker cap {FISHER_MAX_NODES}")
    dist = enumerate_distribution(model)
    states = all_states(model.p)
    probs = dist.probs

    if scope == "global":
        pairs = canonical_pairs(model.p)
        q = np.zeros((len(pairs), len(pairs)))
        for r in range(model.p):
            f = 2.0 * states @ model.theta[:, r]
            s = expit(f)
            eta = s * (1.0 - s)
            b = _global_design_rows(model.p, states, r)
            q += (b * (probs * eta)[:, None]).T @ b
        q /= model.p
        coupling = np.array([model.theta[i, j] for i, j in pairs])
        label = "global"
    else:
        r = int(scope)
        if not 0 <= r < model.p:
            raise IndexError(f"node index {r} out of range for p={model.p}")
        q = _node_fisher(model, r, states, probs)
        others = [l for l in range(model.p) if l != r]
        coupling = model.theta[others, r]
        label = f"node:{r}"

    q = 0.5 * (q + q.T)
    active = np.flatnonzero(np.abs(coupling) > eps)
    inactive = np.setdiff1d(np.arange(q.shape[0]), active)
    d = len(active)

    if d == 0:
        c_min = float(np.linalg.eigvalsh(q)[0])
        incoherence = 0.0
        theta_min = 0.0
    else:
        q1 = q[np.ix_(active, active)]
        q2 = q[np.ix_(inactive, active)]
        c_min = float(np.linalg.eigvalsh(q1)[0])
        if c_min <= 0 or np.linalg.cond(q1) > 1e12:
            incoherence = None
        elif len(inactive) == 0:
            incoherence = 0.0
        else:
            incoherence = float(np.max(np.sum(np.abs(q2 @ np.linalg.inv(q1)), axis=1)))
        theta_min = float(np.min(np.abs(coupling[active])))

    dependency_ok = c_min > 0
    incoherence_ok = incoherence is not None and incoherence < 1.0
    if lam is None:
        min_signal_ok = None
    elif c_min <= 0:
        min_signal_ok = False
    else:
        min_signal_ok = bool(theta_min >= (10.0 / c_min) * np.sqrt(d) * lam)

    return ConditionReport(
        scope=label,
        d=d,
        c_min=c_min,
        incoherence=incoherence,
        theta_min=theta_min,
        lam=lam,
        dependency_ok=dependency_ok,
        incoherence_ok=incoherence_ok,
        min_signal_ok=min_signal_ok,
        fisher=q,
        active=tuple(int(i) for i in active),
    )
