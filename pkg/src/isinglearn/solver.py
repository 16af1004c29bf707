"""l1-penalized intercept-free logistic regression via monotone FISTA.

Minimizes (1/m) sum_i log(1 + exp(-y_i a_i' beta)) + lambda ||beta||_1 with
backtracking line search and a monotone safeguard, and certifies the result
with a KKT stationarity residual.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit

KKT_TOL = 1e-6
REL_OBJ_TOL = 1e-9
MAX_ITER = 50_000


@dataclass(frozen=True, eq=False)
class LogisticProblem:
    """Design (m x q, dense or CSC sparse), +-1 responses, and l1 weight."""

    design: object
    response: np.ndarray
    lam: float

    def __post_init__(self):
        y = np.asarray(self.response, dtype=np.float64)
        object.__setattr__(self, "response", y)
        m, q = self.design.shape
        if m < 1 or q < 1:
            raise ValueError("design must be at least 1 x 1")
        if y.shape != (m,):
            raise ValueError(f"response shape {y.shape} != ({m},)")
        if not np.all(np.abs(y) == 1.0):
            raise ValueError("responses must be exactly -1 or +1")
        if self.lam < 0:
            raise ValueError("lambda must be >= 0")

    @property
    def m(self) -> int:
        return self.design.shape[0]

    @property
    def q(self) -> int:
        return self.design.shape[1]


@dataclass
class FitResult:
    """Solution plus solver diagnostics."""

    beta: np.ndarray
    iterations: int
    objective: float
    kkt_residual: float
    converged: bool
    objective_history: np.ndarray = field(default_factory=lambda: np.empty(0), repr=False)


def _check_beta(problem: LogisticProblem, beta) -> np.ndarray:
    beta = np.asarray(beta, dtype=np.float64)
    if beta.shape != (problem.q,):
        raise ValueError(f"beta shape {beta.shape} != ({problem.q},)")
    return beta


def _smooth_loss(problem: LogisticProblem, beta: np.ndarray) -> float:
    margins = problem.response * (problem.design @ beta)
    return float(np.mean(np.logaddexp(0.0, -margins)))


def loss_and_gradient(problem: LogisticProblem, beta) -> tuple[float, np.ndarray]:
    """Average logistic loss and its exact gradient (no penalty term)."""
    beta = _check_beta(problem, beta)
    margins = problem.response * (problem.design @ beta)
    loss = float(np.mean(np.logaddexp(0.0, -margins)))
    w = problem.response * expit(-margins)
    grad = -(problem.design.T @ w) / problem.m
    return loss, np.asarray(grad).ravel()


def soft_threshold(v, t):
    """Proximal operator of t*|.|: sign(v) * max(|v| - t, 0)."""
    if np.any(np.asarray(t) < 0):
        raise ValueError("threshold must be >= 0")
    return np.sign(v) * np.maximum(np.abs(v) - t, 0.0)


def kkt_residual(problem: LogisticProblem, beta) -> float:
    """Max stationarity violation: |grad_j + lam*sign(beta_j)| on the support,
    max(|grad_j| - lam, 0) off it."""
    beta = _check_beta(problem, beta)
    _, grad = loss_and_gradient(problem, beta)
    on = np.abs(grad + problem.lam * np.sign(beta))
    off = np.maximum(np.abs(grad) - problem.lam, 0.0)
    viol = np.where(beta != 0.0, on, off)
    return float(np.max(viol))


def _objective(problem: LogisticProblem, beta: np.ndarray) -> float:
    return _smooth_loss(problem, beta) + problem.lam * float(np.sum(np.abs(beta)))


def solve(
    problem: LogisticProblem,
    init=None,
    max_iter: int = MAX_ITER,
    kkt_tol: float = KKT_TOL,
    rel_obj_tol: float = REL_OBJ_TOL,
    step0: float = 1.0,
    backtrack: float = 0.5,
) -> FitResult:
    """Monotone FISTA with backtracking.

    Stops when the KKT residual drops below ``kkt_tol`` or the relative
    objective change drops below ``rel_obj_tol``; ``converged`` reflects the
    KKT certificate only.  Non-convergence is reported in the result, not
    raised.
    """
    lam = problem.lam
    x = np.zeros(problem.q) if init is None else _check_beta(problem, init).copy()
    y = x.copy()
    fx = _objective(problem, x)
    t_mom = 1.0
    step = step0
    history = [fx]

    kkt0 = kkt_residual(problem, x)
    if kkt0 <= kkt_tol:
        return FitResult(x, 0, fx, kkt0, True, np.array(history))

    best = FitResult(x.copy(), 0, fx, kkt0, False)
    plateau = 0  # consecutive accepted steps with negligible progress
    for it in range(1, max_iter + 1):
        fy, gy = loss_and_gradient(problem, y)
        while True:
            z = soft_threshold(y - step * gy, step * lam)
            diff = z - y
            fz = _smooth_loss(problem, z)
            quad = fy + float(gy @ diff) + float(diff @ diff) / (2.0 * step)
            if fz <= quad + 1e-14:
                break
            step *= backtrack
        Fz = fz + lam * float(np.sum(np.abs(z)))

        kkt_z = kkt_residual(problem, z)
        if kkt_z <= kkt_tol and Fz <= fx + 1e-14:
            history.append(min(Fz, fx))
            return FitResult(z, it, min(Fz, fx), kkt_z, True, np.array(history))
        if kkt_z < best.kkt_residual:
            best = FitResult(z.copy(), it, Fz, kkt_z, False)

        if Fz <= fx:
            t_next = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * t_mom * t_mom))
            y = z + ((t_mom - 1.0) / t_next) * (z - x)
            fx_prev, x, fx, t_mom = fx, z, Fz, t_next
            history.append(fx)
            # momentum can stall the objective while the iterate still moves;
            # only declare a plateau after a sustained run of tiny changes
            if abs(fx_prev - fx) <= rel_obj_tol * max(1.0, abs(fx_prev)):
                plateau += 1
                if plateau >= 100:
                    break
            else:
                plateau = 0
        else:
            # extrapolation overshot: restart momentum from the last accepted
            # point (the plain proximal step from x always decreases F)
            y = x.copy()
            t_mom = 1.0
            history.append(fx)

    kkt_x = kkt_residual(problem, x)
    if kkt_x <= best.kkt_residual:
        final = FitResult(x, len(history) - 1, fx, kkt_x, kkt_x <= kkt_tol, np.array(history))
    else:
        final = FitResult(
            best.beta, len(history) - 1, best.objective, best.kkt_residual,
            best.kkt_residual <= kkt_tol, np.array(history),
        )
    return final
