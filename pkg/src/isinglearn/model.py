"""Core Ising model types: joint/conditional probabilities and exact enumeration.

The model over x in {-1,+1}^p is P(x) = exp(x' Theta x / 2) / Z with Theta
symmetric and zero on the diagonal.  There is no external field, so
P(x) = P(-x).  The conditional of one coordinate given the rest is
logistic(sum_l 2 theta_lr x_l); the factor 2 is used consistently everywhere
so that fitted logistic coefficients are directly the couplings theta_ij.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import json
import numpy as np
from scipy.special import expit, logsumexp

from isinglearn.errors import CapacityError

# Exact enumeration walks all 2^p states; capped for memory/time safety.
ENUMERATION_MAX_NODES = 20


def _as_readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class IsingModel:
    """Symmetric zero-diagonal coupling matrix over p >= 2 nodes."""

    p: int
    theta: np.ndarray

    def __post_init__(self):
        theta = _as_readonly(self.theta)
        object.__setattr__(self, "theta", theta)
        if self.p < 2:
            raise ValueError(f"need p >= 2, got p={self.p}")
        if theta.shape != (self.p, self.p):
            raise ValueError(f"theta shape {theta.shape} != ({self.p}, {self.p})")
        if not np.array_equal(theta, theta.T):
            raise ValueError("theta must be symmetric")
        if np.any(np.diag(theta) != 0.0):
            raise ValueError("theta must have zero diagonal")

    def __eq__(self, other):
        if not isinstance(other, IsingModel):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.theta, other.theta)


@dataclass(frozen=True, eq=False)
class EdgeVector:
    """The p(p-1)/2 upper-triangular couplings in canonical (i<j) order."""

    p: int
    values: np.ndarray

    def __post_init__(self):
        values = _as_readonly(self.values)
        object.__setattr__(self, "values", values)
        expected = self.p * (self.p - 1) // 2
        if values.shape != (expected,):
            raise ValueError(f"expected {expected} values for p={self.p}, got shape {values.shape}")

    def __eq__(self, other):
        if not isinstance(other, EdgeVector):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.values, other.values)


@dataclass(frozen=True, eq=False)
class Dataset:
    """n x p matrix of observations with entries in {-1, +1}."""

    n: int
    p: int
    x: np.ndarray

    def __post_init__(self):
        x = np.array(self.x, dtype=np.float64, copy=True)
        x.setflags(write=False)
        object.__setattr__(self, "x", x)
        if x.shape != (self.n, self.p):
            raise ValueError(f"x shape {x.shape} != ({self.n}, {self.p})")
        if not np.all(np.abs(x) == 1.0):
            raise ValueError("dataset entries must be exactly -1 or +1")

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        return (self.n, self.p) == (other.n, other.p) and np.array_equal(self.x, other.x)


@dataclass(frozen=True)
class StateDistribution:
    """Exact distribution over all 2^p states plus the log partition function."""

    p: int
    probs: np.ndarray = field(repr=False)
    logZ: float = 0.0


def canonical_pairs(p: int) -> list[tuple[int, int]]:
    """0-based pairs (i, j), i < j, in order (0,1),(0,2),...,(p-2,p-1)."""
    return [(i, j) for i in range(p) for j in range(i + 1, p)]


def pack_edges(model: IsingModel) -> EdgeVector:
    """Extract the upper-triangular couplings in canonical order."""
    iu, ju = np.triu_indices(model.p, k=1)
    return EdgeVector(p=model.p, values=model.theta[iu, ju])


def unpack_edges(edges: EdgeVector) -> IsingModel:
    """Rebuild the symmetric coupling matrix from its canonical edge vector."""
    p = edges.p
    theta = np.zeros((p, p))
    iu, ju = np.triu_indices(p, k=1)
    theta[iu, ju] = edges.values
    theta[ju, iu] = edges.values
    return IsingModel(p=p, theta=theta)


def conditional_prob_plus(model: IsingModel, r: int, x_rest: np.ndarray) -> float:
    """P(X_r = +1 | rest) = logistic(sum_{l != r} 2 theta_lr x_l).

    The value in slot r of ``x_rest`` is ignored (theta_rr = 0).
    """
    if not 0 <= r < model.p:
        raise IndexError(f"node index {r} out of range for p={model.p}")
    x_rest = np.asarray(x_rest, dtype=np.float64)
    if x_rest.shape != (model.p,):
        raise ValueError(f"x_rest shape {x_rest.shape} != ({model.p},)")
    field_r = 2.0 * float(model.theta[r] @ x_rest)
    return float(expit(field_r))


def all_states(p: int) -> np.ndarray:
    """All 2^p states; state k maps bit b of k to x_b = +1 if the bit is set."""
    if p > ENUMERATION_MAX_NODES:
        raise CapacityError(f"p={p} exceeds enumeration cap {ENUMERATION_MAX_NODES}")
    k = np.arange(2 ** p, dtype=np.int64)
    bits = (k[:, None] >> np.arange(p)) & 1
    return bits.astype(np.float64) * 2.0 - 1.0


def enumerate_distribution(model: IsingModel) -> StateDistribution:
    """Exact state probabilities and log Z, computed via log-sum-exp."""
    states = all_states(model.p)
    energies = 0.5 * np.einsum("si,ij,sj->s", states, model.theta, states)
    logZ = float(logsumexp(energies))
    probs = np.exp(energies - logZ)
    probs.setflags(write=False)
    return StateDistribution(p=model.p, probs=probs, logZ=logZ)


def joint_log_prob(model: IsingModel, x: np.ndarray, logZ: float) -> float:
    """log P(x) = x' Theta x / 2 - log Z."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (model.p,):
        raise ValueError(f"x shape {x.shape} != ({model.p},)")
    return float(0.5 * x @ model.theta @ x - logZ)


def model_to_json(model: IsingModel, extra: dict | None = None) -> str:
    """Serialize as {"p": p, "edges": [[i, j, theta_ij], ...]} with 1-based i<j.

    Only nonzero couplings are listed; absent pairs are zero.  JSON float
    repr round-trips finite doubles bit-exactly.
    """
    edges = []
    for i, j in canonical_pairs(model.p):
        v = float(model.theta[i, j])
        if v != 0.0:
            edges.append([i + 1, j + 1, v])
    obj = {"p": model.p, "edges": edges}
    if extra:
        obj.update(extra)
    return json.dumps(obj, indent=2)


def model_from_json(text: str) -> IsingModel:
    """Inverse of :func:`model_to_json`; ignores extra keys."""
    obj = json.loads(text)
    p = int(obj["p"])
    theta = np.zeros((p, p))
    for i, j, v in obj["edges"]:
        i, j = int(i) - 1, int(j) - 1
        if not (0 <= i < j < p):
            raise ValueError(f"bad edge indices ({i + 1}, {j + 1}) for p={p}")
        theta[i, j] = theta[j, i] = float(v)
    return IsingModel(p=p, theta=theta)
