"""Dataset generation: exact inverse-CDF sampling and systematic-scan Gibbs.

All randomness comes from numpy's Philox generator (counter-based, identical
streams across platforms), so every dataset is reproducible bit-for-bit from
its seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import io
import numpy as np
from numba import njit

from isinglearn.model import Dataset, IsingModel, all_states, enumerate_distribution


@dataclass(frozen=True)
class GibbsConfig:
    """Gibbs chain settings; burn_in and thinning are in full sweeps."""

    burn_in: int = 1000
    thinning: int = 10
    seed: int = 0

    def __post_init__(self):
        if self.burn_in < 0:
            raise ValueError("burn_in must be >= 0")
        if self.thinning < 1:
            raise ValueError("thinning must be >= 1")


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based generator; fixed across platforms for a given seed."""
    return np.random.Generator(np.random.Philox(seed))


def sample_exact(model: IsingModel, n: int, seed: int) -> Dataset:
    """n i.i.d. draws by inverse-CDF over the enumerated distribution."""
    if n < 1:
        raise ValueError("n must be >= 1")
    dist = enumerate_distribution(model)  # raises CapacityError for p > 20
    cdf = np.cumsum(dist.probs)
    rng = make_rng(seed)
    u = rng.random(n)
    idx = np.searchsorted(cdf, u, side="right")
    idx = np.minimum(idx, len(cdf) - 1)
    states = all_states(model.p)
    return Dataset(n=n, p=model.p, x=states[idx])


@njit(cache=True)
def _gibbs_sweeps(theta2, x, uniforms, out, burn_in, thinning):
    # Systematic scan r = 0..p-1, each site updated from the freshest values
    # of the others; one uniform consumed per site per sweep.
    p = x.shape[0]
    n = out.shape[0]
    total = burn_in + n * thinning
    k = 0
    u = 0
    for sweep in range(total):
        for r in range(p):
            f = 0.0
            for l in range(p):
                f += theta2[r, l] * x[l]
            prob_plus = 1.0 / (1.0 + np.exp(-f))
            x[r] = 1.0 if uniforms[u] < prob_plus else -1.0
            u += 1
        if sweep >= burn_in and (sweep - burn_in + 1) % thinning == 0:
            out[k] = x
            k += 1


def sample_gibbs(model: IsingModel, n: int, config: GibbsConfig) -> Dataset:
    """n retained samples from a single systematic-scan Gibbs chain.

    The chain starts from a uniformly random state, discards ``burn_in``
    sweeps, then retains the state after every ``thinning``-th sweep.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    p = model.p
    rng = make_rng(config.seed)
    x = rng.integers(0, 2, size=p).astype(np.float64) * 2.0 - 1.0
    total_sweeps = config.burn_in + n * config.thinning
    uniforms = rng.random(total_sweeps * p)
    out = np.empty((n, p))
    _gibbs_sweeps(2.0 * model.theta, x, uniforms, out, config.burn_in, config.thinning)
    return Dataset(n=n, p=p, x=out)


def dataset_to_csv(data: Dataset) -> str:
    """CSV with header X1..Xp and rows of -1/+1."""
    buf = io.StringIO()
    buf.write(",".join(f"X{j + 1}" for j in range(data.p)) + "\n")
    for row in data.x.astype(np.int64):
        buf.write(",".join(str(v) for v in row) + "\n")
    return buf.getvalue()


def dataset_from_csv(text: str) -> Dataset:
    """Inverse of :func:`dataset_to_csv`."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty dataset CSV")
    header = lines[0].split(",")
    p = len(header)
    x = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    if x.ndim != 2 or x.shape[1] != p:
        raise ValueError("ragged dataset CSV")
    return Dataset(n=x.shape[0], p=p, x=x)
