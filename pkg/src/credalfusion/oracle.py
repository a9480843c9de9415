"""Independent numeric checks.

Monte Carlo simulation of the generative story (draw a distribution from
the credal set, a likelihood from the evidence, an outcome, then whether
the observation occurs) and a direct discretization of the Choquet
integral.  Nothing here calls into the fusion code path it checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .credal import CredalSet
from .errors import EmptySet, InvalidInput
from .evidential import EvidenceSet, canonicalize, possibility_measure, possibility_of
from .frame import event_indicators


@dataclass(frozen=True)
class SimulationReport:
    trials: int
    event: int
    empirical_consistency: float
    bound: float
    violated: bool

    @property
    def stderr(self) -> float:
        p = self.empirical_consistency
        return math.sqrt(p * (1 - p) / self.trials)


def _mixtures(extremes: np.ndarray, size, rng) -> np.ndarray:
    n = len(extremes)
    if n == 1:
        return np.repeat(extremes, size, axis=0)
    w = rng.dirichlet(np.ones(n), size=size)
    return w @ extremes


def sample_prior(c: CredalSet, seed: int) -> np.ndarray:
    """A uniformly weighted random mixture of the extremes of ``c``."""
    if c.is_empty:
        raise EmptySet("cannot sample from an empty credal set")
    rng = np.random.default_rng(seed)
    p = _mixtures(c.extremes, 1, rng)[0]
    return p / p.sum()


def _live_likelihoods(e: EvidenceSet) -> np.ndarray:
    # the null likelihood describes an impossible observation; leave it out
    pts = canonicalize(e).extremes
    live = pts[np.any(pts > 0, axis=1)]
    return live if len(live) else pts


def sample_likelihood(e: EvidenceSet, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return _mixtures(_live_likelihoods(e), 1, rng)[0]


def simulate(c: CredalSet, e: EvidenceSet, events: Sequence[int], trials: int, seed: int):
    """Run ``trials`` draws once and report the bound check for every event."""
    if trials < 1:
        raise InvalidInput("need at least one trial")
    if c.is_empty:
        raise EmptySet("cannot sample from an empty credal set")
    rng = np.random.default_rng(seed)
    priors = _mixtures(c.extremes, trials, rng)
    likes = _mixtures(_live_likelihoods(e), trials, rng)
    cdf = np.cumsum(priors, axis=1)
    u = rng.random(trials) * cdf[:, -1]
    x = np.minimum((cdf <= u[:, None]).sum(axis=1), c.frame.size - 1)
    occurred = rng.random(trials) < likes[np.arange(trials), x]

    pi = possibility_of(e)
    membership = event_indicators(events, c.frame.size)[:, x].astype(bool)
    reports = []
    for ev, in_event in zip(events, membership):
        p_hat = float(np.count_nonzero(occurred & in_event)) / trials
        bound = possibility_measure(pi, ev)
        sigma = math.sqrt(p_hat * (1 - p_hat) / trials)
        reports.append(SimulationReport(trials, int(ev), p_hat, bound, p_hat > bound + 3 * sigma))
    return reports


def check_possibility_bound(
    c: CredalSet, e: EvidenceSet, event: int, trials: int, seed: int
) -> SimulationReport:
    return simulate(c, e, [event], trials, seed)[0]


def riemann_choquet(
    values: Sequence[float], measure: Callable[[frozenset], float], step: float = 1e-4
) -> float:
    """Left Riemann sum of ``alpha -> measure({k : values[k] >= alpha})``."""
    if step <= 0:
        raise InvalidInput("step must be positive")
    f = np.asarray(values, dtype=float)
    top = f.max(initial=0.0)
    if top <= 0:
        return 0.0
    alphas = np.arange(0.0, top, step)
    level_sets = f[None, :] >= alphas[:, None]
    distinct, counts = np.unique(level_sets, axis=0, return_counts=True)
    total = sum(
        n * measure(frozenset(np.flatnonzero(row).tolist())) for row, n in zip(distinct, counts)
    )
    return float(total) * step
