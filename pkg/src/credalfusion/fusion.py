"""Combination of 'a priori' and evidential information.

Combining a credal set with evidence multiplies every extreme
distribution by every extreme likelihood.  Each resulting function,
once normalized, is a candidate conditional distribution, and its total
mass is the possibility that it is the right one.  Interval answers are
Choquet integrals of the candidate conditionals against that
possibility.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import geometry
from .credal import CredalSet
from .errors import DimensionMismatch, EmptySet, InvalidInput, TinyWeightWarning, TotalConflict
from .evidential import EvidenceSet, canonicalize
from .frame import Frame, IntervalTable, event_indicators

TINY_WEIGHT = 1e-6


@dataclass(frozen=True, eq=False)
class CombinedSet:
    """Extreme points of the combination; the null function comes first."""

    frame: Frame
    extremes: np.ndarray

    def __len__(self):
        return len(self.extremes)

    def __repr__(self):
        return f"CombinedSet({self.extremes.tolist()})"


@dataclass(frozen=True, eq=False)
class ConditionalEnsemble:
    """Candidate conditional distributions, each with a possibility weight.

    ``sources`` holds the unnormalized combination functions, in the same
    order as ``conditionals``.
    """

    frame: Frame
    conditionals: np.ndarray
    weights: np.ndarray
    sources: np.ndarray

    @property
    def normalizer(self) -> float:
        return float(self.weights.max())

    @property
    def measures(self) -> EnsembleMeasures:
        return EnsembleMeasures(self.weights)

    def __len__(self):
        return len(self.weights)

    def probabilities(self, event: int) -> np.ndarray:
        """Conditional probability of ``event`` under every member."""
        ind = event_indicators([event], self.frame.size)[0]
        return self.conditionals @ ind


class EnsembleMeasures:
    """Upper and lower measures over subsets of ensemble members.

    The upper measure of a subset is its largest weight relative to the
    overall largest weight; the lower measure is its dual.
    """

    def __init__(self, weights):
        self.weights = np.asarray(weights, dtype=float)
        self.normalizer = float(self.weights.max())
        self._all = frozenset(range(len(self.weights)))

    def upper(self, members) -> float:
        idx = list(members)
        if not idx:
            return 0.0
        return float(self.weights[idx].max() / self.normalizer)

    def lower(self, members) -> float:
        return 1.0 - self.upper(self._all - frozenset(members))


def combine(c: CredalSet, e: EvidenceSet) -> CombinedSet:
    if c.frame != e.frame:
        raise DimensionMismatch(f"frames differ: {c.frame.labels} vs {e.frame.labels}")
    if c.is_empty:
        raise EmptySet("cannot combine an empty credal set")
    m = c.frame.size
    prods = [p * l for p in c.extremes for l in canonicalize(e).extremes]
    pts = np.vstack([np.zeros(m), *prods])
    return CombinedSet(c.frame, geometry.convex_hull(pts).vertices)


def ensemble_of(h: CombinedSet) -> ConditionalEnsemble:
    sums = h.extremes.sum(axis=1)
    live = sums > geometry.EPS
    if not np.any(live):
        raise TotalConflict("every combination gives the observation probability zero")
    src, w = h.extremes[live], sums[live]
    if w.max() < TINY_WEIGHT:
        warnings.warn(
            f"largest combination weight is {w.max():.3g}; the prior itself is suspect",
            TinyWeightWarning,
            stacklevel=2,
        )
    return ConditionalEnsemble(h.frame, src / w[:, None], w, src)


def choquet_integral(values: Sequence[float], measure: Callable[[frozenset], float]) -> float:
    """Choquet integral of nonnegative ``values`` against a monotone set function.

    ``measure`` takes a frozenset of indices into ``values``.  Uses the
    layer formula over values sorted in decreasing order.
    """
    f = np.asarray(values, dtype=float)
    if np.any(f < 0) or not np.all(np.isfinite(f)):
        raise InvalidInput("Choquet integrand must be finite and nonnegative")
    order = np.argsort(-f, kind="stable")
    total = 0.0
    top = set()
    for pos, i in enumerate(order):
        top.add(int(i))
        nxt = f[order[pos + 1]] if pos + 1 < len(order) else 0.0
        step = f[i] - nxt
        if step > 0:
            total += step * measure(frozenset(top))
    return total


def _event_list(frame: Frame, events) -> list[int]:
    if events is None or events == "all":
        return frame.all_events()
    return [e if isinstance(e, (int, np.integer)) else frame.event(e) for e in events]


def conditional_intervals(ens: ConditionalEnsemble, events="all") -> IntervalTable:
    """Choquet intervals for each event: upper against the upper measure,
    lower against the lower measure."""
    evs = _event_list(ens.frame, events)
    g = ens.measures
    lower, upper = [], []
    for ev in evs:
        if ev == 0:
            lo, up = 0.0, 0.0
        elif ev == ens.frame.universe:
            lo, up = 1.0, 1.0
        else:
            f = ens.probabilities(ev)
            lo, up = choquet_integral(f, g.lower), choquet_integral(f, g.upper)
        lower.append(lo)
        upper.append(up)
    return IntervalTable(ens.frame, evs, lower, upper)


def upper_lower_conditioning(ens: ConditionalEnsemble, events="all") -> IntervalTable:
    evs = _event_list(ens.frame, events)
    probs = ens.conditionals @ event_indicators(evs, ens.frame.size).T
    return IntervalTable(ens.frame, evs, probs.min(axis=0), probs.max(axis=0))


def condition(c: CredalSet, e: EvidenceSet, events="all", method="choquet") -> IntervalTable:
    """Combine, normalize, and report intervals with the chosen method."""
    ens = ensemble_of(combine(c, e))
    if method == "choquet":
        return conditional_intervals(ens, events)
    if method == "upperlower":
        return upper_lower_conditioning(ens, events)
    raise InvalidInput(f"unknown conditioning method {method!r}")
