"""Evidential information: convex sets of likelihood functions.

Every set is compared and combined through its canonical form, the hull
of the set together with the null likelihood.  Adding or removing the
null likelihood never changes a downstream result.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import geometry
from .errors import DimensionMismatch, InvalidBounds, InvalidInput, TotalConflict
from .frame import Frame, FullTable, check_frame_size, indicator_matrix

_TOL = geometry.EPS


def check_likelihood(frame: Frame, values, what="likelihood") -> np.ndarray:
    v = frame.check_vector(values, what)
    if np.any(v < -_TOL) or np.any(v > 1 + _TOL):
        raise InvalidInput(f"{what} has entries outside [0, 1]: {v.tolist()}")
    return np.clip(v, 0.0, 1.0)


@dataclass(frozen=True, eq=False)
class EvidenceSet:
    frame: Frame
    extremes: np.ndarray
    canonical: bool = False

    @classmethod
    def from_likelihoods(cls, frame: Frame, likelihoods: Iterable) -> EvidenceSet:
        pts = [check_likelihood(frame, l) for l in likelihoods]
        if not pts:
            raise InvalidInput("evidence needs at least one likelihood")
        hull = geometry.convex_hull(np.array(pts))
        return cls(frame, hull.vertices)

    @classmethod
    def precise(cls, frame: Frame, likelihood) -> EvidenceSet:
        return cls.from_likelihoods(frame, [likelihood])

    @classmethod
    def null(cls, frame: Frame) -> EvidenceSet:
        return cls(frame, np.zeros((1, frame.size)), canonical=True)

    @property
    def polytope(self) -> geometry.Polytope:
        return geometry.Polytope(self.frame.size, self.extremes)

    def contains(self, l) -> bool:
        return geometry.contains(self.polytope, l)

    def with_null(self) -> EvidenceSet:
        """The raw union with the null likelihood, left unreduced."""
        pts = np.vstack([self.extremes, np.zeros(self.frame.size)])
        return EvidenceSet(self.frame, pts)

    def __len__(self):
        return len(self.extremes)

    def __repr__(self):
        tag = "canonical " if self.canonical else ""
        return f"EvidenceSet({tag}{list(self.frame.labels)}, {self.extremes.tolist()})"


def _canonical_hull(frame: Frame, points: np.ndarray) -> EvidenceSet:
    pts = np.vstack([np.zeros(frame.size), np.clip(points, 0.0, 1.0)])
    hull = geometry.convex_hull(pts)
    return EvidenceSet(frame, hull.vertices, canonical=True)


def _same_frame(e1, e2):
    if e1.frame != e2.frame:
        raise DimensionMismatch(f"frames differ: {e1.frame.labels} vs {e2.frame.labels}")


def canonicalize(e: EvidenceSet) -> EvidenceSet:
    if e.canonical:
        return e
    return _canonical_hull(e.frame, e.extremes)


def equivalent(e1: EvidenceSet, e2: EvidenceSet) -> bool:
    _same_frame(e1, e2)
    a, b = canonicalize(e1).polytope, canonicalize(e2).polytope
    return all(geometry.contains(b, v) for v in a.vertices) and all(
        geometry.contains(a, v) for v in b.vertices
    )


def _box_corners(lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    axes = [(lo,) if up - lo <= _TOL else (lo, up) for lo, up in zip(lower, upper)]
    return np.array(list(itertools.product(*axes)), dtype=float)


def interval_evidence(frame: Frame, lower, upper) -> EvidenceSet:
    """Evidence from per-outcome bounds ``lower[i] <= P(O | u_i) <= upper[i]``."""
    check_frame_size(frame.size)
    lo = check_likelihood(frame, lower, "lower bound")
    up = check_likelihood(frame, upper, "upper bound")
    bad = np.flatnonzero(lo > up + _TOL)
    if len(bad):
        i = bad[0]
        raise InvalidBounds(
            f"lower bound {lo[i]} exceeds upper bound {up[i]} for outcome {frame.labels[i]!r}"
        )
    return _canonical_hull(frame, _box_corners(lo, np.maximum(lo, up)))


@dataclass(frozen=True, eq=False)
class PossibilityDist:
    """Possibility distribution on a frame; not necessarily normalized."""

    frame: Frame
    values: np.ndarray

    def measure(self, event: int) -> float:
        return possibility_measure(self, event)

    def __repr__(self):
        return f"PossibilityDist({self.values.tolist()})"


def possibility_of(e: EvidenceSet) -> PossibilityDist:
    if len(e.extremes) == 0:
        return PossibilityDist(e.frame, np.zeros(e.frame.size))
    return PossibilityDist(e.frame, np.maximum(e.extremes.max(axis=0), 0.0))


def possibility_measure(pi: PossibilityDist, event: int) -> float:
    idx = [i for i in range(pi.frame.size) if event >> i & 1]
    if event >> pi.frame.size:
        raise InvalidInput(f"event {event:#b} is not a subset of the frame")
    return float(pi.values[idx].max()) if idx else 0.0


class ConsistencyTable(FullTable):
    """Relative degrees of consistency ``(g_lower(A), g_upper(A))`` for every event."""


def consistency_table(pi: PossibilityDist) -> ConsistencyTable:
    m = pi.frame.size
    M = indicator_matrix(m)
    poss = (M * pi.values).max(axis=1)
    total = poss[-1]
    if total <= 0.0:
        raise TotalConflict("the observation is impossible under every likelihood")
    upper = poss / total
    complements = (1 << m) - 1 - np.arange(1 << m)
    lower = 1.0 - upper[complements]
    upper[-1] = lower[-1] = 1.0
    upper[0] = lower[0] = 0.0
    return ConsistencyTable(pi.frame, lower, upper)


def evid_conjunction(e1: EvidenceSet, e2: EvidenceSet) -> EvidenceSet:
    """Conjoin two descriptions of the same observation."""
    _same_frame(e1, e2)
    poly = geometry.intersect(canonicalize(e1).polytope, canonicalize(e2).polytope)
    return _canonical_hull(e1.frame, poly.vertices.reshape(-1, e1.frame.size))


def evid_disjunction(e1: EvidenceSet, e2: EvidenceSet) -> EvidenceSet:
    _same_frame(e1, e2)
    return _canonical_hull(e1.frame, np.vstack([e1.extremes, e2.extremes]))


def observe_and_frechet(e1: EvidenceSet, e2: EvidenceSet) -> EvidenceSet:
    """Evidence for the joint observation, making no assumption on how they relate.

    Each pair of extreme likelihoods contributes the box of values allowed
    by the Frechet bounds; the result is the hull of all such boxes.
    """
    _same_frame(e1, e2)
    check_frame_size(e1.frame.size)
    corners = []
    for l1 in canonicalize(e1).extremes:
        for l2 in canonicalize(e2).extremes:
            lo = np.maximum(0.0, l1 + l2 - 1.0)
            up = np.minimum(l1, l2)
            corners.append(_box_corners(lo, up))
    return _canonical_hull(e1.frame, np.vstack(corners))


def observe_and_independent(e1: EvidenceSet, e2: EvidenceSet) -> EvidenceSet:
    """Evidence for the joint of two observations independent given the outcome."""
    _same_frame(e1, e2)
    prods = [l1 * l2 for l1 in canonicalize(e1).extremes for l2 in canonicalize(e2).extremes]
    return _canonical_hull(e1.frame, np.array(prods))
