"""'A priori' information: convex sets of probability distributions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import geometry
from .errors import ContextMismatch, DimensionMismatch, EmptySet, InvalidInput
from .frame import Frame, FullTable, check_frame_size, indicator_matrix

SUM_TOL = 1e-9


def check_probability(frame: Frame, values, what="probability vector") -> np.ndarray:
    p = frame.check_vector(values, what)
    if np.any(p < -SUM_TOL) or np.any(p > 1 + SUM_TOL):
        raise InvalidInput(f"{what} has entries outside [0, 1]: {p.tolist()}")
    if abs(p.sum() - 1.0) > SUM_TOL:
        raise InvalidInput(f"{what} sums to {p.sum()!r}, not 1")
    return p


def _clean(points: np.ndarray) -> np.ndarray:
    # round-off from vertex enumeration
    return np.clip(np.where(np.abs(points) < 1e-12, 0.0, points), 0.0, 1.0)


@dataclass(frozen=True, eq=False)
class CredalSet:
    """Convex set of distributions on ``frame`` given by its extreme points.

    ``contexts`` labels the conditions under which the set applies.  A set
    with no extremes is the empty credal set, which arises from
    conjoining incompatible information.
    """

    frame: Frame
    extremes: np.ndarray
    contexts: frozenset = field(default_factory=frozenset)

    @classmethod
    def from_points(cls, frame: Frame, points: Iterable, contexts=()) -> CredalSet:
        pts = [check_probability(frame, p) for p in points]
        if not pts:
            raise EmptySet("a credal set needs at least one distribution")
        hull = geometry.convex_hull(np.array(pts))
        return cls(frame, hull.vertices, frozenset(contexts))

    @classmethod
    def empty(cls, frame: Frame, contexts=()) -> CredalSet:
        return cls(frame, np.zeros((0, frame.size)), frozenset(contexts))

    @classmethod
    def vacuous(cls, frame: Frame, contexts=()) -> CredalSet:
        return cls(frame, np.eye(frame.size), frozenset(contexts))

    @property
    def is_empty(self) -> bool:
        return len(self.extremes) == 0

    @property
    def polytope(self) -> geometry.Polytope:
        return geometry.Polytope(self.frame.size, self.extremes)

    def __len__(self):
        return len(self.extremes)

    def contains(self, p) -> bool:
        return geometry.contains(self.polytope, p)

    def same_as(self, other: CredalSet, tol: float = geometry.EPS) -> bool:
        return self.frame == other.frame and self.polytope.same_as(other.polytope, tol)

    def __repr__(self):
        ctx = f", contexts={sorted(self.contexts)}" if self.contexts else ""
        return f"CredalSet({list(self.frame.labels)}, {self.extremes.tolist()}{ctx})"


class Envelope(FullTable):
    """Lower and upper probabilities of every event."""


def _same_frame(c1, c2):
    if c1.frame != c2.frame:
        raise DimensionMismatch(f"frames differ: {c1.frame.labels} vs {c2.frame.labels}")


def conjunction(c1: CredalSet, c2: CredalSet, assume_no_interaction: bool = False) -> CredalSet:
    """Intersection of two credal sets.

    Sets from different contexts only combine when the caller asserts
    there is no interaction between the contexts.  The result may be
    empty.
    """
    _same_frame(c1, c2)
    if c1.contexts != c2.contexts and not assume_no_interaction:
        raise ContextMismatch(
            f"contexts {sorted(c1.contexts)} and {sorted(c2.contexts)} differ; "
            "pass assume_no_interaction to combine them anyway"
        )
    contexts = c1.contexts | c2.contexts
    poly = geometry.intersect(c1.polytope, c2.polytope)
    if poly.is_empty:
        return CredalSet.empty(c1.frame, contexts)
    return CredalSet(c1.frame, _clean(poly.vertices), contexts)


def disjunction(c1: CredalSet, c2: CredalSet) -> CredalSet:
    _same_frame(c1, c2)
    if c1.contexts != c2.contexts:
        raise ContextMismatch(
            f"contexts {sorted(c1.contexts)} and {sorted(c2.contexts)} differ"
        )
    pts = [p for p in (c1.extremes, c2.extremes) if len(p)]
    if not pts:
        return CredalSet.empty(c1.frame, c1.contexts)
    hull = geometry.convex_hull(np.vstack(pts))
    return CredalSet(c1.frame, hull.vertices, c1.contexts)


def envelope_of(c: CredalSet) -> Envelope:
    if c.is_empty:
        raise EmptySet("the credal set is empty")
    M = indicator_matrix(c.frame.size)
    probs = c.extremes @ M.T
    lower, upper = probs.min(axis=0), probs.max(axis=0)
    lower[0] = upper[0] = 0.0
    lower[-1] = upper[-1] = 1.0
    return Envelope(c.frame, lower, upper)


def envelope_from_intervals(frame: Frame, intervals: dict) -> Envelope:
    """Build an envelope from a partial ``{event: (lower, upper)}`` map.

    Unlisted events get the vacuous bounds ``[0, 1]``.  Keys are bitmasks
    or iterables of labels.
    """
    check_frame_size(frame.size)
    n = 1 << frame.size
    lower, upper = np.zeros(n), np.ones(n)
    for key, (lo, up) in intervals.items():
        mask = key if isinstance(key, int) else frame.event(key)
        lower[mask], upper[mask] = lo, up
    lower[0] = upper[0] = 0.0
    lower[-1] = upper[-1] = 1.0
    return Envelope(frame, lower, upper)


def maximal_family(e: Envelope) -> CredalSet:
    """The largest credal set whose probabilities respect every bound of ``e``."""
    m = e.frame.size
    M = indicator_matrix(m)
    rows, rhs = [], []
    for mask in range(1, (1 << m) - 1):
        lo, up = e[mask]
        if up < 1.0:
            rows.append(M[mask])
            rhs.append(up)
        if lo > 0.0:
            rows.append(-M[mask])
            rhs.append(-lo)
    A_ub = np.vstack([*rows, -np.eye(m)]) if rows else -np.eye(m)
    b_ub = np.concatenate([rhs, np.zeros(m)])
    poly = geometry.enumerate_vertices(np.ones((1, m)), [1.0], A_ub, b_ub, m)
    if poly.is_empty:
        raise EmptySet("no distribution satisfies the envelope")
    return CredalSet(e.frame, _clean(poly.vertices))


def independent_product(c1: CredalSet, c2: CredalSet) -> CredalSet:
    """Hull of all products of extremes, over the row-major product frame.

    The true set of product distributions need not be convex; its hull
    adds the mixtures obtained by choosing the two marginals jointly.
    """
    if c1.is_empty or c2.is_empty:
        raise EmptySet("cannot take the product of an empty credal set")
    frame = c1.frame.product(c2.frame)
    check_frame_size(frame.size)
    pts = np.array([np.outer(p, q).ravel() for p in c1.extremes for q in c2.extremes])
    hull = geometry.convex_hull(pts)
    return CredalSet(frame, hull.vertices, c1.contexts | c2.contexts)
