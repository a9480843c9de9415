"""Random credal sets and evidence sets for property checks."""

import numpy as np

from credalfusion import CredalSet, EvidenceSet, Frame, interval_evidence


def frame_of(m):
    return Frame(tuple(f"u{i}" for i in range(m)))


def random_credal(rng, m, max_extremes=4):
    n = int(rng.integers(1, max_extremes + 1))
    pts = rng.dirichlet(np.ones(m) * 0.7, size=n)
    if rng.random() < 0.2:
        # a degenerate vertex now and then
        pts[0] = np.eye(m)[rng.integers(m)]
    return CredalSet.from_points(frame_of(m), pts / pts.sum(axis=1, keepdims=True))


def random_evidence(rng, m, max_extremes=3):
    frame = frame_of(m)
    if rng.random() < 0.3:
        lo = rng.random(m) * 0.6
        hi = np.minimum(1.0, lo + rng.random(m) * 0.4)
        return interval_evidence(frame, lo, hi)
    n = int(rng.integers(1, max_extremes + 1))
    likes = rng.random((n, m))
    likes[rng.random((n, m)) < 0.1] = 0.0
    likes[:, rng.integers(m)] = np.maximum(likes[:, rng.integers(m)], 0.05)
    return EvidenceSet.from_likelihoods(frame, likes)
