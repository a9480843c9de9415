"""Convex geometry on the probability simplex and the nonnegative cone.

Polytopes are kept in vertex form.  Membership is a nonnegative least
squares feasibility problem; intersections go through half-space form
and back again.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog, nnls
from scipy.spatial import ConvexHull, HalfspaceIntersection, QhullError

from .errors import DimensionMismatch, EmptyInput, InvalidInput
from .frame import check_frame_size

EPS = 1e-9

# Chebyshev radius above which a system counts as full dimensional.
_FULLDIM_TOL = 1e-8
# Largest achievable slack below which an inequality is an implicit equality.
_IMPLICIT_TOL = 1e-8
_LP_OPTIONS = {"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10}


@dataclass(frozen=True, eq=False)
class Polytope:
    """Convex hull of a minimal vertex list.

    A polytope with no vertices is the empty set.
    """

    frame_size: int
    vertices: np.ndarray

    @property
    def is_empty(self) -> bool:
        return len(self.vertices) == 0

    def __len__(self):
        return len(self.vertices)

    def same_as(self, other: Polytope, tol: float = EPS) -> bool:
        """True when both vertex sets match up to ``tol`` in max-norm."""
        if self.frame_size != other.frame_size or len(self) != len(other):
            return False
        return _vertex_sets_match(self.vertices, other.vertices, tol)

    def __repr__(self):
        return f"Polytope({self.frame_size}, {self.vertices.tolist()})"


def _vertex_sets_match(a, b, tol):
    for v in a:
        if not np.any(np.max(np.abs(b - v), axis=1) <= tol):
            return False
    for v in b:
        if not np.any(np.max(np.abs(a - v), axis=1) <= tol):
            return False
    return True


def as_points(points) -> np.ndarray:
    if isinstance(points, np.ndarray):
        pts = points.astype(float, copy=False)
    else:
        pts = list(points)
        if not pts:
            raise EmptyInput("no points given")
        lengths = {len(p) for p in pts}
        if len(lengths) != 1:
            raise DimensionMismatch(f"points of differing lengths {sorted(lengths)}")
        pts = np.asarray(pts, dtype=float)
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise EmptyInput("no points given")
    if not np.all(np.isfinite(pts)):
        raise InvalidInput("non-finite coordinates")
    return pts


def dedupe(points: np.ndarray, tol: float = EPS) -> np.ndarray:
    if len(points) > 64:
        # exact grid duplicates first, keeping first occurrences in order
        _, first = np.unique(np.round(points / tol), axis=0, return_index=True)
        points = points[np.sort(first)]
    n = len(points)
    if n < 2:
        return points.copy()
    keep = np.ones(n, dtype=bool)
    for i in range(n - 1):
        if keep[i]:
            keep[i + 1:] &= np.max(np.abs(points[i + 1:] - points[i]), axis=1) > tol
    return points[keep]


def in_hull(vertices: np.ndarray, x: np.ndarray, tol: float = EPS) -> bool:
    """Is ``x`` a convex combination of the rows of ``vertices``?"""
    n, m = vertices.shape
    if n == 0:
        return False
    if n == 1:
        return bool(np.max(np.abs(vertices[0] - x)) <= tol)
    A = np.vstack([vertices.T, np.ones(n)])
    b = np.append(x, 1.0)
    _, rnorm = nnls(A, b)
    return bool(rnorm <= tol * math.sqrt(m + 1))


def convex_hull(points) -> Polytope:
    """Minimal vertex list of the hull of ``points``.

    Returned vertices are input points, in their original order.
    """
    pts = as_points(points)
    pts = dedupe(pts[_hull_candidates(pts)])
    keep = list(range(len(pts)))
    for i in range(len(pts)):
        others = [j for j in keep if j != i]
        if others and in_hull(pts[others], pts[i]):
            keep.remove(i)
    return Polytope(pts.shape[1], pts[keep])


def _hull_candidates(pts: np.ndarray) -> list[int]:
    # Qhull discards clearly interior points cheaply; the exact pass decides the rest
    n = len(pts)
    D = pts - pts.mean(axis=0)
    _, s, vt = np.linalg.svd(D, full_matrices=False)
    k = int(np.sum(s > EPS))
    if k < 2 or n <= k + 2:
        return list(range(n))
    try:
        hull = ConvexHull(D @ vt[:k].T)
    except QhullError:
        return list(range(n))
    return sorted(int(i) for i in hull.vertices)


def contains(poly: Polytope, point) -> bool:
    x = np.asarray(point, dtype=float)
    if x.shape != (poly.frame_size,):
        raise DimensionMismatch(
            f"point of shape {x.shape} against polytope in dimension {poly.frame_size}"
        )
    return in_hull(poly.vertices, x)


def empty(frame_size: int) -> Polytope:
    return Polytope(frame_size, np.zeros((0, frame_size)))


# -- half-space form ---------------------------------------------------------


def _nullspace(A: np.ndarray, tol: float = EPS) -> np.ndarray:
    if A.shape[0] == 0:
        return np.eye(A.shape[1])
    _, s, vt = np.linalg.svd(A)
    rank = int(np.sum(s > tol * max(1.0, s[0]))) if len(s) else 0
    return vt[rank:].T


def halfspaces(poly: Polytope):
    """Return ``(A_eq, b_eq, A_ub, b_ub)`` describing a nonempty polytope.

    The equalities pin down the affine hull of the vertices; the
    inequalities are the facets inside that hull.
    """
    V = poly.vertices
    m = poly.frame_size
    check_frame_size(m)
    c = V.mean(axis=0)
    D = V - c
    _, s, vt = np.linalg.svd(D, full_matrices=True)
    k = int(np.sum(s > EPS))
    basis, normals = vt[:k], vt[k:]
    A_eq, b_eq = normals, normals @ c
    if k == 0:
        return A_eq, b_eq, np.zeros((0, m)), np.zeros(0)
    Y = D @ basis.T
    if k == 1:
        y = Y[:, 0]
        A_ub = np.vstack([basis[0], -basis[0]])
        b_ub = np.array([y.max() + basis[0] @ c, -y.min() - basis[0] @ c])
        return A_eq, b_eq, A_ub, b_ub
    hull = ConvexHull(Y)
    eqs = hull.equations
    # a.y + off <= 0 with y = basis (x - c)
    A_ub = eqs[:, :-1] @ basis
    b_ub = -eqs[:, -1] + A_ub @ c
    return A_eq, b_eq, A_ub, b_ub


def enumerate_vertices(A_eq, b_eq, A_ub, b_ub, m: int) -> Polytope:
    """Vertices of ``{x : A_eq x = b_eq, A_ub x <= b_ub}``.

    The system must describe a bounded set.  Lower dimensional sets are
    handled by detecting implicit equalities and restricting to them.
    """
    check_frame_size(m)
    A_eq = np.asarray(A_eq, dtype=float).reshape(-1, m)
    b_eq = np.asarray(b_eq, dtype=float).ravel()
    A_ub = np.asarray(A_ub, dtype=float).reshape(-1, m)
    b_ub = np.asarray(b_ub, dtype=float).ravel()

    x0, N = _solve_affine(A_eq, b_eq, np.zeros(m), np.eye(m))
    if x0 is None:
        return empty(m)
    while True:
        k = N.shape[1]
        G = A_ub @ N
        h = b_ub - A_ub @ x0
        norms = np.linalg.norm(G, axis=1)
        flat = norms <= 1e-12
        if np.any(h[flat] < -EPS):
            return empty(m)
        G, h, norms = G[~flat], h[~flat], norms[~flat]
        if k == 0 or len(G) == 0:
            if k > 0:
                raise InvalidInput("unbounded constraint system")
            return convex_hull(x0[None, :])
        center, radius = _chebyshev(G, h, norms)
        if center is None:
            return empty(m)
        if radius > _FULLDIM_TOL:
            Y = _full_dim_vertices(G, h, center)
            return convex_hull(x0 + Y @ N.T)
        tight = _implicit_equalities(G, h)
        if not tight:
            # numerically flat but no certified equality: treat as a point
            return convex_hull((x0 + N @ center)[None, :])
        y0, N2 = _solve_affine(G[tight], h[tight], np.zeros(k), np.eye(k))
        if y0 is None:
            return empty(m)
        x0, N = x0 + N @ y0, N @ N2


def _solve_affine(A, b, x0, N):
    """Restrict ``x = x0 + N y`` further by ``A x = b``."""
    if A.shape[0] == 0:
        return x0, N
    M = A @ N
    r = b - A @ x0
    y, *_ = np.linalg.lstsq(M, r, rcond=None)
    if np.max(np.abs(M @ y - r), initial=0.0) > EPS * 10:
        return None, None
    return x0 + N @ y, N @ _nullspace(M)


def _chebyshev(G, h, norms):
    k = G.shape[1]
    c = np.zeros(k + 1)
    c[-1] = -1.0
    A = np.hstack([G, norms[:, None]])
    bounds = [(None, None)] * k + [(0, 1)]
    res = linprog(c, A_ub=A, b_ub=h, bounds=bounds, method="highs", options=_LP_OPTIONS)
    if res.status == 2:
        return None, 0.0
    if res.status != 0:
        raise InvalidInput(f"linear program failed: {res.message}")
    return res.x[:k], res.x[-1]


def _implicit_equalities(G, h):
    tight = []
    bounds = [(None, None)] * G.shape[1]
    for i in range(len(G)):
        res = linprog(G[i], A_ub=G, b_ub=h, bounds=bounds, method="highs", options=_LP_OPTIONS)
        if res.status == 0 and h[i] - res.fun <= _IMPLICIT_TOL:
            tight.append(i)
    return tight


def _full_dim_vertices(G, h, center):
    k = G.shape[1]
    if k == 1:
        g = G[:, 0]
        hi = np.min(h[g > 0] / g[g > 0]) if np.any(g > 0) else None
        lo = np.max(h[g < 0] / g[g < 0]) if np.any(g < 0) else None
        if hi is None or lo is None:
            raise InvalidInput("unbounded constraint system")
        return np.array([[lo], [hi]])
    try:
        hs = HalfspaceIntersection(np.hstack([G, -h[:, None]]), center)
        return hs.intersections
    except QhullError:
        return _brute_force_vertices(G, h)


def _brute_force_vertices(G, h):
    """Active-set enumeration; fallback for inputs Qhull rejects."""
    k = G.shape[1]
    found = []
    for rows in itertools.combinations(range(len(G)), k):
        M = G[list(rows)]
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        y = np.linalg.solve(M, h[list(rows)])
        if np.all(G @ y <= h + EPS):
            found.append(y)
    return np.array(found).reshape(-1, k)


def intersect(poly1: Polytope, poly2: Polytope) -> Polytope:
    if poly1.frame_size != poly2.frame_size:
        raise DimensionMismatch(
            f"cannot intersect polytopes in dimensions {poly1.frame_size} and {poly2.frame_size}"
        )
    m = poly1.frame_size
    if poly1.is_empty or poly2.is_empty:
        return empty(m)
    e1, f1, a1, b1 = halfspaces(poly1)
    e2, f2, a2, b2 = halfspaces(poly2)
    return enumerate_vertices(
        np.vstack([e1, e2]), np.concatenate([f1, f2]),
        np.vstack([a1, a2]), np.concatenate([b1, b2]), m,
    )
