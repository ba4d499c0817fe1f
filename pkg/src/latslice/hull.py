"""Exact convex hulls of integer point sets: facets, vertices, volumes.

Facet enumeration is brute force over d-subsets with a membership skip
(subsets lying inside an already-found facet are never re-solved), which
is plenty at desk scale and trivially exact.  Dimension 2 short-circuits
to a monotone-chain scan.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import LatsliceError
from .linalg import dot, hyperplane_through, int_rank, vec_sub

__all__ = ["Facet", "HullSizeError", "graham_hull", "hull_facets", "hull_vertex_indices", "hull_volume"]

SUBSET_GUARD = 500_000


class HullSizeError(LatsliceError):
    """Raised when brute-force facet enumeration would be too large."""


@dataclass(frozen=True)
class Facet:
    normal: tuple[int, ...]
    offset: int
    active: tuple[int, ...]  # indices of input points on the facet


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def graham_hull(points):
    """Extreme points of a 2D integer point set, counterclockwise order."""
    pts = sorted(set(map(tuple, points)))
    if len(pts) <= 2:
        return pts
    lower = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:  # collinear input collapses to a segment
        return [min(pts), max(pts)]
    return hull


def _facets_2d(pts):
    hull = graham_hull(pts)
    if len(hull) < 3:
        return []
    facets = []
    for i in range(len(hull)):
        p, q = hull[i], hull[(i + 1) % len(hull)]
        hp = hyperplane_through([p, q])
        a, b = hp
        if dot(a, hull[(i + 2) % len(hull)]) > b:
            a, b = tuple(-x for x in a), -b
        active = tuple(k for k, pt in enumerate(pts) if dot(a, pt) == b)
        facets.append(Facet(a, b, active))
    return facets


def hull_facets(pts, dim, guard=SUBSET_GUARD):
    """All facets of conv(pts) for an integer point set spanning dimension dim.

    Input not affinely spanning R^dim yields [] (no full-dimensional facets).
    """
    pts = [tuple(p) for p in pts]
    if dim == 1:
        vals = [p[0] for p in pts]
        hi, lo = max(vals), min(vals)
        if hi == lo:
            return []
        return [
            Facet((1,), hi, tuple(i for i, v in enumerate(vals) if v == hi)),
            Facet((-1,), -lo, tuple(i for i, v in enumerate(vals) if v == lo)),
        ]
    if dim == 2:
        return _facets_2d(pts)
    n = len(pts)
    total = 1
    for i in range(dim):
        total = total * (n - i) // (i + 1)
    if total > guard:
        raise HullSizeError(f"facet enumeration over {total} subsets exceeds guard {guard}")
    facet_bits = [0] * n
    facets = []
    for comb in itertools.combinations(range(n), dim):
        mask = facet_bits[comb[0]]
        for i in comb[1:]:
            mask &= facet_bits[i]
            if not mask:
                break
        if mask:
            continue
        hp = hyperplane_through([pts[i] for i in comb])
        if hp is None:
            continue
        a, b = hp
        pos = neg = False
        for p in pts:
            s = dot(a, p) - b
            if s > 0:
                pos = True
            elif s < 0:
                neg = True
            if pos and neg:
                break
        if pos and neg:
            continue
        if pos:
            a, b = tuple(-x for x in a), -b
        active = tuple(i for i, p in enumerate(pts) if dot(a, p) == b)
        fid = 1 << len(facets)
        for i in active:
            facet_bits[i] |= fid
        facets.append(Facet(a, b, active))
    return facets


def hull_vertex_indices(pts, dim, facets=None):
    """Indices of the extreme points: their active facet normals span rank dim."""
    pts = [tuple(p) for p in pts]
    if facets is None:
        facets = hull_facets(pts, dim)
    by_point = [[] for _ in pts]
    for f in facets:
        for i in f.active:
            by_point[i].append(f.normal)
    return [i for i, normals in enumerate(by_point) if len(normals) >= dim and int_rank(normals) == dim]


def hull_volume(pts, dim, guard=SUBSET_GUARD):
    """Exact dim-volume of conv(pts) for integer points, by fan decomposition.

    A base vertex is coned over every facet avoiding it; each facet volume
    recurses through an axis projection whose Jacobian cancels the normal
    length, so everything stays rational.
    """
    pts = [tuple(p) for p in sorted(set(map(tuple, pts)))]
    if not pts:
        return Fraction(0)
    if dim == 1:
        vals = [p[0] for p in pts]
        return Fraction(max(vals) - min(vals))
    base = pts[0]
    if int_rank([vec_sub(p, base) for p in pts[1:]]) < dim:
        return Fraction(0)
    total = Fraction(0)
    for f in hull_facets(pts, dim, guard=guard):
        h = f.offset - dot(f.normal, base)
        if h == 0:
            continue
        j = max(range(dim), key=lambda k: abs(f.normal[k]))
        proj = [pts[i][:j] + pts[i][j + 1 :] for i in f.active]
        total += Fraction(h, abs(f.normal[j])) * hull_volume(proj, dim - 1, guard=guard)
    return total / dim
