"""Lattices, lattice subspaces, and exact lattice-point enumeration.

The enumeration core works on integer inequality rows with per-axis
interval propagation: fixing coordinates left to right, each row yields
integer bounds for the next coordinate from exact suffix minima over the
bounding box, and the final coordinate's range is exact.  Points are
produced in ascending lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatchError, SubspaceError
from .linalg import (
    dot,
    gram_det,
    identity,
    int_rank,
    is_zero,
    kernel_basis,
    primitive,
    row_hnf,
    saturate_span,
)

__all__ = [
    "Lattice",
    "LatticeSubspace",
    "PointCount",
    "enumerate_points",
    "count_points",
    "sublattice",
    "dim_of_lattice_span",
    "project_count",
]


@dataclass(frozen=True)
class Lattice:
    """Sublattice of Z^dim spanned by integer basis columns."""

    dim: int
    basis: tuple[tuple[int, ...], ...]  # columns, each of length dim

    def __post_init__(self):
        for col in self.basis:
            if len(col) != self.dim:
                raise DimensionMismatchError("basis column length differs from dim")
        if int_rank(self.basis) != len(self.basis):
            raise SubspaceError("lattice basis columns are dependent")

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def det_gram(self) -> int:
        """det(B^T B): the squared cell volume, always an exact integer."""
        return gram_det(self.basis)

    def cell_volume(self) -> Fraction:
        """Cell volume; exact for full rank (|det B|) and square gram dets."""
        if self.rank == self.dim:
            from .linalg import det_int

            return Fraction(abs(det_int(self.basis)))
        g = self.det_gram
        r = _isqrt_exact(g)
        if r is None:
            raise SubspaceError("cell volume is irrational; use det_gram")
        return Fraction(r)

    def to_ambient(self, coeffs):
        return tuple(
            sum(self.basis[k][i] * coeffs[k] for k in range(self.rank))
            for i in range(self.dim)
        )

    def contains(self, point) -> bool:
        """Exact membership: point = B y for an integer y."""
        from .linalg import solve_rational

        v = tuple(Fraction(x) for x in point)
        if len(v) != self.dim:
            raise DimensionMismatchError("point length differs from lattice dim")
        k = self.rank
        gram = [
            tuple(dot(self.basis[i], self.basis[j]) for j in range(k)) for i in range(k)
        ]
        rhs = tuple(dot(self.basis[i], v) for i in range(k))
        y = solve_rational(gram, rhs)
        if y is None or any(c.denominator != 1 for c in y):
            return False
        return self.to_ambient([int(c) for c in y]) == v

    @classmethod
    def standard(cls, d) -> "Lattice":
        return cls(dim=d, basis=tuple(identity(d)))


def _isqrt_exact(n):
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


@dataclass(frozen=True)
class LatticeSubspace:
    """m-dimensional lattice subspace of R^d with a canonical primitive basis.

    The basis columns span exactly span(H) intersected with Z^d and are put
    in a Hermite canonical form, so equal subspaces compare equal.  For
    hyperplanes the primitive integer normal is kept alongside.
    """

    ambient_dim: int
    m: int
    basis: tuple[tuple[int, ...], ...]  # columns
    normal: tuple[int, ...] | None

    @classmethod
    def from_normal(cls, u) -> "LatticeSubspace":
        u = tuple(int(x) for x in u)
        if is_zero(u):
            raise SubspaceError("zero normal vector")
        d = len(u)
        if d < 2:
            raise SubspaceError("hyperplanes need ambient dimension >= 2")
        un = primitive(u)
        cols = kernel_basis([un])
        return cls._canonical(d, cols, normal=un)

    @classmethod
    def from_basis(cls, vectors) -> "LatticeSubspace":
        vecs = [tuple(int(x) for x in v) for v in vectors]
        if not vecs:
            raise SubspaceError("empty basis")
        d = len(vecs[0])
        if any(len(v) != d for v in vecs):
            raise SubspaceError("mixed vector lengths")
        if int_rank(vecs) != len(vecs):
            raise SubspaceError("basis vectors are dependent")
        m = len(vecs)
        if not 1 <= m < d:
            raise SubspaceError(f"subspace dimension must be in [1, {d-1}]")
        cols = saturate_span(vecs)
        normal = None
        if m == d - 1:
            kern = kernel_basis(list(cols))
            normal = primitive(kern[0])
        return cls._canonical(d, cols, normal=normal)

    @classmethod
    def _canonical(cls, d, cols, normal=None):
        rows = row_hnf([tuple(c) for c in cols])
        basis = tuple(tuple(r) for r in rows)
        return cls(ambient_dim=d, m=len(basis), basis=basis, normal=normal)

    def kernel_normals(self):
        """Primitive integer basis of the orthogonal complement lattice.

        Labels z -> (n . z for n in normals) classify translates H + z.
        """
        if self.normal is not None:
            return (self.normal,)
        return tuple(kernel_basis(list(self.basis)))

    def spec(self) -> str:
        if self.normal is not None:
            return "u:" + ",".join(str(x) for x in self.normal)
        return ";".join(",".join(str(x) for x in col) for col in self.basis)


# -- enumeration core -----------------------------------------------------------


def _floor_div(p, q):
    return p // q


def _ceil_div(p, q):
    return -((-p) // q)


def _prepare(rows, box):
    """Precompute suffix minima of each row over the box for pruning."""
    n = len(box)
    pre = []
    for a, b in rows:
        minrem = [0] * (n + 1)
        for t in range(n - 1, -1, -1):
            lo, hi = box[t]
            minrem[t] = minrem[t + 1] + min(a[t] * lo, a[t] * hi)
        pre.append((a, b, minrem))
    return pre


def _scan(rows, box, collect, prefix_cb=None):
    """Depth-first scan; calls collect(point) per solution in lex order."""
    n = len(box)
    if n == 0:
        return
    pre = _prepare(rows, box)

    def descend(t, residuals, prefix):
        lo, hi = box[t]
        for (a, b, minrem), res in zip(pre, residuals):
            at = a[t]
            rem = res - minrem[t + 1]
            if at > 0:
                hi = min(hi, _floor_div(rem, at))
            elif at < 0:
                lo = max(lo, _ceil_div(rem, at))
            elif res < minrem[t + 1]:
                return
        if lo > hi:
            return
        if t == n - 1:
            for x in range(lo, hi + 1):
                collect(prefix + (x,))
            return
        for x in range(lo, hi + 1):
            nxt = [res - pr[0][t] * x for pr, res in zip(pre, residuals)]
            descend(t + 1, nxt, prefix + (x,))

    descend(0, [b for _, b, _ in pre], ())


def _count_scan(rows, box) -> int:
    """Like _scan but closes the last axis with an exact range count."""
    n = len(box)
    if n == 0:
        return 0
    pre = _prepare(rows, box)
    total = 0

    def descend(t, residuals):
        nonlocal total
        lo, hi = box[t]
        for (a, b, minrem), res in zip(pre, residuals):
            at = a[t]
            rem = res - minrem[t + 1]
            if at > 0:
                hi = min(hi, _floor_div(rem, at))
            elif at < 0:
                lo = max(lo, _ceil_div(rem, at))
            elif res < minrem[t + 1]:
                return
        if lo > hi:
            return
        if t == n - 1:
            total += hi - lo + 1
            return
        for x in range(lo, hi + 1):
            nxt = [res - pr[0][t] * x for pr, res in zip(pre, residuals)]
            descend(t + 1, nxt)

    descend(0, [b for _, b, _ in pre])
    return total


def _int_box(radii):
    box = []
    for r in radii:
        f = Fraction(r)
        hi = f.numerator // f.denominator
        box.append((-hi, hi))
    return box


def _is_standard(lattice):
    return lattice.rank == lattice.dim and lattice.basis == tuple(identity(lattice.dim))


def _body_system(body, scale=Fraction(1)):
    rows = []
    for a, b in body.facet_rows:
        q = Fraction(b) * scale
        rows.append((tuple(x * q.denominator for x in a), q.numerator))
    return rows, _int_box(Fraction(r) * scale for r in body.bounding_box)


def _lattice_system(body, lattice, scale=Fraction(1)):
    """Rows and box in lattice coordinates y with points B y."""
    rows = []
    for a, b in body.facet_rows:
        arow = tuple(dot(a, col) for col in lattice.basis)
        q = Fraction(b) * scale
        rows.append((tuple(x * q.denominator for x in arow), q.numerator))
    # |y_j| bound via the exact pseudoinverse: y = (B^T B)^-1 B^T x
    from .linalg import solve_rational

    k = lattice.rank
    gram = [
        tuple(dot(lattice.basis[i], lattice.basis[j]) for j in range(k))
        for i in range(k)
    ]
    bt = [tuple(col) for col in lattice.basis]  # rows of B^T
    box = []
    for j in range(k):
        rhs = tuple(1 if i == j else 0 for i in range(k))
        col = solve_rational(gram, rhs)  # column j of (B^T B)^-1
        # row j of the pseudoinverse: sum_i col_i * (B^T)_i
        prow = [
            sum(col[i] * bt[i][t] for i in range(k)) for t in range(lattice.dim)
        ]
        bound = sum(
            abs(c) * Fraction(r) * scale for c, r in zip(prow, body.bounding_box)
        )
        hi = bound.numerator // bound.denominator
        box.append((-hi, hi))
    return rows, box


@dataclass(frozen=True)
class PointCount:
    total: int
    by_level: dict | None = None


def enumerate_points(body, lattice=None, scale=Fraction(1)):
    """All lattice points inside scale*body, ascending lexicographic order."""
    scale = Fraction(scale)
    if lattice is None or _is_standard(lattice):
        if lattice is not None and lattice.dim != body.dim:
            raise DimensionMismatchError("lattice and body dimensions differ")
        rows, box = _body_system(body, scale)
        out = []
        _scan(rows, box, out.append)
        return out
    if lattice.dim != body.dim:
        raise DimensionMismatchError("lattice and body dimensions differ")
    rows, box = _lattice_system(body, lattice, scale)
    out = []
    _scan(rows, box, out.append)
    return sorted(lattice.to_ambient(y) for y in out)


def count_points(body, lattice=None, by_normal=None, scale=Fraction(1)) -> PointCount:
    """Cardinality of body ∩ lattice, optionally leveled by an integer form."""
    scale = Fraction(scale)
    if by_normal is not None:
        u = tuple(int(x) for x in by_normal)
        levels: dict[int, int] = {}
        for z in enumerate_points(body, lattice, scale):
            lv = dot(u, z)
            levels[lv] = levels.get(lv, 0) + 1
        return PointCount(total=sum(levels.values()), by_level=levels)
    if lattice is None or _is_standard(lattice):
        rows, box = _body_system(body, scale)
        return PointCount(total=_count_scan(rows, box))
    rows, box = _lattice_system(body, lattice, scale)
    return PointCount(total=_count_scan(rows, box))


def sublattice(subspace) -> Lattice:
    """The lattice Z^d ∩ H for a lattice subspace H (primitive by construction)."""
    return Lattice(dim=subspace.ambient_dim, basis=tuple(subspace.basis))


def dim_of_lattice_span(body, lattice=None) -> int:
    """Rank of the set of lattice points inside the body."""
    pts = enumerate_points(body, lattice)
    pts = [p for p in pts if not is_zero(p)]
    if not pts:
        return 0
    return int_rank(pts)


def project_count(body, directions, lattice=None) -> PointCount:
    """Distinct value tuples (v . z for v in directions) over z in body ∩ lattice.

    This measures the projection of the point set onto span(directions)
    through the integer pairing, matching the projection bound in the
    co-dimensional factorization.
    """
    vecs = [tuple(int(x) for x in v) for v in directions]
    if not vecs:
        raise SubspaceError("empty direction list")
    if any(len(v) != body.dim for v in vecs):
        raise DimensionMismatchError("direction length differs from body dimension")
    if int_rank(vecs) != len(vecs):
        raise SubspaceError("projection directions are dependent")
    seen = set()
    for z in enumerate_points(body, lattice):
        seen.add(tuple(dot(v, z) for v in vecs))
    return PointCount(total=len(seen))
