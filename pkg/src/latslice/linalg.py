"""Exact integer and rational linear algebra helpers.

Everything here works on tuples of ints or Fractions; no floats, no
tolerances.  Matrices are lists/tuples of row tuples unless a function
says otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

IntVec = tuple[int, ...]
FracVec = tuple[Fraction, ...]


def dot(u, v):
    """Inner product of two equal-length vectors (int or Fraction entries)."""
    s = 0
    for a, b in zip(u, v):
        s += a * b
    return s


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_neg(u):
    return tuple(-a for a in u)


def vec_scale(c, u):
    return tuple(c * a for a in u)


def is_zero(u) -> bool:
    return all(a == 0 for a in u)


def content(u: IntVec) -> int:
    """gcd of the entries, 0 for the zero vector."""
    g = 0
    for a in u:
        g = gcd(g, abs(a))
    return g


def primitive(u: IntVec) -> IntVec:
    """Divide out the content; sign-normalize so the first nonzero entry is positive."""
    g = content(u)
    if g == 0:
        return tuple(u)
    v = tuple(a // g for a in u)
    for a in v:
        if a != 0:
            return v if a > 0 else vec_neg(v)
    return v


def frac_vec(u) -> FracVec:
    return tuple(Fraction(a) for a in u)


def scale_to_int(vectors: list[FracVec]) -> tuple[list[IntVec], int]:
    """Common positive integer multiplier turning every vector integral.

    Returns (scaled integer vectors, multiplier L) with scaled = L * original.
    """
    L = 1
    for v in vectors:
        for a in v:
            f = Fraction(a)
            L = L * f.denominator // gcd(L, f.denominator)
    out = [tuple(int(Fraction(a) * L) for a in v) for v in vectors]
    return out, L


def transpose(m):
    return [tuple(row[j] for row in m) for j in range(len(m[0]))] if m else []


def mat_vec(m, v):
    return tuple(dot(row, v) for row in m)


def int_rank(rows) -> int:
    """Rank of an integer (or rational) matrix via fraction-free elimination."""
    work = [list(map(Fraction, r)) for r in rows if not is_zero(r)]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    col = 0
    while col < ncols and rank < len(work):
        piv = None
        for r in range(rank, len(work)):
            if work[r][col] != 0:
                piv = r
                break
        if piv is None:
            col += 1
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        for r in range(rank + 1, len(work)):
            if work[r][col] != 0:
                f = work[r][col] / prow[col]
                for j in range(col, ncols):
                    work[r][j] -= f * prow[j]
        rank += 1
        col += 1
    return rank


def det_int(rows) -> int:
    """Determinant of a square integer matrix (Bareiss, stays integral)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = None
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    swap = r
                    break
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def solve_rational(rows, rhs):
    """Solve the square system rows * x = rhs exactly; None if singular."""
    n = len(rows)
    a = [[Fraction(rows[i][j]) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        prow = a[col]
        inv = 1 / prow[col]
        for j in range(col, n + 1):
            prow[j] *= inv
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                for j in range(col, n + 1):
                    a[r][j] -= f * prow[j]
    return tuple(a[i][n] for i in range(n))


def row_hnf_transform(rows) -> tuple[list[IntVec], list[IntVec], int]:
    """Row Hermite normal form with transform.

    Returns (H, U, rank) with U unimodular, U * rows = H, H in row echelon
    form with positive pivots and entries above each pivot reduced into
    [0, pivot).  Zero rows of H sit at the bottom.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    h = [list(r) for r in rows]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def combine(dst, src, q):
        if q == 0:
            return
        hd, hs = h[dst], h[src]
        for j in range(n):
            hd[j] -= q * hs[j]
        ud, us = u[dst], u[src]
        for j in range(m):
            ud[j] -= q * us[j]

    pivot_row = 0
    for col in range(n):
        while True:
            nz = [r for r in range(pivot_row, m) if h[r][col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(h[r][col]))
            base = nz[0]
            for r in nz[1:]:
                combine(r, base, h[r][col] // h[base][col])
        nz = [r for r in range(pivot_row, m) if h[r][col] != 0]
        if not nz:
            continue
        r0 = nz[0]
        h[pivot_row], h[r0] = h[r0], h[pivot_row]
        u[pivot_row], u[r0] = u[r0], u[pivot_row]
        if h[pivot_row][col] < 0:
            h[pivot_row] = [-x for x in h[pivot_row]]
            u[pivot_row] = [-x for x in u[pivot_row]]
        p = h[pivot_row][col]
        for r in range(pivot_row):
            combine(r, pivot_row, h[r][col] // p)
        pivot_row += 1
        if pivot_row == m:
            break
    return [tuple(r) for r in h], [tuple(r) for r in u], pivot_row


def row_hnf(rows) -> list[IntVec]:
    h, _, rank = row_hnf_transform(rows)
    return h[:rank]


def kernel_basis(rows) -> list[IntVec]:
    """Primitive basis of the integer kernel {x in Z^n : rows @ x = 0}.

    The returned vectors form a basis of the full kernel lattice (a direct
    summand of Z^n), so they are automatically saturated.
    """
    if not rows:
        raise ValueError("kernel of an empty matrix is ambiguous")
    cols = transpose(rows)  # n x m, rows indexed by original columns
    _, u, rank = row_hnf_transform(cols)
    return [tuple(r) for r in u[rank:]]


def saturate_span(vectors) -> list[IntVec]:
    """Basis of span_Q(vectors) intersected with Z^n (the saturated sublattice)."""
    vecs = [v for v in vectors if not is_zero(v)]
    if not vecs:
        return []
    n = len(vecs[0])
    normals = kernel_basis(vecs)
    if not normals:
        return [tuple(r) for r in identity(n)]
    return kernel_basis(normals)


def identity(n) -> list[IntVec]:
    return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]


def gram_det(cols) -> int:
    """det(B^T B) for integer column vectors B (squared cell volume, exact)."""
    k = len(cols)
    g = [[dot(cols[i], cols[j]) for j in range(k)] for i in range(k)]
    return det_int(g)


def hyperplane_through(points):
    """Primitive integer (a, b) with a . p = b for all points, or None.

    Points must be integer vectors; None when they are affinely dependent.
    Computed as the generalized cross product (signed cofactor minors) of
    the d x (d+1) system rows (p_i, -1), which is the kernel generator
    when the points affinely span.
    """
    rows = [tuple(p) + (-1,) for p in points]
    n = len(rows[0])
    v = []
    sign = 1
    for j in range(n):
        minor = [r[:j] + r[j + 1 :] for r in rows]
        v.append(sign * det_int(minor))
        sign = -sign
    if all(x == 0 for x in v):
        return None
    v = primitive(tuple(v))
    return v[:-1], v[-1]
