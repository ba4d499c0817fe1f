"""End-to-end verification of the counting inequality chains.

Every check here is an exact rational comparison; d-th roots never
appear because each inequality is raised to the d-th power first.  The
asymptotic constants of the underlying theory are never asserted: the
suites check the exact intermediate inequalities and report observed
constants for tabulation.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, floor, gcd

from .bodies import ConvexBody, box, from_hrep, from_vertices, polar_volume, volume
from .errors import DegenerateBodyError, LatsliceError, SymmetryError
from .hull import graham_hull
from .lattices import (
    LatticeSubspace,
    count_points,
    dim_of_lattice_span,
    enumerate_points,
    project_count,
    sublattice,
)
from .linalg import dot, is_zero, kernel_basis
from .minima import minkowski_second_check, successive_minima
from .slicing import max_slice, slice_profile

__all__ = [
    "PickQuantities",
    "PolygonError",
    "ChainEntry",
    "SlicingReport",
    "CoveringReport",
    "GaussScalingReport",
    "pick_quantities",
    "verify_dim2",
    "verify_unconditional",
    "verify_main",
    "packing_lemma_check",
    "covering_lemma_check",
    "gauss_scaling",
    "random_symmetric_body",
    "random_unconditional_body",
    "random_polygon",
    "random_rational_symmetric_2d",
    "report_to_dict",
    "report_csv_header",
    "report_csv_row",
]


class PolygonError(LatsliceError):
    """Non-convex or non-integral polygon input."""


# -- Pick quantities --------------------------------------------------------


@dataclass(frozen=True)
class PickQuantities:
    A: Fraction  # area
    I: int  # interior lattice points
    B: int  # boundary lattice points
    identity_holds: bool


def _polygon_rows(hull_pts):
    rows = []
    n = len(hull_pts)
    for i in range(n):
        p, q = hull_pts[i], hull_pts[(i + 1) % n]
        a = (q[1] - p[1], p[0] - q[0])  # inward-normalized below
        b = a[0] * p[0] + a[1] * p[1]
        # orient so that the remaining vertices satisfy a . x <= b
        r = hull_pts[(i + 2) % n]
        if a[0] * r[0] + a[1] * r[1] > b:
            a, b = (-a[0], -a[1]), -b
        rows.append((a, b))
    return rows


def _polygon_lattice_total(rows, hull_pts):
    xs = [p[0] for p in hull_pts]
    total = 0
    for x in range(min(xs), max(xs) + 1):
        lo, hi = None, None
        feasible = True
        for (a1, a2), b in rows:
            rem = b - a1 * x
            if a2 > 0:
                v = Fraction(rem, a2)
                hi = v if hi is None else min(hi, v)
            elif a2 < 0:
                v = Fraction(rem, a2)
                lo = v if lo is None else max(lo, v)
            elif rem < 0:
                feasible = False
                break
        if not feasible or hi is None or lo is None:
            continue
        lo_i = -((-lo.numerator) // lo.denominator)  # ceil
        hi_i = hi.numerator // hi.denominator  # floor
        if hi_i >= lo_i:
            total += hi_i - lo_i + 1
    return total


def pick_quantities(polygon) -> PickQuantities:
    """Area, interior and boundary counts of an integral convex polygon.

    A is the exact shoelace area, B sums gcd(|dx|, |dy|) over the edges,
    and I comes from the full lattice count minus B, so the identity
    check A = I + B/2 - 1 rests on independent quantities.
    """
    pts = []
    for p in polygon:
        if len(p) != 2 or any(int(x) != x for x in p):
            raise PolygonError("polygon vertices must be 2d integer points")
        pts.append((int(p[0]), int(p[1])))
    if len(set(pts)) < 3:
        raise PolygonError("polygon needs at least 3 distinct vertices")
    hull_pts = graham_hull(pts)
    if len(hull_pts) < 3 or set(hull_pts) != set(pts):
        raise PolygonError("vertices are not the extreme points of a convex polygon")
    area2 = 0
    bcount = 0
    n = len(hull_pts)
    for i in range(n):
        x1, y1 = hull_pts[i]
        x2, y2 = hull_pts[(i + 1) % n]
        area2 += x1 * y2 - x2 * y1
        bcount += gcd(abs(x2 - x1), abs(y2 - y1))
    area = Fraction(abs(area2), 2)
    total = _polygon_lattice_total(_polygon_rows(hull_pts), hull_pts)
    interior = total - bcount
    holds = area == interior + Fraction(bcount, 2) - 1
    return PickQuantities(A=area, I=interior, B=bcount, identity_holds=holds)


# -- report plumbing ------------------------------------------------------------


@dataclass(frozen=True)
class ChainEntry:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class SlicingReport:
    kind: str
    body: str
    d: int
    m: int
    count_total: int
    max_slice_count: int | None
    max_slice_witness: str | None
    max_slice_exhaustive: bool | None
    candidates_searched: int | None
    volume: Fraction | None
    volume_polar: Fraction | None
    mahler: Fraction | None
    observed_constant_power: Fraction | None
    observed_constant: float | None
    chain: tuple[ChainEntry, ...]
    hypothesis_violated: bool = False
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return not self.hypothesis_violated and all(e.passed for e in self.chain)

    def failures(self):
        return [e.name for e in self.chain if not e.passed]


def _observed(count, best, vol, d, m):
    power = Fraction(count) ** d / (Fraction(best) ** d * Fraction(vol) ** (d - m))
    return power, float(power) ** (1.0 / d)


def _hypothesis_report(kind, body, d, m, count, seed):
    return SlicingReport(
        kind=kind,
        body=body.name,
        d=d,
        m=m,
        count_total=count,
        max_slice_count=None,
        max_slice_witness=None,
        max_slice_exhaustive=None,
        candidates_searched=None,
        volume=None,
        volume_polar=None,
        mahler=None,
        observed_constant_power=None,
        observed_constant=None,
        chain=(ChainEntry("hypothesis", False, "dim(K ∩ Z^d) < d"),),
        hypothesis_violated=True,
        seed=seed,
    )


# -- the 2d chain ------------------------------------------------------------------


def verify_dim2(body, strategy=None, seed=None) -> SlicingReport:
    """Pick-based chain: hull identity, point bound, and the constant-4 inequality."""
    if body.dim != 2:
        raise LatsliceError("verify_dim2 needs a 2-dimensional body")
    count = count_points(body).total
    if dim_of_lattice_span(body) < 2:
        return _hypothesis_report("dim2", body, 2, 1, count, seed)
    pts = enumerate_points(body)
    hull_pts = graham_hull(pts)
    pick = pick_quantities(hull_pts)
    chain = [ChainEntry("pick-identity", pick.identity_holds, f"A={pick.A} I={pick.I} B={pick.B}")]
    hull_count = pick.I + pick.B
    premises = pick.I >= 1 and pick.A >= 2 and hull_count == count
    point_bound = premises and Fraction(hull_count) <= Fraction(5, 2) * pick.A
    chain.append(
        ChainEntry(
            "hull-point-bound",
            point_bound,
            f"#P={hull_count} vol(P)={pick.A} (I>=1, vol>=2 premises)",
        )
    )
    vol = volume(body).value
    ms = max_slice(body, 1, strategy)
    lhs = Fraction(count) ** 2
    rhs = 16 * Fraction(ms.best_count) ** 2 * vol
    chain.append(ChainEntry("slicing-inequality", lhs <= rhs, f"{lhs} <= {rhs}"))
    power, disp = _observed(count, ms.best_count, vol, 2, 1)
    return SlicingReport(
        kind="dim2",
        body=body.name,
        d=2,
        m=1,
        count_total=count,
        max_slice_count=ms.best_count,
        max_slice_witness=ms.witness.spec(),
        max_slice_exhaustive=ms.exhaustive,
        candidates_searched=ms.candidates_searched,
        volume=vol,
        volume_polar=None,
        mahler=None,
        observed_constant_power=power,
        observed_constant=disp,
        chain=tuple(chain),
        seed=seed,
    )


# -- unconditional chain --------------------------------------------------------------


def verify_unconditional(body, dim_cap=None, seed=None) -> SlicingReport:
    """Coordinate-dominance chain for unconditional bodies."""
    d = body.dim
    if not body.is_unconditional():
        raise SymmetryError("body is not unconditional")
    count = count_points(body).total
    if dim_of_lattice_span(body) < d:
        return _hypothesis_report("unconditional", body, d, d - 1, count, seed)
    coord_profiles = []
    dominance = True
    details = []
    for i in range(d):
        u = tuple(1 if j == i else 0 for j in range(d))
        prof = slice_profile(body, LatticeSubspace.from_normal(u))
        coord_profiles.append(prof)
        if prof.central != prof.max_count:
            dominance = False
        details.append(f"e{i + 1}: central={prof.central} max={prof.max_count}")
    chain = [ChainEntry("coordinate-dominance", dominance, "; ".join(details))]

    sm = successive_minima(body)
    gauges = sorted(body.gauge(tuple(1 if j == i else 0 for j in range(d))) for i in range(d))
    chain.append(
        ChainEntry(
            "coordinate-minima",
            tuple(gauges) == sm.lambdas,
            "sorted coordinate gauges "
            + ",".join(str(g) for g in gauges)
            + " vs lambdas "
            + ",".join(str(l) for l in sm.lambdas),
        )
    )
    lam_d = sm.lambdas[-1]
    coord_gauges = [body.gauge(tuple(1 if j == i else 0 for j in range(d))) for i in range(d)]
    i_star = max(range(d), key=lambda i: (coord_gauges[i], -i))
    central_star = coord_profiles[i_star].central
    factor = 2 * floor(Fraction(1) / lam_d) + 1
    chain.append(
        ChainEntry(
            "line-count-bound",
            count <= factor * central_star,
            f"#K={count} <= {factor} * {central_star}",
        )
    )
    chain.append(
        ChainEntry(
            "floor-three-bound",
            Fraction(factor) <= Fraction(3) / lam_d,
            f"{factor} <= 3/{lam_d}",
        )
    )
    mk = minkowski_second_check(body, dim_cap=dim_cap)
    chain.append(
        ChainEntry("minkowski-second", mk.holds, f"{mk.lhs} <= {mk.vol_ratio} <= {mk.rhs}")
    )
    vol = volume(body, dim_cap=dim_cap).value
    best = max(p.central for p in coord_profiles)
    power, disp = _observed(count, best, vol, d, d - 1)
    return SlicingReport(
        kind="unconditional",
        body=body.name,
        d=d,
        m=d - 1,
        count_total=count,
        max_slice_count=best,
        max_slice_witness=f"u:{','.join('1' if j == i_star else '0' for j in range(d))}",
        max_slice_exhaustive=False,
        candidates_searched=d,
        volume=vol,
        volume_polar=None,
        mahler=None,
        observed_constant_power=power,
        observed_constant=disp,
        chain=tuple(chain),
        seed=seed,
    )


# -- general co-dimensional chain -------------------------------------------------------


def verify_main(body, m, strategy=None, dim_cap=None, seed=None) -> SlicingReport:
    """Polar-minima chain for the co-dimensional counting inequality."""
    d = body.dim
    if not 1 <= m <= d - 1:
        raise LatsliceError(f"m must be in [1, {d - 1}]")
    count = count_points(body).total
    if dim_of_lattice_span(body) < d:
        return _hypothesis_report("main", body, d, m, count, seed)
    points = enumerate_points(body)
    polar = body.polar()
    sm = successive_minima(polar)
    lam = sm.lambdas
    vs = sm.directional_basis
    chain = [
        ChainEntry(
            "polar-minima",
            True,
            "lambda*=" + ",".join(str(x) for x in lam),
        )
    ]
    contain = all(
        abs(dot(v, z)) <= l for v, l in zip(vs, lam) for z in points
    )
    chain.append(ChainEntry("polar-containment", contain, "|v_i . z| <= lambda_i* on K ∩ Z^d"))

    u_vecs = vs[: d - m]
    pc = project_count(body, u_vecs).total
    bound = 1
    for l in lam[: d - m]:
        bound *= 2 * floor(l) + 1
    chain.append(ChainEntry("projection-bound", pc <= bound, f"{pc} <= {bound}"))

    chain.append(ChainEntry("polar-first-minimum", lam[0] >= 1, f"lambda_1*={lam[0]}"))

    hbar = LatticeSubspace.from_basis(kernel_basis(list(u_vecs)))
    prof = slice_profile(body, hbar)
    chain.append(
        ChainEntry(
            "factorization",
            count <= pc * prof.max_count,
            f"#K={count} <= {pc} * {prof.max_count}",
        )
    )
    chain.append(
        ChainEntry(
            "translate-brunn",
            prof.central * 9**m >= prof.max_count,
            f"central={prof.central} max={prof.max_count} m={m}",
        )
    )

    vol = volume(body, dim_cap=dim_cap).value
    vol_polar = polar_volume(body, dim_cap=dim_cap).value
    prod = Fraction(1)
    for l in lam:
        prod *= Fraction(2) / l
    mk_holds = prod / factorial(d) <= vol_polar <= prod
    chain.append(
        ChainEntry(
            "minkowski-second-polar",
            mk_holds,
            f"{prod / factorial(d)} <= {vol_polar} <= {prod}",
        )
    )
    mahler = Fraction(vol) * vol_polar
    ms = max_slice(body, m, strategy)
    power, disp = _observed(count, ms.best_count, vol, d, m)
    return SlicingReport(
        kind="main",
        body=body.name,
        d=d,
        m=m,
        count_total=count,
        max_slice_count=ms.best_count,
        max_slice_witness=ms.witness.spec(),
        max_slice_exhaustive=ms.exhaustive,
        candidates_searched=ms.candidates_searched,
        volume=vol,
        volume_polar=vol_polar,
        mahler=mahler,
        observed_constant_power=power,
        observed_constant=disp,
        chain=tuple(chain),
        seed=seed,
    )


# -- packing and covering lemmas -----------------------------------------------------


def packing_lemma_check(a_set, p_set, lattice) -> bool:
    """#(A ∩ (L + P)) <= #((A - A) ∩ (L + P - P)), brute force."""
    a_pts = [tuple(int(x) for x in p) for p in a_set]
    p_pts = [tuple(int(x) for x in p) for p in p_set]
    left = sum(
        1
        for a in set(a_pts)
        if any(lattice.contains(tuple(x - y for x, y in zip(a, p))) for p in p_pts)
    )
    diff_a = {tuple(x - y for x, y in zip(a, b)) for a in a_pts for b in a_pts}
    diff_p = {tuple(x - y for x, y in zip(p, q)) for p in p_pts for q in p_pts}
    right = sum(
        1
        for v in diff_a
        if any(lattice.contains(tuple(x - y for x, y in zip(v, q))) for q in diff_p)
    )
    return left <= right


@dataclass(frozen=True)
class CoveringReport:
    k: int
    points_covered: int
    cover_size: int
    bound: int
    holds: bool


def covering_lemma_check(body, k) -> CoveringReport:
    """Greedy cover of (kB) ∩ Z^d by lattice translates of B ∩ Z^d.

    Greedy size upper-bounds the optimal cover, so holds=True certifies
    the (4k+1)^d covering bound.
    """
    d = body.dim
    if d > 3 or k > 3 or k < 1:
        raise LatsliceError("covering check is desk scale: d <= 3 and k <= 3")
    big = enumerate_points(body, scale=Fraction(k))
    base = enumerate_points(body)
    base_set = [tuple(p) for p in base]
    uncovered = set(map(tuple, big))
    candidates = sorted({tuple(s[i] - b[i] for i in range(d)) for s in uncovered for b in base_set})
    cover = 0
    while uncovered:
        best_t, best_cov = None, -1
        for t in candidates:
            cov = sum(1 for b in base_set if tuple(t[i] + b[i] for i in range(d)) in uncovered)
            if cov > best_cov:
                best_t, best_cov = t, cov
        if best_cov <= 0:
            raise AssertionError("greedy cover stalled")
        uncovered -= {tuple(best_t[i] + b[i] for i in range(d)) for b in base_set}
        cover += 1
    bound = (4 * k + 1) ** d
    return CoveringReport(
        k=k, points_covered=len(big), cover_size=cover, bound=bound, holds=cover <= bound
    )


# -- Gauss scaling ------------------------------------------------------------------


@dataclass(frozen=True)
class GaussScalingReport:
    body: str
    radii: tuple[Fraction, ...]
    counts: tuple[int, ...]
    expected: tuple[Fraction, ...]  # r^d * vol
    abs_dev: tuple[Fraction, ...]
    rel_dev: tuple[Fraction, ...]
    strictly_decreasing: bool
    slice_normal: tuple[int, ...] | None = None
    slice_counts: tuple[int, ...] | None = None
    slice_expected: tuple[Fraction, ...] | None = None
    slice_abs_dev: tuple[Fraction, ...] | None = None


def gauss_scaling(body, radii, hyperplane=None, dim_cap=None) -> GaussScalingReport:
    """Exact counts of rK against r^d vol(K), plus an optional slice analogue.

    The slice expectation uses the lattice-normalized section volume
    (section volume over det(Z^d ∩ H)), in which the irrational cell
    factors cancel, so the deviations stay exact rationals.
    """
    d = body.dim
    vol = Fraction(volume(body, dim_cap=dim_cap).value)
    rs = [Fraction(r) for r in radii]
    counts, expect, absd, reld = [], [], [], []
    for r in rs:
        c = count_points(body, scale=r).total
        e = r**d * vol
        counts.append(c)
        expect.append(e)
        absd.append(abs(Fraction(c) - e))
        reld.append(abs(Fraction(c) - e) / e)
    decreasing = all(reld[i + 1] < reld[i] for i in range(len(reld) - 1))
    s_counts = s_expect = s_abs = None
    normal = None
    if hyperplane is not None:
        sub = hyperplane if isinstance(hyperplane, LatticeSubspace) else LatticeSubspace.from_normal(hyperplane)
        normal = sub.normal
        lat = sublattice(sub)
        section_rows = []
        for a, b in body.facet_rows:
            arow = tuple(dot(a, col) for col in lat.basis)
            if is_zero(arow):
                continue
            section_rows.append((arow, b))
        section = from_hrep(lat.rank, section_rows, name=f"section({body.name})")
        sec_vol = Fraction(volume(section, dim_cap=dim_cap).value)
        s_counts, s_expect, s_abs = [], [], []
        for r in rs:
            c = count_points(body, lat, scale=r).total
            e = r ** (d - 1) * sec_vol
            s_counts.append(c)
            s_expect.append(e)
            s_abs.append(abs(Fraction(c) - e))
        s_counts = tuple(s_counts)
        s_expect = tuple(s_expect)
        s_abs = tuple(s_abs)
    return GaussScalingReport(
        body=body.name,
        radii=tuple(rs),
        counts=tuple(counts),
        expected=tuple(expect),
        abs_dev=tuple(absd),
        rel_dev=tuple(reld),
        strictly_decreasing=decreasing,
        slice_normal=normal,
        slice_counts=s_counts,
        slice_expected=s_expect,
        slice_abs_dev=s_abs,
    )


# -- seeded random generators ------------------------------------------------------


def random_symmetric_body(d, seed, points=None, spread=None) -> ConvexBody:
    """Hull of 2k random integer points united with their negation."""
    rng = random.Random(seed)
    k = points if points is not None else d + 1
    sp = spread if spread is not None else (4 if d <= 3 else 3)
    while True:
        pts = [tuple(rng.randint(-sp, sp) for _ in range(d)) for _ in range(2 * k)]
        pts += [tuple(-x for x in p) for p in pts]
        try:
            return from_vertices(pts, name=f"random:{d}:{seed}")
        except DegenerateBodyError:
            continue


def random_unconditional_body(d, seed) -> ConvexBody:
    """Random box, scaled diamond, or their intersection; always unconditional.

    Radii shrink with the dimension to keep point counts at desk scale;
    the diagonal-cut variant stays at d <= 3 where its 2^d extra facets
    are still cheap for the exact volume recursion.
    """
    rng = random.Random(seed)
    shape = rng.choice(["box", "diamond", "intersection"] if d <= 3 else ["box", "diamond"])
    hi = {1: 8, 2: 8, 3: 5, 4: 3}.get(d, 2)

    def radius():
        return Fraction(rng.randint(2, max(2, hi)), rng.randint(1, 2))

    if shape == "box":
        return box([radius() for _ in range(d)])
    if shape == "diamond":
        verts = []
        for i in range(d):
            r = radius()
            v = [Fraction(0)] * d
            v[i] = r
            verts.append(tuple(v))
        return from_vertices(verts, name=f"diamond:{d}:{seed}")
    rows = []
    for i in range(d):
        a = tuple(1 if j == i else 0 for j in range(d))
        rows.append((a, radius()))
    weights = [Fraction(1, rng.randint(2, 6)) for _ in range(d)]
    offset = Fraction(rng.randint(1, 2))
    # all sign patterns of the weighted row keep the body unconditional
    for signs in itertools.product((1, -1), repeat=d):
        rows.append((tuple(s * w for s, w in zip(signs, weights)), offset))
    return from_hrep(d, rows, name=f"uncond:{d}:{seed}")


def random_polygon(seed, spread=8, max_points=12):
    """Random convex integral polygon as its extreme vertex list."""
    rng = random.Random(seed)
    while True:
        n = rng.randint(3, max_points)
        pts = {(rng.randint(-spread, spread), rng.randint(-spread, spread)) for _ in range(n)}
        hull_pts = graham_hull(sorted(pts))
        if len(hull_pts) >= 3:
            return hull_pts


def random_rational_symmetric_2d(seed) -> ConvexBody:
    """Symmetric 2D body with rational vertices and dim(K ∩ Z^2) = 2."""
    rng = random.Random(seed)
    while True:
        pts = [
            (
                Fraction(rng.randint(-16, 16), rng.randint(1, 4)),
                Fraction(rng.randint(-16, 16), rng.randint(1, 4)),
            )
            for _ in range(4)
        ]
        pts += [(-x, -y) for x, y in pts]
        try:
            body = from_vertices(pts, name=f"rational2d:{seed}")
        except DegenerateBodyError:
            continue
        if dim_of_lattice_span(body) == 2:
            return body


# -- serialization -----------------------------------------------------------------


def frac_str(x) -> str:
    return str(Fraction(x))


def report_to_dict(report: SlicingReport) -> dict:
    out = {
        "kind": report.kind,
        "body": report.body,
        "d": report.d,
        "m": report.m,
        "count": report.count_total,
        "hypothesis_violated": report.hypothesis_violated,
        "chain": [
            {"name": e.name, "passed": e.passed, "detail": e.detail} for e in report.chain
        ],
    }
    if report.max_slice_count is not None:
        out["max_slice"] = {
            "best_count": report.max_slice_count,
            "witness": report.max_slice_witness,
            "exhaustive": report.max_slice_exhaustive,
            "candidates_searched": report.candidates_searched,
        }
    if report.volume is not None:
        out["volume"] = frac_str(report.volume)
    if report.volume_polar is not None:
        out["volume_polar"] = frac_str(report.volume_polar)
    if report.mahler is not None:
        out["mahler_volume"] = frac_str(report.mahler)
    if report.observed_constant_power is not None:
        out["observed_constant_power"] = frac_str(report.observed_constant_power)
        out["observed_constant"] = report.observed_constant
    if report.seed is not None:
        out["seed"] = report.seed
    return out


def report_csv_header():
    return ["seed", "d", "m", "count", "max_slice", "vol", "observed_constant", "chain", "status"]


def report_csv_row(report: SlicingReport):
    bits = "".join("1" if e.passed else "0" for e in report.chain)
    status = "hypothesis-violated" if report.hypothesis_violated else ("ok" if report.ok else "fail")
    return [
        "" if report.seed is None else str(report.seed),
        str(report.d),
        str(report.m),
        str(report.count_total),
        "" if report.max_slice_count is None else str(report.max_slice_count),
        "" if report.volume is None else frac_str(report.volume),
        "" if report.observed_constant is None else repr(report.observed_constant),
        bits,
        status,
    ]
