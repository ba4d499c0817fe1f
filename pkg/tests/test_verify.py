import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from latslice import Lattice, box, cross, cube, from_vertices
from latslice.errors import SymmetryError
from latslice.verify import (
    PolygonError,
    covering_lemma_check,
    gauss_scaling,
    packing_lemma_check,
    pick_quantities,
    random_polygon,
    random_rational_symmetric_2d,
    random_symmetric_body,
    random_unconditional_body,
    report_csv_header,
    report_csv_row,
    report_to_dict,
    verify_dim2,
    verify_main,
    verify_unconditional,
)


# -- Pick -----------------------------------------------------------------


def test_pick_square():
    q = pick_quantities([(1, 1), (1, -1), (-1, 1), (-1, -1)])
    assert (q.A, q.I, q.B) == (4, 1, 8)
    assert q.identity_holds


def test_pick_triangle():
    q = pick_quantities([(0, 0), (2, 0), (0, 2)])
    assert (q.A, q.I, q.B) == (2, 0, 6)
    assert q.identity_holds


def test_pick_diamond():
    q = pick_quantities([(1, 0), (0, 1), (-1, 0), (0, -1)])
    assert (q.A, q.I, q.B) == (2, 1, 4)
    assert q.identity_holds


def test_pick_rejects_bad_input():
    with pytest.raises(PolygonError):
        pick_quantities([(0, 0), (1, 0)])
    with pytest.raises(PolygonError):
        pick_quantities([(0, 0), (Fraction(1, 2), 0), (0, 1)])
    with pytest.raises(PolygonError):
        # (1, 1) is inside the hull of the others: not an extreme point
        pick_quantities([(0, 0), (3, 0), (0, 3), (1, 1)])


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_pick_identity_random_polygons(seed):
    q = pick_quantities(random_polygon(seed))
    assert q.identity_holds


# -- 2d chain -------------------------------------------------------------------


def test_dim2_cube():
    rep = verify_dim2(cube(2))
    assert rep.ok
    assert rep.count_total == 9 and rep.max_slice_count == 3 and rep.volume == 4
    assert Fraction(81) <= 16 * 9 * 4


def test_dim2_wide_box():
    rep = verify_dim2(box([5, 1]))
    assert rep.ok
    assert rep.count_total == 33 and rep.max_slice_count == 11 and rep.volume == 20


def test_dim2_tilted_hull():
    rep = verify_dim2(from_vertices([(2, 1), (1, 2)]))
    assert rep.ok


def test_dim2_hypothesis_violated():
    rep = verify_dim2(box([1, Fraction(2, 5)]))
    assert rep.hypothesis_violated
    assert not rep.ok
    assert rep.chain[0].name == "hypothesis"


def test_dim2_observed_constant_below_4():
    for seed in range(20):
        body = random_rational_symmetric_2d(seed)
        rep = verify_dim2(body)
        assert rep.ok
        # observed constant never exceeds the theorem constant 4:
        # count^2 <= 16 max^2 vol in exact power form
        assert rep.observed_constant_power <= 16


# -- unconditional chain ------------------------------------------------------------


def test_unconditional_cube3():
    rep = verify_unconditional(cube(3))
    assert rep.ok
    assert rep.count_total == 27 and rep.max_slice_count == 9
    # equality case: 27 == 3 * 9
    line = [e for e in rep.chain if e.name == "line-count-bound"][0]
    assert line.passed


def test_unconditional_cross3():
    rep = verify_unconditional(cross(3))
    assert rep.ok
    assert rep.count_total == 7 and rep.max_slice_count == 5


def test_unconditional_box31():
    rep = verify_unconditional(box([3, 1]))
    assert rep.ok
    assert rep.count_total == 21
    assert rep.max_slice_count == 7


def test_unconditional_rejects_tilted():
    with pytest.raises(SymmetryError):
        verify_unconditional(from_vertices([(2, 1), (1, 2)]))


def test_unconditional_random_suite_small():
    for seed in range(25):
        d = 2 + seed % 3
        rep = verify_unconditional(random_unconditional_body(d, seed))
        assert rep.ok, rep.failures()


# -- main chain ----------------------------------------------------------------------


def test_main_cube3_m2():
    rep = verify_main(cube(3), 2)
    assert rep.ok, rep.failures()
    assert rep.observed_constant_power == Fraction(27**3, 9**3 * 8)
    assert abs(rep.observed_constant - 1.5) < 1e-12


def test_main_cross3_m2():
    rep = verify_main(cross(3), 2)
    assert rep.ok, rep.failures()
    assert rep.observed_constant_power == Fraction(7**3 * 3, 5**3 * 4)
    assert abs(rep.observed_constant - (343 * 3 / 500) ** (1 / 3)) < 1e-12


def test_main_cube3_m1():
    rep = verify_main(cube(3), 1)
    assert rep.ok, rep.failures()
    assert rep.observed_constant_power == Fraction(27**3, 3**3 * 64)
    assert abs(rep.observed_constant - 2.25) < 1e-12


def test_main_mahler_reported():
    rep = verify_main(cube(2), 1)
    assert rep.mahler == 4 * 2  # vol(cube2) * vol(cross2)


def test_main_random_suite_small():
    for seed in range(12):
        d = 2 + seed % 3
        body = random_symmetric_body(d, seed)
        for m in range(1, d):
            rep = verify_main(body, m)
            assert not rep.hypothesis_violated
            assert rep.ok, (seed, d, m, rep.failures())


# -- packing and covering ---------------------------------------------------------------


def test_packing_trivial():
    assert packing_lemma_check([(0, 0)], [(0, 0)], Lattice.standard(2))


def test_packing_grid():
    grid = [(x, y) for x in (-1, 0, 1) for y in (-1, 0, 1)]
    lat = Lattice(dim=2, basis=((2, 0), (0, 2)))
    assert packing_lemma_check(grid, [(0, 0)], lat)


def test_packing_random_instances():
    rng = random.Random(7)
    for _ in range(50):
        a = [(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(10)]
        p = [(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(3)]
        basis = ((rng.randint(1, 3), 0), (rng.randint(0, 2), rng.randint(1, 3)))
        assert packing_lemma_check(a, p, Lattice(dim=2, basis=basis))


def test_covering_cube2_k2():
    rep = covering_lemma_check(cube(2), 2)
    assert rep.points_covered == 25
    assert rep.cover_size <= 25 <= rep.bound == 81
    assert rep.holds


def test_covering_cross2_k1():
    rep = covering_lemma_check(cross(2), 1)
    assert rep.cover_size >= 1 and rep.holds and rep.bound == 25


def test_covering_interval_k3():
    rep = covering_lemma_check(cube(1), 3)
    assert rep.points_covered == 7
    assert rep.holds and rep.bound == 13


def test_covering_rejects_large():
    from latslice.errors import LatsliceError

    with pytest.raises(LatsliceError):
        covering_lemma_check(cube(4), 1)


# -- Gauss scaling --------------------------------------------------------------------


def test_gauss_cube2_closed_form():
    rep = gauss_scaling(cube(2), [1, 2, 3])
    assert rep.counts == (9, 25, 49)
    assert rep.abs_dev == (5, 9, 13)


def test_gauss_cube3_radius10():
    rep = gauss_scaling(cube(3), [10])
    assert rep.counts == (9261,)
    assert rep.abs_dev == (1261,)
    assert 1261 < 13 * 10**2


def test_gauss_rel_dev_decreasing():
    rep = gauss_scaling(cross(2), [2, 4, 8])
    assert rep.strictly_decreasing


def test_gauss_hyperplane_analogue():
    rep = gauss_scaling(cube(2), [1, 2, 4], hyperplane=(0, 1))
    assert rep.slice_counts == (3, 5, 9)
    # section is [-1, 1]: lattice-normalized volume 2, so expected 2r
    assert rep.slice_expected == (2, 4, 8)
    rep2 = gauss_scaling(cube(2), [2, 4], hyperplane=(1, 1))
    # section along the diagonal of the square has lattice-normalized volume 2
    assert rep2.slice_counts == (5, 9)


# -- report serialization ----------------------------------------------------------------


def test_report_dict_exact_strings():
    rep = verify_main(cross(3), 2)
    data = report_to_dict(rep)
    assert data["volume"] == "4/3"
    assert data["count"] == 7
    assert all(isinstance(e["passed"], bool) for e in data["chain"])
    assert isinstance(data["observed_constant"], float)


def test_report_csv_row_shape():
    rep = verify_dim2(cube(2), seed=17)
    row = report_csv_row(rep)
    assert len(row) == len(report_csv_header())
    assert row[0] == "17"
    assert row[-1] == "ok"
    assert set(row[-2]) <= {"0", "1"}


# -- dual-route volume oracle -------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_volume_matches_pick_on_symmetric_integral_polygons(seed):
    # the exact hull-fan volume must equal the Pick value I + B/2 - 1,
    # whose ingredients (edge gcds, column counts) are computed independently
    from latslice import volume
    from latslice.hull import graham_hull

    hull_pts = random_polygon(seed)
    sym = graham_hull(hull_pts + [tuple(-x for x in p) for p in hull_pts])
    body = from_vertices(sym)
    q = pick_quantities(sym)
    assert volume(body).value == q.A == q.I + Fraction(q.B, 2) - 1


def test_covering_rational_body():
    from latslice import box as _box

    rep = covering_lemma_check(_box([Fraction(3, 2), 1]), 2)
    assert rep.holds
