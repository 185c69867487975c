"""Local certificates: census, point search, Newton lifting, the real place."""

from __future__ import annotations

from fractions import Fraction

import pytest

from quadpencil import (
    CurveData,
    GrassmannChart,
    chart_census,
    curve_data,
    fano_system,
    hensel_certify,
    real_place_report,
    search_smooth_points,
    verify_projective_point,
)
from quadpencil.exactmath import UniPoly, sturm_count

from conftest import (
    BIG_PRIME,
    BIG_WITNESS,
    CHART_PIVOTS,
    F2_ON_FANO_COUNTS,
    F2_WITNESS,
    P3_LIFT_MOD_27,
    P3_SMOOTH_POINT,
    REAL_ROOTS_PRINTED,
)


def _ui(chart: GrassmannChart) -> tuple[int, int]:
    return (chart.pivots[0] + 1, chart.pivots[1] + 1)


def test_f2_census_matches_frozen_counts(example_pencil):
    census = chart_census(example_pencil, 2)
    assert len(census) == 15
    counts = {_ui(entry.chart): entry.on_fano_count for entry in census}
    assert counts == F2_ON_FANO_COUNTS
    # No chart carries a smooth point over F_2.
    assert all(not entry.smooth_points for entry in census)


def test_census_is_deterministic_and_worker_invariant(example_pencil):
    a = chart_census(example_pencil, 2, workers=1)
    b = chart_census(example_pencil, 2, workers=8)
    c = chart_census(example_pencil, 2, workers=8)
    assert a == b == c


def test_exhaustive_search_at_3_and_5(example_pencil):
    found3 = search_smooth_points(example_pencil, 3)
    assert found3, "expected smooth F_3-points"
    chart_points = [
        point for chart, point, rank in found3 if chart.pivots == CHART_PIVOTS
    ]
    assert P3_SMOOTH_POINT in chart_points
    assert len(chart_points) == 4
    assert all(rank == 6 for _, _, rank in found3)

    found5 = search_smooth_points(example_pencil, 5)
    assert found5, "expected smooth F_5-points"
    # Results arrive sorted by (chart pivots, coordinates) and are
    # independent of the worker count.
    assert found5 == sorted(found5, key=lambda it: (it[0].pivots, it[1]))
    assert found5 == search_smooth_points(example_pencil, 5, workers=8)


def test_sampling_search_finds_points_at_moderate_primes(example_pencil):
    # p = 7 exceeds the exhaustive default; seeded sampling must still hit
    # the (codimension-6, ~p^2-point) locus with a generous budget, and
    # identical seeds must give identical results.
    chart = GrassmannChart(CHART_PIVOTS)
    kwargs = dict(budget=600_000, charts=[chart], seed=7, stop_after=1)
    found = search_smooth_points(example_pencil, 7, **kwargs)
    again = search_smooth_points(example_pencil, 7, **kwargs)
    assert found == again
    assert found, "seeded sampling with budget 600k should find an F_7-point"
    chart, point, rank = found[0]
    assert rank == 6
    report = hensel_certify(fano_system(example_pencil, chart), point, 7)
    assert report.liftable is True


def test_search_rejects_bad_arguments(example_pencil):
    with pytest.raises(ValueError):
        search_smooth_points(example_pencil, 6)
    with pytest.raises(ValueError):
        search_smooth_points(example_pencil, 3, budget=0)
    with pytest.raises(ValueError):
        search_smooth_points(example_pencil, 37, exhaustive=True)


def test_hensel_lift_at_3_matches_frozen_value(example_pencil):
    system = fano_system(example_pencil, GrassmannChart(CHART_PIVOTS))
    cert = hensel_certify(system, P3_SMOOTH_POINT, 3, lift_precision=3)
    assert cert.liftable is True
    assert cert.lift == P3_LIFT_MOD_27
    assert cert.lift_modulus == 27
    for eq in system.equations:
        assert eq.evaluate(cert.lift) % 27 == 0
    # The lift reduces to the original point mod 3.
    assert tuple(c % 3 for c in cert.lift) == P3_SMOOTH_POINT


def test_hensel_lift_of_big_prime_witness(example_pencil):
    system = fano_system(example_pencil, GrassmannChart(CHART_PIVOTS))
    cert = hensel_certify(system, BIG_WITNESS, BIG_PRIME, lift_precision=3)
    assert cert.liftable is True
    assert cert.lift_modulus == BIG_PRIME**3
    assert tuple(c % BIG_PRIME for c in cert.lift) == BIG_WITNESS
    for eq in system.equations:
        assert eq.evaluate(cert.lift) % BIG_PRIME**3 == 0


def test_hensel_refuses_rank_deficient_points(example_pencil):
    system = fano_system(example_pencil, GrassmannChart(CHART_PIVOTS))
    cert = hensel_certify(system, F2_WITNESS, 2, lift_precision=3)
    assert cert.liftable is False
    assert cert.lift is None
    assert cert.jacobian_rank == 4


def test_hensel_rejects_points_off_the_system(example_pencil):
    system = fano_system(example_pencil, GrassmannChart(CHART_PIVOTS))
    with pytest.raises(ValueError):
        hensel_certify(system, (1, 0, 0, 0, 0, 0, 0, 1), 3)


def test_higher_precision_lifts_are_consistent(example_pencil):
    system = fano_system(example_pencil, GrassmannChart(CHART_PIVOTS))
    k3 = hensel_certify(system, P3_SMOOTH_POINT, 3, lift_precision=3)
    k5 = hensel_certify(system, P3_SMOOTH_POINT, 3, lift_precision=5)
    assert k5.lift_modulus == 3**5
    assert tuple(c % 27 for c in k5.lift) == k3.lift
    for eq in system.equations:
        assert eq.evaluate(k5.lift) % 3**5 == 0


def test_real_place_report_on_example(example_pencil):
    report = real_place_report(curve_data(example_pencil))
    assert report.place == "real"
    assert report.liftable is True
    intervals = report.isolating_intervals
    assert len(intervals) == 2
    for printed, (lo, hi) in zip(REAL_ROOTS_PRINTED, intervals):
        width = hi - lo
        assert width < Fraction(1, 10**6)
        # Genuine isolation: exactly one sign change of f across [lo, hi].
        f = example_pencil.char_form
        assert f.evaluate(lo) * f.evaluate(hi) < 0
        # The midpoint rounds to the printed 5-decimal approximation.
        midpoint = (lo + hi) / 2
        assert abs(midpoint - printed) < Fraction(5, 10**6)


def test_real_place_criterion_tri_state():
    # t^6 - 1: two real roots, the criterion applies.
    f_two = UniPoly((-1, 0, 0, 0, 0, 0, 1))
    assert sturm_count(f_two) == 2
    cd = CurveData(
        f=f_two, disc=2**12 * 46656, bad_primes=(2, 3), real_weierstrass_count=2
    )
    report = real_place_report(cd)
    assert report.liftable is True
    assert len(report.isolating_intervals) == 2

    # t^6 + 1: no real roots, so the sufficient criterion is inapplicable.
    f_none = UniPoly((1, 0, 0, 0, 0, 0, 1))
    assert sturm_count(f_none) == 0
    cd = CurveData(
        f=f_none, disc=2**12 * 46656, bad_primes=(2, 3), real_weierstrass_count=0
    )
    report = real_place_report(cd)
    assert report.liftable == "undetermined"
    assert report.isolating_intervals == ()

    # Six real Weierstrass points: still >= 1, so the criterion applies.
    f_six = UniPoly((720, -1764, 1624, -735, 175, -21, 1))  # (t-1)...(t-6)
    assert sturm_count(f_six) == 6
    cd = CurveData(f=f_six, disc=2**12, bad_primes=(2,), real_weierstrass_count=6)
    assert real_place_report(cd).liftable is True


def test_verify_projective_point(example_pencil):
    assert verify_projective_point(example_pencil, (1, 0, 0, 0, 0, 0)) is True
    assert verify_projective_point(example_pencil, (2, 0, 0, 0, 0, 0)) is True
    assert verify_projective_point(example_pencil, (0, 0, 0, 1, 0, 0)) is False
    assert verify_projective_point(example_pencil, (1, 0, 0, 0, 0, 0), p=7) is True
    assert (
        verify_projective_point(example_pencil, (0, 0, 0, 1, 0, 1), p=2) is True
    )  # x = z = 1: Q1 = 1 - 2 - 1 = -2 = 0 mod 2, Q2 = 2 = 0 mod 2
    with pytest.raises(ValueError):
        verify_projective_point(example_pencil, (0, 0, 0, 0, 0, 0))
    with pytest.raises(ValueError):
        verify_projective_point(example_pencil, (0, 0, 0, 0, 0, 2), p=2)
