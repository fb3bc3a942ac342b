from fractions import Fraction

import pytest

from combcache.analysis.envelope import (
    envelope,
    load_ratio,
    subpacketization,
    tradeoff_curve,
    tradeoff_points,
)
from combcache.analysis.memory import SchemePoint
from combcache.shared.scheme_kind import SchemeKind


def _point(M, R):
    return SchemePoint(
        scheme=SchemeKind.BASELINE, g=None, M=Fraction(M), R1=Fraction(R), R2=Fraction(0)
    )


def test_envelope_drops_collinear_and_dominated():
    points = [(0, 4), (1, 3), (2, 2), (1, 5), (3, 3), (4, 1)]
    curve = envelope([_point(M, R) for M, R in points])
    # (1, 3) is on the segment; (3, 3) lies above the hull.
    assert curve.vertices == ((0, 4), (2, 2), (4, 1))
    assert curve.N == 4


def test_envelope_keeps_lowest_load_per_memory():
    curve = envelope([_point(0, 2), _point(0, 1), _point(2, 0)])
    assert curve.vertices == ((0, 1), (2, 0))


def test_envelope_two_segments():
    curve = envelope([_point(0, 4), _point(1, 1), _point(3, 0)])
    assert curve.vertices == ((0, 4), (1, 1), (3, 0))
    assert curve.evaluate(Fraction(1, 2)) == Fraction(5, 2)
    assert curve.evaluate(2) == Fraction(1, 2)
    assert curve.evaluate(3) == 0


def test_envelope_errors():
    with pytest.raises(ValueError):
        envelope([])
    with pytest.raises(ValueError):
        envelope([_point(1, 1), _point(2, 0)])

    curve = envelope([_point(0, 1), _point(1, 0)])
    with pytest.raises(ValueError):
        curve.evaluate(2)
    with pytest.raises(ValueError):
        curve.sample(1)


def test_sample():
    curve = envelope([_point(0, 2), _point(4, 0)])
    assert curve.sample(3) == [(0, 2), (2, 1), (4, 0)]


def test_tradeoff_points():
    points = tradeoff_points(SchemeKind.ASYMMETRIC, 6, 4, 2)
    assert [p.g for p in points] == [1, 2, 3, None]
    assert points[-1].M == 6 and points[-1].R == 0

    routing = tradeoff_points(SchemeKind.ROUTING, 6, 4, 2)
    assert [(p.M, p.R) for p in routing] == [(0, Fraction(3, 2)), (6, 0)]


def test_asymmetric_curve_below_baseline_6_3():
    N = 20
    asym = tradeoff_curve(SchemeKind.ASYMMETRIC, N, 6, 3)
    base = tradeoff_curve(SchemeKind.BASELINE, N, 6, 3)

    for M, R in asym.sample(200):
        R_base = base.evaluate(M)
        assert R <= R_base
        if 0 < M < 10:
            assert R < R_base


def test_load_ratio():
    asym = tradeoff_curve(SchemeKind.ASYMMETRIC, 6, 4, 2)
    base = tradeoff_curve(SchemeKind.BASELINE, 6, 4, 2)
    ratios = load_ratio(asym, base, 7)

    assert ratios[0] == (0, 1)
    assert ratios[-1] == (6, None)
    assert all(ratio <= 1 for _, ratio in ratios[:-1])


def test_subpacketization():
    assert subpacketization(SchemeKind.BASELINE, 4, 2) == [(1, 4), (2, 12), (3, 12)]
    assert subpacketization(SchemeKind.ASYMMETRIC, 4, 2) == [(1, 1), (2, 6), (3, 12)]
