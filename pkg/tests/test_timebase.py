import math
from fractions import Fraction

import pytest

from falak import shatir, timebase
from falak.errors import FieldOutOfRange
from falak.sexagesimal import sx, sx_exact


@pytest.mark.parametrize("date,expected", [((701, 1, 1, 0), 0), ((721, 1, 1, 0), 20 * 365), ((1, 1, 1, 0), -255500)])
def test_yazdegerd_days(date, expected):
    assert timebase.t_from_yazdegerd(*date) == expected


def test_epagomenal_days_close_the_year():
    assert timebase.t_from_yazdegerd(701, 12, 30, 5) == 364
    assert timebase.parse_yazdegerd("702/1/1") == 365


@pytest.mark.parametrize("fields", [(701, 13, 1), (701, 1, 31), (701, 1, 1, 6), (701, 11, 30, 1)])
def test_out_of_range_fields(fields):
    with pytest.raises(FieldOutOfRange):
        timebase.t_from_yazdegerd(*fields)


def test_bad_date_text():
    with pytest.raises(FieldOutOfRange):
        timebase.parse_yazdegerd("701-1-1")


def test_sun_mean_longitude():
    p = shatir.SUN_MEAN_LONGITUDE
    assert timebase.mean(p, 0) == pytest.approx(sx("280;9,0"), abs=1e-12)
    # 280;9,0 + 359;45,40 - 360, added digit by digit.
    assert timebase.mean(p, 365) == pytest.approx(float(sx_exact("279;54,40")), abs=1e-9)


def test_per_year_rate_is_divided_by_365():
    p = timebase.MeanParameter.per_year("x", 0.0, sx("359;45,40"))
    assert p.rate == sx("359;45,40") / 365


def test_moon_mean_longitude_after_one_day():
    expected = sx_exact("213;35,50") + sx_exact("13;10,35,1,13,53")
    assert timebase.mean(shatir.MOON_MEANS["mean_longitude"], 1) == pytest.approx(float(expected), abs=1e-10)


def test_right_ascension_at_solstice_ignores_obliquity():
    for eps in (0.0, 23.5, 40.0):
        assert timebase.right_ascension(90.0, eps) == pytest.approx(90.0, abs=1e-12)


def test_equation_of_time_vanishes_by_construction():
    # True Sun at the equinox and mean Sun 2;1,7 behind it.
    assert timebase.equation_of_time_from(-timebase.MEAN_SUN_OFFSET, 0.0) == pytest.approx(0.0, abs=1e-12)


def test_equation_of_time_at_epoch_matches_independent_evaluation():
    true_sun = shatir.position3d(shatir.build_config("sun"), 0.0).longitude
    eps = math.radians(sx("23;31"))
    lam = math.radians(true_sun)
    ra = math.degrees(math.atan2(math.cos(eps) * math.sin(lam), math.cos(lam))) % 360
    delta = -sx("280;9,0") - sx("2;1,7") + ra
    delta = (delta + 180) % 360 - 180
    assert timebase.equation_of_time(0.0) == pytest.approx(delta / 15, abs=1e-9)
