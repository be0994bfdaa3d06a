"""Time variable, mean motions and the equation of time.

The model time ``t`` counts mean solar days from the epoch, noon of
24 December 1331 (Julian), which is day 1 of month 1 of Yazdegerd year 701.
The Persian calendar is treated as a vague year of twelve 30-day months
followed by five epagomenal days.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import FieldOutOfRange
from .sexagesimal import sx
from .sphere import displacement_en

DAYS_PER_YEAR = 365
EPOCH_YEAR = 701
DEFAULT_OBLIQUITY = sx("23;31")
# Mean Sun longitude of the imaginary point at the time origin, with its sign.
MEAN_SUN_OFFSET = sx("2;1,7")


@dataclass(frozen=True)
class EpochSpec:
    label: str
    julian_date: tuple[int, int, int, int, int]
    gmt: tuple[int, int]
    yazdegerd: tuple[int, int, int]


EPOCH = EpochSpec(
    label="noon, 24 December 1331, Damascus",
    julian_date=(1331, 12, 24, 12, 8),
    gmt=(9, 43),
    yazdegerd=(701, 1, 1),
)


@dataclass(frozen=True)
class MeanParameter:
    """An angle growing linearly in time, reduced into [0, 360)."""

    name: str
    value_at_epoch: float
    rate: float  # degrees per day

    @classmethod
    def per_year(cls, name: str, value_at_epoch: float, rate_per_year: float) -> MeanParameter:
        return cls(name, value_at_epoch, rate_per_year / DAYS_PER_YEAR)

    def __call__(self, t: float) -> float:
        return mean(self, t)


def mean(p: MeanParameter, t: float) -> float:
    return (p.value_at_epoch + p.rate * t) % 360.0


def t_from_yazdegerd(year: int, month: int, day: int, epagomenal: int = 0) -> int:
    """Whole days since the epoch for a Yazdegerd calendar date.

    ``epagomenal`` > 0 selects one of the five days after month 12; ``month``
    and ``day`` must then be 12 and 30.
    """
    if not 1 <= month <= 12:
        raise FieldOutOfRange(f"month {month} not in 1..12")
    if not 1 <= day <= 30:
        raise FieldOutOfRange(f"day {day} not in 1..30")
    if not 0 <= epagomenal <= 5:
        raise FieldOutOfRange(f"epagomenal day {epagomenal} not in 0..5")
    if epagomenal and (month, day) != (12, 30):
        raise FieldOutOfRange("epagomenal days follow 12/30")
    day_of_year = (month - 1) * 30 + (day - 1) + epagomenal
    return (year - EPOCH_YEAR) * DAYS_PER_YEAR + day_of_year


def parse_yazdegerd(text: str) -> int:
    """``Y/M/D[/E]`` -> days since epoch."""
    try:
        fields = [int(f) for f in text.split("/")]
    except ValueError:
        raise FieldOutOfRange(f"bad Yazdegerd date {text!r}") from None
    if len(fields) not in (3, 4):
        raise FieldOutOfRange(f"expected Y/M/D or Y/M/D/E, got {text!r}")
    return t_from_yazdegerd(*fields)


def right_ascension(longitude: float, obliquity: float = DEFAULT_OBLIQUITY) -> float:
    """Right ascension of an ecliptic point with zero latitude, in [0, 360)."""
    return (longitude + displacement_en(longitude, obliquity)) % 360.0


def equation_of_time_from(mean_sun: float, true_sun: float,
                          obliquity: float = DEFAULT_OBLIQUITY) -> float:
    """Equation of time in hours from mean and true solar longitudes."""
    delta = -mean_sun - MEAN_SUN_OFFSET + right_ascension(true_sun, obliquity)
    delta = (delta + 180.0) % 360.0 - 180.0
    return delta / 15.0


def equation_of_time(t: float, obliquity: float = DEFAULT_OBLIQUITY) -> float:
    # Imported here: the Sun model itself depends on this module's MeanParameter.
    from .shatir import SUN_MEAN_LONGITUDE, sun_true_longitude

    return equation_of_time_from(SUN_MEAN_LONGITUDE(t), sun_true_longitude(t), obliquity)
