"""Sizes and distances of the orbs, in exact rational arithmetic.

Model units put the inclined orb's radius (or the Sun's parecliptic mean
radius) at 60.  Absolute distances are in Earth radii and come from the
contiguity chain: each body's outermost surface touches the next body's
innermost one, starting from the Moon.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateGeometry, PreconditionViolated, UnknownBody
from .sexagesimal import format_sex, sx_exact

F = Fraction
S = sx_exact

ORDER = ("moon", "mercury", "venus", "sun", "mars", "jupiter", "saturn")

# Inner:outer ratio of each planet's orb system, in model units.
SYSTEM_RATIOS = {
    "mercury": (F(31), S("89;30")),
    "venus": (F(14), F(106)),
    "mars": (F(8), F(112)),
    "jupiter": (F(42), F(78)),
    "saturn": (F(46), F(74)),
}

# Successive orb offsets from the body outward (epicycle first) and the
# parecliptic thickness, in model units.
_ORB_LAYERS = {
    "sun": ((("rotator", S("2;30")), ("deferent", S("4;37"))), F(0)),
    "saturn": ((("epicycle", S("6;30")), ("rotator", S("1;42,30")), ("deferent", S("5;7,30"))), S("0;40")),
    "jupiter": ((("epicycle", S("11;30")), ("rotator", S("1;22,30")), ("deferent", S("4;7,30"))), F(1)),
    "mars": ((("epicycle", S("39;30")), ("rotator", F(3)), ("deferent", F(9))), S("0;30")),
    "venus": ((("epicycle", S("43;33")), ("rotator", S("0;26")), ("deferent", S("1;41"))), S("0;20")),
    "mercury": ((("protector", S("0;33")), ("enveloping", S("0;33")), ("epicycle", S("22;46")),
                 ("rotator", S("0;55")), ("deferent", S("4;5"))), S("0;8")),
}

MOON_PARECLIPTIC_EARTH_RADII = F(58)
MOON_DISTANCE_BOUNDS = (F(52), F(68))  # quadrature extremes, model units
SUN_OUTER = S("1883;46")
SUN_THICKNESS = S("6;14")

MOON_RADIUS_SINE = S("0;0,15,51,54")  # sine of the Moon's apparent radius at 63 Earth radii
SHADOW_COEFFICIENT = S("2;43")
MOON_MAX_SYZYGY_DISTANCE = F(63)
MOON_DIAMETER_AT_63 = S("0;30,18")
SUN_MEAN_DIAMETER = S("0;32,32")
SUN_DISTANCE_PER_DIAMETER = S("108;42")  # mean Sun distance over its diameter, Earth radii
NINTH_ORB_RADIUS = F(79088)
STAR_DIVISORS = (20, 22, 24, 26, 28, 30)


@dataclass(frozen=True)
class Erratum:
    quantity: str
    printed: Fraction
    corrected: Fraction
    note: str


ERRATA = (
    Erratum("mean Sun diameter / Moon diameter at 63", S("1;2,30"), S("0;32,32") / S("0;30,18"),
            "printed as 0;62,30, i.e. 62;30 sixtieths; the quotient is 0;64,25,20"),
    Erratum("Earth shadow radius at 63", S("0;45,30,19,41"),
            MOON_MAX_SYZYGY_DISTANCE * MOON_RADIUS_SINE * SHADOW_COEFFICIENT,
            "product of the Moon radius and the shadow coefficient"),
    Erratum("Sun distance at equal apparent diameters", F(1747), F(0), "filled in below"),
    Erratum("mean Sun distance", S("1677;7,12"), F(0), "filled in below"),
    Erratum("Sun radius from the 1747 pipeline", S("7;42,53"), F(0), "filled in below"),
    Erratum("least distance reached by Saturn", F(49968),
            (F(49140) + F(79051) + F(7, 23)) / 2 * S("0;50,5"),
            "mean of the orb-system bounds times 0;50,5"),
    Erratum("Mercury orb-system outer ratio term", F(89), S("89;30"),
            "the chapter on Mercury's orbs gives 31:89, the summary uses 31:89;30"),
)


@dataclass(frozen=True)
class OrbRow:
    orb: str
    radius: Fraction  # model units, with the body's own radius r included


def solid_radii(body: str, r: Fraction | float | str = 0) -> list[OrbRow]:
    """Radii of the solid orbs carrying ``body`` for a body of radius ``r``.

    Each orb's radius is the sum of the offsets inside it plus ``r``; the
    last two rows are the outer and inner radii of the inclined orb (the
    Sun's parecliptic), followed by the orb-system bounds including the
    parecliptic thickness.
    """
    r = sx_exact(r) if isinstance(r, str) else F(r)
    if r < 0:
        raise PreconditionViolated("body radius must be non-negative")
    if body not in _ORB_LAYERS:
        raise UnknownBody(f"no solid-orb data for {body!r}")
    layers, thickness = _ORB_LAYERS[body]
    rows = [OrbRow("globe", r)]
    total = r
    for name, offset in layers:
        total += offset
        rows.append(OrbRow(name, total))
    shell = "parecliptic" if body == "sun" else "inclined"
    rows.append(OrbRow(f"{shell} outer", 60 + total))
    rows.append(OrbRow(f"{shell} inner", 60 - total))
    if body != "sun":
        rows.append(OrbRow("system outer", 60 + total - r + thickness))
        rows.append(OrbRow("system inner", 60 - total + r - thickness))
    return rows


# -- fir-tree figure ------------------------------------------------------------------

@dataclass(frozen=True)
class FirTree:
    moon_radius: Fraction
    shadow_radius: Fraction
    equal_diameter_distance: Fraction
    mean_distance: Fraction


def sun_distance_fir_tree(u=MOON_RADIUS_SINE, shadow_coefficient=SHADOW_COEFFICIENT,
                          moon_distance=MOON_MAX_SYZYGY_DISTANCE,
                          equal_diameter_ratio=MOON_DIAMETER_AT_63 / SUN_MEAN_DIAMETER) -> FirTree:
    """Sun distance from the Earth's shadow at a lunar eclipse.

    When the Sun and the Moon (at ``moon_distance``) look equally large, the
    Sun stands at moon_distance / (moon_distance (1 + C) u - 1) Earth radii;
    scaling by ``equal_diameter_ratio`` turns that into the mean distance.
    """
    u, c, d, ratio = (F(x) for x in (u, shadow_coefficient, moon_distance, equal_diameter_ratio))
    moon_radius = d * u
    denominator = moon_radius * (1 + c) - 1
    if denominator <= 0:
        raise DegenerateGeometry("shadow and Moon radii do not exceed one Earth radius")
    at_equal = d / denominator
    return FirTree(moon_radius, moon_radius * c, at_equal, at_equal * ratio)


def sun_radius(distance, moon_radius=MOON_MAX_SYZYGY_DISTANCE * MOON_RADIUS_SINE,
               moon_distance=MOON_MAX_SYZYGY_DISTANCE) -> Fraction:
    """Sun radius in Earth radii when it appears as large as the Moon."""
    return F(moon_radius) * F(distance) / F(moon_distance)


def shadow_apex(moon_distance=MOON_MAX_SYZYGY_DISTANCE, shadow_radius=S("0;45,30,19,41")) -> Fraction:
    """Distance from the Earth's center to the tip of its shadow cone."""
    shadow_radius = F(shadow_radius)
    if shadow_radius >= 1:
        raise DegenerateGeometry("shadow radius must be below one Earth radius")
    return F(moon_distance) / (1 - shadow_radius)


def volume_ratio(diameter_ratio) -> Fraction:
    return F(diameter_ratio) ** 3


def ninth_orb_speed(radius=NINTH_ORB_RADIUS) -> tuple[Fraction, Fraction]:
    """Arc lengths of one degree and one minute on the ninth orb's inner face."""
    circumference = 2 * F(radius) * (3 + F(1, 7))
    degree = circumference / 360
    return degree, degree / 60


def star_diameters(base: Fraction | None = None) -> dict[int, Fraction]:
    """Fixed-star diameters (Earth diameters) by magnitude 1..6."""
    if base is None:
        base = F(79051) / SUN_DISTANCE_PER_DIAMETER
    return {mag: F(base) / div for mag, div in enumerate(STAR_DIVISORS, start=1)}


# -- nesting chain ------------------------------------------------------------------------

@dataclass(frozen=True)
class NestingRow:
    body: str
    inner: Fraction  # Earth radii
    outer: Fraction


@dataclass(frozen=True)
class NestingLedger:
    rows: tuple[NestingRow, ...]

    def __getitem__(self, body: str) -> NestingRow:
        for row in self.rows:
            if row.body == body:
                return row
        raise UnknownBody(body)

    @property
    def fixed_stars_inner(self) -> Fraction:
        return self.rows[-1].outer


def moon_bounds() -> tuple[Fraction, Fraction]:
    """Innermost and outermost reach of the Moon's globe, in Earth radii."""
    scale = MOON_PARECLIPTIC_EARTH_RADII / 60
    radius = MOON_MAX_SYZYGY_DISTANCE * MOON_RADIUS_SINE
    low, high = MOON_DISTANCE_BOUNDS
    return low * scale - radius, high * scale + radius


def nesting_chain(moon_outer=67) -> NestingLedger:
    """Distances of every orb system, each touching the next outward."""
    moon_inner, _ = moon_bounds()
    rows = [NestingRow("moon", moon_inner, F(moon_outer))]

    def scaled(body: str, inner: Fraction) -> NestingRow:
        low, high = SYSTEM_RATIOS[body]
        return NestingRow(body, inner, inner * high / low)

    rows.append(scaled("mercury", rows[-1].outer))
    rows.append(scaled("venus", rows[-1].outer))
    # The Sun's system is fixed by its own distance; the gap below it is the
    # filler that keeps the orbs contiguous.
    rows.append(NestingRow("sun", rows[-1].outer, SUN_OUTER + SUN_THICKNESS))
    for body in ("mars", "jupiter", "saturn"):
        rows.append(scaled(body, rows[-1].outer))
    return NestingLedger(tuple(rows))


def errata() -> list[Erratum]:
    """The printed slips with their recomputed values."""
    corrected = sun_distance_fir_tree()
    filled = {
        "Sun distance at equal apparent diameters": corrected.equal_diameter_distance,
        "mean Sun distance": corrected.mean_distance,
        "Sun radius from the 1747 pipeline": sun_radius(F(1747)),
    }
    return [Erratum(e.quantity, e.printed, filled.get(e.quantity, e.corrected), e.note) for e in ERRATA]


def mixed(x: Fraction) -> str:
    """``79051 7/23`` style rendering."""
    whole, rest = divmod(x.numerator, x.denominator)
    return str(whole) if rest == 0 else f"{whole} {rest}/{x.denominator}"


def report_rows() -> list[tuple[str, ...]]:
    ledger = nesting_chain()
    out = [("body", "inner", "inner_sex", "outer", "outer_sex")]
    for row in ledger.rows:
        out.append((row.body, mixed(row.inner), format_sex(row.inner, 3),
                    mixed(row.outer), format_sex(row.outer, 3)))
    return out


def report_tsv() -> str:
    return "\n".join("\t".join(r) for r in report_rows()) + "\n"
