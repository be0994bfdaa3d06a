"""Ibn al-Shatir's models for the Sun, the Moon and the five planets.

Each body is a chain of uniform rotations acting on an initial figure whose
points lie along ``j`` (lengths in units where the inclined-orb radius is 60).
Two evaluation routes are provided:

* ``position3d`` composes the rotations in space, tilts included;
* ``position_planar`` uses the closed-form equations (equation of center c1,
  epicycle equation c2, optional chi interpolation, displacement equation and
  latitude formula).

With the small-orb tilts switched off the two routes agree to rounding error,
which the tests exploit.
"""
from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionViolated, UnknownBody
from .rotkit import I, J, RotationStep, angle, apply_chain, rot
from .sexagesimal import sx
from .sphere import (
    direction,
    displacement_en,
    ecliptic_coordinates,
    inclined_latitude,
)
from .timebase import MeanParameter

BODIES = ("sun", "moon", "saturn", "jupiter", "mars", "venus", "mercury")
SUPERIOR = ("saturn", "jupiter", "mars")
INFERIOR = ("venus", "mercury")
PLANETS = SUPERIOR + INFERIOR
RADIUS = 60.0
MOON_INCLINATION = 5.0
APOGEE_RATE = sx("0;1")  # per Persian year, for every apogee

SUN_MEAN_LONGITUDE = MeanParameter.per_year("mean_sun", sx("280;9,0"), sx("359;45,40"))
SUN_APOGEE = MeanParameter.per_year("apogee", sx("89;52,3,1"), APOGEE_RATE)

TILT_MODES = ("full", "main", "none")


@dataclass(frozen=True)
class ModelConfig:
    body: str
    offsets: tuple[float, ...]  # signed lengths along j: P2P3, P3P4, ...
    figure: Mapping[str, np.ndarray]
    means: Mapping[str, MeanParameter]
    inclinations: Mapping[str, float]
    node_offset: float  # degrees from apogee to ascending node (planets)
    chain: tuple[RotationStep, ...]
    tilts: str = "full"
    variant: int = 1

    def parameters(self, t: float) -> dict[str, float]:
        return _PARAMETERS[self.body](self, t)


@dataclass(frozen=True)
class EphemerisRecord:
    t: float
    body: str
    model: str
    longitude: float
    latitude: float
    distance: float


# -- body data ----------------------------------------------------------------

@dataclass(frozen=True)
class _PlanetData:
    deferent_shift: float  # P3P4
    rotator: float  # P4P5, signed
    epicycle: float  # P5P (P5P6 for Mercury)
    node_offset: float
    apogee: float
    inclined: float  # tilt of the inclined orb at P2
    deferent_tilt: float = 0.0  # superior planets, about u at P3
    rotator_tilt: float = 0.0  # superior planets, about v at P4
    mean_longitude: tuple[float, float] | None = None  # value, rate per year
    anomaly: tuple[float, float] | None = None
    couple: float = 0.0  # Mercury: P6P7 = P7P


PLANET_DATA = {
    "saturn": _PlanetData(sx("5;7,30"), -sx("1;42,30"), sx("6;30"), -140.0, sx("254;52"),
                          sx("2;30"), -sx("3;30"), -1.0,
                          mean_longitude=(sx("157;58,20"), sx("12;13,40"))),
    "jupiter": _PlanetData(sx("4;7,30"), -sx("1;22,30"), sx("11;30"), -62.0, sx("180;52"),
                           sx("1;30"), -2.0, -sx("0;30"),
                           mean_longitude=(sx("272;6,10"), sx("30;20,33"))),
    "mars": _PlanetData(9.0, -3.0, sx("39;30"), -90.0, sx("137;52"),
                        1.0, -sx("1;37,30"), -sx("0;37,30"),
                        mean_longitude=(sx("292;0,0"), sx("191;17,11"))),
    "venus": _PlanetData(sx("1;41"), -sx("0;26"), sx("43;33"), -90.0, sx("77;52"),
                         sx("0;10"), anomaly=(sx("320;50,19"), sx("225;1,48,41"))),
    "mercury": _PlanetData(sx("4;5"), sx("0;55"), sx("22;46"), -90.0, sx("212;52"),
                           -sx("0;10"), anomaly=(sx("154;2"), sx("1133;57,1")),
                           couple=-sx("0;33")),
}

SUN_OFFSETS = (RADIUS, sx("4;37"), sx("2;30"))
MOON_OFFSETS = (RADIUS, sx("6;35"), -sx("1;25"))
MOON_MEANS = {
    "mean_longitude": MeanParameter("mean_longitude", sx("213;35,50"), sx("13;10,35,1,13,53")),
    "anomaly": MeanParameter("anomaly", sx("138;32,27"), sx("13;3,53,56")),
    "node": MeanParameter("node", sx("275;7,35"), sx("0;3,10,38,27")),
    "mean_sun": SUN_MEAN_LONGITUDE,
}

# Small tilts of the inner orbs of Venus and Mercury: (center, axis, degrees).
# Variant 1 follows the model meant to reproduce the Almagest latitudes;
# variant 2 lumps the j-tilts at P4, imitating the Planetary Hypotheses.
INFERIOR_SMALL_TILTS = {
    ("venus", 1): (("P4", I, -sx("0;5")), ("P4", J, 3.0), None, ("P5", I, sx("0;5")), ("P5", J, sx("0;30"))),
    ("venus", 2): (("P4", I, -sx("0;5")), ("P4", J, sx("3;30")), None, ("P5", I, sx("0;5"))),
    ("mercury", 1): (("P4", I, sx("0;5")), ("P4", J, -sx("6;36,30")), None,
                     ("P5", I, -sx("0;5")), ("P5", J, -sx("0;22,30"))),
    ("mercury", 2): (("P4", I, sx("0;5")), ("P4", J, -sx("6;59")), None, ("P5", I, -sx("0;5"))),
}


def _figure(offsets) -> dict[str, np.ndarray]:
    """Points O = P1 = P2, then P3, P4, ... and finally P along j."""
    figure = {"O": np.zeros(3), "P1": np.zeros(3), "P2": np.zeros(3)}
    y = 0.0
    labels = [f"P{k}" for k in range(3, 3 + len(offsets) - 1)] + ["P"]
    for label, step in zip(labels, offsets):
        y += step
        figure[label] = y * J
    return figure


def _keep(tag: str, tilts: str) -> bool:
    if tag == "small":
        return tilts == "full"
    if tag == "main":
        return tilts in ("full", "main")
    return True


def _sun_config(tilts: str, variant: int) -> ModelConfig:
    chain = (
        rot("P1", angle(apogee=1)),
        rot("P2", angle(anomaly=1)),
        rot("P3", angle(anomaly=-1)),
        rot("P4", angle(anomaly=2)),
    )
    return ModelConfig("sun", SUN_OFFSETS, _figure(SUN_OFFSETS),
                       {"mean_sun": SUN_MEAN_LONGITUDE, "apogee": SUN_APOGEE},
                       {}, 0.0, chain, tilts, variant)


def _moon_config(tilts: str, variant: int) -> ModelConfig:
    chain = (
        rot("P1", angle(node=-1)),
        rot("P2", MOON_INCLINATION, J, tag="main"),
        rot("P2", angle(mean_longitude=1, node=1)),
        rot("P3", angle(anomaly=-1)),
        rot("P4", angle(double_elongation=1)),
    )
    chain = tuple(s for s in chain if _keep(s.tag, tilts))
    return ModelConfig("moon", MOON_OFFSETS, _figure(MOON_OFFSETS), MOON_MEANS,
                       {"inclined": MOON_INCLINATION}, 0.0, chain, tilts, variant)


def _superior_chain(d: _PlanetData) -> tuple[RotationStep, ...]:
    u = direction(d.node_offset)
    v = direction(-d.node_offset - 180.0)
    return (
        rot("P1", angle(apogee=1)),
        rot("P2", d.inclined, u, tag="main"),
        rot("P2", angle(center=1)),
        rot("P3", angle(center=-1)),
        rot("P3", d.deferent_tilt, u, tag="small"),
        rot("P4", angle(center=2)),
        rot("P4", d.rotator_tilt, v, tag="small"),
        rot("P5", angle(anomaly=1, center=-1)),
    )


def _inferior_chain(body: str, d: _PlanetData, variant: int) -> tuple[RotationStep, ...]:
    small = INFERIOR_SMALL_TILTS[(body, variant)]
    steps = [
        rot("P1", angle(apogee=1)),
        rot("P2", d.inclined, I, tag="main"),
        rot("P2", angle(center=1)),
        rot("P3", angle(center=-1)),
    ]
    before, after = small[: small.index(None)], small[small.index(None) + 1:]
    steps += [rot(c, a, ax, tag="small") for c, ax, a in before]
    steps.append(rot("P4", angle(center=2)))
    steps += [rot(c, a, ax, tag="small") for c, ax, a in after]
    steps.append(rot("P5", angle(anomaly=1, center=-1)))
    if body == "mercury":
        steps += [rot("P6", angle(center=2)), rot("P7", angle(center=-4))]
    return tuple(steps)


def _planet_config(body: str, tilts: str, variant: int) -> ModelConfig:
    d = PLANET_DATA[body]
    offsets = (RADIUS, d.deferent_shift, d.rotator, d.epicycle)
    if body == "mercury":
        offsets += (d.couple, d.couple)
    means = {
        "apogee": MeanParameter.per_year("apogee", d.apogee, APOGEE_RATE),
        "mean_sun": SUN_MEAN_LONGITUDE,
    }
    if d.mean_longitude is not None:
        means["mean_longitude"] = MeanParameter.per_year("mean_longitude", *d.mean_longitude)
    if d.anomaly is not None:
        means["anomaly"] = MeanParameter.per_year("anomaly", *d.anomaly)
    if body in SUPERIOR:
        chain = _superior_chain(d)
        inclinations = {"inclined": d.inclined, "deferent": d.deferent_tilt, "rotator": d.rotator_tilt}
    else:
        chain = _inferior_chain(body, d, variant)
        inclinations = {"inclined": d.inclined}
    chain = tuple(s for s in chain if _keep(s.tag, tilts))
    return ModelConfig(body, offsets, _figure(offsets), means, inclinations,
                       d.node_offset, chain, tilts, variant)


def build_config(body: str, tilts: str = "full", variant: int = 1) -> ModelConfig:
    """Configuration of ``body``.

    ``tilts`` keeps every tilted orb ("full"), only the inclined orb ("main")
    or none. ``variant`` picks the latitude scheme of Venus and Mercury.
    """
    body = body.lower()
    if tilts not in TILT_MODES:
        raise PreconditionViolated(f"tilts must be one of {TILT_MODES}")
    if variant not in (1, 2):
        raise PreconditionViolated("variant must be 1 or 2")
    if body == "sun":
        return _sun_config(tilts, variant)
    if body == "moon":
        return _moon_config(tilts, variant)
    if body in PLANET_DATA:
        return _planet_config(body, tilts, variant)
    raise UnknownBody(f"unknown body {body!r}")


# -- time-linear parameters -----------------------------------------------------

def _sun_parameters(cfg: ModelConfig, t: float) -> dict[str, float]:
    mean_sun = cfg.means["mean_sun"](t)
    apogee = cfg.means["apogee"](t)
    return {"mean_sun": mean_sun, "apogee": apogee, "anomaly": mean_sun - apogee}


def _moon_parameters(cfg: ModelConfig, t: float) -> dict[str, float]:
    p = {name: m(t) for name, m in cfg.means.items()}
    p["double_elongation"] = 2.0 * (p["mean_longitude"] - p["mean_sun"])
    return p


def _superior_parameters(cfg: ModelConfig, t: float) -> dict[str, float]:
    p = {name: m(t) for name, m in cfg.means.items()}
    p["center"] = p["mean_longitude"] - p["apogee"]
    p["anomaly"] = p["mean_sun"] - p["mean_longitude"]
    return p


def _inferior_parameters(cfg: ModelConfig, t: float) -> dict[str, float]:
    p = {name: m(t) for name, m in cfg.means.items()}
    p["mean_longitude"] = p["mean_sun"]
    p["center"] = p["mean_sun"] - p["apogee"]
    return p


_PARAMETERS = {
    "sun": _sun_parameters,
    "moon": _moon_parameters,
    "saturn": _superior_parameters,
    "jupiter": _superior_parameters,
    "mars": _superior_parameters,
    "venus": _inferior_parameters,
    "mercury": _inferior_parameters,
}


# -- 3-D route --------------------------------------------------------------------

def position_at(cfg: ModelConfig, params: Mapping[str, float], t: float = float("nan"),
                model: str = "shatir3d") -> EphemerisRecord:
    p = apply_chain(cfg.chain, params, "P", cfg.figure)
    lon, lat, dist = ecliptic_coordinates(p)
    return EphemerisRecord(t, cfg.body, model, lon, lat, dist)


def position3d(cfg: ModelConfig, t: float) -> EphemerisRecord:
    return position_at(cfg, cfg.parameters(t), t)


# -- closed-form equations --------------------------------------------------------

def _sind(x: float) -> float:
    return math.sin(math.radians(x))


def _cosd(x: float) -> float:
    return math.cos(math.radians(x))


def _asind(x: float) -> float:
    return math.degrees(math.asin(x))


def _eccentric(numerator_arm: float, radial_arm: float, theta: float) -> tuple[float, float]:
    """(equation, distance) for a point displaced from the deferent circle.

    ``numerator_arm`` multiplies sin(theta) in the sine of the equation and
    ``radial_arm`` multiplies cos(theta) in the radial component.
    """
    across = numerator_arm * _sind(theta)
    dist = math.hypot(across, RADIUS + radial_arm * _cosd(theta))
    return -_asind(across / dist), dist


def _epicyclic(radius: float, base: float, alpha: float) -> tuple[float, float]:
    """(equation, distance) for a point on an epicycle seen from distance ``base``."""
    across = radius * _sind(alpha)
    dist = math.hypot(across, base + radius * _cosd(alpha))
    return _asind(across / dist), dist


def sun_equation(anomaly: float) -> float:
    """Equation of the Sun for mean anomaly ``anomaly`` (degrees)."""
    _, shift, small = SUN_OFFSETS
    return _eccentric(shift - small, shift + small, anomaly)[0]


def sun_distance(anomaly: float) -> float:
    _, shift, small = SUN_OFFSETS
    return _eccentric(shift - small, shift + small, anomaly)[1]


def sun_true_longitude(t: float) -> float:
    p = _sun_parameters(build_config("sun"), t)
    return (p["mean_sun"] + sun_equation(p["anomaly"])) % 360.0


def moon_apparent_radius(double_elongation: float) -> float:
    _, shift, small = MOON_OFFSETS
    small = abs(small)
    return math.hypot(shift - small * _cosd(double_elongation), small * _sind(double_elongation))


def moon_c1(double_elongation: float) -> float:
    small = abs(MOON_OFFSETS[2])
    return _asind(small * _sind(double_elongation) / moon_apparent_radius(double_elongation))


def moon_c2(alpha: float, double_elongation: float) -> float:
    """Epicycle equation for corrected anomaly ``alpha`` = mean anomaly + c1."""
    return -_epicyclic(moon_apparent_radius(double_elongation), RADIUS, alpha)[0]


def moon_distance(alpha: float, double_elongation: float) -> float:
    return _epicyclic(moon_apparent_radius(double_elongation), RADIUS, alpha)[1]


def moon_max_c2(double_elongation: float) -> float:
    return _asind(moon_apparent_radius(double_elongation) / RADIUS)


def moon_chi(double_elongation: float) -> float:
    near, far = moon_max_c2(0.0), moon_max_c2(180.0)
    return (moon_max_c2(double_elongation) - near) / (far - near)


def _planet(body: str) -> _PlanetData:
    try:
        return PLANET_DATA[body.lower()]
    except KeyError:
        raise UnknownBody(f"{body!r} is not a planet") from None


def mercury_apparent_radius(center: float) -> float:
    d = PLANET_DATA["mercury"]
    return d.epicycle - 2 * abs(d.couple) * _cosd(2 * center)


def planet_epicycle_radius(body: str, center: float) -> float:
    if body.lower() == "mercury":
        return mercury_apparent_radius(center)
    return _planet(body).epicycle


def _planet_center(body: str, center: float) -> tuple[float, float]:
    d = _planet(body)
    return _eccentric(d.deferent_shift - d.rotator, d.deferent_shift + d.rotator, center)


def planet_c1(body: str, center: float) -> float:
    return _planet_center(body, center)[0]


def planet_center_distance(body: str, center: float) -> float:
    """Distance from O to the epicycle center for mean center ``center``."""
    return _planet_center(body, center)[1]


def planet_c2(body: str, center: float, alpha: float) -> float:
    return _epicyclic(planet_epicycle_radius(body, center), planet_center_distance(body, center), alpha)[0]


def planet_distance(body: str, center: float, alpha: float) -> float:
    return _epicyclic(planet_epicycle_radius(body, center), planet_center_distance(body, center), alpha)[1]


def planet_max_c2(body: str, center: float) -> float:
    return _asind(planet_epicycle_radius(body, center) / planet_center_distance(body, center))


def planet_chi(body: str, center: float) -> float:
    near, far = planet_max_c2(body, 0.0), planet_max_c2(body, 180.0)
    return (planet_max_c2(body, center) - near) / (far - near)


def moon_c2_interpolated(alpha: float, double_elongation: float) -> float:
    near = moon_c2(alpha, 0.0)
    return near + moon_chi(double_elongation) * (moon_c2(alpha, 180.0) - near)


def planet_c2_interpolated(body: str, center: float, alpha: float) -> float:
    near = planet_c2(body, 0.0, alpha)
    return near + planet_chi(body, center) * (planet_c2(body, 180.0, alpha) - near)


def moon_latitude_alt(argument: float) -> float:
    """Latitude as arctan(tan 5 * sin(x + en(x)))."""
    x = argument + displacement_en(argument, MOON_INCLINATION)
    return math.degrees(math.atan(math.tan(math.radians(MOON_INCLINATION)) * _sind(x)))


def planar_at(cfg: ModelConfig, params: Mapping[str, float], t: float = float("nan"),
              interpolate: bool = False) -> EphemerisRecord:
    """Closed-form position; ``interpolate`` replaces c2 by its chi blend."""
    model = "shatir-planar-chi" if interpolate else "shatir-planar"
    body = cfg.body
    if body == "sun":
        c = sun_equation(params["anomaly"])
        lon = params["apogee"] + params["anomaly"] + c
        return EphemerisRecord(t, body, model, lon % 360.0, 0.0, sun_distance(params["anomaly"]))
    if body == "moon":
        eta2 = params["double_elongation"]
        alpha = params["anomaly"] + moon_c1(eta2)
        c2 = moon_c2_interpolated(alpha, eta2) if interpolate else moon_c2(alpha, eta2)
        argument = params["mean_longitude"] + params["node"] + c2
        lon = params["mean_longitude"] + c2 + displacement_en(argument, MOON_INCLINATION)
        lat = inclined_latitude(argument, MOON_INCLINATION)
        return EphemerisRecord(t, body, model, lon % 360.0, lat, moon_distance(alpha, eta2))
    center = params["center"]
    c1 = planet_c1(body, center)
    alpha = params["anomaly"] - c1
    if interpolate:
        c2 = planet_c2_interpolated(body, center, alpha)
    else:
        c2 = planet_c2(body, center, alpha)
    lon = params["apogee"] + center + c1 + c2
    node = params["apogee"] + cfg.node_offset
    incl = cfg.inclinations["inclined"]
    true_lon = lon + displacement_en(lon - node, incl)
    lat = inclined_latitude(lon - node, incl)
    return EphemerisRecord(t, body, model, true_lon % 360.0, lat, planet_distance(body, center, alpha))


def position_planar(cfg: ModelConfig, t: float, interpolate: bool = False) -> EphemerisRecord:
    return planar_at(cfg, cfg.parameters(t), t, interpolate)


# -- tables -----------------------------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    arg: float
    c1: float
    c2_near: float
    difference: float
    chi: float


def generate_table(body: str, step_deg: float = 30.0) -> list[TableRow]:
    """Rows for arguments step, 2*step, ..., 180 in the layout of the
    classical equation tables.

    For the Moon the argument is the double elongation for c1 and chi and the
    corrected anomaly for c2; for planets it is the mean center for c1 and chi
    and the corrected anomaly for c2.  The near column is c2 at the nearest
    endpoint (double elongation or center 0) and ``difference`` is the far
    endpoint minus the near one.
    """
    body = body.lower()
    if step_deg <= 0 or abs(360.0 / step_deg - round(360.0 / step_deg)) > 1e-9:
        raise PreconditionViolated("step must divide 360")
    if body not in BODIES:
        raise UnknownBody(f"unknown body {body!r}")
    rows = []
    n = int(round(180.0 / step_deg))
    for k in range(1, n + 1):
        arg = k * step_deg
        if body == "sun":
            rows.append(TableRow(arg, sun_equation(arg), 0.0, 0.0, 0.0))
        elif body == "moon":
            near = moon_c2(arg, 0.0)
            rows.append(TableRow(arg, moon_c1(arg), near, moon_c2(arg, 180.0) - near, moon_chi(arg)))
        else:
            near = planet_c2(body, 0.0, arg)
            rows.append(TableRow(arg, planet_c1(body, arg), near,
                                 planet_c2(body, 180.0, arg) - near, planet_chi(body, arg)))
    return rows


def with_tilts(cfg: ModelConfig, tilts: str) -> ModelConfig:
    return build_config(cfg.body, tilts, cfg.variant) if tilts != cfg.tilts else cfg

