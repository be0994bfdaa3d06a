"""Competing models: Ptolemy and the Maragha astronomers.

Ptolemy's models are written in closed vector form (eccentric, equant,
prosneusis point, Mercury's crank).  The Maragha models (Tusi, Urdi, Shirazi,
Sadr al-Shari'a) are rotation chains evaluated with ``rotkit``, sharing the
mean motions of the corresponding Ibn al-Shatir configuration.
"""
from __future__ import annotations

import math
import random
from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from . import shatir
from .errors import InfeasibleTargets, PreconditionViolated, UnsupportedPair
from .rotkit import I, J, RotationStep, angle, apply_chain, rot
from .sexagesimal import sx
from .sphere import (
    direction,
    displacement_en,
    ecliptic_coordinates,
    inclined_latitude,
    wrap180,
)

RADIUS = 60.0
MOON_INCLINATION = shatir.MOON_INCLINATION

# Ptolemaic constants: eccentricity (center-to-observer) and epicycle radius.
PTOLEMY_SUN_ECCENTRICITY = sx("2;29,30")
PTOLEMY_MOON = {"eccentricity": sx("10;19"), "deferent": sx("49;41"), "epicycle": sx("5;15")}
PTOLEMY_PLANETS = {
    "saturn": (sx("3;25"), sx("6;30")),
    "jupiter": (sx("2;45"), sx("11;30")),
    "mars": (6.0, sx("39;30")),
    "venus": (sx("1;15"), sx("43;10")),
    "mercury": (3.0, sx("22;30")),
}
# Curvilinear couple amplitude for the Moon: the largest prosneusis equation.
TUSI_MOON_CURVILINEAR = sx("13;9")
SADR_SMALL_ORB = sx("0;52")

MODELS = ("shatir", "shatir3d", "shatir-planar", "ptolemy", "tusi", "urdi", "shirazi", "sadr")
SUPPORTED = {
    "ptolemy": set(shatir.BODIES),
    "tusi": {"saturn", "jupiter", "mars", "venus", "moon"},
    "urdi": {"saturn", "jupiter", "mars", "moon"},
    "shirazi": {"saturn", "jupiter", "mars", "moon", "mercury"},
    "sadr": {"moon"},
}


@dataclass(frozen=True)
class RivalConfig:
    model: str
    body: str
    figure: Mapping[str, np.ndarray]
    chain: tuple[RotationStep, ...]
    constants: Mapping[str, float]


def _figure(*offsets: float) -> dict[str, np.ndarray]:
    """Points P_k along j: ``offsets`` are P1P2, P2P3, ..., last one ends at P."""
    figure = {"O": np.zeros(3), "P1": np.zeros(3)}
    y = 0.0
    for k, step in enumerate(offsets, start=2):
        y += step
        figure["P" if k == len(offsets) + 1 else f"P{k}"] = y * J
    return figure


def superior_eccentricity(body: str) -> float:
    """Eccentricity that makes the Maragha chains match Ibn al-Shatir's."""
    return 2.0 * shatir.PLANET_DATA[body].deferent_shift / 3.0


def _main_tilt(body: str, center: str = "P2") -> RotationStep:
    d = shatir.PLANET_DATA[body]
    axis = direction(d.node_offset) if body in shatir.SUPERIOR else I
    return rot(center, d.inclined, axis, tag="main")


def tusi_config(body: str, equivalent: bool = False, latitude_device: str | None = None) -> RivalConfig:
    """Tusi's equant substitute: deferent about the equant plus a rectilinear couple.

    For Venus, Tusi's own constants (2e = 2;30, couple 0;37,30, epicycle 43;10)
    are used unless ``equivalent`` asks for the set matching Ibn al-Shatir.
    ``latitude_device`` (Saturn only): "iltifaf", "naive" or "corrected".
    """
    if body == "moon":
        half = sx("10;19") / 2
        figure = _figure(0.0, 0.0, sx("49;41"), half, half, 0.0, sx("5;15"))
        chain = (
            rot("P1", angle(node=-1)),
            rot("P1", MOON_INCLINATION, J, tag="main"),
            rot("P2", angle(mean_longitude=1, node=1, double_elongation=-1)),
            rot("P3", angle(double_elongation=1)),
            rot("P4", angle(double_elongation=1)),
            rot("P5", angle(double_elongation=-2)),
            rot("P6", angle(double_elongation=1)),
            rot("P7", angle(anomaly=-1)),
        )
        return RivalConfig("tusi", body, figure, chain, {})
    if body == "venus":
        if equivalent:
            twice_e, half_couple, epicycle = sx("2;7"), sx("0;26"), sx("43;33")
        else:
            twice_e, half_couple, epicycle = sx("2;30"), sx("0;37,30"), sx("43;10")
    elif body in shatir.SUPERIOR:
        e = superior_eccentricity(body)
        twice_e, half_couple, epicycle = 2 * e, e / 2, shatir.PLANET_DATA[body].epicycle
    else:
        raise UnsupportedPair(f"tusi has no model for {body}")
    figure = _figure(0.0, twice_e, RADIUS, -half_couple, -half_couple, 0.0, epicycle)
    head = [rot("P1", angle(apogee=1)), _main_tilt(body)]
    couple = [
        rot("P3", angle(center=1)),
        rot("P4", angle(center=1)),
        rot("P5", angle(center=-2)),
    ]
    if latitude_device is None:
        tail = [rot("P6", angle(center=1)), rot("P7", angle(anomaly=1))]
    else:
        if body != "saturn":
            raise UnsupportedPair("latitude devices are only defined for saturn")
        tail = _saturn_latitude_device(latitude_device, figure)
    return RivalConfig("tusi", body, figure, tuple(head + couple + tail),
                       {"latitude_device": latitude_device or ""})


def _saturn_latitude_device(kind: str, figure: dict[str, np.ndarray]) -> list[RotationStep]:
    """Epicycle-plane devices appended after the couple (all centers at P6)."""
    for label in ("P8", "P9", "P10"):
        figure[label] = figure["P6"]
    if kind == "iltifaf":
        tilt_axis = np.array([math.sin(math.radians(4.5)), math.cos(math.radians(4.5)), 0.0])
        return [
            rot("P6", angle(center=1)),
            rot("P7", angle(-140.0, center=-1), tilt_axis),
            rot("P8", angle(140.0, center=1), J),
            rot("P9", angle(anomaly=1)),
        ]
    if kind not in ("naive", "corrected"):
        raise PreconditionViolated(f"unknown latitude device {kind!r}")
    pole = 4.5 if kind == "naive" else 2.0

    def yz(deg):
        return np.array([0.0, math.cos(math.radians(deg)), -math.sin(math.radians(deg))])

    steps = []
    if kind == "corrected":
        steps.append(rot("P6", -sx("2;30"), direction(-140.0)))
    steps += [
        rot("P6", angle(center=1)),
        rot("P7", angle(50.0, center=1), J),
        rot("P8", angle(-100.0, center=-2), yz(pole / 2)),
        rot("P9", angle(50.0, center=1), yz(pole)),
        rot("P10", -4.5, I),
        rot("P10", angle(anomaly=1)),
    ]
    return steps


def urdi_config(body: str) -> RivalConfig:
    if body == "moon":
        figure = _figure(0.0, sx("10;19"), sx("49;41"), sx("5;15"))
        chain = (
            rot("P1", angle(node=-1)),
            rot("P1", MOON_INCLINATION, J, tag="main"),
            rot("P2", angle(mean_longitude=1, node=1, double_elongation=1)),
            rot("P3", angle(double_elongation=-1)),
            rot("P4", angle(anomaly=-1)),
        )
        return RivalConfig("urdi", body, figure, chain, {})
    if body not in shatir.SUPERIOR:
        raise UnsupportedPair(f"urdi has no model for {body}")
    e = superior_eccentricity(body)
    figure = _figure(0.0, 1.5 * e, RADIUS, -e / 2, shatir.PLANET_DATA[body].epicycle)
    chain = (
        rot("P1", angle(apogee=1)),
        _main_tilt(body),
        rot("P3", angle(center=1)),
        rot("P4", angle(center=1)),
        rot("P5", angle(anomaly=1, center=-1)),
    )
    return RivalConfig("urdi", body, figure, chain, {"eccentricity": e})


def shirazi_config(body: str) -> RivalConfig:
    if body == "moon":
        half = sx("10;19") / 2
        figure = _figure(0.0, half, sx("49;41"), half, sx("5;15"))
        chain = (
            rot("P1", angle(node=-1)),
            rot("P1", MOON_INCLINATION, J, tag="main"),
            rot("P2", angle(mean_longitude=1, node=1, double_elongation=-1)),
            rot("P3", angle(double_elongation=1)),
            rot("P4", angle(double_elongation=1)),
            rot("P5", angle(double_elongation=-1, anomaly=-1)),
        )
        return RivalConfig("shirazi", body, figure, chain, {})
    if body == "mercury":
        c = 3.0
        figure = _figure(6.0, RADIUS, -c / 2, -c / 2, c / 2, c / 2, c, sx("22;30"))
        chain = (
            rot("P1", angle(apogee=1)),
            _main_tilt(body, "P1"),
            rot("P2", angle(center=1)),
            rot("P3", angle(center=-1)),
            rot("P4", angle(center=2)),
            rot("P5", angle(center=1)),
            rot("P6", angle(center=-4)),
            rot("P7", angle(center=3)),
            rot("P8", angle(anomaly=1, center=-1)),
        )
        return RivalConfig("shirazi", body, figure, chain, {"c": c})
    if body not in shatir.SUPERIOR:
        raise UnsupportedPair(f"shirazi has no model for {body}")
    e = superior_eccentricity(body)
    figure = _figure(0.0, 1.5 * e, RADIUS, -e / 2, 0.0, shatir.PLANET_DATA[body].epicycle)
    chain = (
        rot("P1", angle(apogee=1)),
        _main_tilt(body),
        rot("P3", angle(center=1)),
        rot("P4", angle(center=1)),
        rot("P5", angle(center=-1)),
        rot("P6", angle(anomaly=1)),
    )
    return RivalConfig("shirazi", body, figure, chain, {"eccentricity": e})


def sadr_config(alternative: bool = False) -> RivalConfig:
    """Shirazi's Moon with one more small orb at the end.

    The adopted reading has the small orb at +0;52 turning by -2*eta; the
    alternative one has -0;52 turning by +2*eta.
    """
    half = sx("10;19") / 2
    small = -SADR_SMALL_ORB if alternative else SADR_SMALL_ORB
    sign = 1 if alternative else -1
    figure = _figure(0.0, half, sx("49;41"), half, sx("5;15"), small)
    chain = shirazi_config("moon").chain + (rot("P6", angle(double_elongation=sign)),)
    return RivalConfig("sadr", "moon", figure, chain, {"small_orb": small})


# -- Ptolemy ----------------------------------------------------------------------

def ptolemy_sun_equation(anomaly: float) -> float:
    e = PTOLEMY_SUN_ECCENTRICITY
    s = e * math.sin(math.radians(anomaly))
    return -math.degrees(math.asin(s / math.hypot(s, RADIUS + e * math.cos(math.radians(anomaly)))))


def _ptolemy_moon_point(p: Mapping[str, float], prosneusis: bool) -> np.ndarray:
    """Planar position in the Moon's orbit frame (longitudes from the node
    convention of the chains, i.e. measured like the mean longitude)."""
    e, big_r, r = PTOLEMY_MOON["eccentricity"], PTOLEMY_MOON["deferent"], PTOLEMY_MOON["epicycle"]
    mean = p["mean_longitude"]
    eta2 = p["double_elongation"]
    center = e * direction(mean - eta2)
    c2 = math.cos(math.radians(eta2))
    s2 = math.sin(math.radians(eta2))
    dist = e * c2 + math.sqrt(big_r**2 - (e * s2) ** 2)
    epicycle_center = dist * direction(mean)
    origin = -center if prosneusis else np.zeros(3)
    apogee = epicycle_center - origin
    apogee_lon = ecliptic_coordinates(apogee)[0]
    return epicycle_center + r * direction(apogee_lon - p["anomaly"])


def _ptolemy_planet_point(body: str, p: Mapping[str, float]) -> np.ndarray:
    e, r = PTOLEMY_PLANETS[body]
    apogee = p["apogee"]
    mean_dir = direction(apogee + p["center"])
    if body == "mercury":
        # Crank: the deferent center turns backward about a point 2e out.
        equant = e * direction(apogee)
        deferent_center = 2 * e * direction(apogee) + e * direction(apogee - p["center"])
    else:
        equant = 2 * e * direction(apogee)
        deferent_center = e * direction(apogee)
    w = equant - deferent_center
    b = float(w @ mean_dir)
    s = -b + math.sqrt(b * b - float(w @ w) + RADIUS**2)
    epicycle_center = equant + s * mean_dir
    return epicycle_center + r * direction(apogee + p["center"] + p["anomaly"])


def _ptolemy_record(body: str, t: float, moon_model: int = 3) -> shatir.EphemerisRecord:
    cfg = shatir.build_config(body)
    p = cfg.parameters(t)
    if body == "sun":
        e = PTOLEMY_SUN_ECCENTRICITY
        a = p["anomaly"]
        lon = p["apogee"] + a + ptolemy_sun_equation(a)
        dist = math.hypot(e * math.sin(math.radians(a)), RADIUS + e * math.cos(math.radians(a)))
        return shatir.EphemerisRecord(t, body, "ptolemy", lon % 360.0, 0.0, dist)
    if body == "moon":
        if moon_model not in (2, 3):
            raise PreconditionViolated("moon_model must be 2 or 3")
        point = _ptolemy_moon_point(p, prosneusis=moon_model == 3)
        in_orbit, _, dist = ecliptic_coordinates(point)
        argument = in_orbit + p["node"]
        lon = in_orbit + displacement_en(argument, MOON_INCLINATION)
        lat = inclined_latitude(argument, MOON_INCLINATION)
        return shatir.EphemerisRecord(t, body, f"ptolemy{moon_model}", lon % 360.0, lat, dist)
    in_plane, _, dist = ecliptic_coordinates(_ptolemy_planet_point(body, p))
    node = p["apogee"] + cfg.node_offset
    incl = cfg.inclinations["inclined"]
    lon = in_plane + displacement_en(in_plane - node, incl)
    lat = inclined_latitude(in_plane - node, incl)
    return shatir.EphemerisRecord(t, body, "ptolemy", lon % 360.0, lat, dist)


# -- Urdi's Moon equation ------------------------------------------------------------

def urdi_moon_equation(anomaly: float, double_elongation: float, include_q: bool = False) -> float:
    """Equation of the Moon in Urdi's model as he computed it.

    The epicycle equation is measured from the line to the epicycle center,
    whose own offset ``q`` from the mean longitude is left out unless
    ``include_q`` is set.
    """
    op3, p3p4, p4p = sx("10;19"), sx("49;41"), sx("5;15")
    s2 = math.sin(math.radians(double_elongation))
    c2 = math.cos(math.radians(double_elongation))
    op4 = math.hypot(p3p4 * s2, p3p4 * c2 + op3)
    q = math.degrees(math.asin(op3 * s2 / op4))
    arg = -math.radians(anomaly + q)
    across = p4p * math.sin(arg)
    op = math.hypot(across, op4 + p4p * math.cos(arg))
    equation = math.degrees(math.asin(across / op))
    return equation + q if include_q else equation


def _urdi_moon_planar(t: float, include_q: bool) -> shatir.EphemerisRecord:
    p = shatir.build_config("moon").parameters(t)
    in_orbit = p["mean_longitude"] + urdi_moon_equation(p["anomaly"], p["double_elongation"], include_q)
    argument = in_orbit + p["node"]
    lon = in_orbit + displacement_en(argument, MOON_INCLINATION)
    lat = inclined_latitude(argument, MOON_INCLINATION)
    return shatir.EphemerisRecord(t, "moon", "urdi", lon % 360.0, lat, float("nan"))


# -- dispatch ----------------------------------------------------------------------------

def _chain_record(cfg: RivalConfig, params: Mapping[str, float], t: float) -> shatir.EphemerisRecord:
    lon, lat, dist = ecliptic_coordinates(apply_chain(cfg.chain, params, "P", cfg.figure))
    return shatir.EphemerisRecord(t, cfg.body, cfg.model, lon, lat, dist)


def _with_curvilinear(cfg: RivalConfig) -> RivalConfig:
    c = TUSI_MOON_CURVILINEAR / 2
    device = (
        rot("P7", c, I),
        rot("P7", angle(double_elongation=-2), J),
        rot("P7", -c, I),
        rot("P7", angle(double_elongation=1), J),
    )
    chain = cfg.chain[:-1] + device + cfg.chain[-1:]
    return RivalConfig(cfg.model, cfg.body, cfg.figure, chain, {"curvilinear": c})


def rival_config(model: str, body: str, **options) -> RivalConfig:
    if model == "tusi":
        cfg = tusi_config(body, options.get("equivalent", False), options.get("latitude_device"))
        if body == "moon" and options.get("curvilinear"):
            cfg = _with_curvilinear(cfg)
        return cfg
    if model == "urdi":
        return urdi_config(body)
    if model == "shirazi":
        return shirazi_config(body)
    if model == "sadr":
        return sadr_config(options.get("alternative", False))
    raise UnsupportedPair(f"{model} is not a rotation-chain model")


def rival_position(model: str, body: str, t: float, **options) -> shatir.EphemerisRecord:
    """Position of ``body`` at ``t`` in ``model``.

    Options: ``moon_model`` (2 or 3) for Ptolemy's Moon; ``include_q`` for
    Urdi's Moon (True, the default, evaluates his chain; False reproduces the
    equation as he computed it, without q); ``curvilinear`` and ``equivalent`` for Tusi;
    ``latitude_device`` for Tusi's Saturn; ``alternative`` for Sadr.
    """
    model, body = model.lower(), body.lower()
    if model in ("shatir", "shatir3d", "shatir-planar"):
        if body not in shatir.BODIES:
            raise UnsupportedPair(f"no {model} model for {body}")
        cfg = shatir.build_config(body, options.get("tilts", "full"), options.get("variant", 1))
        if model == "shatir-planar":
            return shatir.position_planar(cfg, t, options.get("interpolate", False))
        return shatir.position3d(cfg, t)
    if model not in SUPPORTED or body not in SUPPORTED[model]:
        raise UnsupportedPair(f"no {model} model for {body}")
    if model == "ptolemy":
        return _ptolemy_record(body, t, options.get("moon_model", 3))
    if model == "urdi" and body == "moon" and not options.get("include_q", True):
        return _urdi_moon_planar(t, include_q=False)
    cfg = rival_config(model, body, **options)
    return _chain_record(cfg, shatir.build_config(body).parameters(t), t)


def _comparison_options(model: str) -> dict:
    # Rival chains carry only the inclined orb, so Ibn al-Shatir's model is
    # compared with its small-orb tilts switched off.
    if model in ("shatir", "shatir3d"):
        return {"tilts": "main"}
    return {}


def equivalence_report(model_a: str, model_b: str, body: str, samples: int = 1000,
                       seed: int = 0, span: tuple[float, float] = (-36500.0, 36500.0),
                       options_a: Mapping | None = None, options_b: Mapping | None = None) -> float:
    """Largest |longitude difference| in degrees over random instants."""
    rng = random.Random(seed)
    opts_a = {**_comparison_options(model_a), **(options_a or {})}
    opts_b = {**_comparison_options(model_b), **(options_b or {})}
    worst = 0.0
    for _ in range(samples):
        t = rng.uniform(*span)
        a = rival_position(model_a, body, t, **opts_a).longitude
        b = rival_position(model_b, body, t, **opts_b).longitude
        worst = max(worst, abs(wrap180(a - b)))
    return worst


# -- geometric claims ----------------------------------------------------------------------

def tusi_deferent_deviation(body: str, steps: int = 3600) -> float:
    """Largest radial gap between the path of Tusi's epicycle center and the
    circle of radius 60 about the Ptolemaic deferent center (e from O)."""
    cfg = tusi_config(body)
    e = cfg.figure["P3"][1] / 2
    deferent_center = e * J
    worst = 0.0
    for k in range(steps):
        params = {"apogee": 0.0, "center": 360.0 * k / steps, "anomaly": 0.0}
        point = apply_chain(cfg.chain[2:-1], params, "P6", cfg.figure)
        worst = max(worst, abs(float(np.linalg.norm(point - deferent_center)) - RADIUS))
    return worst


def moon_distance_ratio(model: str, steps: int = 180) -> float:
    """max/min Earth-Moon distance over a grid of elongation and anomaly."""
    distances = []
    for a in range(steps):
        for b in range(steps):
            p = {"mean_longitude": 0.0, "node": 0.0, "anomaly": 360.0 * a / steps,
                 "double_elongation": 360.0 * b / steps}
            if model == "ptolemy":
                distances.append(float(np.linalg.norm(_ptolemy_moon_point(p, prosneusis=True))))
            elif model == "shatir":
                eta2 = p["double_elongation"]
                distances.append(shatir.moon_distance(p["anomaly"] + shatir.moon_c1(eta2), eta2))
            else:
                raise UnsupportedPair(f"no distance ratio for {model}")
    return max(distances) / min(distances)


def sadr_deviation_profile(steps: int = 360, anomaly: float = 0.0,
                           alternative: bool = False) -> list[tuple[float, float]]:
    """(elongation, |sadr - shirazi| longitude) with the Moon at a fixed anomaly.

    At anomaly 0 the Moon sits on the epicycle's mean apogee, where a shift of
    that apogee (the effect the small orb imitates) shows most directly.
    """
    sadr = sadr_config(alternative)
    shirazi = shirazi_config("moon")
    profile = []
    for k in range(steps):
        elongation = 360.0 * k / steps
        params = {"mean_longitude": 0.0, "node": 0.0, "anomaly": anomaly,
                  "double_elongation": 2 * elongation}
        la = ecliptic_coordinates(apply_chain(sadr.chain, params, "P", sadr.figure))[0]
        lb = ecliptic_coordinates(apply_chain(shirazi.chain, params, "P", shirazi.figure))[0]
        profile.append((elongation, abs(wrap180(la - lb))))
    return profile


# -- Mercury calibration ----------------------------------------------------------------------

@dataclass(frozen=True)
class MercuryCalibration:
    shift_sum: float  # P3P4 + P4P5
    shift_difference: float  # P3P4 - P4P5
    radius_apogee: float  # P5P6 - 2 P6P7
    radius_quadrature: float  # P5P6 + 2 P6P7

    @property
    def deferent_shift(self) -> float:
        return (self.shift_sum + self.shift_difference) / 2

    @property
    def rotator(self) -> float:
        return (self.shift_sum - self.shift_difference) / 2

    @property
    def epicycle(self) -> float:
        return (self.radius_apogee + self.radius_quadrature) / 2

    @property
    def couple(self) -> float:
        return (self.radius_quadrature - self.radius_apogee) / 4


def mercury_calibration(maxc2_apogee: float = 19.5, maxc2_perigee: float = sx("23;15"),
                        c1_quadrature: float = 3.0, maxc2_quadrature: float = sx("23;15"),
                        radius: float = RADIUS) -> MercuryCalibration:
    """Solve for the orb radii that reproduce four observed elongations.

    Apogee and perigee share one apparent epicycle radius, so their maximal
    equations fix the eccentric shift; the quadrature equation of center and
    maximal elongation fix the rest.
    """
    for name, value in (("maxc2_apogee", maxc2_apogee), ("maxc2_perigee", maxc2_perigee),
                        ("c1_quadrature", c1_quadrature), ("maxc2_quadrature", maxc2_quadrature)):
        if not 0.0 < value < 90.0:
            raise InfeasibleTargets(f"{name} must lie strictly between 0 and 90 degrees")
    sa = math.sin(math.radians(maxc2_apogee))
    sp = math.sin(math.radians(maxc2_perigee))
    shift_sum = radius * (sp - sa) / (sp + sa)
    radius_apogee = (radius + shift_sum) * sa
    shift_difference = radius * math.tan(math.radians(c1_quadrature))
    radius_quadrature = math.sin(math.radians(maxc2_quadrature)) * math.hypot(shift_difference, radius)
    if radius_apogee >= radius - shift_sum or radius_quadrature >= math.hypot(shift_difference, radius):
        raise InfeasibleTargets("the epicycle would enclose the observer")
    return MercuryCalibration(shift_sum, shift_difference, radius_apogee, radius_quadrature)


def ptolemy_mercury_eccentricity(ratio: float, radius: float = RADIUS) -> float:
    """e from C = (R + 3e)/(R - e), the apogee/perigee distance ratio."""
    return radius * (ratio - 1) / (ratio + 3)


def ptolemy_mercury_shift(eccentricity: float, radius: float = RADIUS) -> float:
    """P3P4 - P4P5 reproducing Ptolemy's quadrature equation of center."""
    return radius * eccentricity / (math.sqrt(radius**2 - eccentricity**2) - eccentricity)
