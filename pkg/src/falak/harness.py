"""Ephemeris sweeps, error scoring against reference series, station search."""
from __future__ import annotations

import csv
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from . import rivals, shatir
from .errors import PreconditionViolated, SpanMismatch
from .sphere import circular_difference, wrap180

REFERENCE_HEADER = ("t_days", "body", "lon_deg", "lat_deg")
TAB_LEVELS = (0.5, 0.7, 0.9, 0.95, 0.98)


def position(model: str, body: str, t: float, **options) -> shatir.EphemerisRecord:
    return rivals.rival_position(model, body, t, **options)


def sample_times(t0: float, t1: float, step: float) -> list[float]:
    if step <= 0:
        raise PreconditionViolated("step must be positive")
    if t1 < t0:
        raise PreconditionViolated("t1 must not precede t0")
    count = int(math.floor((t1 - t0) / step + 1e-9))
    return [t0 + k * step for k in range(count + 1)]


def ephemeris(body: str, model: str, t0: float, t1: float, step: float,
              **options) -> list[shatir.EphemerisRecord]:
    return [position(model, body, t, **options) for t in sample_times(t0, t1, step)]


def format_record(rec: shatir.EphemerisRecord, digits: int = 9) -> str:
    return f"{rec.t:.6f},{rec.body},{rec.longitude:.{digits}f},{rec.latitude:.{digits}f},{rec.distance:.{digits}f}"


# -- reference series ---------------------------------------------------------------

@dataclass(frozen=True)
class ReferenceRow:
    t: float
    body: str
    longitude: float
    latitude: float
    distance: float | None = None


def read_reference(lines: Iterable[str]) -> list[ReferenceRow]:
    """Parse ``t_days,body,lon_deg,lat_deg[,dist]`` rows (decimal degrees)."""
    reader = csv.reader(lines)
    header = tuple(h.strip() for h in next(reader, ()))
    if header[:4] != REFERENCE_HEADER or len(header) > 5 or (len(header) == 5 and header[4] != "dist"):
        raise PreconditionViolated(f"reference header must be t_days,body,lon_deg,lat_deg[,dist], got {header}")
    rows = []
    last_t: dict[str, float] = {}
    for n, fields in enumerate(reader, start=2):
        if not fields:
            continue
        if len(fields) != len(header):
            raise PreconditionViolated(f"line {n}: expected {len(header)} fields")
        try:
            t, lon, lat = float(fields[0]), float(fields[2]), float(fields[3])
            dist = float(fields[4]) if len(fields) == 5 else None
        except ValueError:
            raise PreconditionViolated(f"line {n}: numeric field expected") from None
        body = fields[1].strip().lower()
        if not 0.0 <= lon < 360.0:
            raise PreconditionViolated(f"line {n}: longitude {lon} not in [0, 360)")
        if body in last_t and t <= last_t[body]:
            raise PreconditionViolated(f"line {n}: times must increase strictly per body")
        last_t[body] = t
        rows.append(ReferenceRow(t, body, lon, lat, dist))
    return rows


@dataclass(frozen=True)
class ErrorTable:
    thresholds: tuple[float, ...]
    longitude: tuple[float, ...]  # cumulative frequency of |dlon| <= threshold
    latitude: tuple[float, ...]
    lon_errors: tuple[float, ...]
    lat_errors: tuple[float, ...]


def _cumulative(errors: Sequence[float], thresholds: Sequence[float]) -> tuple[float, ...]:
    n = len(errors)
    return tuple(sum(1 for e in errors if e <= th) / n for th in thresholds)


def error_table(body: str, model: str, reference: Sequence[ReferenceRow],
                thresholds: Sequence[float], span: tuple[float, float] | None = None,
                **options) -> ErrorTable:
    """Score ``model`` against the reference rows for ``body``.

    Longitude errors use the shorter arc on the circle; latitude errors are
    plain differences.  ``span`` restricts the rows and must lie inside the
    reference coverage.
    """
    rows = [r for r in reference if r.body == body]
    if not rows:
        raise SpanMismatch(f"reference has no rows for {body}")
    if span is not None:
        lo, hi = span
        if lo < rows[0].t or hi > rows[-1].t:
            raise SpanMismatch(f"reference covers [{rows[0].t}, {rows[-1].t}], asked [{lo}, {hi}]")
        rows = [r for r in rows if lo <= r.t <= hi]
        if not rows:
            raise SpanMismatch("no reference rows inside the requested span")
    thresholds = tuple(sorted(thresholds))
    lon_err, lat_err = [], []
    for r in rows:
        rec = position(model, body, r.t, **options)
        lon_err.append(abs(circular_difference(rec.longitude, r.longitude)))
        lat_err.append(abs(rec.latitude - r.latitude))
    return ErrorTable(thresholds, _cumulative(lon_err, thresholds), _cumulative(lat_err, thresholds),
                      tuple(lon_err), tuple(lat_err))


def quantile(errors: Sequence[float], level: float) -> float:
    """Smallest observed error e with at least ``level`` of the sample <= e."""
    if not errors:
        raise PreconditionViolated("no errors to summarize")
    if not 0.0 < level <= 1.0:
        raise PreconditionViolated("quantile level must be in (0, 1]")
    ordered = sorted(errors)
    return ordered[max(0, math.ceil(level * len(ordered)) - 1)]


# -- stations ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Station:
    t: float
    kind: str  # "direct->retro" or "retro->direct"


def longitude_rate(body: str, model: str, t: float, h: float = 1e-3, **options) -> float:
    """Central-difference dlon/dt in degrees per day."""
    a = position(model, body, t - h, **options).longitude
    b = position(model, body, t + h, **options).longitude
    return wrap180(b - a) / (2 * h)


def find_stations(body: str, model: str, t0: float, t1: float, step: float,
                  tolerance: float = 1e-4, **options) -> list[Station]:
    times = sample_times(t0, t1, step)
    rates = [longitude_rate(body, model, t, **options) for t in times]
    stations = []
    for k in range(len(times) - 1):
        if (rates[k] > 0) == (rates[k + 1] > 0):
            continue
        lo, hi, rate_lo = times[k], times[k + 1], rates[k]
        while hi - lo > tolerance:
            mid = 0.5 * (lo + hi)
            rate_mid = longitude_rate(body, model, mid, **options)
            if (rate_mid > 0) == (rate_lo > 0):
                lo, rate_lo = mid, rate_mid
            else:
                hi = mid
        stations.append(Station(0.5 * (lo + hi), "direct->retro" if rates[k] > 0 else "retro->direct"))
    return stations


@dataclass(frozen=True)
class RetrogradationCriterion:
    motion_ratio: float  # epicycle motion / carrying-orb motion
    distance_ratio: float  # (distance to epicycle center - radius) / radius
    retrogrades: bool


def _epicycle_geometry(body: str) -> float:
    if body == "sun":
        return sum(shatir.SUN_OFFSETS[1:])
    if body == "moon":
        return shatir.MOON_OFFSETS[1] - shatir.MOON_OFFSETS[2]
    if body == "mercury":
        return shatir.mercury_apparent_radius(90.0)
    return shatir.PLANET_DATA[body].epicycle


def ratio_criterion(body: str) -> RetrogradationCriterion:
    """A body can retrograde only if its epicycle turns faster, relative to
    the carrying orb, than the near part of the epicycle is close."""
    cfg = shatir.build_config(body)
    p0, p1 = cfg.parameters(0.0), cfg.parameters(1.0)

    def rate(name):
        return wrap180(p1[name] - p0[name])

    if body == "sun":
        orb = epicycle = rate("anomaly")
    elif body == "moon":
        orb, epicycle = rate("mean_longitude"), rate("anomaly")
    else:
        orb, epicycle = rate("center"), rate("anomaly")
    radius = _epicycle_geometry(body)
    motion = abs(epicycle / orb)
    distance = (shatir.RADIUS - radius) / radius
    return RetrogradationCriterion(motion, distance, motion > distance)
