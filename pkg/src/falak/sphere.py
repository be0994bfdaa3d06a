"""Ecliptic frame conventions and small spherical-trigonometry helpers.

The frame is right-handed with ``j`` pointing to the origin of longitudes and
``k`` to the north ecliptic pole.  A positive rotation about ``k`` moves a
point eastward, so longitude is measured from ``j`` toward ``-i``.
"""
from __future__ import annotations

import math

import numpy as np


def wrap180(angle: float) -> float:
    """Reduce an angle into [-180, 180)."""
    return (angle + 180.0) % 360.0 - 180.0


def circular_difference(a: float, b: float) -> float:
    """Signed minimal arc from ``b`` to ``a``."""
    return wrap180(a - b)


def direction(longitude: float) -> np.ndarray:
    """Unit vector of the ecliptic at ``longitude`` (the image of j)."""
    rad = math.radians(longitude)
    return np.array([-math.sin(rad), math.cos(rad), 0.0])


def ecliptic_coordinates(p: np.ndarray) -> tuple[float, float, float]:
    """(longitude in [0, 360), latitude, distance) of a point seen from O."""
    x, y, z = (float(c) for c in p)
    dist = math.sqrt(x * x + y * y + z * z)
    lon = math.degrees(math.atan2(-x, y)) % 360.0
    lat = math.degrees(math.asin(max(-1.0, min(1.0, z / dist)))) if dist else 0.0
    return lon, lat, dist


def displacement_en(x: float, inclination: float) -> float:
    """Longitude shift of a point at arc ``x`` from the node of an orb tilted
    by ``inclination``: arctan(cos i tan x) - x, taken on the branch that keeps
    the result small, and 0 at the limits x = +-90.
    """
    xr = math.radians(x)
    projected = math.atan2(math.cos(math.radians(inclination)) * math.sin(xr), math.cos(xr))
    return wrap180(math.degrees(projected) - x)


def inclined_latitude(x: float, inclination: float) -> float:
    """Latitude of a point at arc ``x`` from the ascending node."""
    return math.degrees(math.asin(math.sin(math.radians(inclination)) * math.sin(math.radians(x))))
