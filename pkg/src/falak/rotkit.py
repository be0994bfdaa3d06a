"""Affine rotations in 3-D and their compositions.

A model is a list of uniform rotations written left to right, the way the
compositions are written on paper: ``R1 R2 ... Rn`` applies ``Rn`` first.
Centers are labels resolved against a figure (a dict of named points) or
explicit coordinates, and axes are fixed vectors of the initial frame.
Angles are affine forms over named time-linear parameters, so one chain can
be evaluated at any instant.
"""
from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionViolated, UnknownPointLabel

I = np.array([1.0, 0.0, 0.0])
J = np.array([0.0, 1.0, 0.0])
K = np.array([0.0, 0.0, 1.0])

Vector = tuple[float, float, float]
Center = str | Vector


@dataclass(frozen=True)
class Angle:
    """``const + sum(coeff * params[name])`` in degrees."""

    const: float = 0.0
    terms: tuple[tuple[str, float], ...] = ()

    def __call__(self, params: Mapping[str, float]) -> float:
        return self.const + sum(c * params[name] for name, c in self.terms)

    def __neg__(self) -> Angle:
        return Angle(-self.const, tuple((n, -c) for n, c in self.terms))


def angle(const: float = 0.0, **coeffs: float) -> Angle:
    """``angle(kappa=2)`` is 2*kappa; ``angle(5.0)`` is a fixed 5 degrees."""
    return Angle(const, tuple(sorted(coeffs.items())))


def as_vector(v) -> np.ndarray:
    return np.asarray(v, dtype=float).reshape(3)


@dataclass(frozen=True)
class RotationStep:
    center: Center
    angle: Angle
    axis: Vector = (0.0, 0.0, 1.0)
    tag: str = ""  # free-form label used to switch groups of steps off

    def __post_init__(self):
        axis = as_vector(self.axis)
        norm = float(np.linalg.norm(axis))
        if norm == 0.0:
            raise PreconditionViolated("rotation axis must be non-zero")
        object.__setattr__(self, "axis", tuple(float(c) for c in axis / norm))


def rot(center: Center, theta: Angle | float, axis=K, tag: str = "") -> RotationStep:
    if not isinstance(theta, Angle):
        theta = Angle(float(theta))
    return RotationStep(center, theta, tuple(as_vector(axis)), tag)


def rotation_matrix(axis, degrees: float) -> np.ndarray:
    """Right-handed rotation about a unit ``axis`` (Rodrigues' formula)."""
    x, y, z = as_vector(axis)
    theta = math.radians(degrees)
    c, s = math.cos(theta), math.sin(theta)
    t = 1.0 - c
    return np.array([
        [c + x * x * t, x * y * t - z * s, x * z * t + y * s],
        [y * x * t + z * s, c + y * y * t, y * z * t - x * s],
        [z * x * t - y * s, z * y * t + x * s, c + z * z * t],
    ])


@dataclass(frozen=True)
class Affine:
    """``p -> matrix @ p + offset``."""

    matrix: np.ndarray = field(default_factory=lambda: np.eye(3))
    offset: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __call__(self, p) -> np.ndarray:
        return self.matrix @ as_vector(p) + self.offset

    def __matmul__(self, other: Affine) -> Affine:
        """``self @ other`` applies ``other`` first."""
        return Affine(self.matrix @ other.matrix, self.matrix @ other.offset + self.offset)


def rotation(center, axis, degrees: float) -> Affine:
    c = as_vector(center)
    m = rotation_matrix(axis, degrees)
    return Affine(m, c - m @ c)


def resolve(center: Center, figure: Mapping[str, np.ndarray] | None) -> np.ndarray:
    if isinstance(center, str):
        if figure is None or center not in figure:
            raise UnknownPointLabel(f"point {center!r} is not in the figure")
        return as_vector(figure[center])
    return as_vector(center)


def step_transform(step: RotationStep, params: Mapping[str, float],
                   figure: Mapping[str, np.ndarray] | None = None) -> Affine:
    return rotation(resolve(step.center, figure), step.axis, step.angle(params))


def chain_transform(steps: Sequence[RotationStep], params: Mapping[str, float],
                    figure: Mapping[str, np.ndarray] | None = None) -> Affine:
    total = Affine()
    for step in steps:
        total = total @ step_transform(step, params, figure)
    return total


def apply_chain(steps: Sequence[RotationStep], params: Mapping[str, float], p,
                figure: Mapping[str, np.ndarray] | None = None) -> np.ndarray:
    """Image of ``p`` (a point or a label) under ``R1 R2 ... Rn``."""
    point = resolve(p, figure)
    for step in reversed(steps):
        point = step_transform(step, params, figure)(point)
    return point


def commute(front: RotationStep, tilt: RotationStep, params: Mapping[str, float],
            figure: Mapping[str, np.ndarray] | None = None) -> RotationStep:
    """Return T such that ``front . tilt == T . front``.

    T turns by the same angle as ``tilt`` about the image of its axis and
    center under ``front``.
    """
    f = step_transform(front, params, figure)
    center = f(resolve(tilt.center, figure))
    axis = f.matrix @ as_vector(tilt.axis)
    return RotationStep(tuple(center), tilt.angle, tuple(axis), tilt.tag)


# -- identities -------------------------------------------------------------

def _probe_points(points: Sequence[np.ndarray]) -> list[np.ndarray]:
    scale = max(1.0, max(float(np.linalg.norm(p)) for p in points))
    probes = [as_vector(p) for p in points]
    probes += [scale * v for v in (I, J, K, -I + 2 * J - K, 3 * I - J + 0.5 * K)]
    probes.append(np.zeros(3))
    return probes


def max_discrepancy(a: Affine, b: Affine, probes: Sequence[np.ndarray]) -> float:
    return max(float(np.linalg.norm(a(q) - b(q))) for q in probes)


def _require_equal(u: np.ndarray, v: np.ndarray, what: str) -> None:
    scale = max(1.0, float(np.linalg.norm(u)), float(np.linalg.norm(v)))
    if np.linalg.norm(u - v) > 1e-12 * scale:
        raise PreconditionViolated(what)


def _compose(*rotations: Affine) -> Affine:
    total = Affine()
    for r in rotations:
        total = total @ r
    return total


def check_prop1(p1, p2, p3, p4, alpha: float, axis=K, probes=None) -> float:
    """Residual of R(P2, a) == R(P1, a) R(P3, -a) R(P4, a) given P1P3 == P2P4."""
    p1, p2, p3, p4 = map(as_vector, (p1, p2, p3, p4))
    _require_equal(p3 - p1, p4 - p2, "prop 1 needs vector P1P3 == vector P2P4")
    lhs = rotation(p2, axis, alpha)
    rhs = _compose(rotation(p1, axis, alpha), rotation(p3, axis, -alpha), rotation(p4, axis, alpha))
    return max_discrepancy(lhs, rhs, probes or _probe_points([p1, p2, p3, p4]))


def _check_prop2_pre(p1, p2, p3, p4, p5):
    _require_equal(p4 - p3, -(p2 - p1), "prop 2 needs P3P4 == -P1P2")
    _require_equal(p5 - p3, p2 - p1, "prop 2 needs P3P5 == P1P2")


def check_prop2(p1, p2, p3, p4, p5, alpha: float, axis=K, probes=None) -> float:
    """Residual of R(P1,a) R(P3,a) R(P4,-a) == R(P2,a) R(P5,-a) R(P3,2a) R(P4,-a)."""
    p1, p2, p3, p4, p5 = map(as_vector, (p1, p2, p3, p4, p5))
    _check_prop2_pre(p1, p2, p3, p4, p5)
    lhs = _compose(rotation(p1, axis, alpha), rotation(p3, axis, alpha), rotation(p4, axis, -alpha))
    rhs = _compose(rotation(p2, axis, alpha), rotation(p5, axis, -alpha),
                   rotation(p3, axis, 2 * alpha), rotation(p4, axis, -alpha))
    return max_discrepancy(lhs, rhs, probes or _probe_points([p1, p2, p3, p4, p5]))


def couple_transform(p3, p4, p5, alpha: float, axis=K) -> Affine:
    """The three-orb couple R(P5, -a) R(P3, 2a) R(P4, -a)."""
    return _compose(rotation(p5, axis, -alpha), rotation(p3, axis, 2 * alpha), rotation(p4, axis, -alpha))


def couple_translation_residual(p1, p2, p3, p4, p5, alpha: float, axis=K) -> float:
    """How far the couple is from a translation parallel to line P1P2.

    Returns the larger of the deviation of its linear part from the identity
    and the cross product of its offset with the unit vector along P1P2.
    """
    p1, p2, p3, p4, p5 = map(as_vector, (p1, p2, p3, p4, p5))
    _check_prop2_pre(p1, p2, p3, p4, p5)
    t = couple_transform(p3, p4, p5, alpha, axis)
    base = (p2 - p1) / np.linalg.norm(p2 - p1)
    linear = float(np.max(np.abs(t.matrix - np.eye(3))))
    cross = float(np.linalg.norm(np.cross(t.offset, base)))
    return max(linear, cross)


def check_prop3(p1, p2, p3, alpha: float, axis=K, probes=None) -> float:
    """Residual of R(P3,-a) R(P1,2a) R(P2,-a) == R(P3,a) R(P1,-2a) R(P2,a) given P1P3 == -P1P2."""
    p1, p2, p3 = map(as_vector, (p1, p2, p3))
    _require_equal(p3 - p1, -(p2 - p1), "prop 3 needs P1P3 == -P1P2")
    lhs = _compose(rotation(p3, axis, -alpha), rotation(p1, axis, 2 * alpha), rotation(p2, axis, -alpha))
    rhs = _compose(rotation(p3, axis, alpha), rotation(p1, axis, -2 * alpha), rotation(p2, axis, alpha))
    return max_discrepancy(lhs, rhs, probes or _probe_points([p1, p2, p3]))


def isometry_defect(transform: Affine, points: Sequence[np.ndarray]) -> float:
    """Largest change of a pairwise distance among ``points``."""
    images = [transform(p) for p in points]
    worst = 0.0
    for a in range(len(points)):
        for b in range(a + 1, len(points)):
            before = np.linalg.norm(as_vector(points[a]) - as_vector(points[b]))
            after = np.linalg.norm(images[a] - images[b])
            worst = max(worst, abs(float(after - before)))
    return worst
