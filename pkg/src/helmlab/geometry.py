"""Smooth closed obstacle boundaries in the plane.

Four analytic preset families, all parametrized counterclockwise over
[0, 2pi) with the normal pointing into the exterior:

* ``circle cx cy r``
* ``ellipse cx cy a b``      semi-axes a (x) and b (y)
* ``kite cx cy s``           s * (cos t + 0.65 cos 2t - 0.65, 1.5 sin t)
* ``star cx cy r0 c1 .. cn`` radial r0 + sum c_j cos(j t) (+ optional sine
                             terms when built programmatically)

The same token grammar is accepted by :func:`parse_curve` (CLI and JSON
configs use it; parsing is locale-independent, decimal point only).

Restricting to analytic presets is deliberate: the spectrally accurate
quadrature in the forward solver needs analytic parametrizations, and each
preset is simple (non-self-intersecting) on its documented parameter range
(star curves require the radial function to stay positive, which is
validated at construction).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CurveSpecError

__all__ = [
    "Circle",
    "Ellipse",
    "Kite",
    "TrigStar",
    "BoundaryCurve",
    "CurveSample",
    "CurveSamples",
    "curve_eval",
    "sample_curve",
    "curve_diameter",
    "min_enclosing_ball",
    "parse_curve",
    "format_curve",
]


def _check_positive(name: str, value: float) -> None:
    if not (value > 0.0 and math.isfinite(value)):
        raise CurveSpecError(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True)
class Circle:
    center: tuple[float, float]
    radius: float

    def __post_init__(self):
        _check_positive("radius", self.radius)


@dataclass(frozen=True)
class Ellipse:
    center: tuple[float, float]
    a: float
    b: float

    def __post_init__(self):
        _check_positive("semi-axis a", self.a)
        _check_positive("semi-axis b", self.b)


@dataclass(frozen=True)
class Kite:
    center: tuple[float, float]
    scale: float

    def __post_init__(self):
        _check_positive("scale", self.scale)


@dataclass(frozen=True)
class TrigStar:
    center: tuple[float, float]
    r0: float
    cos_coeffs: tuple[float, ...] = field(default_factory=tuple)
    sin_coeffs: tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self):
        _check_positive("base radius", self.r0)
        object.__setattr__(self, "cos_coeffs", tuple(float(c) for c in self.cos_coeffs))
        object.__setattr__(self, "sin_coeffs", tuple(float(c) for c in self.sin_coeffs))
        t = np.linspace(0.0, 2.0 * math.pi, 4096, endpoint=False)
        rho = self._radial(t)
        if np.min(rho) <= 0.0:
            raise CurveSpecError(
                "star radial function must stay positive (curve would self-intersect)"
            )

    def _radial(self, t: np.ndarray) -> np.ndarray:
        rho = np.full_like(t, self.r0)
        for j, c in enumerate(self.cos_coeffs, start=1):
            rho += c * np.cos(j * t)
        for j, s in enumerate(self.sin_coeffs, start=1):
            rho += s * np.sin(j * t)
        return rho

    def _radial_d1(self, t: np.ndarray) -> np.ndarray:
        out = np.zeros_like(t)
        for j, c in enumerate(self.cos_coeffs, start=1):
            out += -j * c * np.sin(j * t)
        for j, s in enumerate(self.sin_coeffs, start=1):
            out += j * s * np.cos(j * t)
        return out

    def _radial_d2(self, t: np.ndarray) -> np.ndarray:
        out = np.zeros_like(t)
        for j, c in enumerate(self.cos_coeffs, start=1):
            out += -j * j * c * np.cos(j * t)
        for j, s in enumerate(self.sin_coeffs, start=1):
            out += -j * j * s * np.sin(j * t)
        return out


BoundaryCurve = Circle | Ellipse | Kite | TrigStar


@dataclass(frozen=True)
class CurveSample:
    point: tuple[float, float]
    tangent: tuple[float, float]
    outward_normal: tuple[float, float]
    speed: float


@dataclass(frozen=True)
class CurveSamples:
    """Struct-of-arrays form used by the quadrature assembly."""

    t: np.ndarray          # parameters, shape (n,)
    points: np.ndarray     # shape (n, 2)
    velocity: np.ndarray   # x'(t), shape (n, 2)
    accel: np.ndarray      # x''(t), shape (n, 2)
    speed: np.ndarray      # |x'(t)|, shape (n,)
    normal_raw: np.ndarray  # (x2', -x1'), outward, *not* normalized, shape (n, 2)

    @property
    def normal(self) -> np.ndarray:
        return self.normal_raw / self.speed[:, None]


def _pva(curve: BoundaryCurve, t: np.ndarray):
    """Position, velocity, acceleration arrays for parameter array t."""
    cx, cy = curve.center
    ct, st = np.cos(t), np.sin(t)
    if isinstance(curve, Circle):
        r = curve.radius
        pos = np.stack([cx + r * ct, cy + r * st], axis=-1)
        vel = np.stack([-r * st, r * ct], axis=-1)
        acc = np.stack([-r * ct, -r * st], axis=-1)
    elif isinstance(curve, Ellipse):
        a, b = curve.a, curve.b
        pos = np.stack([cx + a * ct, cy + b * st], axis=-1)
        vel = np.stack([-a * st, b * ct], axis=-1)
        acc = np.stack([-a * ct, -b * st], axis=-1)
    elif isinstance(curve, Kite):
        s = curve.scale
        c2, s2 = np.cos(2.0 * t), np.sin(2.0 * t)
        pos = np.stack([cx + s * (ct + 0.65 * c2 - 0.65), cy + 1.5 * s * st], axis=-1)
        vel = np.stack([s * (-st - 1.3 * s2), 1.5 * s * ct], axis=-1)
        acc = np.stack([s * (-ct - 2.6 * c2), -1.5 * s * st], axis=-1)
    elif isinstance(curve, TrigStar):
        rho = curve._radial(t)
        d1 = curve._radial_d1(t)
        d2 = curve._radial_d2(t)
        pos = np.stack([cx + rho * ct, cy + rho * st], axis=-1)
        vel = np.stack([d1 * ct - rho * st, d1 * st + rho * ct], axis=-1)
        acc = np.stack(
            [(d2 - rho) * ct - 2.0 * d1 * st, (d2 - rho) * st + 2.0 * d1 * ct],
            axis=-1,
        )
    else:
        raise CurveSpecError(f"unknown curve type {type(curve).__name__}")
    return pos, vel, acc


def curve_eval(curve: BoundaryCurve, t: float) -> CurveSample:
    """Point, tangent and outward unit normal at parameter t (taken mod 2pi)."""
    ta = np.atleast_1d(np.asarray(float(t) % (2.0 * math.pi)))
    pos, vel, _ = _pva(curve, ta)
    speed = float(np.hypot(vel[0, 0], vel[0, 1]))
    normal = (vel[0, 1] / speed, -vel[0, 0] / speed)
    return CurveSample(
        point=(float(pos[0, 0]), float(pos[0, 1])),
        tangent=(float(vel[0, 0]), float(vel[0, 1])),
        outward_normal=normal,
        speed=speed,
    )


def sample_curve(curve: BoundaryCurve, t: np.ndarray) -> CurveSamples:
    t = np.asarray(t, dtype=float)
    pos, vel, acc = _pva(curve, t)
    speed = np.hypot(vel[:, 0], vel[:, 1])
    normal_raw = np.stack([vel[:, 1], -vel[:, 0]], axis=-1)
    return CurveSamples(t=t, points=pos, velocity=vel, accel=acc, speed=speed,
                        normal_raw=normal_raw)


def curve_diameter(curve: BoundaryCurve) -> float:
    """Diameter of the boundary (dense-sample estimate, adequate for
    resolution bookkeeping)."""
    center, radius = min_enclosing_ball(curve)
    return 2.0 * radius


# ---------------------------------------------------------------------------
# minimal enclosing ball
# ---------------------------------------------------------------------------
_WELZL_SAMPLES = 16384
_DENSE_SAMPLES = 65536


def _circle_from_two(a, b):
    c = 0.5 * (a + b)
    return c, float(np.hypot(*(a - c)))


def _circle_from_three(a, b, c):
    # circumcenter; degenerate (collinear) triples fall back to the widest pair
    d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]))
    if abs(d) < 1e-14 * (abs(a[0]) + abs(b[0]) + abs(c[0]) + 1.0):
        pairs = [_circle_from_two(a, b), _circle_from_two(a, c), _circle_from_two(b, c)]
        return max(pairs, key=lambda cr: cr[1])
    ux = ((a[0] ** 2 + a[1] ** 2) * (b[1] - c[1]) + (b[0] ** 2 + b[1] ** 2) * (c[1] - a[1])
          + (c[0] ** 2 + c[1] ** 2) * (a[1] - b[1])) / d
    uy = ((a[0] ** 2 + a[1] ** 2) * (c[0] - b[0]) + (b[0] ** 2 + b[1] ** 2) * (a[0] - c[0])
          + (c[0] ** 2 + c[1] ** 2) * (b[0] - a[0])) / d
    center = np.array([ux, uy])
    return center, float(np.hypot(*(a - center)))


def _welzl(points: np.ndarray) -> tuple[np.ndarray, float]:
    """Randomized incremental minimum enclosing circle of a point set."""
    rng = np.random.default_rng(1234)
    pts = points[rng.permutation(len(points))]

    def inside(p, c, r):
        return np.hypot(*(p - c)) <= r * (1.0 + 1e-12) + 1e-15

    c, r = pts[0].copy(), 0.0
    for i in range(1, len(pts)):
        if inside(pts[i], c, r):
            continue
        c, r = pts[i].copy(), 0.0
        for j in range(i):
            if inside(pts[j], c, r):
                continue
            c, r = _circle_from_two(pts[i], pts[j])
            for l in range(j):
                if inside(pts[l], c, r):
                    continue
                c, r = _circle_from_three(pts[i], pts[j], pts[l])
    return c, r


def min_enclosing_ball(curve: BoundaryCurve) -> tuple[tuple[float, float], float]:
    """Center and radius of (a 1e-6-accurate, guaranteed-containing) minimal
    enclosing ball of the boundary."""
    if isinstance(curve, Circle):
        return curve.center, curve.radius
    if isinstance(curve, Ellipse):
        return curve.center, max(curve.a, curve.b)
    t = np.linspace(0.0, 2.0 * math.pi, _WELZL_SAMPLES, endpoint=False)
    pos, _, _ = _pva(curve, t)
    center, _ = _welzl(pos)
    td = np.linspace(0.0, 2.0 * math.pi, _DENSE_SAMPLES, endpoint=False)
    dense, _, _ = _pva(curve, td)
    radius = float(np.max(np.hypot(dense[:, 0] - center[0], dense[:, 1] - center[1])))
    # curvature-limited sampling gap: inflate so the continuum curve is covered
    radius += 1e-7
    return (float(center[0]), float(center[1])), radius


def points_min_enclosing_ball(points: np.ndarray) -> tuple[tuple[float, float], float]:
    """Minimum enclosing ball of a raw point cloud (harness helper for
    multi-obstacle scenes)."""
    c, r = _welzl(np.asarray(points, dtype=float))
    return (float(c[0]), float(c[1])), float(r)


# ---------------------------------------------------------------------------
# text grammar
# ---------------------------------------------------------------------------
def parse_curve(text: str) -> BoundaryCurve:
    """Parse the ``kind args...`` curve grammar used by the CLI and configs."""
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise CurveSpecError("empty curve specification")
    kind = tokens[0].lower()
    try:
        args = [float(v) for v in tokens[1:]]
    except ValueError as exc:
        raise CurveSpecError(f"non-numeric curve parameter in {text!r}") from exc
    if kind == "circle":
        if len(args) != 3:
            raise CurveSpecError("usage: circle cx cy r")
        return Circle(center=(args[0], args[1]), radius=args[2])
    if kind == "ellipse":
        if len(args) != 4:
            raise CurveSpecError("usage: ellipse cx cy a b")
        return Ellipse(center=(args[0], args[1]), a=args[2], b=args[3])
    if kind == "kite":
        if len(args) != 3:
            raise CurveSpecError("usage: kite cx cy s")
        return Kite(center=(args[0], args[1]), scale=args[2])
    if kind == "star":
        if len(args) < 3:
            raise CurveSpecError("usage: star cx cy r0 c1 ... cn")
        return TrigStar(center=(args[0], args[1]), r0=args[2],
                        cos_coeffs=tuple(args[3:]))
    raise CurveSpecError(f"unknown curve kind {kind!r}")


def format_curve(curve: BoundaryCurve) -> str:
    cx, cy = curve.center
    if isinstance(curve, Circle):
        return f"circle {cx:.17g} {cy:.17g} {curve.radius:.17g}"
    if isinstance(curve, Ellipse):
        return f"ellipse {cx:.17g} {cy:.17g} {curve.a:.17g} {curve.b:.17g}"
    if isinstance(curve, Kite):
        return f"kite {cx:.17g} {cy:.17g} {curve.scale:.17g}"
    if isinstance(curve, TrigStar):
        if curve.sin_coeffs:
            raise CurveSpecError("star grammar carries cosine coefficients only")
        coeffs = " ".join(f"{c:.17g}" for c in curve.cos_coeffs)
        return f"star {cx:.17g} {cy:.17g} {curve.r0:.17g} {coeffs}".rstrip()
    raise CurveSpecError(f"unknown curve type {type(curve).__name__}")
