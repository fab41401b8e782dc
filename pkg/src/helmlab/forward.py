"""Exterior sound-soft scattering in 2D via a combined-field integral equation.

The scattered field is represented as a combined double/single layer

    w(x) = int_dD [ dG/dnu(y) - i k G(x, y) ] phi(y) ds(y),
    G(x, y) = (i/4) H^(1)_0(k |x - y|),

which is uniquely solvable at every wavenumber (the -ik single-layer term
removes interior resonances).  The sound-soft condition u = 0 on dD gives

    phi/2 + (D - i k S) phi = -u_inc   on dD.

Discretization is the classical spectrally accurate Nystrom scheme on a
2pi-periodic parametrization: the logarithmic part of each kernel is split
off and integrated with the trigonometric product quadrature, the smooth
remainder with the trapezoid rule.  On analytic curves the error decays
super-algebraically in the node count.

Far-field normalization.  With w ~ e^{ikr}/sqrt(r) F(xhat) the layer
representation gives

    F(xhat) = -ik C(k) int_dD (xhat . nu(y) + 1) e^{-ik xhat . y} phi(y) ds(y),
    C(k)    = e^{i pi/4} / sqrt(8 pi k),

and the same normalization is produced independently by the separation-of-
variables series for the disk (disk_farfield_series), which pins the
constant: the two routes must agree, and the test suite enforces it.

Everything here is a pure function of its arguments; independent solves
(different wavenumbers, directions or curves) can run concurrently, and an
assembled system is never mutated after construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import (
    DomainError,
    MismatchError,
    ProximityError,
    ResolutionError,
    SingularSystemError,
    TruncationError,
)
from .geometry import BoundaryCurve, CurveSamples, min_enclosing_ball, sample_curve

__all__ = [
    "WaveParams",
    "Density",
    "FarFieldPattern",
    "solve_exterior_dirichlet",
    "far_field",
    "total_field",
    "disk_farfield_series",
    "incident_field",
    "angle_grid",
    "l2_norm",
    "l2_distance",
    "min_node_count",
]

_EULER_GAMMA = 0.5772156649015328606
_MAX_K_DIAMETER = 50.0
_LINSYS_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class WaveParams:
    """Wavenumber and unit incident direction."""

    k: float
    d: tuple[float, float]

    def __post_init__(self):
        if not (self.k > 0.0 and math.isfinite(self.k)):
            raise DomainError(f"wavenumber must be positive and finite, got {self.k!r}")
        dx, dy = self.d
        if abs(math.hypot(dx, dy) - 1.0) > 1e-14:
            raise DomainError(f"incident direction must be a unit vector, got {self.d!r}")

    @classmethod
    def from_angle(cls, k: float, theta: float) -> "WaveParams":
        return cls(k=k, d=(math.cos(theta), math.sin(theta)))

    @property
    def theta(self) -> float:
        return math.atan2(self.d[1], self.d[0])


@dataclass(frozen=True)
class Density:
    """Layer density on the boundary nodes, with its provenance."""

    t: np.ndarray              # node parameters, uniform on [0, 2pi)
    values: np.ndarray         # complex nodal density
    curve: BoundaryCurve
    wave: WaveParams
    residual: float            # relative linear-system residual achieved

    @property
    def n(self) -> int:
        return len(self.t)


@dataclass(frozen=True)
class FarFieldPattern:
    """Complex far-field samples on a uniform periodic angle grid."""

    angles: np.ndarray
    values: np.ndarray
    wave: WaveParams

    def __post_init__(self):
        if not np.all(np.isfinite(self.values.view(float))):
            raise DomainError("far-field values must be finite")


def angle_grid(count: int) -> np.ndarray:
    """Uniform closed (periodic) observation grid: 2 pi i / count."""
    if count < 4:
        raise DomainError("angle grid needs at least 4 samples")
    return 2.0 * math.pi * np.arange(count) / count


def _as_angle_grid(angles) -> np.ndarray:
    if isinstance(angles, (int, np.integer)):
        return angle_grid(int(angles))
    arr = np.asarray(angles, dtype=float)
    if arr.ndim != 1 or arr.size < 4:
        raise DomainError("angle grid must be a 1-d array with >= 4 samples")
    step = 2.0 * math.pi / arr.size
    if not np.allclose(np.diff(arr), step, rtol=0.0, atol=1e-12):
        raise DomainError("angle grid must be uniform and periodic (step 2pi/M)")
    return arr


def incident_field(points: np.ndarray, wave: WaveParams) -> np.ndarray:
    """Plane wave e^{i k x . d} at the given points, shape (m, 2)."""
    pts = np.asarray(points, dtype=float)
    phase = wave.k * (pts[..., 0] * wave.d[0] + pts[..., 1] * wave.d[1])
    return np.exp(1j * phase)


def min_node_count(curve: BoundaryCurve, k: float) -> int:
    """Documented minimum node count for the requested wavenumber."""
    diam = 2.0 * min_enclosing_ball(curve)[1]
    n = max(8, int(math.ceil(k * diam)) + 8)
    return n + (n % 2)


# ---------------------------------------------------------------------------
# quadrature and assembly
# ---------------------------------------------------------------------------
def _log_quadrature_weights(n: int) -> np.ndarray:
    """Weights R_l of the product quadrature for the ln(4 sin^2((t-tau)/2))
    factor on an n-point uniform periodic grid (n even); entry l applies to
    node offset l = (i - j) mod n."""
    half = n // 2
    l = np.arange(n)
    m = np.arange(1, half)
    # sum_m cos(m l pi / half) / m
    table = np.cos(np.outer(l, m) * (math.pi / half)) @ (1.0 / m)
    return -(2.0 * math.pi / half) * table - (math.pi / half**2) * np.where(l % 2 == 0, 1.0, -1.0)


def _assemble(smp: CurveSamples, k: float) -> np.ndarray:
    """Dense Nystrom matrix of phi/2 + (D - ik S) phi."""
    n = len(smp.t)
    pts = smp.points
    speed = smp.speed

    dx = pts[:, None, :] - pts[None, :, :]
    r = np.hypot(dx[..., 0], dx[..., 1])
    off = ~np.eye(n, dtype=bool)

    h0 = np.empty((n, n), dtype=complex)
    h1 = np.empty((n, n), dtype=complex)
    h0[off], h1[off] = specfun.hankel1_01(k * r[off])
    h0[~off] = 0.0
    h1[~off] = 0.0

    # single layer: M = (i/4) H0(kr) |x'(tau)|
    m_full = 0.25j * h0 * speed[None, :]
    m_log = -(1.0 / (4.0 * math.pi)) * h0.real * speed[None, :]

    # double layer: L = (ik/4) H1(kr) (x(t)-x(tau)) . nraw(tau) / r
    dot_n = dx[..., 0] * smp.normal_raw[None, :, 0] + dx[..., 1] * smp.normal_raw[None, :, 1]
    ratio = np.zeros((n, n))
    ratio[off] = dot_n[off] / r[off]
    l_full = (0.25j * k) * h1 * ratio
    l_log = -(k / (4.0 * math.pi)) * h1.real * ratio

    # split off the log factor; fill analytic diagonal limits
    tdiff = smp.t[:, None] - smp.t[None, :]
    log_factor = np.zeros((n, n))
    log_factor[off] = np.log(4.0 * np.sin(0.5 * tdiff[off]) ** 2)

    a1 = (l_log - 1j * k * m_log)
    a2 = np.empty((n, n), dtype=complex)
    a2[off] = (l_full - 1j * k * m_full)[off] - a1[off] * log_factor[off]

    idx = np.arange(n)
    a1[idx, idx] = -1j * k * (-(speed / (4.0 * math.pi)))
    curv = (smp.accel[:, 0] * smp.normal_raw[:, 0] + smp.accel[:, 1] * smp.normal_raw[:, 1])
    l_diag = curv / (4.0 * math.pi * speed**2)
    m_diag = (0.25j - _EULER_GAMMA / (2.0 * math.pi)
              - np.log(0.5 * k * speed) / (2.0 * math.pi)) * speed
    a2[idx, idx] = l_diag - 1j * k * m_diag

    weights = _log_quadrature_weights(n)
    r_mat = weights[(idx[:, None] - idx[None, :]) % n]
    return 0.5 * np.eye(n) + r_mat * a1 + (2.0 * math.pi / n) * a2


def solve_exterior_dirichlet(curve: BoundaryCurve, wave: WaveParams, n: int) -> Density:
    """Solve the combined-field equation; returns the nodal layer density.

    Raises ResolutionError when n is odd, below 8, or below the documented
    minimum for the requested wavenumber (or the curve leaves the
    k * diameter <= 50 envelope), and SingularSystemError when the dense
    solve does not reach the residual tolerance.
    """
    if n % 2 != 0 or n < 8:
        raise ResolutionError(f"node count must be even and >= 8, got {n}")
    diam = 2.0 * min_enclosing_ball(curve)[1]
    if wave.k * diam > _MAX_K_DIAMETER:
        raise ResolutionError(
            f"k * diameter = {wave.k * diam:.2f} outside the supported envelope "
            f"(<= {_MAX_K_DIAMETER})"
        )
    n_min = min_node_count(curve, wave.k)
    if n < n_min:
        raise ResolutionError(f"n = {n} below documented minimum {n_min} for k = {wave.k}")

    t = 2.0 * math.pi * np.arange(n) / n
    smp = sample_curve(curve, t)
    system = _assemble(smp, wave.k)
    rhs = -incident_field(smp.points, wave)
    try:
        phi = np.linalg.solve(system, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(
            f"dense solve failed: {exc}", condition_estimate=float(np.linalg.cond(system))
        ) from exc
    residual = float(np.linalg.norm(system @ phi - rhs) / np.linalg.norm(rhs))
    if residual > _LINSYS_RESIDUAL_TOL:
        raise SingularSystemError(
            f"linear-system residual {residual:.3e} above {_LINSYS_RESIDUAL_TOL}",
            condition_estimate=float(np.linalg.cond(system)),
        )
    return Density(t=t, values=phi, curve=curve, wave=wave, residual=residual)


def _check_consistent(curve: BoundaryCurve, density: Density, wave: WaveParams) -> None:
    if density.curve != curve or density.wave != wave:
        raise MismatchError("density was produced for a different curve or wave")


def far_field(curve: BoundaryCurve, density: Density, wave: WaveParams,
              angles=360) -> FarFieldPattern:
    """Far-field pattern of the combined-layer representation.

    ``angles`` is a sample count or an explicit uniform periodic grid.
    """
    _check_consistent(curve, density, wave)
    theta = _as_angle_grid(angles)
    smp = sample_curve(curve, density.t)
    k = wave.k
    xhat = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    phase = np.exp(-1j * k * (xhat @ smp.points.T))
    geom = xhat @ smp.normal_raw.T + smp.speed[None, :]
    prefactor = -1j * k * np.exp(0.25j * math.pi) / math.sqrt(8.0 * math.pi * k)
    weights = 2.0 * math.pi / density.n
    values = prefactor * weights * (phase * geom) @ density.values
    return FarFieldPattern(angles=theta, values=values, wave=wave)


def _inside_curve(curve: BoundaryCurve, points: np.ndarray) -> np.ndarray:
    """Crossing-number test against a dense polygonal proxy of the boundary."""
    t = np.linspace(0.0, 2.0 * math.pi, 4096, endpoint=False)
    poly = sample_curve(curve, t).points
    x1, y1 = poly[:, 0], poly[:, 1]
    x2, y2 = np.roll(x1, -1), np.roll(y1, -1)
    px = points[:, 0][:, None]
    py = points[:, 1][:, None]
    crosses = ((y1 > py) != (y2 > py)) & (
        px < x1 + (py - y1) * (x2 - x1) / np.where(y2 == y1, np.inf, y2 - y1)
    )
    return np.sum(crosses, axis=1) % 2 == 1


def total_field(curve: BoundaryCurve, density: Density, wave: WaveParams,
                points: np.ndarray) -> np.ndarray:
    """Total field u = incident + combined-layer scattered field at exterior
    points; raises ProximityError inside the documented near-boundary
    exclusion zone (or inside the obstacle)."""
    _check_consistent(curve, density, wave)
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    smp = sample_curve(curve, density.t)

    dense = sample_curve(curve, np.linspace(0.0, 2.0 * math.pi, 8192, endpoint=False))
    gaps = np.hypot(pts[:, None, 0] - dense.points[None, :, 0],
                    pts[:, None, 1] - dense.points[None, :, 1])
    dist = gaps.min(axis=1)
    min_dist = 3.0 * (2.0 * math.pi / density.n) * float(np.max(smp.speed))
    if np.any(dist < min_dist * (1.0 - 1e-9)):
        raise ProximityError(
            f"evaluation point within {min_dist:.4g} of the boundary "
            "(near-boundary evaluation is excluded)"
        )
    if np.any(_inside_curve(curve, pts)):
        raise ProximityError("evaluation point inside the obstacle")

    k = wave.k
    dx = pts[:, None, :] - smp.points[None, :, :]
    r = np.hypot(dx[..., 0], dx[..., 1])
    h0, h1 = specfun.hankel1_01(k * r.ravel())
    h0 = h0.reshape(r.shape)
    h1 = h1.reshape(r.shape)
    dot_n = dx[..., 0] * smp.normal_raw[None, :, 0] + dx[..., 1] * smp.normal_raw[None, :, 1]
    kernel = (0.25j * k) * h1 * dot_n / r - 1j * k * 0.25j * h0 * smp.speed[None, :]
    scattered = (2.0 * math.pi / density.n) * kernel @ density.values
    return incident_field(pts, wave) + scattered


def disk_farfield_series(radius: float, wave: WaveParams, angles=360,
                         truncation: int | None = None) -> FarFieldPattern:
    """Far field of the sound-soft disk of given radius centered at the
    origin, by separation of variables.  Analytic oracle: pins the far-field
    normalization of the layer-potential route."""
    if not (radius > 0.0 and math.isfinite(radius)):
        raise DomainError(f"radius must be positive, got {radius!r}")
    ka = wave.k * radius
    n_min = int(math.ceil(ka)) + 20
    if truncation is None:
        truncation = n_min
    if truncation < n_min:
        raise TruncationError(f"truncation {truncation} below safe bound {n_min}")

    theta = _as_angle_grid(angles)
    jn = specfun._jn_all(truncation, ka)
    yn = specfun._yn_all(truncation, ka)
    coeff = jn / (jn + 1j * yn)
    if abs(coeff[-1]) > 1e-14:
        raise TruncationError("series tail above 1e-14; increase truncation")

    rel = theta - wave.theta
    orders = np.arange(1, truncation + 1)
    series = coeff[0] + 2.0 * (np.cos(np.outer(rel, orders)) @ coeff[1:])
    prefactor = -np.exp(-0.25j * math.pi) * math.sqrt(2.0 / (math.pi * wave.k))
    return FarFieldPattern(angles=theta, values=prefactor * series, wave=wave)


# ---------------------------------------------------------------------------
# norms on the observation circle
# ---------------------------------------------------------------------------
def l2_norm(pattern: FarFieldPattern) -> float:
    """L2([0, 2pi)) norm by the (here exact) trapezoid rule."""
    step = 2.0 * math.pi / pattern.values.size
    return float(math.sqrt(np.sum(np.abs(pattern.values) ** 2) * step))


def l2_distance(a: FarFieldPattern, b: FarFieldPattern) -> float:
    if a.values.size != b.values.size or not np.allclose(a.angles, b.angles, atol=1e-12):
        raise MismatchError("far-field patterns live on different angle grids")
    step = 2.0 * math.pi / a.values.size
    return float(math.sqrt(np.sum(np.abs(a.values - b.values) ** 2) * step))
