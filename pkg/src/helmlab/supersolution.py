"""Positive supersolutions of the Helmholtz operator and their verification.

A candidate is a concrete positive function v with a reference wavenumber
k0 tied to the first Dirichlet eigenvalue of its region's bounded factor:

* ``Disk2D``      v = J_0(k0 |x|) on a disk,              k0 = gamma0 / R
* ``Ball3D``      v = sin(k0 |x|)/|x| on a 3-ball,        k0 = pi / R
* ``RectProduct`` v = cos(pi x2 / 2R) cos(pi x3 / 2h),    constant in x1
* ``SlabCosine``  v = cos(pi x3 / 2h),                    constant in x1, x2
* ``GridEigenfunction``  bilinear interpolant of the first finite-difference
  eigenfunction on a grid mask, normalized to max value 1

Each closed-form candidate satisfies Laplacian(v) = -k0^2 v exactly, so the
defect Laplacian(v) + k^2 v = (k^2 - k0^2) v carries a sign determined by k
alone; verification reports extremal residuals and witness points on a grid
over the bounded factor (candidates are constant along unbounded
coordinates, so one bounded window suffices; the window is recorded on the
report for auditability).

The module also checks, discretely, the product-rule identity

    div(v^2 grad(u/v)) = v Laplacian(u) - u Laplacian(v)

and its transformed Helmholtz form div(v^2 grad(phi)) + (Lap v + k^2 v) v phi = 0
(phi = u/v, u a Helmholtz solution), and decides whether a positive
supersolution at wavenumber k exists on a bounded region -- equivalent to
k^2 <= lambda_1 -- returning the eigenfunction candidate or an interior
witness where the canonical candidate fails.  Nonexistence beyond the
canonical candidate is not numerically certifiable and is not claimed.

Candidates are immutable and every operation is a pure function, so
verifying different candidates concurrently is safe.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from . import eigencalc, specfun
from .errors import DomainError, PositivityError, RegionSpecError, ResolutionError
from .eigencalc import Ball, CylinderOverRect, GridDomain, Interval, Rect, SlabOverInterval

__all__ = [
    "Disk2D",
    "Ball3D",
    "RectProduct",
    "SlabCosine",
    "GridEigenfunction",
    "SupersolutionCandidate",
    "VerificationReport",
    "ScalarField",
    "eval_candidate",
    "verify_supersolution",
    "liouville_identity_residual",
    "decide_admissibility",
    "AdmissibilityDecision",
    "constant_field",
    "coordinate_field",
    "cosine_wave_field",
    "candidate_field_2d",
    "parse_candidate",
]

_K0_RTOL = 1e-10


def _validate_k0(stated: float | None, computed: float) -> float:
    if stated is None:
        return computed
    if abs(stated - computed) > _K0_RTOL * computed:
        raise DomainError(
            f"reference wavenumber {stated!r} does not match sqrt(lambda_1) = {computed!r}"
        )
    return float(stated)


@dataclass(frozen=True)
class Disk2D:
    radius: float
    k0: float | None = None

    def __post_init__(self):
        if not (self.radius > 0.0):
            raise DomainError("radius must be positive")
        computed = specfun.gamma0() / self.radius
        object.__setattr__(self, "k0", _validate_k0(self.k0, computed))

    @property
    def region(self) -> Ball:
        return Ball(2, self.radius)


@dataclass(frozen=True)
class Ball3D:
    radius: float
    k0: float | None = None

    def __post_init__(self):
        if not (self.radius > 0.0):
            raise DomainError("radius must be positive")
        computed = math.pi / self.radius
        object.__setattr__(self, "k0", _validate_k0(self.k0, computed))

    @property
    def region(self) -> Ball:
        return Ball(3, self.radius)


@dataclass(frozen=True)
class RectProduct:
    """Cosine product over the rectangle cross-section; constant in x1 when
    read as a function on the cylinder."""

    half_width: float
    half_height: float
    k0: float | None = None
    on_cylinder: bool = True

    def __post_init__(self):
        if not (self.half_width > 0.0 and self.half_height > 0.0):
            raise DomainError("rectangle half-sizes must be positive")
        computed = math.sqrt(eigencalc.lambda1_closed_form(Rect(self.half_width, self.half_height)))
        object.__setattr__(self, "k0", _validate_k0(self.k0, computed))

    @property
    def region(self) -> Union[CylinderOverRect, Rect]:
        if self.on_cylinder:
            return CylinderOverRect(self.half_width, self.half_height)
        return Rect(self.half_width, self.half_height)


@dataclass(frozen=True)
class SlabCosine:
    """Single cosine in the last coordinate; constant along the slab."""

    half_length: float
    k0: float | None = None
    on_slab: bool = True

    def __post_init__(self):
        if not (self.half_length > 0.0):
            raise DomainError("half-length must be positive")
        computed = math.pi / (2.0 * self.half_length)
        object.__setattr__(self, "k0", _validate_k0(self.k0, computed))

    @property
    def region(self) -> Union[SlabOverInterval, Interval]:
        if self.on_slab:
            return SlabOverInterval(self.half_length)
        return Interval(self.half_length)


class GridEigenfunction:
    """First finite-difference Dirichlet eigenfunction on a grid mask,
    positively normalized to max value 1."""

    def __init__(self, grid: GridDomain, values: np.ndarray, lambda1: float,
                 lambda1_error: float):
        self.grid = grid
        self.values = values
        self.lambda1 = float(lambda1)
        self.lambda1_error = float(lambda1_error)
        self.k0 = math.sqrt(self.lambda1)

    @classmethod
    def from_grid(cls, grid: GridDomain) -> "GridEigenfunction":
        values, vectors = eigencalc._fd_eigenpairs(grid, 1)
        coarse, _ = eigencalc._fd_eigenpairs(grid.coarsened(), 1)
        vec = vectors[:, 0]
        if vec[np.argmax(np.abs(vec))] < 0.0:
            vec = -vec
        if np.min(vec) <= 0.0:
            raise PositivityError("first eigenvector not positive on the mask interior")
        field = np.zeros(grid.mask.shape)
        field[grid.mask] = vec / np.max(vec)
        return cls(grid, field, values[0], abs(coarse[0] - values[0]))

    @property
    def region(self) -> GridDomain:
        return self.grid

    def interpolate(self, points: np.ndarray) -> np.ndarray:
        """Bilinear interpolation; zero outside the mask bounding box."""
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        h = self.grid.spacing
        gx = (pts[:, 0] - self.grid.origin[0]) / h
        gy = (pts[:, 1] - self.grid.origin[1]) / h
        nr, nc = self.grid.mask.shape
        j0 = np.clip(np.floor(gx).astype(int), -1, nc - 1)
        i0 = np.clip(np.floor(gy).astype(int), -1, nr - 1)
        fx = gx - j0
        fy = gy - i0

        def val(i, j):
            ok = (i >= 0) & (i < nr) & (j >= 0) & (j < nc)
            out = np.zeros(len(pts))
            out[ok] = self.values[i[ok], j[ok]]
            return out

        return ((1 - fx) * (1 - fy) * val(i0, j0) + fx * (1 - fy) * val(i0, j0 + 1)
                + (1 - fx) * fy * val(i0 + 1, j0) + fx * fy * val(i0 + 1, j0 + 1))


SupersolutionCandidate = Union[Disk2D, Ball3D, RectProduct, SlabCosine, GridEigenfunction]


# ---------------------------------------------------------------------------
# pointwise evaluation
# ---------------------------------------------------------------------------
def _sinc_scaled(z: np.ndarray) -> np.ndarray:
    """sin(z)/z with series evaluation below 1e-3 (removable singularity)."""
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    small = np.abs(z) < 1e-3
    zs = z[small]
    out[small] = 1.0 - zs**2 / 6.0 + zs**4 / 120.0
    zb = z[~small]
    out[~small] = np.sin(zb) / zb
    return out


def _bounded_coords(candidate, pts: np.ndarray) -> np.ndarray:
    """Extract the coordinates the candidate actually depends on."""
    if isinstance(candidate, (Disk2D,)):
        if pts.shape[-1] != 2:
            raise DomainError("Disk2D expects 2-d points")
        return pts
    if isinstance(candidate, Ball3D):
        if pts.shape[-1] != 3:
            raise DomainError("Ball3D expects 3-d points")
        return pts
    if isinstance(candidate, RectProduct):
        if pts.shape[-1] == 3:
            return pts[..., 1:]
        if pts.shape[-1] == 2:
            return pts
        raise DomainError("RectProduct expects 2-d or 3-d points")
    if isinstance(candidate, SlabCosine):
        return pts[..., -1:]
    if isinstance(candidate, GridEigenfunction):
        if pts.shape[-1] != 2:
            raise DomainError("GridEigenfunction expects 2-d points")
        return pts
    raise DomainError(f"unknown candidate {type(candidate).__name__}")


def _candidate_values(candidate, pts: np.ndarray):
    """(value, laplacian) arrays at bounded-factor coordinates."""
    if isinstance(candidate, Disk2D):
        r = np.hypot(pts[..., 0], pts[..., 1])
        v = specfun.bessel_j(0, candidate.k0 * r)
        return v, -candidate.k0**2 * v
    if isinstance(candidate, Ball3D):
        r = np.sqrt(np.sum(pts**2, axis=-1))
        v = candidate.k0 * _sinc_scaled(candidate.k0 * r)
        return v, -candidate.k0**2 * v
    if isinstance(candidate, RectProduct):
        v = (np.cos(0.5 * math.pi * pts[..., 0] / candidate.half_width)
             * np.cos(0.5 * math.pi * pts[..., 1] / candidate.half_height))
        return v, -candidate.k0**2 * v
    if isinstance(candidate, SlabCosine):
        v = np.cos(0.5 * math.pi * pts[..., 0] / candidate.half_length)
        return v, -candidate.k0**2 * v
    if isinstance(candidate, GridEigenfunction):
        v = candidate.interpolate(pts)
        # discrete eigen-identity: the 5-point Laplacian of the eigenvector
        return v, -candidate.lambda1 * v
    raise DomainError(f"unknown candidate {type(candidate).__name__}")


def _inside_bounded(candidate, pts: np.ndarray) -> np.ndarray:
    # closed regions: the closed forms extend continuously to the boundary
    if isinstance(candidate, Disk2D):
        return np.hypot(pts[..., 0], pts[..., 1]) <= candidate.radius
    if isinstance(candidate, Ball3D):
        return np.sqrt(np.sum(pts**2, axis=-1)) <= candidate.radius
    if isinstance(candidate, RectProduct):
        return ((np.abs(pts[..., 0]) <= candidate.half_width)
                & (np.abs(pts[..., 1]) <= candidate.half_height))
    if isinstance(candidate, SlabCosine):
        return np.abs(pts[..., 0]) <= candidate.half_length
    if isinstance(candidate, GridEigenfunction):
        grid = candidate.grid
        h = grid.spacing
        gx = np.rint((pts[..., 0] - grid.origin[0]) / h).astype(int)
        gy = np.rint((pts[..., 1] - grid.origin[1]) / h).astype(int)
        nr, nc = grid.mask.shape
        ok = (gx >= 0) & (gx < nc) & (gy >= 0) & (gy < nr)
        out = np.zeros(pts.shape[:-1], dtype=bool)
        out[ok] = grid.mask[gy[ok], gx[ok]]
        return out
    raise DomainError(f"unknown candidate {type(candidate).__name__}")


def eval_candidate(candidate: SupersolutionCandidate, point) -> tuple[float, float]:
    """Value and Laplacian of the candidate at a point inside its region.

    Slab/cylinder candidates accept points of the ambient dimension (the
    unbounded coordinates are ignored) or of the bounded factor directly.
    """
    pts = np.atleast_1d(np.asarray(point, dtype=float))
    if pts.ndim == 1:
        pts = pts.reshape(1, -1)
    bc = _bounded_coords(candidate, pts)
    if not np.all(_inside_bounded(candidate, bc)):
        raise DomainError("point outside the candidate's region")
    v, lap = _candidate_values(candidate, bc)
    return float(v[0]), float(lap[0])


# ---------------------------------------------------------------------------
# grid verification
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking Lap(v) + k^2 v <= 0 and v > 0 on a grid."""

    max_residual: float
    min_value: float
    passed: bool
    witness_max: tuple
    witness_min: tuple
    spacing: float
    method: str                 # "analytic" | "finite-difference"
    tolerance: float
    window: tuple | None = None  # truncation window used in unbounded coordinates

    def to_dict(self) -> dict:
        return {
            "max_residual": self.max_residual,
            "min_value": self.min_value,
            "pass": self.passed,
            "witness_max": list(self.witness_max),
            "witness_min": list(self.witness_min),
            "spacing": self.spacing,
            "method": self.method,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


_MIN_NODES_PER_DIM = 16


def _verification_nodes(candidate, spacing: float):
    """Interior grid nodes over the bounded factor, plus the recorded window."""
    if isinstance(candidate, Disk2D):
        r = candidate.radius
        axis = np.arange(-r + spacing, r, spacing)
        xx, yy = np.meshgrid(axis, axis)
        pts = np.stack([xx.ravel(), yy.ravel()], axis=-1)
        pts = pts[np.hypot(pts[:, 0], pts[:, 1]) < r]
        return pts, 2, None
    if isinstance(candidate, Ball3D):
        r = candidate.radius
        axis = np.arange(-r + spacing, r, spacing)
        xx, yy, zz = np.meshgrid(axis, axis, axis)
        pts = np.stack([xx.ravel(), yy.ravel(), zz.ravel()], axis=-1)
        pts = pts[np.sqrt(np.sum(pts**2, axis=-1)) < r]
        return pts, 3, None
    if isinstance(candidate, RectProduct):
        ax = np.arange(-candidate.half_width + spacing, candidate.half_width, spacing)
        ay = np.arange(-candidate.half_height + spacing, candidate.half_height, spacing)
        xx, yy = np.meshgrid(ax, ay)
        pts = np.stack([xx.ravel(), yy.ravel()], axis=-1)
        window = (-candidate.half_width, candidate.half_width) if candidate.on_cylinder else None
        return pts, 2, window
    if isinstance(candidate, SlabCosine):
        ax = np.arange(-candidate.half_length + spacing, candidate.half_length, spacing)
        window = (-candidate.half_length, candidate.half_length) if candidate.on_slab else None
        return ax.reshape(-1, 1), 1, window
    if isinstance(candidate, GridEigenfunction):
        return candidate.grid.node_points(), 2, None
    raise DomainError(f"unknown candidate {type(candidate).__name__}")


def verify_supersolution(candidate: SupersolutionCandidate, k: float,
                         spacing: float | None = None) -> VerificationReport:
    """Check the supersolution inequalities for wavenumber k on a grid.

    Closed-form candidates carry an analytic Laplacian, so the residual
    (k^2 - k0^2) v is exact and the tolerance is zero; the grid eigenfunction
    kind uses the discrete Laplacian and a two-grid h^2 tolerance.
    """
    if not (k > 0.0 and math.isfinite(k)):
        raise DomainError(f"wavenumber must be positive, got {k!r}")
    if isinstance(candidate, GridEigenfunction):
        if spacing is not None and not math.isclose(spacing, candidate.grid.spacing):
            raise ResolutionError(
                "grid eigenfunction candidates verify on their native grid spacing"
            )
        spacing = candidate.grid.spacing
    if spacing is None:
        spacing = _default_spacing(candidate)
    extent = _bounded_extent(candidate)
    if extent / spacing < _MIN_NODES_PER_DIM:
        raise ResolutionError(
            f"spacing {spacing} resolves fewer than {_MIN_NODES_PER_DIM} nodes per dimension"
        )

    pts, _, window = _verification_nodes(candidate, spacing)
    value, lap = _candidate_values(candidate, pts)
    residual = lap + k * k * value

    i_max = int(np.argmax(residual))
    i_min = int(np.argmin(value))
    if isinstance(candidate, GridEigenfunction):
        method = "finite-difference"
        tolerance = candidate.lambda1_error * float(np.max(value))
    else:
        method = "analytic"
        tolerance = 0.0
    max_residual = float(residual[i_max])
    min_value = float(value[i_min])
    return VerificationReport(
        max_residual=max_residual,
        min_value=min_value,
        passed=bool(max_residual <= tolerance and min_value > 0.0),
        witness_max=tuple(float(c) for c in np.atleast_1d(pts[i_max])),
        witness_min=tuple(float(c) for c in np.atleast_1d(pts[i_min])),
        spacing=float(spacing),
        method=method,
        tolerance=float(tolerance),
        window=window,
    )


def _bounded_extent(candidate) -> float:
    if isinstance(candidate, Disk2D):
        return 2.0 * candidate.radius
    if isinstance(candidate, Ball3D):
        return 2.0 * candidate.radius
    if isinstance(candidate, RectProduct):
        return 2.0 * min(candidate.half_width, candidate.half_height)
    if isinstance(candidate, SlabCosine):
        return 2.0 * candidate.half_length
    if isinstance(candidate, GridEigenfunction):
        mask = candidate.grid.mask
        rows = int(np.any(mask, axis=1).sum())
        cols = int(np.any(mask, axis=0).sum())
        return min(rows, cols) * candidate.grid.spacing
    raise DomainError(f"unknown candidate {type(candidate).__name__}")


def _default_spacing(candidate) -> float:
    return _bounded_extent(candidate) / 64.0


# ---------------------------------------------------------------------------
# product-rule identity on grids
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class ScalarField:
    """Analytic scalar field on the plane: values and Laplacian."""

    value: Callable[[np.ndarray], np.ndarray]
    laplacian: Callable[[np.ndarray], np.ndarray]


def constant_field(c: float) -> ScalarField:
    return ScalarField(value=lambda p: np.full(p.shape[:-1], float(c)),
                       laplacian=lambda p: np.zeros(p.shape[:-1]))


def coordinate_field(axis: int) -> ScalarField:
    return ScalarField(value=lambda p: p[..., axis].copy(),
                       laplacian=lambda p: np.zeros(p.shape[:-1]))


def cosine_wave_field(k: float, d: tuple[float, float]) -> ScalarField:
    """u = cos(k x . d): a real solution of the Helmholtz equation."""
    dx, dy = d
    norm = math.hypot(dx, dy)
    dx, dy = dx / norm, dy / norm

    def value(p):
        return np.cos(k * (p[..., 0] * dx + p[..., 1] * dy))

    return ScalarField(value=value, laplacian=lambda p: -k * k * value(p))


def candidate_field_2d(candidate: SupersolutionCandidate) -> ScalarField:
    """Planar restriction of a candidate (slab kinds vary in the second
    coordinate; 3-ball kind excluded)."""
    if isinstance(candidate, Ball3D):
        raise DomainError("Ball3D has no planar restriction")

    def value(p):
        bc = _planar_coords(candidate, p)
        return _candidate_values(candidate, bc)[0]

    def laplacian(p):
        bc = _planar_coords(candidate, p)
        return _candidate_values(candidate, bc)[1]

    return ScalarField(value=value, laplacian=laplacian)


def _planar_coords(candidate, p: np.ndarray) -> np.ndarray:
    if isinstance(candidate, SlabCosine):
        return p[..., 1:]
    return p


def liouville_identity_residual(u: ScalarField, v, k: float,
                                bounds: tuple[float, float, float, float],
                                spacing: float) -> tuple[float, float]:
    """Discrete residuals of the product-rule identity and its transformed
    Helmholtz form on a uniform grid over `bounds` = (x0, x1, y0, y1).

    Returns (identity_residual, transformed_residual): maxima over interior
    nodes of

        | div_h(v^2 grad_h(u/v)) - (v Lap u - u Lap v) |
        | div_h(v^2 grad_h(u/v)) + (Lap v + k^2 v) v (u/v) |

    with the divergence in conservative (flux) form, v evaluated analytically
    at half nodes.  Raises PositivityError when v is not strictly positive
    on the grid (half nodes included).
    """
    if isinstance(v, (Disk2D, Ball3D, RectProduct, SlabCosine, GridEigenfunction)):
        v = candidate_field_2d(v)
    x0, x1, y0, y1 = bounds
    nx = int(round((x1 - x0) / spacing))
    ny = int(round((y1 - y0) / spacing))
    if nx < 4 or ny < 4:
        raise ResolutionError("grid must have at least 4 cells per dimension")
    xs = x0 + spacing * np.arange(nx + 1)
    ys = y0 + spacing * np.arange(ny + 1)
    xx, yy = np.meshgrid(xs, ys, indexing="ij")
    pts = np.stack([xx, yy], axis=-1)

    v_nodes = v.value(pts)
    if np.min(v_nodes) <= 0.0:
        raise PositivityError("v must be strictly positive on the grid")
    u_nodes = u.value(pts)
    phi = u_nodes / v_nodes

    half_x = np.stack([xx[:-1, :] + 0.5 * spacing, yy[:-1, :]], axis=-1)
    half_y = np.stack([xx[:, :-1], yy[:, :-1] + 0.5 * spacing], axis=-1)
    v2x = v.value(half_x) ** 2
    v2y = v.value(half_y) ** 2
    if np.min(v2x) <= 0.0 or np.min(v2y) <= 0.0:
        raise PositivityError("v must be strictly positive on the grid")

    flux_x = v2x * (phi[1:, :] - phi[:-1, :])
    flux_y = v2y * (phi[:, 1:] - phi[:, :-1])
    div = ((flux_x[1:, 1:-1] - flux_x[:-1, 1:-1])
           + (flux_y[1:-1, 1:] - flux_y[1:-1, :-1])) / spacing**2

    interior = pts[1:-1, 1:-1]
    lap_u = u.laplacian(interior)
    lap_v = v.laplacian(interior)
    v_int = v_nodes[1:-1, 1:-1]
    u_int = u_nodes[1:-1, 1:-1]
    phi_int = phi[1:-1, 1:-1]

    identity = float(np.max(np.abs(div - (v_int * lap_u - u_int * lap_v))))
    transformed = float(np.max(np.abs(div + (lap_v + k * k * v_int) * v_int * phi_int)))
    return identity, transformed


# ---------------------------------------------------------------------------
# admissibility (bounded regions)
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class AdmissibilityDecision:
    status: str                      # "admissible" | "inadmissible" | "indeterminate"
    threshold: float                 # sqrt(lambda_1) of the region
    error_band: float                # half-width of the k^2 uncertainty band
    candidate: object | None = None
    witness: tuple | None = None
    residual: float | None = None


def _first_eigen_candidate(region) -> SupersolutionCandidate:
    if isinstance(region, Ball):
        return Disk2D(region.radius) if region.m == 2 else Ball3D(region.radius)
    if isinstance(region, Rect):
        return RectProduct(region.half_width, region.half_height, on_cylinder=False)
    if isinstance(region, Interval):
        return SlabCosine(region.half_length, on_slab=False)
    if isinstance(region, GridDomain):
        return GridEigenfunction.from_grid(region)
    raise RegionSpecError(f"admissibility expects a bounded region, got {type(region).__name__}")


def _interior_maximizer(region, candidate) -> tuple:
    if isinstance(region, Ball):
        return (0.0, 0.0) if region.m == 2 else (0.0, 0.0, 0.0)
    if isinstance(region, Rect):
        return (0.0, 0.0)
    if isinstance(region, Interval):
        return (0.0,)
    ii, jj = np.nonzero(candidate.values == np.max(candidate.values))
    grid = region
    return (grid.origin[0] + jj[0] * grid.spacing, grid.origin[1] + ii[0] * grid.spacing)


def decide_admissibility(region, k: float) -> AdmissibilityDecision:
    """Does a positive supersolution at wavenumber k exist on the bounded
    region?  Equivalent to k^2 <= lambda_1; the constructive half returns
    the first-eigenfunction candidate, the negative half an interior point
    where that canonical candidate has positive defect.  Grid regions carry
    a discretization band; a k^2 inside it yields "indeterminate"."""
    if not (k > 0.0 and math.isfinite(k)):
        raise DomainError(f"wavenumber must be positive, got {k!r}")
    if isinstance(region, (Ball, Rect, Interval)):
        lambda1 = eigencalc.lambda1_closed_form(region)
        band = 0.0
    elif isinstance(region, GridDomain):
        res = eigencalc.fd_dirichlet_eigs(region, 1)
        # Richardson-extrapolated value with the conservative two-grid band
        lambda1 = eigencalc.uniqueness_threshold(region) ** 2
        band = res.error_estimates[0]
    else:
        raise RegionSpecError(
            f"admissibility expects a bounded region, got {type(region).__name__}"
        )

    threshold = math.sqrt(lambda1)
    if band > 0.0 and abs(k * k - lambda1) <= band:
        return AdmissibilityDecision(status="indeterminate", threshold=threshold,
                                     error_band=band)
    if k * k <= lambda1:
        return AdmissibilityDecision(status="admissible", threshold=threshold,
                                     error_band=band,
                                     candidate=_first_eigen_candidate(region))
    candidate = _first_eigen_candidate(region)
    witness = _interior_maximizer(region, candidate)
    value, lap = eval_candidate(candidate, witness)
    residual = lap + k * k * value
    return AdmissibilityDecision(status="inadmissible", threshold=threshold,
                                 error_band=band, witness=witness,
                                 residual=float(residual))


# ---------------------------------------------------------------------------
# candidate grammar (CLI / service)
# ---------------------------------------------------------------------------
def parse_candidate(text: str) -> SupersolutionCandidate:
    """Parse `kind args...`: disk R | ball R | rect R h | slab h | mask FILE."""
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise DomainError("empty candidate specification")
    kind = tokens[0].lower()
    args = tokens[1:]
    try:
        if kind == "disk":
            return Disk2D(radius=float(args[0]))
        if kind == "ball":
            return Ball3D(radius=float(args[0]))
        if kind == "rect":
            return RectProduct(half_width=float(args[0]), half_height=float(args[1]))
        if kind == "slab":
            return SlabCosine(half_length=float(args[0]))
        if kind == "mask":
            return GridEigenfunction.from_grid(eigencalc.load_mask(args[0]))
    except (IndexError, ValueError, OSError) as exc:
        raise DomainError(f"bad candidate specification {text!r}: {exc}") from exc
    raise DomainError(f"unknown candidate kind {kind!r}")
