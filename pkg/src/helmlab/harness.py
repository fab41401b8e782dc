"""Experiment driver: far-field separation sweeps and solver calibration.

A separation sweep takes two obstacles and a list of wavenumbers, solves the
forward problem for both at each k, and reports delta(k), the L2 distance of
the two far-field patterns over the observation circle, next to two yardsticks:

* the *error floor* -- the far-field discrepancy between the sweep resolution
  and a doubled resolution for the same obstacle (the smallest delta the
  solver can distinguish from zero), and
* the *uniqueness threshold* k0 of an a-priori region containing both
  obstacles (their joint minimal enclosing ball unless a region is supplied):
  at or below k0 one far-field pattern determines the obstacle within the
  region, so distinct obstacles must separate.

delta is a distinguishability proxy; nothing here reconstructs shapes, and at
k exactly equal to the threshold the sweep reports delta without asserting a
pass or fail.  Failed rows (resolution or solver errors) are reported in
place, never dropped.

Rows are independent (no shared mutable state) and emitted sorted by k, so
the output does not depend on execution order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import eigencalc, forward, geometry, specfun, supersolution
from .errors import DomainError, HelmlabError
from .eigencalc import RegionSpec
from .forward import WaveParams
from .geometry import BoundaryCurve

__all__ = [
    "SweepConfig",
    "SweepRow",
    "separation_sweep",
    "self_consistency",
    "sweep_to_csv",
    "selftest",
    "SelfTestCheck",
    "joint_enclosing_ball",
]

_CSV_HEADER = "k,delta,error_floor,threshold_k0,below_threshold"


@dataclass(frozen=True)
class SweepConfig:
    curve_a: BoundaryCurve
    curve_b: BoundaryCurve
    d: float = 0.0                      # incidence angle, radians
    k_values: tuple[float, ...] = ()
    n: int = 128
    angles: int = 360
    region: RegionSpec | None = None    # threshold region override
    output: str | None = None

    def __post_init__(self):
        ks = tuple(float(k) for k in self.k_values)
        if not ks:
            raise DomainError("sweep needs at least one wavenumber")
        if any(not (k > 0.0 and math.isfinite(k)) for k in ks):
            raise DomainError("sweep wavenumbers must be strictly positive")
        if any(b <= a for a, b in zip(ks, ks[1:])):
            raise DomainError("sweep wavenumbers must be strictly increasing")
        object.__setattr__(self, "k_values", ks)


@dataclass(frozen=True)
class SweepRow:
    k: float
    delta: float
    error_floor: float
    threshold_k0: float
    below_threshold: bool
    error: str | None = None            # set when the row failed


def joint_enclosing_ball(curve_a: BoundaryCurve, curve_b: BoundaryCurve) -> eigencalc.Ball:
    """Minimal ball containing both boundaries (the default threshold region)."""
    t = np.linspace(0.0, 2.0 * math.pi, 8192, endpoint=False)
    pts = np.vstack([geometry.sample_curve(curve_a, t).points,
                     geometry.sample_curve(curve_b, t).points])
    _, radius = geometry.points_min_enclosing_ball(pts)
    return eigencalc.Ball(2, radius + 1e-7)


def self_consistency(curve: BoundaryCurve, wave: WaveParams, n1: int, n2: int) -> float:
    """L2 far-field distance between two resolutions of the same solve; the
    error floor for sweeps run at n1."""
    if n1 > n2:
        raise DomainError(f"need n1 <= n2, got {n1} > {n2}")
    rho1 = forward.solve_exterior_dirichlet(curve, wave, n1)
    f1 = forward.far_field(curve, rho1, wave, 360)
    if n1 == n2:
        return 0.0
    rho2 = forward.solve_exterior_dirichlet(curve, wave, n2)
    f2 = forward.far_field(curve, rho2, wave, 360)
    return forward.l2_distance(f1, f2)


def separation_sweep(config: SweepConfig) -> list[SweepRow]:
    """delta(k) rows for all configured wavenumbers, ascending in k."""
    region = config.region or joint_enclosing_ball(config.curve_a, config.curve_b)
    threshold = eigencalc.uniqueness_threshold(region)
    rows = []
    for k in config.k_values:
        wave = WaveParams.from_angle(k, config.d)
        try:
            rho_a = forward.solve_exterior_dirichlet(config.curve_a, wave, config.n)
            rho_b = forward.solve_exterior_dirichlet(config.curve_b, wave, config.n)
            fa = forward.far_field(config.curve_a, rho_a, wave, config.angles)
            fb = forward.far_field(config.curve_b, rho_b, wave, config.angles)
            delta = forward.l2_distance(fa, fb)
            floor = max(
                self_consistency(config.curve_a, wave, config.n, 2 * config.n),
                self_consistency(config.curve_b, wave, config.n, 2 * config.n),
            )
            rows.append(SweepRow(k=k, delta=delta, error_floor=floor,
                                 threshold_k0=threshold,
                                 below_threshold=bool(k <= threshold)))
        except HelmlabError as exc:
            rows.append(SweepRow(k=k, delta=math.nan, error_floor=math.nan,
                                 threshold_k0=threshold,
                                 below_threshold=bool(k <= threshold),
                                 error=f"{type(exc).__name__}: {exc}"))
    return sorted(rows, key=lambda r: r.k)


def sweep_to_csv(rows: list[SweepRow]) -> str:
    """CSV serialization; floats carry 17 significant digits."""
    lines = [_CSV_HEADER]
    for r in rows:
        lines.append(
            f"{r.k:.17g},{r.delta:.17g},{r.error_floor:.17g},"
            f"{r.threshold_k0:.17g},{'true' if r.below_threshold else 'false'}"
        )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# built-in invariant suite
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class SelfTestCheck:
    name: str
    passed: bool
    detail: str


def selftest() -> list[SelfTestCheck]:
    """Fast end-to-end battery over every subsystem; each check is a scaled
    down version of an acceptance property."""
    checks: list[SelfTestCheck] = []

    def record(name: str, passed: bool, detail: str):
        checks.append(SelfTestCheck(name=name, passed=bool(passed), detail=detail))

    g0 = specfun.gamma0()
    record("specfun.gamma0", abs(g0 - 2.404825557695773) < 1e-12, f"gamma0 = {g0!r}")
    x = 1.0
    wronskian = (specfun.bessel_j(1, x) * specfun.bessel_y(0, x)
                 - specfun.bessel_j(0, x) * specfun.bessel_y(1, x))
    record("specfun.wronskian", abs(wronskian - 2.0 / (math.pi * x)) < 1e-12,
           f"J1 Y0 - J0 Y1 - 2/(pi x) = {wronskian - 2.0 / (math.pi * x):.2e}")

    thr = eigencalc.uniqueness_threshold(eigencalc.Rect(1.0, 1.0))
    record("eigencalc.threshold", abs(thr - 0.5 * math.pi * math.sqrt(2.0)) < 1e-12,
           f"rect(1,1) threshold = {thr!r}")

    wave = WaveParams.from_angle(1.0, 0.0)
    disk = geometry.Circle((0.0, 0.0), 1.0)
    rho = forward.solve_exterior_dirichlet(disk, wave, 64)
    field = forward.far_field(disk, rho, wave, 360)
    oracle = forward.disk_farfield_series(1.0, wave, 360)
    rel = forward.l2_distance(field, oracle) / forward.l2_norm(oracle)
    record("forward.disk_oracle", rel < 1e-8, f"BIE vs series rel L2 = {rel:.2e}")

    kite = geometry.Kite((0.0, 0.0), 1.0)
    rho_k = forward.solve_exterior_dirichlet(kite, wave, 64)
    fk = forward.far_field(kite, rho_k, wave, 360)
    lhs = forward.l2_norm(fk) ** 2
    rhs = math.sqrt(8.0 * math.pi / wave.k) * (np.exp(-0.25j * math.pi) * fk.values[0]).imag
    record("forward.optical_theorem", abs(lhs - rhs) / lhs < 1e-5,
           f"relative residual = {abs(lhs - rhs) / lhs:.2e}")

    res = eigencalc.fd_dirichlet_eigs(eigencalc.square_mask(1.0, 1.0 / 32.0), 1)
    err = abs(res.eigenvalues[0] - 2.0 * math.pi**2) / (2.0 * math.pi**2)
    record("eigencalc.square", err < 5e-3, f"lambda1 rel err = {err:.2e}")

    slab = supersolution.SlabCosine(1.0)
    ok_pass = supersolution.verify_supersolution(slab, slab.k0).passed
    ok_fail = not supersolution.verify_supersolution(slab, 1.1 * slab.k0).passed
    record("supersolution.sign", ok_pass and ok_fail,
           f"pass at k0: {ok_pass}, fail at 1.1 k0: {ok_fail}")

    u = supersolution.cosine_wave_field(1.0, (0.6, 0.8))
    r1, _ = supersolution.liouville_identity_residual(u, slab, 1.0, (-0.5, 0.5, -0.5, 0.5), 0.025)
    r2, _ = supersolution.liouville_identity_residual(u, slab, 1.0, (-0.5, 0.5, -0.5, 0.5), 0.0125)
    ratio = r1 / r2
    record("supersolution.identity_order", 3.2 <= ratio <= 4.8,
           f"refinement ratio = {ratio:.2f}")

    return checks
