"""Service operations: pure request-model -> response-model functions.

Both the FastAPI routes and the CLI thin client call these; numerical code
lives in the core modules only.
"""

from __future__ import annotations

import io
import math

import numpy as np

from .. import eigencalc, forward, harness, supersolution
from ..errors import DomainError, RegionSpecError
from ..forward import WaveParams
from ..geometry import parse_curve
from . import schemas


def _parse_region_text(text: str) -> eigencalc.RegionSpec:
    """Region grammar with inline mask support (`mask` + embedded text)."""
    stripped = text.strip()
    if stripped.lower().startswith("mask") and "\n" in stripped:
        return _mask_from_text(stripped.split("\n", 1)[1])
    return eigencalc.parse_region(stripped)


def _mask_from_text(text: str) -> eigencalc.GridDomain:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise RegionSpecError("empty mask text")
    head = lines[0].split()
    if len(head) != 3:
        raise RegionSpecError("mask header must be `rows cols spacing`")
    rows, cols, spacing = int(head[0]), int(head[1]), float(head[2])
    if len(lines) - 1 != rows:
        raise RegionSpecError(f"expected {rows} mask rows, found {len(lines) - 1}")
    mask = np.zeros((rows, cols), dtype=bool)
    for i, line in enumerate(lines[1:]):
        row = line.strip()
        if len(row) != cols or set(row) - {"0", "1"}:
            raise RegionSpecError(f"mask row {i} must be {cols} characters of 0/1")
        mask[i] = np.frombuffer(row.encode(), dtype=np.uint8) == ord("1")
    return eigencalc.GridDomain(mask, spacing)


def threshold(req: schemas.ThresholdRequest) -> schemas.ThresholdResponse:
    region = _parse_region_text(req.region)
    k0 = eigencalc.uniqueness_threshold(region)
    lam1 = None
    if isinstance(region, (eigencalc.Ball, eigencalc.Rect, eigencalc.Interval)):
        lam1 = eigencalc.lambda1_closed_form(region)
    return schemas.ThresholdResponse(region=req.region.strip().split("\n")[0],
                                     k0=k0, lambda1=lam1)


def eig(req: schemas.EigRequest) -> schemas.EigResponse:
    grid = _mask_from_text(req.mask)
    result = eigencalc.fd_dirichlet_eigs(grid, req.count)
    return schemas.EigResponse(eigenvalues=list(result.eigenvalues),
                               spacing=result.spacing,
                               error_estimates=list(result.error_estimates))


def verify(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
    if req.candidate.strip().lower().startswith("mask") and "\n" in req.candidate:
        grid = _mask_from_text(req.candidate.split("\n", 1)[1])
        candidate = supersolution.GridEigenfunction.from_grid(grid)
    else:
        candidate = supersolution.parse_candidate(req.candidate)
    report = supersolution.verify_supersolution(candidate, req.k, req.spacing)
    return schemas.VerifyResponse.model_validate(report.to_dict())


def forward_solve(req: schemas.ForwardRequest) -> schemas.ForwardResponse:
    curve = parse_curve(req.curve)
    wave = WaveParams.from_angle(req.k, req.d)
    n = req.n if req.n is not None else max(128, forward.min_node_count(curve, req.k))
    density = forward.solve_exterior_dirichlet(curve, wave, n)
    pattern = forward.far_field(curve, density, wave, req.angles)
    return schemas.ForwardResponse(
        theta=[float(t) for t in pattern.angles],
        re=[float(v) for v in pattern.values.real],
        im=[float(v) for v in pattern.values.imag],
        n_used=n,
        residual=density.residual,
    )


def far_field_csv(resp: schemas.ForwardResponse) -> str:
    buf = io.StringIO()
    buf.write("theta,re,im\n")
    for t, re_v, im_v in zip(resp.theta, resp.re, resp.im):
        buf.write(f"{t:.17g},{re_v:.17g},{im_v:.17g}\n")
    return buf.getvalue()


def _k_values(spec) -> tuple[float, ...]:
    if isinstance(spec, schemas.LinspaceSpec):
        start, stop, num = spec.linspace
        if num < 1:
            raise DomainError("linspace needs at least one point")
        return tuple(float(v) for v in np.linspace(start, stop, int(num)))
    return tuple(float(v) for v in spec)


def sweep(req: schemas.SweepRequest) -> schemas.SweepResponse:
    config = harness.SweepConfig(
        curve_a=parse_curve(req.curve_a),
        curve_b=parse_curve(req.curve_b),
        d=req.d,
        k_values=_k_values(req.k),
        n=req.n,
        angles=req.angles,
        region=_parse_region_text(req.region) if req.region else None,
        output=req.output,
    )
    rows = harness.separation_sweep(config)
    return schemas.SweepResponse(
        rows=[schemas.SweepRowModel(k=r.k, delta=_nan_safe(r.delta),
                                    error_floor=_nan_safe(r.error_floor),
                                    threshold_k0=r.threshold_k0,
                                    below_threshold=r.below_threshold,
                                    error=r.error)
              for r in rows],
        csv=harness.sweep_to_csv(rows),
    )


def _nan_safe(v: float) -> float:
    # JSON has no NaN; failed rows carry their message in `error`
    return 0.0 if math.isnan(v) else v


def selftest() -> schemas.SelfTestResponse:
    checks = harness.selftest()
    return schemas.SelfTestResponse(
        ok=all(c.passed for c in checks),
        checks=[schemas.SelfTestCheckModel(name=c.name, passed=c.passed, detail=c.detail)
                for c in checks],
    )
