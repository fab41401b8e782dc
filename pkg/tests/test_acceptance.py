"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines on the console.  Every tolerance and runtime budget is pinned here.
"""

import math
import time

import numpy as np
import pytest

from helmlab import eigencalc as ec
from helmlab import forward, harness, specfun
from helmlab import supersolution as ss
from helmlab.forward import WaveParams
from helmlab.geometry import Circle, Ellipse, Kite

GAMMA0 = 2.404825557695773


def _report(number: int, name: str, ok: bool, detail: str, elapsed: float, budget: float):
    within = elapsed < budget
    verdict = "PASS" if (ok and within) else "FAIL"
    print(f"criterion {number} ({name}): {verdict} [{elapsed:.2f}s / {budget:.0f}s] {detail}")
    assert ok, f"criterion {number} ({name}): {detail}"
    assert within, f"criterion {number} ({name}): runtime {elapsed:.2f}s over budget {budget}s"


def test_criterion_1_closed_form_thresholds():
    start = time.perf_counter()
    ball3 = ec.lambda1_closed_form(ec.Ball(3, 1.0))
    disk = ec.lambda1_closed_form(ec.Ball(2, 1.0))
    rect_k0 = ec.uniqueness_threshold(ec.Rect(1.0, 1.0))
    interval_k0 = ec.uniqueness_threshold(ec.Interval(1.0))
    ok = (
        ball3 == math.pi**2
        and abs(disk - GAMMA0**2) <= 1e-12
        and abs(rect_k0 - 0.5 * math.pi * math.sqrt(2.0)) <= 1e-12
        and interval_k0 == math.pi / 2.0
    )
    detail = (f"ball3={ball3!r} disk={disk!r} rect={rect_k0!r} interval={interval_k0!r}")
    _report(1, "closed-form thresholds", ok, detail, time.perf_counter() - start, 1.0)


def test_criterion_2_special_functions():
    start = time.perf_counter()
    g0_err = abs(specfun.gamma0() - GAMMA0)
    rng = np.random.default_rng(0)
    worst_rec = 0.0
    for _ in range(200):
        x = float(rng.uniform(0.5, 50.0))
        n = int(rng.integers(1, 31))
        lhs = specfun.bessel_j(n - 1, x) + specfun.bessel_j(n + 1, x)
        rhs = 2.0 * n / x * specfun.bessel_j(n, x)
        worst_rec = max(worst_rec, abs(lhs - rhs) / max(1.0, abs(rhs)))
    worst_wronskian = 0.0
    for x in np.linspace(0.3, 150.0, 40):
        w = (specfun.bessel_j(1, x) * specfun.bessel_y(0, x)
             - specfun.bessel_j(0, x) * specfun.bessel_y(1, x))
        worst_wronskian = max(worst_wronskian, abs(w - 2.0 / (math.pi * x)) * math.pi * x / 2.0)
    ok = g0_err <= 1e-12 and worst_rec <= 1e-10 and worst_wronskian <= 1e-10
    detail = (f"gamma0 err={g0_err:.2e} recurrence={worst_rec:.2e} "
              f"wronskian={worst_wronskian:.2e}")
    _report(2, "special functions", ok, detail, time.perf_counter() - start, 1.0)


def test_criterion_3_forward_oracle_equivalence():
    start = time.perf_counter()
    disk = Circle((0.0, 0.0), 1.0)
    worst = 0.0
    for k in (0.5, 1.0, 2.0, 5.0):
        wave = WaveParams.from_angle(k, 0.0)
        rho = forward.solve_exterior_dirichlet(disk, wave, 256)
        pattern = forward.far_field(disk, rho, wave, 360)
        oracle = forward.disk_farfield_series(1.0, wave, 360)
        worst = max(worst, forward.l2_distance(pattern, oracle) / forward.l2_norm(oracle))
    ok = worst <= 1e-6
    _report(3, "forward-solver oracle equivalence", ok,
            f"worst rel L2 over k in {{0.5,1,2,5}} = {worst:.2e}",
            time.perf_counter() - start, 10.0)


def test_criterion_4_physical_invariants():
    start = time.perf_counter()
    k, m = 1.0, 360
    directions = (0, 50, 180, 230)  # grid indices; includes both antipodes
    pairs = [(0, 50), (50, 230), (0, 230), (180, 50)]
    worst_rec = 0.0
    worst_optical = 0.0
    for curve in (Circle((0.0, 0.0), 1.0), Ellipse((0.0, 0.0), 2.0, 1.0),
                  Kite((0.0, 0.0), 1.0)):
        patterns = {}
        for i in directions:
            wave = WaveParams.from_angle(k, 2.0 * math.pi * i / m)
            rho = forward.solve_exterior_dirichlet(curve, wave, 128)
            patterns[i] = forward.far_field(curve, rho, wave, m)
        for i, j in pairs:
            lhs = patterns[i].values[j]
            rhs = patterns[(j + m // 2) % m].values[(i + m // 2) % m]
            worst_rec = max(worst_rec, abs(lhs - rhs))
        f0 = patterns[0]
        lhs = forward.l2_norm(f0) ** 2
        rhs = math.sqrt(8.0 * math.pi / k) * (np.exp(-0.25j * math.pi) * f0.values[0]).imag
        worst_optical = max(worst_optical, abs(lhs - rhs) / lhs)
    ok = worst_rec <= 1e-6 and worst_optical <= 1e-5
    _report(4, "physical invariants", ok,
            f"reciprocity={worst_rec:.2e} optical={worst_optical:.2e}",
            time.perf_counter() - start, 30.0)


def test_criterion_5_fd_eigensolver():
    start = time.perf_counter()
    res = ec.fd_dirichlet_eigs(ec.square_mask(1.0, 1.0 / 128.0), 2)
    err1 = abs(res.eigenvalues[0] - 2.0 * math.pi**2) / (2.0 * math.pi**2)
    err2 = abs(res.eigenvalues[1] - 5.0 * math.pi**2) / (5.0 * math.pi**2)
    errors = []
    for h in (1.0 / 32.0, 1.0 / 64.0, 1.0 / 128.0):
        r = ec.fd_dirichlet_eigs(ec.square_mask(1.0, h), 1)
        errors.append(abs(r.eigenvalues[0] - 2.0 * math.pi**2))
    orders = [math.log2(a / b) for a, b in zip(errors, errors[1:])]
    h = 1.0 / 64.0
    nested = [ec.fd_dirichlet_eigs(ec.square_mask(s, h), 1).eigenvalues[0]
              for s in (0.75, 0.875, 1.0)]
    monotone = nested[0] > nested[1] > nested[2]
    ok = (err1 <= 5e-3 and err2 <= 1e-2
          and all(abs(p - 2.0) <= 0.2 for p in orders) and monotone)
    detail = (f"l1 err={err1:.2e} l2 err={err2:.2e} orders={[f'{p:.3f}' for p in orders]} "
              f"monotone={monotone}")
    _report(5, "finite-difference eigensolver", ok, detail,
            time.perf_counter() - start, 60.0)


def test_criterion_6_supersolution_suite():
    start = time.perf_counter()
    candidates = [ss.Disk2D(1.0), ss.Ball3D(1.0), ss.RectProduct(1.0, 1.0),
                  ss.SlabCosine(1.0)]
    sign_ok = True
    details = []
    for cand in candidates:
        at_k0 = ss.verify_supersolution(cand, cand.k0)
        below = ss.verify_supersolution(cand, 0.9 * cand.k0)
        above = ss.verify_supersolution(cand, 1.1 * cand.k0)
        witness_interior = above.max_residual > 0.0 and \
            ss.eval_candidate(cand, above.witness_max)[0] > 0.0
        good = at_k0.passed and below.passed and not above.passed and witness_interior
        sign_ok = sign_ok and good
        details.append(f"{type(cand).__name__}:{'ok' if good else 'BAD'}")
    u = ss.cosine_wave_field(1.0, (0.6, 0.8))
    v = ss.SlabCosine(1.0)
    residuals = []
    for h in (0.025, 0.0125, 0.00625):
        ident, trans = ss.liouville_identity_residual(u, v, 1.0, (-0.5, 0.5, -0.5, 0.5), h)
        residuals.append(max(ident, trans))
    orders = [math.log2(a / b) for a, b in zip(residuals, residuals[1:])]
    order_ok = all(abs(p - 2.0) <= 0.2 for p in orders)
    ok = sign_ok and order_ok
    detail = " ".join(details) + f" identity orders={[f'{p:.3f}' for p in orders]}"
    _report(6, "supersolution suite", ok, detail, time.perf_counter() - start, 30.0)


def test_criterion_7_admissibility_consistency():
    start = time.perf_counter()
    rng = np.random.default_rng(20120210)
    agreements = 0
    cases = 0
    bad = []
    while cases < 20:
        kind = cases % 3
        if kind == 0:
            region = ec.Rect(float(rng.uniform(0.3, 2.0)), float(rng.uniform(0.3, 2.0)))
        elif kind == 1:
            region = ec.Interval(float(rng.uniform(0.3, 2.0)))
        else:
            shape = rng.choice(["square", "disk"])
            if shape == "square":
                n_cells = int(rng.integers(24, 40))
                region = ec.square_mask(1.0, 1.0 / n_cells)
            else:
                n_cells = int(rng.integers(24, 40))
                region = ec.disk_mask(1.0, 1.0 / n_cells)
        threshold = ec.uniqueness_threshold(region)
        factor = float(rng.uniform(0.5, 1.6))
        k = factor * threshold
        decision = ss.decide_admissibility(region, k)
        if decision.error_band > 0.0 and abs(k * k - threshold**2) <= decision.error_band:
            # inside the reported band: indeterminate is the consistent verdict
            consistent = decision.status == "indeterminate"
        else:
            expected = "admissible" if k <= threshold else "inadmissible"
            consistent = decision.status == expected
        cases += 1
        agreements += consistent
        if not consistent:
            bad.append(f"{type(region).__name__} k/k0={factor:.3f} -> {decision.status}")
    ok = agreements == cases
    _report(7, "admissibility consistency", ok,
            f"{agreements}/{cases} agree" + (f"; disagreements: {bad}" if bad else ""),
            time.perf_counter() - start, 60.0)


def test_criterion_8_separation_experiment():
    start = time.perf_counter()
    disk = Circle((0.0, 0.0), 1.0)
    kite = Kite((0.0, 0.0), 1.0)
    ball = harness.joint_enclosing_ball(disk, kite)
    k = 0.9 * ec.uniqueness_threshold(ball)
    config = harness.SweepConfig(curve_a=disk, curve_b=kite, k_values=(k,), n=256)
    row = harness.separation_sweep(config)[0]
    separated = row.below_threshold and row.delta >= 10.0 * row.error_floor
    same_cfg = harness.SweepConfig(curve_a=disk, curve_b=disk, k_values=(k,), n=256)
    row_same = harness.separation_sweep(same_cfg)[0]
    identical_ok = row_same.delta <= row_same.error_floor + 1e-15
    ok = separated and identical_ok
    detail = (f"k={k:.4f} delta={row.delta:.3e} floor={row.error_floor:.3e} "
              f"identical delta={row_same.delta:.3e}")
    _report(8, "separation experiment", ok, detail, time.perf_counter() - start, 60.0)
