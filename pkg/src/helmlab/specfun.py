"""Cylinder functions J_n, Y_n, H^(1)_n on the positive real axis.

Everything here is evaluated from scratch in double precision:

* orders 0 and 1 use the ascending power series below a crossover argument
  and the large-argument Hankel expansion above it.  The ascending series
  alternates and loses digits to cancellation once the argument is a few
  units large, so the series terms and partial sums are carried in
  double-double (compensated) arithmetic; that keeps the absolute error at
  the 1e-15 level across the whole series range.
* higher orders come from the three-term recurrence, run in the direction
  in which the wanted solution dominates: upward always for Y_n, upward for
  J_n only in the oscillatory regime x > n, and Miller's normalized
  downward recurrence otherwise.

The first positive zero of J_0 is computed at first use by bisection plus
a Newton polish and cached; no tabulated constant is trusted.

All functions are pure; arrays are accepted where vectorized evaluation is
useful (orders 0 and 1, and the paired kernel helper used by the boundary
integral assembly).
"""

from __future__ import annotations

import functools
import math

import numpy as np

from .errors import DomainError, OverflowRangeError

__all__ = [
    "bessel_j",
    "bessel_y",
    "hankel1",
    "hankel1_01",
    "gamma0",
]

_EULER_GAMMA = 0.5772156649015328606
_SERIES_CROSSOVER = 16.0
_ASYMPTOTIC_TERMS = 34


# ---------------------------------------------------------------------------
# double-double helpers (error-free transformations, vectorized)
# ---------------------------------------------------------------------------
_SPLITTER = 134217729.0  # 2**27 + 1, Veltkamp splitting constant


def _two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def _fast_two_sum(a, b):
    # requires |a| >= |b| componentwise
    s = a + b
    err = b - (s - a)
    return s, err


def _two_prod(a, b):
    p = a * b
    ta = _SPLITTER * a
    ahi = ta - (ta - a)
    alo = a - ahi
    tb = _SPLITTER * b
    bhi = tb - (tb - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def _dd_add(xh, xl, yh, yl):
    s, e = _two_sum(xh, yh)
    e = e + (xl + yl)
    return _fast_two_sum(s, e)


def _dd_mul(xh, xl, yh, yl):
    p, e = _two_prod(xh, yh)
    e = e + (xh * yl + xl * yh)
    return _fast_two_sum(p, e)


def _dd_mul_d(xh, xl, d):
    p, e = _two_prod(xh, d)
    e = e + xl * d
    return _fast_two_sum(p, e)


def _dd_div_d(xh, xl, d):
    q1 = xh / d
    p, pe = _two_prod(q1, d)
    rh, rl = _two_sum(xh, -p)
    q2 = (rh + (rl + xl - pe)) / d
    return _fast_two_sum(q1, q2)


def _dd_recip(k: float):
    """1/k as a scalar double-double pair."""
    q = 1.0 / k
    p, pe = _two_prod(q, k)
    return q, ((1.0 - p) - pe) / k


# ---------------------------------------------------------------------------
# orders 0 and 1: ascending series (x < crossover)
# ---------------------------------------------------------------------------
def _series_term_count(xmax: float) -> int:
    # first K with (xmax/2)^(2K)/(K!)^2 below the double-double noise floor
    half = 0.5 * xmax
    log_term = 0.0
    k = 1
    while True:
        log_term += 2.0 * math.log(max(half, 1e-300)) - 2.0 * math.log(k)
        if log_term < math.log(1e-36):
            return k
        k += 1
        if k > 400:
            return k


def _jy01_series(x: np.ndarray):
    """J0, Y0, J1, Y1 by ascending series with compensated accumulation."""
    zh, zl = _two_prod(x, x)
    zh, zl = _dd_div_d(zh, zl, 4.0)  # z = x^2/4, double-double

    one = np.ones_like(x)
    zero = np.zeros_like(x)

    # running term z^k/(k!)^2 (for J0/Y0) and z^k/(k!(k+1)!) (for J1/Y1)
    ah, al = one.copy(), zero.copy()
    bh, bl = one.copy(), zero.copy()

    j0h, j0l = one.copy(), zero.copy()
    j1h, j1l = one.copy(), zero.copy()
    y0h, y0l = zero.copy(), zero.copy()  # sum of H_k terms
    y1h, y1l = one.copy(), zero.copy()   # sum of (H_k + H_{k+1}) terms, k=0 term = 1

    n_terms = _series_term_count(float(np.max(x)) if x.size else 0.0)
    hh, hl = 0.0, 0.0  # harmonic number H_k, double-double
    sign = 1.0
    for k in range(1, n_terms + 1):
        sign = -sign
        rh, rl = _dd_recip(float(k))
        hh, hl = _dd_add(hh, hl, rh, rl)
        # a_k = a_{k-1} * z / k^2
        ah, al = _dd_mul(ah, al, zh, zl)
        ah, al = _dd_div_d(ah, al, float(k) * float(k))
        # b_k = b_{k-1} * z / (k (k+1))
        bh, bl = _dd_mul(bh, bl, zh, zl)
        bh, bl = _dd_div_d(bh, bl, float(k) * float(k + 1))

        th, tl = _dd_mul_d(ah, al, sign)
        j0h, j0l = _dd_add(j0h, j0l, th, tl)

        th, tl = _dd_mul(ah, al, -sign * hh, -sign * hl)
        y0h, y0l = _dd_add(y0h, y0l, th, tl)

        th, tl = _dd_mul_d(bh, bl, sign)
        j1h, j1l = _dd_add(j1h, j1l, th, tl)

        # coefficient H_k + H_{k+1} = 2 H_k + 1/(k+1)
        rh, rl = _dd_recip(float(k + 1))
        ch, cl = _dd_add(2.0 * hh, 2.0 * hl, rh, rl)
        th, tl = _dd_mul(bh, bl, sign * ch, sign * cl)
        y1h, y1l = _dd_add(y1h, y1l, th, tl)

    j0 = j0h + j0l
    j1 = 0.5 * x * (j1h + j1l)

    log_term = np.log(0.5 * x) + _EULER_GAMMA
    two_over_pi = 2.0 / math.pi
    y0 = two_over_pi * (log_term * j0 + (y0h + y0l))
    # Y1 = (2/pi)(log(x/2)+gamma) J1 - 2/(pi x) - (x/(2 pi)) * sum_k
    y1 = two_over_pi * log_term * j1 - two_over_pi / x - (0.5 * x / math.pi) * (y1h + y1l)
    return j0, y0, j1, y1


# ---------------------------------------------------------------------------
# orders 0 and 1: Hankel asymptotic expansion (x >= crossover)
# ---------------------------------------------------------------------------
@functools.lru_cache(maxsize=4)
def _asymptotic_coeffs(order: int):
    """Coefficients a_k(order) of the Hankel expansion, split by parity."""
    mu = 4.0 * order * order
    a = [1.0]
    for k in range(1, _ASYMPTOTIC_TERMS):
        a.append(a[-1] * (mu - (2 * k - 1) ** 2) / (8.0 * k))
    even = np.array([(-1.0) ** j * a[2 * j] for j in range((len(a) + 1) // 2)])
    odd = np.array([(-1.0) ** j * a[2 * j + 1] for j in range(len(a) // 2)])
    return even, odd


def _jy_asymptotic(order: int, x: np.ndarray):
    even, odd = _asymptotic_coeffs(order)
    w = 1.0 / (x * x)
    p = np.zeros_like(x)
    for c in even[::-1]:
        p = p * w + c
    q = np.zeros_like(x)
    for c in odd[::-1]:
        q = q * w + c
    q = q / x
    omega = x - (0.5 * order + 0.25) * math.pi
    amp = np.sqrt(2.0 / (math.pi * x))
    cos_w = np.cos(omega)
    sin_w = np.sin(omega)
    j = amp * (p * cos_w - q * sin_w)
    y = amp * (p * sin_w + q * cos_w)
    return j, y


def _jy01(x: np.ndarray):
    """(J0, Y0, J1, Y1) for an array of strictly positive arguments."""
    j0 = np.empty_like(x)
    y0 = np.empty_like(x)
    j1 = np.empty_like(x)
    y1 = np.empty_like(x)
    small = x < _SERIES_CROSSOVER
    if np.any(small):
        xs = x[small]
        j0[small], y0[small], j1[small], y1[small] = _jy01_series(xs)
    large = ~small
    if np.any(large):
        xl = x[large]
        j0[large], y0[large] = _jy_asymptotic(0, xl)
        j1[large], y1[large] = _jy_asymptotic(1, xl)
    return j0, y0, j1, y1


# ---------------------------------------------------------------------------
# general nonnegative integer order
# ---------------------------------------------------------------------------
def _check_order(order) -> int:
    n = int(order)
    if n != order or n < 0:
        raise DomainError(f"order must be a nonnegative integer, got {order!r}")
    return n


def _j_scalar(n: int, x: float) -> float:
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    ax = abs(x)
    neg = (x < 0.0) and (n % 2 == 1)
    arr = np.array([ax])
    j0, _, j1, _ = _jy01(arr)
    j0, j1 = float(j0[0]), float(j1[0])
    if n == 0:
        val = j0
    elif n == 1:
        val = j1
    elif ax > n:
        # oscillatory regime: upward recurrence is stable
        jm, jc = j0, j1
        for m in range(1, n):
            jm, jc = jc, (2.0 * m / ax) * jc - jm
        val = jc
    else:
        val = _j_miller(n, ax)
    return -val if neg else val


def _j_miller(n: int, x: float) -> float:
    """Normalized downward recurrence; x <= n regime."""
    m_start = n + 20 + int(math.ceil(math.sqrt(40.0 * max(n, x, 1.0))))
    if m_start % 2 == 1:
        m_start += 1
    jp = 0.0
    jc = 1e-30
    result = jc if n == m_start else 0.0
    norm = 0.0
    for m in range(m_start, 0, -1):
        jm = (2.0 * m / x) * jc - jp
        jp, jc = jc, jm
        if abs(jc) > 1e250:
            jc *= 1e-250
            jp *= 1e-250
            norm *= 1e-250
            result *= 1e-250
        mm = m - 1
        if mm == n:
            result = jc
        if mm >= 2 and mm % 2 == 0:
            norm += 2.0 * jc
    norm += jc  # jc now holds unnormalized J_0
    return result / norm


def _y_scalar(n: int, x: float) -> float:
    if x <= 0.0:
        raise DomainError(f"Y_n requires x > 0, got {x!r}")
    arr = np.array([x])
    _, y0, _, y1 = _jy01(arr)
    y0, y1 = float(y0[0]), float(y1[0])
    if n == 0:
        return y0
    if n == 1:
        return y1
    ym, yc = y0, y1
    for m in range(1, n):
        ym, yc = yc, (2.0 * m / x) * yc - ym
        if abs(yc) > 1e305:
            raise OverflowRangeError(
                f"Y_{n}({x}) exceeds double-precision range during recurrence"
            )
    return yc


def _jn_all(nmax: int, x: float) -> np.ndarray:
    """J_0(x) .. J_nmax(x) in one sweep (used by the disk series)."""
    out = np.empty(nmax + 1)
    for n in range(nmax + 1):
        out[n] = _j_scalar(n, x)
    return out


def _yn_all(nmax: int, x: float) -> np.ndarray:
    """Y_0(x) .. Y_nmax(x) by upward recurrence."""
    arr = np.array([x])
    _, y0, _, y1 = _jy01(arr)
    out = np.empty(nmax + 1)
    out[0] = y0[0]
    if nmax >= 1:
        out[1] = y1[0]
    for m in range(1, nmax):
        out[m + 1] = (2.0 * m / x) * out[m] - out[m - 1]
        if abs(out[m + 1]) > 1e305:
            raise OverflowRangeError(
                f"Y_{m + 1}({x}) exceeds double-precision range during recurrence"
            )
    return out


# ---------------------------------------------------------------------------
# public surface
# ---------------------------------------------------------------------------
def bessel_j(order, x):
    """Bessel function of the first kind, nonnegative integer order.

    Accepts a scalar or an array argument; orders 0 and 1 are evaluated on
    a vectorized fast path, higher orders point by point.
    """
    n = _check_order(order)
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("bessel_j requires finite arguments")
    if arr.ndim == 0:
        return _j_scalar(n, float(arr))
    if n <= 1:
        out = np.empty_like(arr)
        ax = np.abs(arr)
        pos = ax > 0.0
        if np.any(pos):
            j0, _, j1, _ = _jy01(ax[pos])
            out[pos] = j0 if n == 0 else j1
        out[~pos] = 1.0 if n == 0 else 0.0
        if n == 1:
            out = np.where(arr < 0.0, -out, out)
        return out
    return np.array([_j_scalar(n, float(v)) for v in arr.ravel()]).reshape(arr.shape)


def bessel_y(order, x):
    """Bessel function of the second kind, nonnegative integer order, x > 0."""
    n = _check_order(order)
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr <= 0.0):
        raise DomainError("bessel_y requires finite x > 0")
    if arr.ndim == 0:
        return _y_scalar(n, float(arr))
    if n <= 1:
        _, y0, _, y1 = _jy01(arr)
        return y0 if n == 0 else y1
    return np.array([_y_scalar(n, float(v)) for v in arr.ravel()]).reshape(arr.shape)


def hankel1(order, x):
    """Hankel function of the first kind, H^(1)_n(x) = J_n(x) + i Y_n(x), x > 0.

    Raises DomainError for x <= 0 and OverflowRangeError when the Y_n part
    leaves the double range (tiny argument at high order); no non-finite
    value is ever returned.
    """
    n = _check_order(order)
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr <= 0.0):
        raise DomainError("hankel1 requires finite x > 0")
    j = np.asarray(bessel_j(n, arr), dtype=float)
    y = np.asarray(bessel_y(n, arr), dtype=float)
    if np.any(~np.isfinite(j)) or np.any(~np.isfinite(y)):
        raise OverflowRangeError(f"H^(1)_{n} overflows double range")
    out = j + 1j * y
    if np.ndim(x) == 0:
        return complex(out)
    return out


def hankel1_01(x: np.ndarray):
    """(H^(1)_0, H^(1)_1) on an array of positive arguments.

    Shared kernel path for the boundary-integral assembly: one series sweep
    produces all four real parts.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr <= 0.0):
        raise DomainError("hankel1_01 requires finite x > 0")
    j0, y0, j1, y1 = _jy01(arr)
    return j0 + 1j * y0, j1 + 1j * y1


@functools.lru_cache(maxsize=1)
def gamma0() -> float:
    """Smallest positive zero of J_0, by bisection plus a Newton polish."""
    lo, hi = 2.0, 3.0
    flo = _j_scalar(0, lo)
    if not (flo > 0.0 > _j_scalar(0, hi)):
        raise DomainError("J_0 does not change sign on [2, 3]")
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if _j_scalar(0, mid) > 0.0:
            lo = mid
        else:
            hi = mid
    z = 0.5 * (lo + hi)
    for _ in range(3):
        z = z + _j_scalar(0, z) / _j_scalar(1, z)  # J_0' = -J_1
    return z
