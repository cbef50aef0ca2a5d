"""Bessel functions of the first kind via their ascending power series.

Everything here is built on the series

    J_m(x) = sum_j (-1)^j / (j! (m+j)!) * (x/2)^(m+2j)

evaluated three ways: a fixed-term partial sum (used for initial
conditions near the membrane centre), an adaptively converged float sum,
and, for large arguments where double-precision accumulation cancels
catastrophically, the same series in scaled-integer arithmetic.  Zeros
are bracketed by a coarse scan and refined by bisection on the series
itself, so the zero finder has no dependency outside this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "BesselEval",
    "bessel_series",
    "bessel_series_derivative",
    "bessel_j",
    "bessel_j_prime",
    "bessel_eval",
    "bessel_zero",
]

MAX_ORDER = 60  # factorial overflow guard

# Above this argument float accumulation loses digits to cancellation
# (error ~ eps * I_m(x): already ~1e-13 by x = 12) and the scaled-integer
# path takes over; below it the float series is accurate to the last ulp.
_FLOAT_SERIES_LIMIT = 6.0

_ZERO_SCAN_STEP = 0.1
_ZERO_TOL = 1e-10


@dataclass(frozen=True)
class BesselEval:
    """J_m and its derivative at a single point."""

    order: int
    argument: float
    value: float
    derivative: float


def _check_args(m: int, x: float) -> None:
    if m < 0:
        raise ValueError(f"order must be non-negative, got {m}")
    if m > MAX_ORDER:
        raise ValueError(f"order {m} exceeds limit {MAX_ORDER}")
    if x < 0:
        raise ValueError(f"argument must be non-negative, got {x}")


def bessel_series(m: int, x: float, terms: int) -> float:
    """Partial sum of the ascending series of J_m(x), truncated at `terms` terms.

    For x <= 0.01 and terms = 4 the truncation error is far below 1e-12,
    which is why four terms suffice for initial conditions near the axis.
    """
    _check_args(m, x)
    if terms < 1:
        raise ValueError(f"terms must be >= 1, got {terms}")
    half = 0.5 * x
    term = half**m / math.factorial(m)
    q = half * half
    out = [term]
    for j in range(1, terms):
        term = -term * q / (j * (m + j))
        out.append(term)
    return math.fsum(out)


def bessel_series_derivative(m: int, x: float, terms: int) -> float:
    """Derivative J_m'(x) from fixed-term partial sums via J_m' = (J_{m-1} - J_{m+1})/2."""
    lower = -bessel_series(1, x, terms) if m == 0 else bessel_series(m - 1, x, terms)
    return 0.5 * (lower - bessel_series(m + 1, x, terms))


def _series_float(m: int, x: float) -> float:
    # Adaptive float sum; stop once the increment is negligible and the
    # terms are past their hump (|t_{j+1}/t_j| < 1 from there on).
    half = 0.5 * x
    term = half**m / math.factorial(m)
    q = half * half
    out = [term]
    j = 0
    while True:
        j += 1
        term = -term * q / (j * (m + j))
        out.append(term)
        if j * (m + j) > q and abs(term) <= 1e-15 * abs(math.fsum(out)):
            return math.fsum(out)
        if j > 500:  # unreachable for x in scope; guards an infinite loop
            return math.fsum(out)


def _series_fixedpoint(m: int, x: float) -> float:
    # Same series with terms and sum held as integers scaled by 2^B.
    # The absolute error is ~ sum|terms| * 2^-B ~ I_m(x) * 2^-B, so B grows
    # linearly with x (log2 I_m(x) ~ 1.443 x) plus generous headroom.
    if x == 0.0:
        return 1.0 if m == 0 else 0.0
    B = 96 + int(1.5 * x) + 2 * m
    # x * 2^B exactly (x is a binary float)
    mant, exp = math.frexp(x)
    mant_i = int(mant * (1 << 53))
    shift = B + exp - 53
    xf = mant_i << shift if shift >= 0 else mant_i >> (-shift)
    q = (xf * xf) >> (B + 2)  # (x/2)^2 * 2^B
    t = 1 << B
    for _ in range(m):
        t = (t * xf) >> (B + 1)
    t //= math.factorial(m)
    s = t
    j = 0
    q_int = (q >> B) + 1
    while t != 0:
        j += 1
        t = -((t * q) >> B) // (j * (m + j))
        s += t
        if j * (m + j) > q_int and abs(t) <= 1:
            break
        if j > 5000:
            raise RuntimeError(f"series failed to converge for J_{m}({x})")
    return math.ldexp(float(s), -B) if abs(s) < (1 << 1020) else float(s) / float(1 << B)


def bessel_j(m: int, x: float) -> float:
    """Converged series evaluation of J_m(x)."""
    _check_args(m, x)
    if x <= _FLOAT_SERIES_LIMIT:
        return _series_float(m, x)
    return _series_fixedpoint(m, x)


def bessel_j_prime(m: int, x: float) -> float:
    """J_m'(x) via the identity J_m' = (J_{m-1} - J_{m+1})/2, with J_{-1} = -J_1."""
    lower = -bessel_j(1, x) if m == 0 else bessel_j(m - 1, x)
    return 0.5 * (lower - bessel_j(m + 1, x))


def bessel_eval(m: int, x: float) -> BesselEval:
    """Evaluate J_m and J_m' together."""
    return BesselEval(order=m, argument=x, value=bessel_j(m, x), derivative=bessel_j_prime(m, x))


@lru_cache(maxsize=None)
def _zeros_up_to(m: int, count: int) -> tuple[float, ...]:
    # Coarse scan from x = m (the first zero of J_m lies above m) followed
    # by bisection on each bracketed sign change.  Step 0.1 is well below
    # the ~pi spacing of consecutive zeros, so no root can be skipped.
    limit = m + 20.0 * count
    zeros: list[float] = []
    x_prev = float(m)
    f_prev = bessel_j(m, x_prev)
    x = x_prev
    while len(zeros) < count:
        x = x + _ZERO_SCAN_STEP
        if x > limit:
            raise RuntimeError(
                f"no sign change of J_{m} found before x = {limit}; series or scan is broken"
            )
        f = bessel_j(m, x)
        if f == 0.0:
            zeros.append(x)
        elif (f < 0.0) != (f_prev < 0.0) and f_prev != 0.0:
            lo, hi, f_lo = x_prev, x, f_prev
            while hi - lo > _ZERO_TOL:
                mid = 0.5 * (lo + hi)
                f_mid = bessel_j(m, mid)
                if f_mid == 0.0:
                    lo = hi = mid
                elif (f_mid < 0.0) == (f_lo < 0.0):
                    lo, f_lo = mid, f_mid
                else:
                    hi = mid
            zeros.append(0.5 * (lo + hi))
        x_prev, f_prev = x, f
    return tuple(zeros)


def bessel_zero(m: int, k: int) -> float:
    """The k-th positive root of J_m (k = 1 is the first), to 1e-10 absolute.

    Scope: m <= 10, k <= 10.
    """
    if not 0 <= m <= 10:
        raise ValueError(f"order must be in [0, 10], got {m}")
    if not 1 <= k <= 10:
        raise ValueError(f"zero index must be in [1, 10], got {k}")
    return _zeros_up_to(m, k)[k - 1]
