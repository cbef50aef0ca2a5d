"""Compiled inner loops for the radial integration.

The density never appears as a callback: it is pre-sampled onto the
half-step lattice r_start + j*h/2 (j = 0 .. 2n), which is exactly the set
of radii an explicit midpoint or classical fourth-order step touches.
That keeps the kernels free of Python objects and makes discontinuous
profiles behave deterministically (the integrator just steps across).
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

# status codes returned by the kernels
OK = -1


@njit(cache=True)
def _rhs(r, R, dR, rho, m2, k2):
    return dR, -dR / r - (rho * k2 - m2 / (r * r)) * R


@njit(cache=True)
def integrate_final(m, kprime, rho_half, r_start, h, n_steps, R0, dR0, rim_guard, order):
    """March to the rim; return (R_end, dR_end, interior_sign_changes, status).

    status is OK (-1) on success or the index of the step that first
    produced a non-finite state.  Sign changes within `rim_guard` of the
    rim are attributed to the boundary zero and not counted.
    """
    r = r_start
    R = R0
    dR = dR0
    m2 = float(m * m)
    k2 = kprime * kprime
    nodes = 0
    prev_sign = 0.0 if R == 0.0 else (1.0 if R > 0.0 else -1.0)
    r_end = r_start + n_steps * h
    for i in range(n_steps):
        if order == 2:
            f1R, f1D = _rhs(r, R, dR, rho_half[2 * i], m2, k2)
            rm = r + 0.5 * h
            f2R, f2D = _rhs(rm, R + 0.5 * h * f1R, dR + 0.5 * h * f1D, rho_half[2 * i + 1], m2, k2)
            R = R + h * f2R
            dR = dR + h * f2D
        else:
            f1R, f1D = _rhs(r, R, dR, rho_half[2 * i], m2, k2)
            rm = r + 0.5 * h
            rho_m = rho_half[2 * i + 1]
            f2R, f2D = _rhs(rm, R + 0.5 * h * f1R, dR + 0.5 * h * f1D, rho_m, m2, k2)
            f3R, f3D = _rhs(rm, R + 0.5 * h * f2R, dR + 0.5 * h * f2D, rho_m, m2, k2)
            rn = r_start + (i + 1) * h
            f4R, f4D = _rhs(rn, R + h * f3R, dR + h * f3D, rho_half[2 * i + 2], m2, k2)
            R = R + h * (f1R + 2.0 * f2R + 2.0 * f3R + f4R) / 6.0
            dR = dR + h * (f1D + 2.0 * f2D + 2.0 * f3D + f4D) / 6.0
        r = r_start + (i + 1) * h
        if not (math.isfinite(R) and math.isfinite(dR)):
            return R, dR, nodes, i
        s = 0.0 if R == 0.0 else (1.0 if R > 0.0 else -1.0)
        if s != 0.0:
            if prev_sign != 0.0 and s != prev_sign and r <= r_end - rim_guard:
                nodes += 1
            prev_sign = s
    return R, dR, nodes, OK


@njit(cache=True)
def integrate_record(m, kprime, rho_half, r_start, h, n_steps, R0, dR0, out_r, out_R, out_dR, order):
    """Same march, recording every accepted state into the out arrays."""
    r = r_start
    R = R0
    dR = dR0
    m2 = float(m * m)
    k2 = kprime * kprime
    out_r[0] = r
    out_R[0] = R
    out_dR[0] = dR
    for i in range(n_steps):
        if order == 2:
            f1R, f1D = _rhs(r, R, dR, rho_half[2 * i], m2, k2)
            rm = r + 0.5 * h
            f2R, f2D = _rhs(rm, R + 0.5 * h * f1R, dR + 0.5 * h * f1D, rho_half[2 * i + 1], m2, k2)
            R = R + h * f2R
            dR = dR + h * f2D
        else:
            f1R, f1D = _rhs(r, R, dR, rho_half[2 * i], m2, k2)
            rm = r + 0.5 * h
            rho_m = rho_half[2 * i + 1]
            f2R, f2D = _rhs(rm, R + 0.5 * h * f1R, dR + 0.5 * h * f1D, rho_m, m2, k2)
            f3R, f3D = _rhs(rm, R + 0.5 * h * f2R, dR + 0.5 * h * f2D, rho_m, m2, k2)
            rn = r_start + (i + 1) * h
            f4R, f4D = _rhs(rn, R + h * f3R, dR + h * f3D, rho_half[2 * i + 2], m2, k2)
            R = R + h * (f1R + 2.0 * f2R + 2.0 * f3R + f4R) / 6.0
            dR = dR + h * (f1D + 2.0 * f2D + 2.0 * f3D + f4D) / 6.0
        r = r_start + (i + 1) * h
        out_r[i + 1] = r
        out_R[i + 1] = R
        out_dR[i + 1] = dR
        if not (math.isfinite(R) and math.isfinite(dR)):
            return i
    return OK


def warmup() -> None:
    """Force-compile the kernels on a tiny problem (no-op once cached)."""
    rho = np.ones(21)
    for order in (2, 4):
        integrate_final(0, 1.0, rho, 0.1, 0.05, 10, 1.0, 0.0, 0.1, order)
        buf = np.empty(11)
        integrate_record(0, 1.0, rho, 0.1, 0.05, 10, 1.0, 0.0, buf, buf.copy(), buf.copy(), order)
