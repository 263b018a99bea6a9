# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled geodesic integrator kernel.

Dormand-Prince 5(4) with FSAL for the 6-state geodesic system; see
``_geodesic_py`` for the reference implementation.  The arithmetic matches
the pure-Python twin operation for operation (build uses -ffp-contract=off),
so both backends produce bit-identical trajectories.
"""

from libc.math cimport fabs, isfinite, pow, sqrt

import numpy as np

STATUS_OK = 0
STATUS_SIGMA_FLOOR = 1
STATUS_STEP_UNDERFLOW = 2
STATUS_MAX_STEPS = 3

cdef double A21 = 1.0 / 5.0
cdef double A31 = 3.0 / 40.0
cdef double A32 = 9.0 / 40.0
cdef double A41 = 44.0 / 45.0
cdef double A42 = -56.0 / 15.0
cdef double A43 = 32.0 / 9.0
cdef double A51 = 19372.0 / 6561.0
cdef double A52 = -25360.0 / 2187.0
cdef double A53 = 64448.0 / 6561.0
cdef double A54 = -212.0 / 729.0
cdef double A61 = 9017.0 / 3168.0
cdef double A62 = -355.0 / 33.0
cdef double A63 = 46732.0 / 5247.0
cdef double A64 = 49.0 / 176.0
cdef double A65 = -5103.0 / 18656.0
cdef double B1 = 35.0 / 384.0
cdef double B3 = 500.0 / 1113.0
cdef double B4 = 125.0 / 192.0
cdef double B5 = -2187.0 / 6784.0
cdef double B6 = 11.0 / 84.0
cdef double E1 = 71.0 / 57600.0
cdef double E3 = -71.0 / 16695.0
cdef double E4 = 71.0 / 1920.0
cdef double E5 = -17253.0 / 339200.0
cdef double E6 = 22.0 / 525.0
cdef double E7 = -1.0 / 40.0

cdef double SAFETY = 0.9
cdef double MIN_FACTOR = 0.2
cdef double MAX_FACTOR = 5.0


cdef bint _rhs(double* y, double r, double quad_denom, double* f) noexcept nogil:
    cdef double sigma = y[2]
    cdef double v1, v2, v3
    if not (sigma > 0.0) or not isfinite(sigma):
        return False
    v1 = y[3]
    v2 = y[4]
    v3 = y[5]
    f[0] = v1
    f[1] = v2
    f[2] = v3
    f[3] = 2.0 * v1 * v3 / sigma
    f[4] = 2.0 * v2 * v3 / sigma
    f[5] = (v3 * v3 - (v1 * v1 - 2.0 * r * v1 * v2 + v2 * v2) / quad_denom) / sigma
    return True


cdef double _initial_step(double* y, double* f, double r, double quad_denom,
                          double span, double rtol, double atol) noexcept nogil:
    cdef double d0 = 0.0
    cdef double d1 = 0.0
    cdef double d2 = 0.0
    cdef double sc, q, h0, h1, h, dm
    cdef double y1[6]
    cdef double f1[6]
    cdef int i
    for i in range(6):
        sc = atol + rtol * fabs(y[i])
        q = y[i] / sc
        d0 += q * q
        q = f[i] / sc
        d1 += q * q
    d0 = sqrt(d0 / 6.0)
    d1 = sqrt(d1 / 6.0)
    if d0 < 1e-5 or d1 < 1e-5:
        h0 = 1e-6
    else:
        h0 = 0.01 * (d0 / d1)
    if h0 > span:
        h0 = span
    while y[2] + h0 * f[2] <= 0.0:
        h0 *= 0.5
    for i in range(6):
        y1[i] = y[i] + h0 * f[i]
    if not _rhs(y1, r, quad_denom, f1):
        h = h0 * 0.1
        if h < 1e-12:
            h = 1e-12
        return h
    for i in range(6):
        sc = atol + rtol * fabs(y[i])
        q = (f1[i] - f[i]) / sc
        d2 += q * q
    d2 = sqrt(d2 / 6.0) / h0
    dm = d1 if d1 > d2 else d2
    if dm <= 1e-15:
        h1 = h0 * 1e-3
        if h1 < 1e-6:
            h1 = 1e-6
    else:
        h1 = pow(0.01 / dm, 0.2)
    h = 100.0 * h0
    if h1 < h:
        h = h1
    if span < h:
        h = span
    return h


def integrate(y0, double r, double tau0, double tau_max, double rtol,
              double atol, double max_step, long max_steps):
    """Integrate the geodesic system; same contract as the pure-Python twin."""
    cdef double quad_denom = 4.0 * (1.0 - r * r)
    cdef double y[6]
    cdef double k1[6]
    cdef double k2[6]
    cdef double k3[6]
    cdef double k4[6]
    cdef double k5[6]
    cdef double k6[6]
    cdef double k7[6]
    cdef double yt[6]
    cdef double ynew[6]
    cdef double tau = tau0
    cdef double h, hmin, err, err_sum, e, sc, q, factor, ay, an
    cdef bint ok, last_step, sigma_fail
    cdef int i
    cdef int status = STATUS_OK
    cdef long n_rejected = 0
    cdef long n = 0
    cdef long cap = 4096

    for i in range(6):
        y[i] = y0[i]

    buf = np.empty((cap, 7), dtype=np.float64)
    cdef double[:, ::1] bv = buf
    bv[0, 0] = tau
    for i in range(6):
        bv[0, i + 1] = y[i]
    n = 1

    if tau_max <= tau0:
        return STATUS_OK, buf[:1, 0].copy(), buf[:1, 1:].copy(), 0

    if not _rhs(y, r, quad_denom, k1):
        return STATUS_SIGMA_FLOOR, buf[:1, 0].copy(), buf[:1, 1:].copy(), 0

    h = _initial_step(y, k1, r, quad_denom, tau_max - tau, rtol, atol)
    if h > max_step:
        h = max_step

    sigma_fail = False
    while tau < tau_max:
        if h > max_step:
            h = max_step
        last_step = False
        if tau + h >= tau_max:
            h = tau_max - tau
            last_step = True
        hmin = 1e-13 * (fabs(tau) if fabs(tau) > 1.0 else 1.0)
        if h < hmin:
            status = STATUS_SIGMA_FLOOR if sigma_fail else STATUS_STEP_UNDERFLOW
            break
        if n >= max_steps:
            status = STATUS_MAX_STEPS
            break

        ok = True
        for i in range(6):
            yt[i] = y[i] + h * (A21 * k1[i])
        if not _rhs(yt, r, quad_denom, k2):
            ok = False
        if ok:
            for i in range(6):
                yt[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i])
            if not _rhs(yt, r, quad_denom, k3):
                ok = False
        if ok:
            for i in range(6):
                yt[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i])
            if not _rhs(yt, r, quad_denom, k4):
                ok = False
        if ok:
            for i in range(6):
                yt[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i])
            if not _rhs(yt, r, quad_denom, k5):
                ok = False
        if ok:
            for i in range(6):
                yt[i] = y[i] + h * (
                    A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]
                )
            if not _rhs(yt, r, quad_denom, k6):
                ok = False
        if ok:
            for i in range(6):
                ynew[i] = y[i] + h * (
                    B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]
                )
            if not _rhs(ynew, r, quad_denom, k7):
                ok = False
        if not ok:
            n_rejected += 1
            sigma_fail = True
            h *= 0.5
            continue

        err_sum = 0.0
        for i in range(6):
            e = h * (
                E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]
            )
            ay = fabs(y[i])
            an = fabs(ynew[i])
            sc = atol + rtol * (ay if ay > an else an)
            q = e / sc
            err_sum += q * q
        err = sqrt(err_sum / 6.0)

        if not isfinite(err):
            n_rejected += 1
            sigma_fail = False
            h *= MIN_FACTOR
            continue

        if err <= 1.0:
            tau = tau_max if last_step else tau + h
            for i in range(6):
                y[i] = ynew[i]
                k1[i] = k7[i]
            if n >= cap:
                cap *= 2
                newbuf = np.empty((cap, 7), dtype=np.float64)
                newbuf[:n] = buf[:n]
                buf = newbuf
                bv = buf
            bv[n, 0] = tau
            for i in range(6):
                bv[n, i + 1] = y[i]
            n += 1
            sigma_fail = False
            if err == 0.0:
                factor = MAX_FACTOR
            else:
                factor = SAFETY * pow(err, -0.2)
                if factor > MAX_FACTOR:
                    factor = MAX_FACTOR
                elif factor < MIN_FACTOR:
                    factor = MIN_FACTOR
            h *= factor
        else:
            n_rejected += 1
            sigma_fail = False
            factor = SAFETY * pow(err, -0.2)
            if factor < MIN_FACTOR:
                factor = MIN_FACTOR
            h *= factor

    return status, buf[:n, 0].copy(), buf[:n, 1:].copy(), n_rejected
