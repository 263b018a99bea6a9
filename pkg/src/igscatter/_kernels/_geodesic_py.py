"""Pure-Python twin of the compiled geodesic integrator.

Dormand-Prince 5(4) embedded pair with FSAL, scaled-RMS error control and a
plain I step-size controller, specialised to the 6-state geodesic system

    y = (mu1, mu2, sigma, v1, v2, v3)

    mu_a'' = 2 v_a v3 / sigma
    sigma'' = (v3^2 - (v1^2 - 2 r v1 v2 + v2^2) / (4 (1 - r^2))) / sigma

The arithmetic here mirrors the Cython kernel operation for operation (the
extension is compiled with FP contraction disabled), so the two backends
produce bit-identical trajectories.  Keep the twins in sync when editing.
"""

import math

import numpy as np

STATUS_OK = 0
STATUS_SIGMA_FLOOR = 1
STATUS_STEP_UNDERFLOW = 2
STATUS_MAX_STEPS = 3

# Dormand-Prince 5(4) tableau
A21 = 1.0 / 5.0
A31 = 3.0 / 40.0
A32 = 9.0 / 40.0
A41 = 44.0 / 45.0
A42 = -56.0 / 15.0
A43 = 32.0 / 9.0
A51 = 19372.0 / 6561.0
A52 = -25360.0 / 2187.0
A53 = 64448.0 / 6561.0
A54 = -212.0 / 729.0
A61 = 9017.0 / 3168.0
A62 = -355.0 / 33.0
A63 = 46732.0 / 5247.0
A64 = 49.0 / 176.0
A65 = -5103.0 / 18656.0
B1 = 35.0 / 384.0
B3 = 500.0 / 1113.0
B4 = 125.0 / 192.0
B5 = -2187.0 / 6784.0
B6 = 11.0 / 84.0
E1 = 71.0 / 57600.0
E3 = -71.0 / 16695.0
E4 = 71.0 / 1920.0
E5 = -17253.0 / 339200.0
E6 = 22.0 / 525.0
E7 = -1.0 / 40.0

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 5.0


def _rhs(y, r, quad_denom, f):
    """Geodesic right-hand side; False if sigma left the positive domain."""
    sigma = y[2]
    if not (sigma > 0.0) or not math.isfinite(sigma):
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


def _initial_step(y, f, r, quad_denom, span, rtol, atol):
    d0 = 0.0
    d1 = 0.0
    for i in range(6):
        sc = atol + rtol * abs(y[i])
        q = y[i] / sc
        d0 += q * q
        q = f[i] / sc
        d1 += q * q
    d0 = math.sqrt(d0 / 6.0)
    d1 = math.sqrt(d1 / 6.0)
    if d0 < 1e-5 or d1 < 1e-5:
        h0 = 1e-6
    else:
        h0 = 0.01 * (d0 / d1)
    if h0 > span:
        h0 = span
    # keep the probe state on the sigma > 0 side
    while y[2] + h0 * f[2] <= 0.0:
        h0 *= 0.5
    y1 = [0.0] * 6
    for i in range(6):
        y1[i] = y[i] + h0 * f[i]
    f1 = [0.0] * 6
    if not _rhs(y1, r, quad_denom, f1):
        return max(h0 * 0.1, 1e-12)
    d2 = 0.0
    for i in range(6):
        sc = atol + rtol * abs(y[i])
        q = (f1[i] - f[i]) / sc
        d2 += q * q
    d2 = math.sqrt(d2 / 6.0) / h0
    dm = d1 if d1 > d2 else d2
    if dm <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / dm) ** 0.2
    h = 100.0 * h0
    if h1 < h:
        h = h1
    if span < h:
        h = span
    return h


def integrate(y0, r, tau0, tau_max, rtol, atol, max_step, max_steps):
    """Integrate the geodesic system from tau0 to tau_max.

    Returns (status, taus, ys, n_rejected) where taus is a (n,) float array,
    ys is (n, 6) and sample 0 is the initial condition.
    """
    quad_denom = 4.0 * (1.0 - r * r)
    y = [float(v) for v in y0]
    tau = float(tau0)
    taus = [tau]
    ys = [tuple(y)]
    n_rejected = 0

    if tau_max <= tau0:
        return STATUS_OK, np.array(taus), np.array(ys), 0

    k1 = [0.0] * 6
    k2 = [0.0] * 6
    k3 = [0.0] * 6
    k4 = [0.0] * 6
    k5 = [0.0] * 6
    k6 = [0.0] * 6
    k7 = [0.0] * 6
    yt = [0.0] * 6
    ynew = [0.0] * 6

    if not _rhs(y, r, quad_denom, k1):
        return STATUS_SIGMA_FLOOR, np.array(taus), np.array(ys), 0

    h = _initial_step(y, k1, r, quad_denom, tau_max - tau, rtol, atol)
    if h > max_step:
        h = max_step

    status = STATUS_OK
    sigma_fail = False
    while tau < tau_max:
        if h > max_step:
            h = max_step
        last_step = False
        if tau + h >= tau_max:
            h = tau_max - tau
            last_step = True
        hmin = 1e-13 * (abs(tau) if abs(tau) > 1.0 else 1.0)
        if h < hmin:
            status = STATUS_SIGMA_FLOOR if sigma_fail else STATUS_STEP_UNDERFLOW
            break
        if len(taus) >= max_steps:
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
            ay = abs(y[i])
            an = abs(ynew[i])
            sc = atol + rtol * (ay if ay > an else an)
            q = e / sc
            err_sum += q * q
        err = math.sqrt(err_sum / 6.0)

        if not math.isfinite(err):
            n_rejected += 1
            sigma_fail = False
            h *= MIN_FACTOR
            continue

        if err <= 1.0:
            tau = tau_max if last_step else tau + h
            for i in range(6):
                y[i] = ynew[i]
                k1[i] = k7[i]
            taus.append(tau)
            ys.append(tuple(y))
            sigma_fail = False
            if err == 0.0:
                factor = MAX_FACTOR
            else:
                factor = SAFETY * err ** -0.2
                if factor > MAX_FACTOR:
                    factor = MAX_FACTOR
                elif factor < MIN_FACTOR:
                    factor = MIN_FACTOR
            h *= factor
        else:
            n_rejected += 1
            sigma_fail = False
            factor = SAFETY * err ** -0.2
            if factor < MIN_FACTOR:
                factor = MIN_FACTOR
            h *= factor

    return status, np.array(taus), np.array(ys), n_rejected
