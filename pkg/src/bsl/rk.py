"""Adaptive embedded Runge-Kutta with an exact per-step integrating factor.

The moving-frame dissipation symbol nu*(xi - k*tau)^2 (optionally plus k^2)
has a cubic-in-time antiderivative, so the stiff linear part can be removed
exactly: each step integrates the smooth transformed variable and re-applies
the accumulated decay.  The Dormand-Prince 5(4) pair supplies the error
estimate.  All integrating-factor ratios that appear in the rearranged stage
formulas point "forward in time" and are therefore pure decays, bounded by 1,
so no overflow guard is needed.

The ``decay(a, b)`` callback must return, per component, the multiplicative
factor exp(-(Phi(b) - Phi(a))) accumulated by the linear part between times
a <= b (1.0 for undamped components).
"""

from __future__ import annotations

import numpy as np

from .errors import IntegrationFailure

__all__ = ["adaptive_if_rk", "phi_increment"]

# Dormand-Prince 5(4) tableau
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200,
                187 / 2100, 1 / 40])


def phi_increment(nu, k, xi, a, b, include_k2=False):
    """Exact dissipation exponent nu * int_a^b (xi - k*tau)^2 (+ k^2) dtau.

    Uses the factored cubic (b-a)*(p^2 + p*q + q^2)/3 with p = xi - k*a,
    q = xi - k*b, which is stable for all k including k = 0.
    """
    p = xi - k * a
    q = xi - k * b
    vertical = (b - a) * (p * p + p * q + q * q) / 3.0
    if include_k2:
        vertical = vertical + k * k * (b - a)
    return nu * vertical


def adaptive_if_rk(explicit_rhs, decay, t_span, y0, rtol=1e-9, atol=1e-12,
                   max_step=np.inf, first_step=None, t_eval=None,
                   max_steps=2_000_000):
    """Integrate y' = L(t) y + N(t, y) with exact handling of the diagonal L.

    Parameters
    ----------
    explicit_rhs : callable(t, y) -> array
        The explicit (non-stiff) part N(t, y).
    decay : callable(a, b) -> array
        Per-component decay factor of the linear part from time a to b >= a.
    t_span : (t0, t1)
    y0 : complex array
    rtol, atol : error tolerances for the embedded 5(4) estimate
    max_step : cap on the step size
    t_eval : optional increasing array of times that must be hit exactly;
        samples are recorded there instead of at every accepted step.

    Returns
    -------
    times : float array
    states : complex array, shape (len(times),) + y0.shape
    """
    t0, t1 = float(t_span[0]), float(t_span[1])
    if not t1 > t0:
        raise ValueError("t_span must be increasing")
    y = np.asarray(y0, dtype=complex).copy()

    record_all = t_eval is None
    if not record_all:
        t_eval = np.asarray(t_eval, dtype=float)
        if t_eval.ndim != 1 or np.any(np.diff(t_eval) <= 0):
            raise ValueError("t_eval must be strictly increasing")
        eval_idx = 0

    times = [t0]
    states = [y.copy()]
    if not record_all and eval_idx < len(t_eval) and np.isclose(t_eval[0], t0):
        eval_idx = 1

    scale0 = np.max(np.abs(explicit_rhs(t0, y))) + 1e-30
    h = first_step if first_step is not None else min(
        max_step, (t1 - t0) / 100.0, 0.1 / scale0)
    h = min(h, t1 - t0, max_step)
    t = t0
    n_steps = 0

    while t < t1 - 1e-14 * max(1.0, abs(t1)):
        if n_steps > max_steps:
            raise IntegrationFailure("step budget exhausted")
        h = min(h, t1 - t, max_step)
        if not record_all and eval_idx < len(t_eval):
            h = min(h, t_eval[eval_idx] - t)
        if h <= 1e-14 * max(1.0, abs(t)):
            raise IntegrationFailure(f"step-size underflow at t = {t}")

        ts = t + _C * h
        # stage values in the original variable; decay ratios all forward in time
        ns = [explicit_rhs(t, y)]
        for i in range(1, 7):
            acc = decay(t, ts[i]) * y
            for j in range(i):
                if _A[i][j] != 0.0:
                    acc = acc + (h * _A[i][j]) * decay(ts[j], ts[i]) * ns[j]
            ns.append(explicit_rhs(ts[i], acc))

        end_decay = decay(t, t + h)
        y5 = end_decay * y
        y4 = end_decay * y
        for i in range(7):
            fac = decay(ts[i], t + h) * ns[i]
            if _B5[i] != 0.0:
                y5 = y5 + (h * _B5[i]) * fac
            if _B4[i] != 0.0:
                y4 = y4 + (h * _B4[i]) * fac

        err_scale = atol + rtol * np.maximum(np.abs(y), np.abs(y5))
        err = np.sqrt(np.mean(np.abs((y5 - y4) / err_scale) ** 2))
        n_steps += 1

        if err <= 1.0 or h <= 1e-13 * max(1.0, abs(t)):
            t = t + h
            y = y5
            if record_all:
                times.append(t)
                states.append(y.copy())
            else:
                while eval_idx < len(t_eval) and t >= t_eval[eval_idx] - 1e-12 * max(1.0, abs(t)):
                    times.append(t_eval[eval_idx])
                    states.append(y.copy())
                    eval_idx += 1
        factor = 0.9 * (1.0 / max(err, 1e-10)) ** 0.2
        h = h * min(5.0, max(0.2, factor))

    return np.asarray(times), np.asarray(states)
