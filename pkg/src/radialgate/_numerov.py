"""Numba kernels for the Numerov sweep and node counting.

The ODE is written as u'' = q(r) u on a uniform grid.  The sweep carries a
renormalization guard: every ``rescale_every`` steps, and whenever the
magnitude passes ``threshold``, the computed prefix is divided by its max.
Rescaling factors are positive, so node counts and log-derivatives are
unaffected.
"""

import numpy as np
from numba import njit

RESCALE_EVERY = 1000
RESCALE_THRESHOLD = 1e250


@njit(cache=True, nogil=True)
def numerov_sweep(q, h, u0, u1):
    """Integrate u'' = q u forward over the nodes of ``q``.

    Returns (u, n_rescales); the overall scale of u is arbitrary whenever
    n_rescales > 0.
    """
    n = q.shape[0]
    u = np.empty(n)
    u[0] = u0
    u[1] = u1
    c = h * h / 12.0
    rescales = 0
    fm = 1.0 - c * q[0]
    f0 = 1.0 - c * q[1]
    for i in range(1, n - 1):
        fp = 1.0 - c * q[i + 1]
        u[i + 1] = ((12.0 - 10.0 * f0) * u[i] - fm * u[i - 1]) / fp
        fm = f0
        f0 = fp
        if abs(u[i + 1]) > RESCALE_THRESHOLD or (i + 1) % RESCALE_EVERY == 0:
            m = 0.0
            for j in range(i + 2):
                aj = abs(u[j])
                if aj > m:
                    m = aj
            if m > 0.0 and m != 1.0:
                inv = 1.0 / m
                for j in range(i + 2):
                    u[j] *= inv
                rescales += 1
    return u, rescales


@njit(cache=True, nogil=True)
def count_sign_changes(u, lo, hi):
    """Sign changes of u over node indices [lo, hi); exact zeros are skipped."""
    cnt = 0
    last = 0.0
    for i in range(lo, hi):
        v = u[i]
        if v == 0.0:
            continue
        if last != 0.0 and (v > 0.0) != (last > 0.0):
            cnt += 1
        last = v
    return cnt
