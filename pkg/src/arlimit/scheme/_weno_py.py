"""Pure-numpy WENO5-JS kernel; used when the compiled extension is unavailable."""

import numpy as np

EPS = 1e-6
D0, D1, D2 = 0.1, 0.6, 0.3


def weno5_left(a, b, c, d, e):
    """Upwind-biased value at the right face of cell ``c`` from the stencil (a, b, c, d, e)."""
    b0 = 13.0 / 12.0 * (a - 2.0 * b + c) ** 2 + 0.25 * (a - 4.0 * b + 3.0 * c) ** 2
    b1 = 13.0 / 12.0 * (b - 2.0 * c + d) ** 2 + 0.25 * (b - d) ** 2
    b2 = 13.0 / 12.0 * (c - 2.0 * d + e) ** 2 + 0.25 * (3.0 * c - 4.0 * d + e) ** 2
    a0 = D0 / (EPS + b0) ** 2
    a1 = D1 / (EPS + b1) ** 2
    a2 = D2 / (EPS + b2) ** 2
    q0 = (2.0 * a - 7.0 * b + 11.0 * c) / 6.0
    q1 = (-b + 5.0 * c + 2.0 * d) / 6.0
    q2 = (2.0 * c + 5.0 * d - e) / 6.0
    return (a0 * q0 + a1 * q1 + a2 * q2) / (a0 + a1 + a2)


def weno5_split_flux(u, f, alpha):
    """Lax-Friedrichs split numerical fluxes at every interior face.

    ``u`` and ``f`` have shape (ncomp, m) including three ghost cells per
    side; the result has shape (ncomp, m - 5), one value per face between
    padded cells j and j+1 for j = 2 .. m-4.
    """
    u = np.asarray(u, dtype=float)
    f = np.asarray(f, dtype=float)
    m = u.shape[-1]
    fp = 0.5 * (f + alpha * u)
    fm = 0.5 * (f - alpha * u)
    plus = weno5_left(fp[:, 0:m - 5], fp[:, 1:m - 4], fp[:, 2:m - 3], fp[:, 3:m - 2], fp[:, 4:m - 1])
    minus = weno5_left(fm[:, 5:m], fm[:, 4:m - 1], fm[:, 3:m - 2], fm[:, 2:m - 3], fm[:, 1:m - 4])
    return plus + minus
