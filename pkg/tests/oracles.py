"""Independent reference computations used to freeze expected values.

Nothing here imports the package: each oracle re-derives its numbers from the
governing relations with a different parameterization or arithmetic than the
production code.
"""

import math

import mpmath

mpmath.mp.dps = 60


def plain_bisect(f, a, b, iters=400):
    fa = f(a)
    for _ in range(iters):
        m = 0.5 * (a + b)
        if m == a or m == b:
            break
        fm = f(m)
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def ar_region1_mp(rl, ul, rr, ur, gamma):
    """rho*, sigma1 and rho*(sigma2 - sigma1) for AR region-I data, in 60-digit arithmetic.

    sigma1 comes from the mass jump condition (rho* u* - rho_l u_l)/(rho* - rho_l).
    """
    g = mpmath.mpf(gamma)
    rl, ul, rr, ur = map(mpmath.mpf, (rl, ul, rr, ur))
    rs = (rl ** g + ul - ur) ** (1 / g)
    s1 = (rs * ur - rl * ul) / (rs - rl)
    return rs, s1, rs * (ur - s1)


def _par_radicand(rb, ub, r, u, g):
    return ((g - 1) * (1 / rb - 1 / r) * (r ** g * u - rb ** g * ub)
            + (ub - u) * (r ** (g - 1) - rb ** (g - 1))) / g


def par_two_shock_oracle(rl, ul, rr, ur, g):
    """Nested bisection on the two shock relations, outer loop over u*.

    For fixed u* in (u_r, u_l) the 1-shock relation fixes rho* > rho_l; the
    2-shock relation is then the outer residual.
    """
    def rho_on_s1(us):
        def f(r):
            rad = _par_radicand(rl, ul, r, us, g)
            return (us - ul) + math.sqrt(max(rad, 0.0))
        hi = 2.0 * rl
        while f(hi) < 0:
            hi *= 2.0
        return plain_bisect(f, rl * (1 + 1e-15), hi)

    def outer(us):
        rs = rho_on_s1(us)
        rad = _par_radicand(rs, us, rr, ur, g)
        return (ur - us) + math.sqrt(max(rad, 0.0))

    lo, hi = ur + 1e-13 * abs(ul - ur), ul - 1e-13 * abs(ul - ur)
    us = plain_bisect(outer, lo, hi, iters=200)
    rs = rho_on_s1(us)
    s1 = (rs * us - rl * ul) / (rs - rl)
    s2 = (rr * ur - rs * us) / (rr - rs)
    return rs, us, s1, s2


def pgd_delta_by_ode(rl, ul, rr, ur):
    """Integrate the generalized Rankine-Hugoniot ODEs from (x, w) = (0, 0).

    With w linear in t the momentum equation reads sigma*w1 = sigma[rho u] - [rho u^2]
    and the mass equation w1 = sigma[rho] - [rho u]; eliminating w1 leaves the
    quadratic [rho] s^2 - 2[rho u] s + [rho u^2] = 0, whose root between u_r and
    u_l is the speed.  Solved here by bisection, not by the square-root formula.
    """
    jr, jm, jmu = rr - rl, rr * ur - rl * ul, rr * ur * ur - rl * ul * ul

    def quad(s):
        return jr * s * s - 2 * jm * s + jmu

    s = plain_bisect(quad, ur, ul)
    return s, s * jr - jm
