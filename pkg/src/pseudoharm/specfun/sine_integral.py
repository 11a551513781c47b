"""Sine integral Si(z) = integral of sin(t)/t from 0 to z, z >= 0.

Power series below 4, auxiliary-function form beyond: Si = pi/2
- f(z) cos z - g(z) sin z, with f and g evaluated by quadrature in the
mid range and by their divergent expansions (min-term truncated) once the
truncation floor is below 1e-13.
"""

import math

from ..errors import DomainError
from ..quadrature import integrate

_HALF_PI = 0.5 * math.pi
_Z_SERIES = 4.0
_Z_ASYMPTOTIC = 40.0


def _si_series(z):
    z2 = z * z
    term = z
    total = z
    k = 1
    while k < 200:
        term *= -z2 / ((2 * k) * (2 * k + 1))
        add = term / (2 * k + 1)
        total += add
        if abs(add) <= 1e-17 * abs(total):
            break
        k += 1
    return total


def _aux_fg_quadrature(z):
    # f = (1/z) int_0^inf e^-u / (1 + (u/z)^2) du, likewise g with u/z weight
    inv_z2 = 1.0 / (z * z)
    f = integrate(lambda u: math.exp(-u) / (1.0 + u * u * inv_z2),
                  0.0, 60.0, rel_tol=1e-14) / z
    g = integrate(lambda u: u * math.exp(-u) / (1.0 + u * u * inv_z2),
                  0.0, 70.0, rel_tol=1e-14) * inv_z2
    return f, g


def _aux_fg_asymptotic(z):
    inv_z2 = 1.0 / (z * z)
    f_term = 1.0
    f_tot = 1.0
    g_term = 1.0
    g_tot = 1.0
    k = 0
    while k < 40:
        f_nxt = f_term * -(2 * k + 1) * (2 * k + 2) * inv_z2
        g_nxt = g_term * -(2 * k + 2) * (2 * k + 3) * inv_z2
        if abs(f_nxt) >= abs(f_term):
            break
        f_term, g_term = f_nxt, g_nxt
        f_tot += f_term
        g_tot += g_term
        if abs(f_term) <= 1e-17 and abs(g_term) <= 1e-17:
            break
        k += 1
    return f_tot / z, g_tot / (z * z)


def sine_integral(z: float) -> float:
    """Si(z) to about 1e-12 absolute for z >= 0."""
    if z < 0.0:
        raise DomainError(f"sine_integral: requires z >= 0, got {z}")
    if z == 0.0:
        return 0.0
    if z < _Z_SERIES:
        return _si_series(z)
    if z < _Z_ASYMPTOTIC:
        f, g = _aux_fg_quadrature(z)
    else:
        f, g = _aux_fg_asymptotic(z)
    return _HALF_PI - f * math.cos(z) - g * math.sin(z)
