"""Propagators of a particle bound to the plane z = 0 by a delta well of strength beta.

hat_green is the (energy, lateral momentum) representation, td_green the
time-domain form.  i1_integral and its quadrature twin feed the check that
the time-domain correction term really is the inverse transform.
"""
import cmath
import math
import warnings

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import DomainError
from .special import complex_erfc

_E_PI4 = cmath.exp(0.25j * math.pi)
_E_MPI4 = cmath.exp(-0.25j * math.pi)


def _alpha(w, k):
    x = complex(k * k - w)
    if x.imag == 0.0 and x.real <= 0.0:
        raise DomainError(f"k^2 - w = {x.real!r} is on the branch cut")
    return cmath.sqrt(x)


def hat_green(w, k, z, zp, beta):
    """(1/2a)[exp(-a|z-z'|) + beta/(a-beta) exp(-a(|z|+|z'|))], a = sqrt(k^2 - w)."""
    if beta < 0:
        raise DomainError("beta must be non-negative")
    a = _alpha(w, k)
    if a == beta:
        raise DomainError(f"pole of the bound state: w = k^2 - beta^2 = {k * k - beta * beta!r}")
    free = cmath.exp(-a * abs(z - zp))
    bound = beta / (a - beta) * cmath.exp(-a * (abs(z) + abs(zp)))
    return (free + bound) / (2.0 * a)


def free_green(t, r):
    """Free 3D propagator exp(-i pi/4) (4 pi t)^(-3/2) exp(i r^2/(4t)) for t > 0, else 0."""
    if t == 0:
        raise DomainError("t = 0 is not a regular point of the propagator")
    if t < 0:
        return 0j
    return _E_MPI4 * (4.0 * math.pi * t) ** -1.5 * cmath.exp(1j * r * r / (4.0 * t))


def td_correction(t, r_par, z, zp, beta):
    """Binding correction G - G_f for t > 0."""
    Z = abs(z) + abs(zp)
    arg = _E_MPI4 * Z / (2.0 * math.sqrt(t)) - _E_PI4 * beta * math.sqrt(t)
    return (beta / (8.0 * math.pi * t) * cmath.exp(1j * r_par * r_par / (4.0 * t))
            * cmath.exp(1j * beta * beta * t - beta * Z) * complex_erfc(arg))


def td_green(t, r_par, z, zp, beta):
    """Retarded propagator G(t, r_par, z, z'); identically zero for t < 0."""
    if t == 0:
        raise DomainError("t = 0 is not a regular point of the propagator")
    if t < 0:
        return 0j
    r = math.hypot(r_par, z - zp)
    if beta == 0:
        return free_green(t, r)
    return free_green(t, r) + td_correction(t, r_par, z, zp, beta)


def i1_integral(t, Z, beta):
    """Closed form of int_0^inf dv/(2pi) exp(-ivt) cos(Z sqrt v) / (sqrt(v) (v + beta^2))."""
    if not t > 0:
        raise DomainError("t must be positive")
    if not beta > 0:
        raise DomainError("beta must be positive")
    st = math.sqrt(t)
    x = _E_PI4 * beta * st
    y = _E_MPI4 * Z / (2.0 * st)
    return cmath.exp(1j * beta * beta * t) / (4.0 * beta) * (
        cmath.exp(beta * Z) * complex_erfc(x + y) + cmath.exp(-beta * Z) * complex_erfc(x - y))


def i1_quadrature(t, Z, beta, phi=math.pi / 4, derivative=False, tol=1e-13):
    """Direct quadrature of the I1 integral (or its Z-derivative).

    The ray v = u^2 exp(-i phi) turns the oscillation into Gaussian decay and
    removes the 1/sqrt(v) endpoint singularity.
    """
    if not t > 0:
        raise DomainError("t must be positive")
    if not 0 < phi < math.pi / 2:
        raise DomainError("rotation angle must lie in (0, pi/2)")
    rot = cmath.exp(-1j * phi)
    half = cmath.exp(-0.5j * phi)

    def f(u):
        phase = -1j * u * u * rot * t
        p, m = cmath.exp(phase + 1j * Z * u * half), cmath.exp(phase - 1j * Z * u * half)
        if derivative:
            top = 0.5j * u * half * (p - m)  # d/dZ cos(Zs) = -s sin(Zs)
        else:
            top = 0.5 * (p + m)
        return half * top / (u * u * rot + beta * beta) / math.pi

    a = t * math.sin(phi)
    c = abs(Z) * math.sin(phi / 2)
    upper = (c + math.sqrt(c * c + 4 * a * 80.0)) / (2 * a)
    parts = []
    for comp in (lambda u: f(u).real, lambda u: f(u).imag):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", IntegrationWarning)
            val, _ = quad(comp, 0.0, upper, epsabs=1e-15, epsrel=tol, limit=800)
        parts.append(val)
    return complex(*parts)


def td_correction_via_i1(t, r_par, z, zp, beta, phi=math.pi / 4):
    """Binding correction rebuilt from quadratures of I1 and dI1/dZ.

    Independent of td_correction: uses no error function.
    """
    Z = abs(z) + abs(zp)
    i1 = i1_quadrature(t, Z, beta, phi)
    di1 = i1_quadrature(t, Z, beta, phi, derivative=True)
    # energy integral with the k^2 phase stripped off
    energy = 2j * beta * cmath.exp(1j * beta * beta * t - beta * Z) - 2j * beta * (-di1 + beta * i1)
    lateral = cmath.exp(1j * r_par * r_par / (4.0 * t)) / (4j * math.pi * t)
    return 0.5 * lateral * energy


def electrostatic_kernel(q, z):
    """exp(-q|z|)/(2q)."""
    if not q > 0:
        raise DomainError("q must be positive")
    return np.exp(-q * np.abs(z)) / (2.0 * q)


__all__ = [
    "hat_green", "free_green", "td_green", "td_correction", "td_correction_via_i1",
    "i1_integral", "i1_quadrature", "electrostatic_kernel", "complex_erfc",
]
