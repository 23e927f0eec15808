"""Scattering kernel of the linearized Coulomb problem, in beta-scaled units.

script_g(w, q, z, z') = int Ghat(w, q, z, z'') f0(z'') exp(-q|z'' - z'|) dz''
with f0(z) = exp(-|z|).  The closed form is split into three regions of the
(z, z') plane for z >= 0; z < 0 follows from script_g(-z, -z') = script_g(z, z').
"""
import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import DomainError, NumericError
from .params import alpha_sigma

ORACLE_ZMAX = 40.0


def _alpha_of_w(w, qt):
    x = complex(qt * qt - w)
    if x.imag == 0.0 and x.real <= 0.0:
        raise DomainError(f"q^2 - w = {x.real!r} is on the branch cut")
    a = cmath.sqrt(x)
    if a == 1.0:
        raise DomainError("alpha = 1 is a pole of the propagator")
    return a


def _coefficients(a, q):
    d = {
        "a-1": a - 1.0,
        "(a+1)^2-q^2": (a + 1.0) ** 2 - q * q,
        "(a-1)^2-q^2": (a - 1.0) ** 2 - q * q,
        "a-1+q": a - 1.0 + q,
        "a-1-q": a - 1.0 - q,
        "a+1-q": a + 1.0 - q,
        "a+1+q": a + 1.0 + q,
    }
    for name, v in d.items():
        if v == 0:
            raise DomainError(f"kernel denominator {name} vanishes")
    return d


def script_g_alpha(a, q, z, zp):
    """Closed-form kernel for given alpha = sqrt(q^2 - w); vectorized over z, zp."""
    d = _coefficients(a, q)
    z = np.asarray(z, dtype=float)
    zp = np.asarray(zp, dtype=float)
    z, zp = np.broadcast_arrays(z, zp)
    flip = z < 0
    z = np.where(flip, -z, z)
    zp = np.where(flip, -zp, zp)
    D1 = d["a-1"] * d["(a+1)^2-q^2"]
    common = -q * np.exp(-a * (z + np.abs(zp)) - np.abs(zp)) / (a * D1)

    out = np.empty(z.shape, dtype=complex)
    r1 = (zp >= 0) & (zp <= z)
    r2 = zp > z
    r3 = zp < 0
    if r1.any():
        x, y = z[r1], zp[r1]
        out[r1] = (2 * q * np.exp(-a * x - q * y) / (D1 * d["a-1+q"])
                   + np.exp(-q * (x - y) - x) / (d["a-1-q"] * d["a+1+q"])
                   - q * np.exp(-a * (x - y) - y) / (a * d["(a-1)^2-q^2"])
                   + common[r1])
    if r2.any():
        x, y = z[r2], zp[r2]
        out[r2] = (2 * q * np.exp(-a * x - q * y) / (D1 * d["a-1+q"])
                   + np.exp(-q * (y - x) - x) / (d["a-1+q"] * d["a+1-q"])
                   - q * np.exp(-a * (y - x) - y) / (a * d["(a+1)^2-q^2"])
                   + common[r2])
    if r3.any():
        x, y = z[r3], zp[r3]
        out[r3] = (-2 * q * np.exp(-a * x + q * y) / (D1 * d["a-1-q"])
                   + np.exp(-q * (x - y) - x) / (d["a-1-q"] * d["a+1+q"])
                   - q * np.exp(-a * (x - y) + y) / D1)
    return out if out.ndim else complex(out)


def script_g(w, qt, z, zp):
    """Closed-form kernel at energy w (scaled), lateral momentum qt."""
    if not qt > 0:
        raise DomainError("qt must be positive")
    return script_g_alpha(_alpha_of_w(w, qt), qt, z, zp)


def _hat_green_scaled(a, z, zp):
    return (cmath.exp(-a * abs(z - zp)) + cmath.exp(-a * (abs(z) + abs(zp))) / (a - 1.0)) / (2.0 * a)


def script_g_oracle(w, qt, z, zp, zmax=ORACLE_ZMAX, tol=1e-13):
    """Adaptive quadrature of the defining integral, split at the kinks {0, z, z'}."""
    if not qt > 0:
        raise DomainError("qt must be positive")
    a = _alpha_of_w(w, qt)
    lim = max(zmax, abs(z) + 30.0, abs(zp) + 30.0)

    def integrand(s):
        return _hat_green_scaled(a, z, s) * math.exp(-abs(s) - qt * abs(s - zp))

    cuts = sorted({-lim, 0.0, float(z), float(zp), lim})
    total = 0j
    parts = (lambda s: integrand(s).real, lambda s: integrand(s).imag)
    if a.imag == 0.0:
        parts = parts[:1]
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        if hi <= lo:
            continue
        for k, fn in enumerate(parts):
            with warnings.catch_warnings():
                # roundoff warnings only mean the 1e-13 target is not met exactly
                warnings.simplefilter("ignore", IntegrationWarning)
                val, _ = quad(fn, lo, hi, epsabs=1e-16, epsrel=tol, limit=400)
            if not math.isfinite(val):
                raise NumericError(f"kernel quadrature failed on [{lo}, {hi}]")
            total += val if k == 0 else 1j * val
    return total


@dataclass(frozen=True)
class KernelContext:
    point: object  # ScaledPoint
    c0: float
    alpha_plus: complex
    alpha_minus: complex

    @classmethod
    def build(cls, point, c0):
        if not c0 >= 0:
            raise DomainError("c0 must be non-negative")
        return cls(point, c0, alpha_sigma(point, 1), alpha_sigma(point, -1))


def slashed_kernel(ctx, z, zp):
    """(C0/qt) exp(-|z|) [script_g(-1 + wt) + script_g(-1 - wt)]."""
    q = ctx.point.qt
    z = np.asarray(z, dtype=float)
    s = script_g_alpha(ctx.alpha_plus, q, z, zp) + script_g_alpha(ctx.alpha_minus, q, z, zp)
    return ctx.c0 / q * np.exp(-np.abs(z)) * s


def even_kernel(ctx, z, zp):
    """Kernel of the even sector on the half line: K(z, z') + K(z, -z')."""
    return slashed_kernel(ctx, z, zp) + slashed_kernel(ctx, z, -np.asarray(zp, dtype=float))


def dq_apply(u, nodes, weights, qt, even=False):
    """(D_q u)(z_i) = int exp(-q|z_i - z'|) u(z') dz' by Nystrom on the given rule.

    With even=True the rule lives on z >= 0 and u is taken as an even function.
    """
    if not qt > 0:
        raise DomainError("qt must be positive")
    x = np.asarray(nodes, dtype=float)
    k = np.exp(-qt * np.abs(x[:, None] - x[None, :]))
    if even:
        k = k + np.exp(-qt * (x[:, None] + x[None, :]))
    return k @ (np.asarray(weights) * np.asarray(u))
