"""Even scattering amplitude F(z) at a dispersion root.

F(z) = sum_n sum_sigma R_n^sigma exp((s_n^sigma + 1)|z|) + sum_n R/_n exp((s/_n + 1)|z|)

The six boundary values fixing R_0 come from the null space of A - I, either
by Cramer's rule on a 5x5 minor or from the SVD; the two must agree.
"""
from dataclasses import dataclass

import numpy as np

from .dispersion import matrix_elements, null_vector
from .errors import DomainError, NumericError
from .kernel import KernelContext, script_g_alpha
from .oracle import GridSpec
from .params import ScaledPoint
from .series import BoundaryValues, build_expansion

AGREEMENT_TOL = 1e-6


@dataclass(frozen=True)
class AmplitudeProfile:
    expansion: object  # AmplitudeExpansion
    bv: BoundaryValues
    point: ScaledPoint
    c0: float
    normalization: complex
    decay_constants: tuple


def minor_null_vector(M):
    """Null vector of the rank-5 matrix M with last entry 1, by first minors.

    Uses the leading 5x5 minor M_66 when it is nonzero, otherwise the first
    row deletion with a nonzero minor.  Each entry j is -det(minor with column
    j replaced by the last column) / minor.
    """
    M = np.asarray(M, dtype=complex)
    scale = np.max(np.abs(M))
    for drop in range(5, -1, -1):
        rows = [i for i in range(6) if i != drop]
        sub = M[rows]
        base = sub[:, :5]
        d = np.linalg.det(base)
        if abs(d) > 1e-13 * scale ** 5:
            v = np.empty(6, dtype=complex)
            v[5] = 1.0
            for j in range(5):
                Mj = base.copy()
                Mj[:, j] = sub[:, 5]
                v[j] = -np.linalg.det(Mj) / d
            return v, drop
    raise DomainError("all first minors vanish: the null space is not one-dimensional")


def solve_boundary_values(root, c0, n_max=None, method="minor", check=True):
    """Boundary values at a root, normalized so Fb(1 - a-) = 1."""
    point = ScaledPoint(root.qt, root.wt)
    M = matrix_elements(point, c0, n_max).entries - np.eye(6)
    v_minor, _ = minor_null_vector(M)
    v_svd, _ = null_vector(M)
    if check:
        diff = np.max(np.abs(v_minor - v_svd)) / np.max(np.abs(v_svd))
        if diff > AGREEMENT_TOL:
            raise NumericError(f"minor and SVD null vectors disagree by {diff:.3g}")
    if method == "minor":
        return BoundaryValues.from_array(v_minor)
    if method == "svd":
        return BoundaryValues.from_array(v_svd)
    raise ValueError(f"unknown method {method!r}")


def build_profile(root, c0, n_max=None, method="minor"):
    bv = solve_boundary_values(root, c0, n_max, method)
    point = ScaledPoint(root.qt, root.wt)
    exp = build_expansion(point, c0, bv, n_max)
    ap = -(exp.poles.s_plus + 1)
    am = -(exp.poles.s_minus + 1)
    asl = -(exp.poles.s_slashed + 1)
    decay = tuple(np.concatenate([ap, am, asl]).real.tolist())
    return AmplitudeProfile(exp, bv, point, c0, bv.f_bmam, decay)


def amplitude_eval(z, profile):
    """F(z), even in z; vectorized."""
    e = profile.expansion
    x = np.abs(np.asarray(z, dtype=float))[..., None]
    val = (np.exp((e.poles.s_plus + 1) * x) @ e.res_plus
           + np.exp((e.poles.s_minus + 1) * x) @ e.res_minus
           + np.exp((e.poles.s_slashed + 1) * x) @ e.res_slashed)
    return val if np.ndim(val) else complex(val)


def far_field(z, profile):
    """Three slowest exponentials: R0+ e^{-a+|z|} + R0- e^{-a-|z|} + R0/ e^{-(q+1)|z|}."""
    e = profile.expansion
    x = np.abs(np.asarray(z, dtype=float))
    q = profile.point.qt
    ap = -(e.poles.s_plus[0] + 1)
    am = -(e.poles.s_minus[0] + 1)
    return e.r0_plus * np.exp(-ap * x) + e.r0_minus * np.exp(-am * x) + e.r0_slashed * np.exp(-(q + 1) * x)


def integral_residual(profile, grid=None, wt=None, return_vector=False):
    """Relative L2 residual of F + (C0/q) int script_g(z, z') f0(z') F(z') dz' = 0.

    The kernel is the even-projected closed form on the oracle grid.  wt
    overrides the frequency used in the kernel (for detuning tests).
    """
    grid = grid or GridSpec()
    z, w = grid.nodes()
    point = profile.point if wt is None else ScaledPoint(profile.point.qt, wt)
    c0 = profile.c0
    q = point.qt
    F = amplitude_eval(z, profile)
    norm = np.sqrt(np.sum(w * np.abs(F) ** 2))
    if norm == 0:
        return (0.0, np.zeros_like(F)) if return_vector else 0.0
    ctx = KernelContext.build(point, c0)
    Z, ZP = z[:, None], z[None, :]
    G = sum(script_g_alpha(a, q, Z, ZP) + script_g_alpha(a, q, Z, -ZP)
            for a in (ctx.alpha_plus, ctx.alpha_minus))
    r = F + (c0 / q) * (G @ (w * np.exp(-z) * F))
    res = float(np.sqrt(np.sum(w * np.abs(r) ** 2)) / norm)
    return (res, r) if return_vector else res


def laplace_transform(profile, s, grid=None):
    """int_0^inf exp(-s z) f0(z) F(z) dz by the oracle quadrature rule."""
    grid = grid or GridSpec()
    z, w = grid.nodes()
    return complex(np.sum(w * np.exp(-(s + 1) * z) * amplitude_eval(z, profile)))
