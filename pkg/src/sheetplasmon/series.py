"""Pole structure and partial-fraction representation of the transformed amplitude.

The transform Fb(s) of the even amplitude is meromorphic with simple poles
  s_n^sigma = -alpha_sigma - (2n + 1),    s/_n = -qt - 2(n + 1),
and residues R_n = Lambda_n R_0, where the Lambda sequences are explicit
products and R_0 depends linearly on six boundary values of Fb.
"""
import math
from dataclasses import dataclass, fields

import numpy as np

from .errors import DomainError
from .params import alpha_sigma

N_MAX_CAP = 60
TAIL_TARGET = 1e-14
POLE_EXCLUSION = 1e-10


def bound_constant(c0):
    """C_beta = 1.5 C0 in the factorial decay estimate of the Lambda sequences."""
    return 1.5 * c0


def tail_bound(c0, n_max):
    cb = bound_constant(c0)
    if cb == 0:
        return 0.0
    # in logs so huge couplings do not overflow
    log_t = math.log(2.0) + (n_max + 1) * math.log(cb) - 4.0 * math.lgamma(n_max + 2)
    return math.exp(min(log_t, 700.0))


def default_n_max(c0):
    for n in range(N_MAX_CAP + 1):
        if tail_bound(c0, n) < TAIL_TARGET:
            return n
    return N_MAX_CAP


@dataclass(frozen=True)
class PoleSet:
    s_plus: np.ndarray
    s_minus: np.ndarray
    s_slashed: np.ndarray
    n_max: int

    def all(self):
        return np.concatenate([self.s_plus, self.s_minus, self.s_slashed])


@dataclass(frozen=True)
class SeriesCoeffs:
    lambda_plus: np.ndarray
    lambda_minus: np.ndarray
    lambda_slashed: np.ndarray
    tail_bound: float
    n_max: int

    def family(self, sigma):
        return self.lambda_plus if sigma > 0 else self.lambda_minus


@dataclass(frozen=True)
class BoundaryValues:
    """Fb at qt, -qt, 1+a+, 1-a+, 1+a-, 1-a- (this order is the matrix order)."""
    f_q: complex
    f_mq: complex
    f_bpap: complex
    f_bmap: complex
    f_bpam: complex
    f_bmam: complex

    def as_array(self):
        return np.array([getattr(self, f.name) for f in fields(self)], dtype=complex)

    @classmethod
    def from_array(cls, v):
        v = np.asarray(v, dtype=complex)
        if v.shape != (6,):
            raise ValueError("boundary values need exactly six entries")
        return cls(*(complex(x) for x in v))

    def scaled(self, c):
        return BoundaryValues.from_array(c * self.as_array())


@dataclass(frozen=True)
class AmplitudeExpansion:
    r0_plus: complex
    r0_minus: complex
    r0_slashed: complex
    coeffs: SeriesCoeffs
    poles: PoleSet

    @property
    def res_plus(self):
        return self.r0_plus * self.coeffs.lambda_plus

    @property
    def res_minus(self):
        return self.r0_minus * self.coeffs.lambda_minus

    @property
    def res_slashed(self):
        return self.r0_slashed * self.coeffs.lambda_slashed

    def scaled(self, c):
        return AmplitudeExpansion(c * self.r0_plus, c * self.r0_minus, c * self.r0_slashed,
                                  self.coeffs, self.poles)


def _check(value, name):
    if value == 0 or not np.isfinite(value):
        raise DomainError(f"vanishing denominator: {name}")
    return value


def lambda_seq(point, c0, n_max=None):
    """Coefficient sequences Lambda_n^+, Lambda_n^-, Lambda/_n for n = 0..n_max."""
    if not c0 > 0:
        raise DomainError("c0 must be positive")
    if n_max is None:
        n_max = default_n_max(c0)
    q = point.qt
    w = complex(point.wt)
    seqs = {}
    for sigma in (1, -1):
        a = alpha_sigma(point, sigma)
        lam = np.empty(n_max + 1, dtype=complex)
        lam[0] = 1.0
        for j in range(1, n_max + 1):
            d1 = _check(j + a, f"j + alpha (j={j})")
            d2 = _check(4 * j * (j + a) - 2 * sigma * w, f"4j(j + alpha) - 2 sigma w (j={j})")
            d3 = _check(1 + (2 * j - 1) ** 2 + 2 * (2 * j - 1) * a - sigma * w,
                        f"1 + (2j-1)^2 + 2(2j-1) alpha - sigma w (j={j})")
            lam[j] = lam[j - 1] * (-c0 / j) / d1 * (1 + sigma * w / d2) / d3
        seqs[sigma] = lam
    lam_s = np.empty(n_max + 1, dtype=complex)
    lam_s[0] = 1.0
    for j in range(1, n_max + 1):
        u = j * (j + 1) + (j + 0.5) * q
        d = _check(4 * u * u - w * w / 4, f"4u^2 - w^2/4 (j={j})")
        lam_s[j] = lam_s[j - 1] * (-c0 / j) / (j + q) * u / d
    return SeriesCoeffs(seqs[1], seqs[-1], lam_s, tail_bound(c0, n_max), n_max)


def lambda_recursion(point, c0, n_max):
    """Same sequences from the two-term residue recursions (independent route)."""
    q = point.qt
    a = {s: alpha_sigma(point, s) for s in (1, -1)}
    coupling = 2.0 * c0  # e^2 eta0 / eps0 in scaled units
    out = {}
    for sigma in (1, -1):
        lam = np.empty(n_max + 1, dtype=complex)
        lam[0] = 1.0
        for n in range(1, n_max + 1):
            inner = sum(1.0 / ((a[sigma] + 2 * n) ** 2 - a[sp] ** 2) for sp in (1, -1))
            lam[n] = -coupling / ((a[sigma] + 2 * n - 1) ** 2 - q * q) * inner * lam[n - 1]
        out[sigma] = lam
    lam_s = np.empty(n_max + 1, dtype=complex)
    lam_s[0] = 1.0
    for n in range(1, n_max + 1):
        inner = sum(1.0 / ((2 * n + 1 + q) ** 2 - a[s] ** 2) for s in (1, -1))
        lam_s[n] = -(coupling / 4.0) / (n * (q + n)) * inner * lam_s[n - 1]
    return out[1], out[-1], lam_s


def pole_set(point, n_max):
    n = np.arange(n_max + 1)
    ap, am = alpha_sigma(point, 1), alpha_sigma(point, -1)
    return PoleSet(-ap - (2 * n + 1), -am - (2 * n + 1), -point.qt - 2.0 * (n + 1), n_max)


def residues0(point, c0, bv):
    """Zeroth residues (R0+, R0-, R0/) from the six boundary values."""
    q = point.qt
    w = complex(point.wt)
    out = []
    pairs = ((1, bv.f_bpap, bv.f_bmap), (-1, bv.f_bpam, bv.f_bmam))
    for sigma, f_plus, f_minus in pairs:
        a = alpha_sigma(point, sigma)
        am1 = _check(a - 1, "alpha - 1")
        dp = _check((a + 1) ** 2 - q * q, "(alpha + 1)^2 - q^2")
        dm = _check((a - 1) ** 2 - q * q, "(alpha - 1)^2 - q^2")
        r = 4 * q * bv.f_q / (am1 * dp * dm) + ((a + 1) / am1 * f_plus / dp + f_minus / dm) / a
        out.append(c0 * r)
    d = _check(4 * q * q - w * w, "4q^2 - w^2")
    out.append(4 * c0 / d * (bv.f_q + bv.f_mq))
    return tuple(complex(x) for x in out)


def build_expansion(point, c0, bv, n_max=None):
    coeffs = lambda_seq(point, c0, n_max)
    r0p, r0m, r0s = residues0(point, c0, bv)
    return AmplitudeExpansion(r0p, r0m, r0s, coeffs, pole_set(point, coeffs.n_max))


def breve_f(s, exp):
    """Partial-fraction sum over the three pole families."""
    s = complex(s)
    poles = exp.poles
    allp = poles.all()
    if np.min(np.abs(s - allp)) < POLE_EXCLUSION:
        raise DomainError(f"s = {s} is within {POLE_EXCLUSION} of a pole")
    return complex(np.sum(exp.res_plus / (s - poles.s_plus))
                   + np.sum(exp.res_minus / (s - poles.s_minus))
                   + np.sum(exp.res_slashed / (s - poles.s_slashed)))


def pole_residue_limit(exp, pole, fractions=(0.1, 0.05, 0.025, 0.0125)):
    """Residue at a pole from (s - p) Fb(s) at a few radii, Richardson-extrapolated to 0.

    The radii are fractions of the distance to the nearest other pole.
    """
    allp = exp.poles.all()
    d = np.abs(allp - pole)
    gap = np.min(d[d > 1e-12 * max(1.0, abs(pole))])
    r = gap * np.asarray(fractions, dtype=float)
    vals = np.array([0.5 * ((+h) * breve_f(pole + h, exp) + (-h) * breve_f(pole - h, exp)) for h in r])
    # symmetric average kills the odd powers, so extrapolate in h^2
    V = np.vander(r ** 2, len(r), increasing=True)
    coef = np.linalg.solve(V, vals)
    return complex(coef[0])


def functional_residual(s, exp, point, c0):
    """LHS - RHS of the five-point functional equation linking Fb(s), Fb(s+2), Fb(q), Fb(1+alpha)."""
    s = complex(s)
    q = point.qt
    fq = breve_f(q, exp)
    fs2 = breve_f(s + 2, exp)
    rhs = 0j
    for sigma in (1, -1):
        a = alpha_sigma(point, sigma)
        dp = (a + 1) ** 2 - q * q
        dm = (a - 1) ** 2 - q * q
        t = fq * (4 * q * q / ((a - 1) * dp * dm) / (s + 1 + a)
                  + sum(1.0 / ((1 + c * q) ** 2 - a * a) / (s + 2 + c * q) for c in (1, -1)))
        t += breve_f(a + 1, exp) / dp * (q / a) * ((a + 1) / (a - 1) / (s + 1 + a) + 1.0 / (s + 1 - a))
        t += fs2 * sum(c * (1.0 / ((1 + c * q) ** 2 - a * a) / (s + 2 + c * q)
                            - (q / a) / ((1 + c * a) ** 2 - q * q) / (s + 1 - c * a)) for c in (1, -1))
        rhs += t
    return breve_f(s, exp) - c0 / q * rhs
