"""Parameter types, branch-safe square roots and regime checks.

Units are natural (hbar = 1 = 2m*).  Everything downstream works in
beta-scaled variables, qt = q/beta and wt = omega/beta**2, so conversions
happen only here.
"""
import cmath
import math
from dataclasses import dataclass

from .errors import DomainError

SEMICLASSICAL_DEFAULTS = {"qt_max": 0.1, "w_over_q": 0.2, "q2_over_w": 0.2, "c0_max": 0.01}


@dataclass(frozen=True)
class PhysicalParams:
    beta: float
    eta0: float
    coupling: float  # e^2 eta0 / eps0

    def __post_init__(self):
        for name in ("beta", "eta0", "coupling"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be a positive finite number, got {v!r}")

    def c0(self):
        """Dimensionless Coulomb coupling C0 = coupling / (2 beta^3)."""
        return self.coupling / (2.0 * self.beta ** 3)

    def lengths(self, q=None, omega=None):
        return LengthScales.from_params(self, q=q, omega=omega)


@dataclass(frozen=True)
class LengthScales:
    l_b: float
    l_d: float
    l_C: float
    l_p: float = None
    l_dB: float = None

    @classmethod
    def from_params(cls, params, q=None, omega=None):
        l_d = 2.0 / math.sqrt(math.pi * params.eta0)
        # e^2/eps0 = coupling/eta0, so 4 pi eps0 l_d^2 / e^2 = 4 pi l_d^2 eta0 / coupling
        l_C = (4.0 * math.pi * l_d ** 2 * params.eta0 / params.coupling) ** (1.0 / 3.0)
        l_p = None if q is None else 1.0 / q
        l_dB = None if omega is None else 1.0 / math.sqrt(omega)
        out = cls(1.0 / params.beta, l_d, l_C, l_p, l_dB)
        for v in (out.l_b, out.l_d, out.l_C, out.l_p, out.l_dB):
            if v is not None and not v > 0:
                raise DomainError("length scales must be positive")
        return out

    def c0(self):
        return (2.0 * self.l_b / self.l_C) ** 3


@dataclass(frozen=True)
class ScaledPoint:
    qt: float
    wt: complex

    def __post_init__(self):
        if not self.qt > 0:
            raise DomainError(f"qt must be positive, got {self.qt!r}")

    def alpha(self, sigma):
        return alpha_sigma(self, sigma)

    @property
    def in_regime(self):
        w = abs(self.wt)
        return self.qt ** 2 < w < self.qt and self.qt < 1

    def negated(self):
        return ScaledPoint(self.qt, -self.wt)


@dataclass(frozen=True)
class RegimeReport:
    in_bracket: bool
    branch_ok: bool
    semiclassical: bool


def _principal_sqrt(x, what):
    x = complex(x)
    if x.imag == 0.0 and x.real <= 0.0:
        raise DomainError(f"{what}: argument {x.real!r} lies on the branch cut")
    r = cmath.sqrt(x)
    if not r.real > 0:
        raise DomainError(f"{what}: no root with positive real part")
    return r


def alpha_sigma(point, sigma):
    """alpha_sigma = sqrt(1 + qt^2 - sigma*wt) on the principal branch (Re > 0)."""
    if sigma not in (1, -1):
        raise ValueError("sigma must be +1 or -1")
    return _principal_sqrt(1.0 + point.qt ** 2 - sigma * complex(point.wt), f"alpha_{'+' if sigma > 0 else '-'}")


def validate_regime(point, c0, thresholds=None):
    th = dict(SEMICLASSICAL_DEFAULTS)
    if thresholds:
        th.update(thresholds)
    w = complex(point.wt)
    q = point.qt
    in_bracket = w.imag == 0.0 and q * q < w.real < q and q < 1
    try:
        branch_ok = all(alpha_sigma(point, s).real > 0 for s in (1, -1))
    except DomainError:
        branch_ok = False
    aw = abs(w)
    semi = (
        q <= th["qt_max"]
        and aw > 0
        and aw / q <= th["w_over_q"]
        and q * q / aw <= th["q2_over_w"]
        and 0 < c0 <= th["c0_max"]
    )
    return RegimeReport(bool(in_bracket), bool(branch_ok), bool(semi))


def to_scaled(params, omega, q):
    if not q > 0:
        raise DomainError(f"q must be positive, got {q!r}")
    b = params.beta
    return ScaledPoint(q / b, omega / b ** 2)


def from_scaled(params, point):
    """Inverse of to_scaled: returns (omega, q)."""
    b = params.beta
    return point.wt * b ** 2, point.qt * b
