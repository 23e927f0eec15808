"""Small-q, weak-coupling limits of the plasmon dispersion and the classical law."""
import math
from dataclasses import dataclass

from .dispersion import check_exclusions, find_root
from .errors import DomainError, NotFound, NumericError
from .params import ScaledPoint, validate_regime


def classical_dispersion(q, params):
    """Hydrodynamic sheet plasmon: omega^2 / q = e^2 eta0 / (2 m* eps0) = coupling (2m* = 1)."""
    if not q > 0:
        raise DomainError("q must be positive")
    return math.sqrt(params.coupling * q)


def leading_order(qt, c0):
    """Leading quantum law in scaled units: wt^2 = 2 C0 qt."""
    if not qt > 0:
        raise DomainError("qt must be positive")
    return math.sqrt(2.0 * c0 * qt)


def leading_order_physical(q, params):
    """Leading quantum law restored to physical units."""
    wt = leading_order(q / params.beta, params.c0())
    return wt * params.beta ** 2


def corrected_dispersion(qt, c0, tol=1e-12, max_iter=500):
    """Fixed point of wt^2 = 2 C0 qt (1 - 3qt/4 + qt^4/wt^2), seeded by the leading order."""
    w2 = 2.0 * c0 * qt
    for _ in range(max_iter):
        new = 2.0 * c0 * qt * (1.0 - 0.75 * qt + qt ** 4 / w2)
        if not new > 0:
            raise NumericError(f"fixed-point iteration left the positive axis at qt={qt}")
        if abs(new - w2) <= tol * new:
            return math.sqrt(new)
        w2 = new
    raise NumericError(f"fixed-point iteration did not converge at qt={qt}")


@dataclass(frozen=True)
class AsymptoticQuantities:
    h0: complex
    h_plus: complex
    h_minus: complex
    wp: complex


def asymptotic_quantities(point, c0):
    check_exclusions(point)
    q = point.qt
    w = complex(point.wt)
    return AsymptoticQuantities(
        h0=2 * c0 / (4 * q * q - w * w),
        h_plus=(c0 / 4) / (q * q + w),
        h_minus=(c0 / 4) / (q * q - w),
        wp=4 * q ** 3 / (w * w - q ** 4),
    )


@dataclass(frozen=True)
class ComparisonRow:
    qt: float
    wt_exact: float
    wt_leading: float
    wt_corrected: float
    rel_dev_leading: float
    rel_dev_corrected: float
    predicted_correction: float
    semiclassical: bool
    status: str = "ok"


def compare_report(q_grid, c0, **root_opts):
    """Exact root against the leading and corrected laws.

    Deviations are relative deviations of wt^2, the quantity the laws predict.
    predicted_correction is 3qt/4 + qt^4/wt^2 at the exact root.
    """
    rows = []
    for qt in q_grid:
        try:
            root = find_root(qt, c0, **root_opts)
        except (NotFound, DomainError) as exc:
            rows.append(ComparisonRow(qt, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, False, f"failed: {exc}"))
            continue
        w = root.wt
        lead = leading_order(qt, c0)
        corr = corrected_dispersion(qt, c0)
        flags = validate_regime(ScaledPoint(qt, w), c0)
        rows.append(ComparisonRow(
            qt, w, lead, corr,
            abs(w * w - lead * lead) / (w * w),
            abs(w * w - corr * corr) / (w * w),
            0.75 * qt + qt ** 4 / (w * w),
            flags.semiclassical,
        ))
    return rows


__all__ = [
    "classical_dispersion", "leading_order", "leading_order_physical",
    "corrected_dispersion", "AsymptoticQuantities", "asymptotic_quantities", "ComparisonRow",
    "compare_report",
]
