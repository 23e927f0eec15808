"""The 6x6 dispersion matrix, its determinant and the plasmon root.

Index order of rows and columns: (+, -, ++, -+, +-, --), i.e. the boundary
values Fb(q), Fb(-q), Fb(1+a+), Fb(1-a+), Fb(1+a-), Fb(1-a-).  A root of
det(A - I) on the real axis inside (qt^2, qt) is a plasmon mode.
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, NotFound
from .params import ScaledPoint, alpha_sigma
from .series import default_n_max, lambda_seq

log = logging.getLogger(__name__)

INDEX = ("+", "-", "++", "-+", "+-", "--")
EXCLUSION = 1e-3
BRACKET_MARGIN = 0.02
SCAN_POINTS = 200
# row/column permutation induced by wt -> -wt
OMEGA_FLIP = (0, 1, 4, 5, 2, 3)


@dataclass(frozen=True)
class DispersionMatrix:
    entries: np.ndarray
    point: ScaledPoint
    c0: float
    n_max: int


@dataclass(frozen=True)
class DispersionRoot:
    qt: float
    wt: float
    det_residual: float
    nullity_gap: float
    null_vector: np.ndarray
    other_roots: tuple = ()
    singular_values: np.ndarray = field(default=None, repr=False)


@dataclass(frozen=True)
class SweepFailure:
    qt: float
    message: str


def check_exclusions(point, eps=EXCLUSION):
    """Raise if wt sits within a relative distance eps of +-2qt or +-qt^2."""
    w = complex(point.wt)
    q = point.qt
    for centre, name in ((2 * q, "w = 2q"), (-2 * q, "w = -2q"), (q * q, "w = q^2"), (-q * q, "w = -q^2")):
        if abs(w - centre) < eps * abs(centre):
            raise DomainError(f"{name} exclusion zone: |w - ({centre:.6g})| < {eps:g}*{abs(centre):.6g}")


def matrix_elements(point, c0, n_max=None, check=True):
    """Assemble the dispersion matrix from its four template series."""
    if not c0 > 0:
        raise DomainError("c0 must be positive")
    if not 0 < point.qt < 1:
        raise DomainError("qt must lie in (0, 1)")
    if check:
        check_exclusions(point)
    coeffs = lambda_seq(point, c0, n_max)
    N = coeffs.n_max
    n = np.arange(N + 1)
    q = point.qt
    w = complex(point.wt)
    a = {1: alpha_sigma(point, 1), -1: alpha_sigma(point, -1)}
    lam = {1: coeffs.lambda_plus, -1: coeffs.lambda_minus}
    lam_s = coeffs.lambda_slashed

    pref = 4 * c0 / (4 * q * q - w * w)
    c_zero = {s: -q * (a[s] + 1) / (q * q - s * w) for s in (1, -1)}
    c_plus = {s: -(a[s] + 1) ** 2 / (q * q - s * w) * ((a[s] - 1) ** 2 - q * q) / (4 * a[s]) for s in (1, -1)}
    c_minus = {s: -((a[s] + 1) ** 2 - q * q) / (4 * a[s]) for s in (1, -1)}
    c_col = {1: c_plus, -1: c_minus}

    # rows: (kind, varsigma, sigma); columns use the same labels
    labels = [("q", 1, None), ("q", -1, None), ("a", 1, 1), ("a", -1, 1), ("a", 1, -1), ("a", -1, -1)]
    A = np.zeros((6, 6), dtype=complex)
    for i, (kind, vs, sg) in enumerate(labels):
        if kind == "q":
            x = vs * q
            off_a = 2 * n + 1      # denominators vs q + alpha_s' + 2n + 1
            off_s = 2 * (n + 1)    # vs q + q + 2(n + 1)
        else:
            x = vs * a[sg]
            off_a = 2 * (n + 1)
            off_s = 2 * n + 3
        slashed = np.sum(lam_s / (x + q + off_s))
        for j, (ckind, cvs, csg) in enumerate(labels):
            if ckind == "q":
                v = slashed
                if cvs == 1:
                    v = v + sum(np.sum(c_zero[sp] * lam[sp] / (x + a[sp] + off_a)) for sp in (1, -1))
            else:
                v = np.sum(c_col[cvs][csg] * lam[csg] / (x + a[csg] + off_a))
            A[i, j] = pref * v
    if not np.all(np.isfinite(A)):
        raise DomainError("non-finite dispersion matrix entry")
    return DispersionMatrix(A, point, c0, N)


def lambda_det(point, c0, n_max=None, check=True):
    """Lambda(wt, qt) = det(A - I), via LU with partial pivoting."""
    m = matrix_elements(point, c0, n_max, check)
    return complex(np.linalg.det(m.entries - np.eye(6)))


def det_cofactor(M):
    """Determinant by Laplace expansion along the first row (small matrices only)."""
    M = np.asarray(M)
    n = M.shape[0]
    if n == 1:
        return M[0, 0]
    total = 0
    for j in range(n):
        minor = np.delete(np.delete(M, 0, axis=0), j, axis=1)
        total += (-1) ** j * M[0, j] * det_cofactor(minor)
    return total


def root_bracket(qt, delta=BRACKET_MARGIN):
    lo, hi = qt * qt * (1 + delta), qt * (1 - delta)
    if not lo < hi:
        raise DomainError(f"empty root bracket for qt = {qt}")
    return lo, hi


def _real_det(qt, c0, n_max):
    return lambda w: lambda_det(ScaledPoint(qt, w), c0, n_max).real


def null_vector(A_minus_I):
    """Right singular vector of the smallest singular value, scaled so its last entry is 1."""
    _, s, vh = np.linalg.svd(A_minus_I)
    v = vh[-1].conj()
    if v[5] == 0:
        raise DomainError("null vector has a vanishing normalising component")
    return v / v[5], s


def _scan(qt, c0, n_max, lo, hi, n_scan):
    ws = np.linspace(lo, hi, n_scan)
    f = _real_det(qt, c0, n_max)
    vals = np.array([f(w) for w in ws])
    return ws, vals


def _sign_changes(ws, vals):
    s = np.sign(vals)
    idx = np.nonzero(s[:-1] * s[1:] < 0)[0]
    return [(ws[i], ws[i + 1]) for i in idx]


def _finish(qt, c0, n_max, w, others):
    m = matrix_elements(ScaledPoint(qt, w), c0, n_max)
    M = m.entries - np.eye(6)
    v, s = null_vector(M)
    det = abs(np.linalg.det(M))
    gap = float(s[-2] / s[-1]) if s[-1] > 0 else math.inf
    return DispersionRoot(qt, float(w), float(det), gap, v, tuple(others), s)


def find_root(qt, c0, delta=BRACKET_MARGIN, n_scan=SCAN_POINTS, n_max=None, tol=1e-10, prefer=None):
    """Real plasmon root of Lambda inside (qt^2 (1+delta), qt (1-delta)).

    Scans n_scan points, refines every sign change with Brent's method and
    returns the lowest root (or the one closest to `prefer`, if given); the
    rest are listed in other_roots.
    """
    if not 0 < qt < 1:
        raise DomainError("qt must lie in (0, 1)")
    if not c0 > 0:
        raise DomainError("c0 must be positive")
    if n_max is None:
        n_max = default_n_max(c0)
    lo, hi = root_bracket(qt, delta)
    ws, vals = _scan(qt, c0, n_max, lo, hi, n_scan)
    f = _real_det(qt, c0, n_max)
    roots = [brentq(f, a, b, xtol=1e-16, rtol=4 * np.finfo(float).eps, maxiter=200)
             for a, b in _sign_changes(ws, vals)]
    if not roots:
        k = int(np.argmin(np.abs(vals)))
        if abs(vals[k]) <= tol:
            roots = [float(ws[k])]
        else:
            trace = list(zip(ws.tolist(), vals.tolist()))
            raise NotFound(f"no sign change of Lambda in ({lo:.6g}, {hi:.6g}) for qt = {qt}", trace)
    if len(roots) > 1:
        log.warning("qt=%g: %d roots in bracket: %s", qt, len(roots), roots)
    if prefer is None:
        chosen = roots[0]
    else:
        chosen = min(roots, key=lambda r: abs(r - prefer))
    others = [r for r in roots if r != chosen]
    return _finish(qt, c0, n_max, chosen, others)


def dispersion_sweep(q_grid, c0, **opts):
    """Roots along an ascending q grid; each solved root seeds the choice at the next q."""
    q_grid = list(q_grid)
    if any(b <= a for a, b in zip(q_grid, q_grid[1:])):
        raise DomainError("q grid must be strictly ascending")
    out = []
    prev = None
    for qt in q_grid:
        prefer = None
        if prev is not None:
            prefer = prev.wt * math.sqrt(qt / prev.qt)  # w ~ sqrt(q) continuation
        try:
            r = find_root(qt, c0, prefer=prefer, **opts)
        except (NotFound, DomainError) as exc:
            out.append(SweepFailure(qt, str(exc)))
            continue
        out.append(r)
        prev = r
    return out


@dataclass(frozen=True)
class RegularityReport:
    qt: float
    c0: float
    eps: np.ndarray
    above: np.ndarray
    below: np.ndarray
    jumps: np.ndarray
    slope: float
    reference: complex
    max_ratio: float
    bounded: bool
    grouped: np.ndarray  # A^{+-}_{+} + A^{+-}_{-+} at 2q+eps, rows (+, -)


def regularity_probe(qt, c0, eps_list=(1e-2, 1e-3, 1e-4), ref_distance=0.05, n_max=None):
    """Behaviour of Lambda on both sides of the removable point wt = 2 qt.

    The determinant is evaluated straight through the exclusion zone; the
    entries individually grow like 1/eps but their combination does not.
    """
    if not 0 < qt < 1:
        raise DomainError("qt must lie in (0, 1)")
    eps = np.asarray(sorted(eps_list, reverse=True), dtype=float)
    centre = 2.0 * qt
    above = np.array([lambda_det(ScaledPoint(qt, centre + e), c0, n_max, check=False) for e in eps])
    below = np.array([lambda_det(ScaledPoint(qt, centre - e), c0, n_max, check=False) for e in eps])
    jumps = np.abs(above - below)
    if np.all(jumps == 0):
        slope = math.inf
    else:
        slope = float(np.polyfit(np.log(eps), np.log(jumps), 1)[0])
    ref = lambda_det(ScaledPoint(qt, centre + ref_distance), c0, n_max, check=False)
    peak = max(np.max(np.abs(above)), np.max(np.abs(below)))
    ratio = float(peak / abs(ref))
    grouped = []
    for e in eps:
        A = matrix_elements(ScaledPoint(qt, centre + e), c0, n_max, check=False).entries
        grouped.append([A[0, 0] + A[0, 3], A[1, 0] + A[1, 3]])
    return RegularityReport(qt, c0, eps, above, below, jumps, slope, ref, ratio, ratio <= 10.0,
                            np.array(grouped))
