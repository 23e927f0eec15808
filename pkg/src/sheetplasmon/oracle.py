"""Brute-force cross-check: discretize the even-sector integral equation and
look for the frequency where the operator I + K W becomes singular.

Nothing here touches the series machinery; it only needs the closed-form
kernel, which is itself checked against quadrature.
"""
import logging
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.optimize import minimize_scalar

from .dispersion import root_bracket
from .errors import DomainError, NotFound
from .kernel import KernelContext, even_kernel
from .params import ScaledPoint

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GridSpec:
    z_max: float = 40.0
    n_points: int = 400
    per_panel: int = 10
    grading: float = 4.0  # node density ~ exp(-z/grading)

    def __post_init__(self):
        if self.n_points < 50:
            raise DomainError("grid needs at least 50 points")
        if self.z_max < 20:
            raise DomainError("z_max must be at least 20")
        if self.n_points % self.per_panel:
            raise DomainError("n_points must be a multiple of per_panel")

    def nodes(self):
        """Composite Gauss-Legendre rule on [0, z_max] with graded panel edges."""
        npan = self.n_points // self.per_panel
        u = np.linspace(0.0, 1.0, npan + 1)
        L = self.grading
        edges = -L * np.log1p(-u * (1.0 - np.exp(-self.z_max / L)))
        edges[-1] = self.z_max
        x, w = leggauss(self.per_panel)
        lo, hi = edges[:-1, None], edges[1:, None]
        z = (0.5 * (hi - lo) * x + 0.5 * (hi + lo)).ravel()
        wt = (0.5 * (hi - lo) * w).ravel()
        return z, wt


@dataclass(frozen=True)
class FredholmOperator:
    matrix: np.ndarray
    point: ScaledPoint
    c0: float
    grid: GridSpec
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    @property
    def kernel(self):
        """K without the quadrature weights."""
        return (self.matrix - np.eye(len(self.nodes))) / self.weights[None, :]


def build_operator(point, c0, grid=None):
    """I + K W on the half-line grid, K the even-projected kernel."""
    grid = grid or GridSpec()
    z, w = grid.nodes()
    if c0 == 0:
        return FredholmOperator(np.eye(len(z)), point, c0, grid, z, w)
    ctx = KernelContext.build(point, c0)
    K = even_kernel(ctx, z[:, None], z[None, :])
    if np.all(K.imag == 0):
        K = K.real
    return FredholmOperator(np.eye(len(z)) + K * w[None, :], point, c0, grid, z, w)


def smallest_singular(op):
    return float(np.linalg.svd(op.matrix, compute_uv=False)[-1])


def symmetry_defects(op):
    """(raw, smoothed) relative asymmetry of the discretized kernel.

    raw: W^1/2 K W^1/2.  smoothed: D_q W K, where D_q is the even-sector
    exp(-q|z - z'|) operator.  The kernel factors as A D_q with A symmetric,
    so only the smoothed form is expected to be symmetric.
    """
    z, w = op.nodes, op.weights
    K = op.kernel
    sw = np.sqrt(w)
    S = sw[:, None] * K * sw[None, :]
    raw = np.max(np.abs(S - S.T)) / np.max(np.abs(S))
    q = op.point.qt
    D = np.exp(-q * np.abs(z[:, None] - z[None, :])) + np.exp(-q * (z[:, None] + z[None, :]))
    H = D @ (w[:, None] * K)
    smooth = np.max(np.abs(H - H.T)) / np.max(np.abs(H))
    return float(raw), float(smooth)


@dataclass(frozen=True)
class OracleRoot:
    qt: float
    wt: float
    sigma_min: float
    op_norm: float
    nodes: np.ndarray = field(repr=False)
    eigenfunction: np.ndarray = field(repr=False)
    scan: list = field(default_factory=list, repr=False)


def oracle_root(qt, c0, grid=None, n_scan=60, delta=0.02, bracket=None, floor=1e-6, xtol=1e-11):
    """Frequency minimizing the smallest singular value of I + K W.

    Scans n_scan points over the bracket, then golden-section refines around
    the best scan point.  The eigenfunction returned is exp(-|z|) F(z) at the
    grid nodes, from the right singular vector of the smallest singular value.
    """
    grid = grid or GridSpec()
    lo, hi = bracket if bracket is not None else root_bracket(qt, delta)

    def smin(w):
        return smallest_singular(build_operator(ScaledPoint(qt, w), c0, grid))

    ws = np.linspace(lo, hi, n_scan)
    vals = np.array([smin(w) for w in ws])
    scan = list(zip(ws.tolist(), vals.tolist()))
    k = int(np.argmin(vals))
    if k == 0 or k == n_scan - 1:
        raise NotFound(f"smallest singular value is minimal at the bracket edge (qt={qt})", scan)
    res = minimize_scalar(smin, bracket=(ws[k - 1], ws[k], ws[k + 1]), method="golden",
                          tol=xtol / max(ws[k], 1e-300))
    w0 = float(res.x)
    op = build_operator(ScaledPoint(qt, w0), c0, grid)
    _, s, vh = np.linalg.svd(op.matrix)
    if s[-1] > floor * s[0]:
        raise NotFound(f"no null space found: sigma_min = {s[-1]:.3g} at wt = {w0:.10g}", scan)
    phi = vh[-1].conj()
    # fix the sign/phase so the value at the plane is real positive
    phi = phi * (abs(phi[0]) / phi[0])
    return OracleRoot(qt, w0, float(s[-1]), float(s[0]), op.nodes, phi, scan)


def dump_operator(op, stream):
    """Text dump: n on the first line, then one 're im' pair per entry, row-major."""
    M = np.asarray(op.matrix, dtype=complex)
    n = M.shape[0]
    stream.write(f"{n}\n")
    for v in M.ravel():
        stream.write(f"{v.real:.17g} {v.imag:.17g}\n")


def load_operator(stream):
    n = int(stream.readline())
    data = np.loadtxt(stream, ndmin=2)
    if data.shape != (n * n, 2):
        raise ValueError("operator dump has the wrong number of entries")
    return (data[:, 0] + 1j * data[:, 1]).reshape(n, n)
