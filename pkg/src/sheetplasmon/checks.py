"""Self-check suite: each function measures one acceptance quantity.

Every check returns a CheckResult holding the measured value, the threshold
it is compared with and a short detail string.  The CLI `check` command and
the acceptance tests both run these.
"""
import math
import time
from dataclasses import dataclass

import mpmath
import numpy as np

from . import amplitude, dispersion, kernel, oracle, propagator, semiclassical, series
from .params import PhysicalParams, ScaledPoint
from .special import complex_erfc


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float
    threshold: float
    detail: str = ""

    def line(self):
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.name}: {self.value:.3e} (threshold {self.threshold:.3e}) {self.detail}".rstrip()


def _result(name, value, threshold, upper=True, detail=""):
    ok = value <= threshold if upper else value >= threshold
    return CheckResult(name, bool(ok), float(value), float(threshold), detail)


def random_regime_points(n, rng, qt_range=(0.01, 0.5), c0_range=(1e-4, 1e-1), margin=0.02):
    """Real points strictly inside (qt^2, qt), clear of the exclusion zones."""
    pts = []
    while len(pts) < n:
        qt = rng.uniform(*qt_range)
        c0 = math.exp(rng.uniform(math.log(c0_range[0]), math.log(c0_range[1])))
        wt = rng.uniform(qt * qt * (1 + margin), qt * (1 - margin))
        pts.append((qt, wt, c0))
    return pts


def kernel_vs_quadrature(n=200, seed=1, threshold=1e-8, time_limit=10.0):
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(n):
        qt = rng.uniform(0.01, 0.5)
        wt = rng.uniform(qt * qt, qt) * rng.choice([-1.0, 1.0])
        z, zp = rng.uniform(-5, 5, 2)
        w = -1.0 + wt
        a = kernel.script_g(w, qt, z, zp)
        b = kernel.script_g_oracle(w, qt, z, zp)
        worst = max(worst, abs(a - b) / abs(b))
    elapsed = time.perf_counter() - t0
    r = _result("kernel closed form vs quadrature", worst, threshold, detail=f"[{elapsed:.2f} s]")
    if elapsed > time_limit:
        return CheckResult(r.name, False, r.value, r.threshold, r.detail + f" exceeded {time_limit} s")
    return r


def _root_profile(qt, c0):
    root = dispersion.find_root(qt, c0)
    return root, amplitude.build_profile(root, c0)


def functional_equation(qt=0.05, c0=1e-3, n=20, seed=2, threshold=1e-9):
    _, prof = _root_profile(qt, c0)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        s = complex(rng.uniform(-0.95, 4.0), rng.uniform(-3.0, 3.0))
        res = series.functional_residual(s, prof.expansion, prof.point, c0)
        worst = max(worst, abs(res) / abs(series.breve_f(s, prof.expansion)))
    return _result("functional equation residual", worst, threshold)


def det_symmetry(n=100, seed=3, threshold=1e-12):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for qt, wt, c0 in random_regime_points(n, rng):
        a = dispersion.lambda_det(ScaledPoint(qt, wt), c0)
        b = dispersion.lambda_det(ScaledPoint(qt, -wt), c0)
        worst = max(worst, abs(a - b) / abs(a))
    return _result("Lambda(w) = Lambda(-w)", worst, threshold)


def oracle_agreement(qt, c0, threshold=1e-3, time_limit=60.0, grid=None):
    root = dispersion.find_root(qt, c0)
    t0 = time.perf_counter()
    orc = oracle.oracle_root(qt, c0, grid)
    elapsed = time.perf_counter() - t0
    rel = abs(orc.wt - root.wt) / root.wt
    r = _result(f"series vs oracle root (qt={qt}, c0={c0})", rel, threshold,
                detail=f"[series {root.wt:.12g}, oracle {orc.wt:.12g}, {elapsed:.1f} s]")
    if elapsed > time_limit:
        return CheckResult(r.name, False, r.value, r.threshold, r.detail + f" exceeded {time_limit} s")
    return r


def mode_shape(qt=0.05, c0=1e-3, threshold=0.9999, grid=None, orc=None):
    """Cosine similarity of exp(-|z|)F(z) from the series and the oracle singular vector.

    orc may be a precomputed OracleRoot on the same grid.
    """
    grid = grid or oracle.GridSpec()
    _, prof = _root_profile(qt, c0)
    if orc is None:
        orc = oracle.oracle_root(qt, c0, grid)
    z, w = grid.nodes()
    series_phi = np.exp(-z) * amplitude.amplitude_eval(z, prof)
    sw = np.sqrt(w)
    a, b = sw * orc.eigenfunction, sw * series_phi
    cos = abs(np.vdot(a, b)) / (np.linalg.norm(a) * np.linalg.norm(b))
    return _result("mode shape cosine similarity", cos, threshold, upper=False, detail=f"[1 - cos = {1 - cos:.2e}]")


def integral_equation(qt=0.05, c0=1e-3, threshold=1e-6, detune=0.05, min_gain=10.0):
    root, prof = _root_profile(qt, c0)
    res = amplitude.integral_residual(prof)
    off = amplitude.integral_residual(prof, wt=root.wt * (1 + detune))
    gain = off / res if res > 0 else math.inf
    ok = res <= threshold and gain >= min_gain
    return CheckResult("integral equation residual at root", ok, res, threshold,
                       f"[detuned {off:.3e}, gain {gain:.3g} >= {min_gain:g}]")


def semiclassical_agreement(c0=1e-3, q_grid=(0.02, 0.05, 0.08)):
    rows = semiclassical.compare_report(q_grid, c0)
    ok = True
    parts = []
    worst = 0.0
    for r in rows:
        bound = 1.5 * r.predicted_correction
        good = r.status == "ok" and r.rel_dev_leading <= bound and r.rel_dev_corrected < r.rel_dev_leading
        ok &= good
        worst = max(worst, r.rel_dev_leading / bound if bound > 0 else math.inf)
        parts.append(f"q={r.qt}: lead {r.rel_dev_leading:.3g}<= {bound:.3g}, corr {r.rel_dev_corrected:.3g}")
    return CheckResult("semiclassical agreement", bool(ok), worst, 1.0, "[" + "; ".join(parts) + "]")


def classical_identity(n=20, seed=4, threshold=1e-14):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        p = PhysicalParams(beta=rng.uniform(0.2, 5.0), eta0=rng.uniform(0.01, 10.0),
                           coupling=rng.uniform(1e-4, 1.0))
        q = rng.uniform(0.01, 0.5) * p.beta
        c = semiclassical.classical_dispersion(q, p)
        l = semiclassical.leading_order_physical(q, p)
        worst = max(worst, abs(c - l) / c)
    return _result("classical = leading quantum law", worst, threshold)


def coefficient_bounds(n=50, n_max=30, seed=5):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for qt, wt, c0 in random_regime_points(n, rng, c0_range=(1e-4, 1.0)):
        co = series.lambda_seq(ScaledPoint(qt, wt), c0, n_max)
        cb = series.bound_constant(c0)
        for k in range(n_max + 1):
            f4 = math.factorial(k) ** 4
            worst = max(worst,
                        abs(co.lambda_plus[k]) * f4 / cb ** k,
                        abs(co.lambda_minus[k]) * f4 / cb ** k,
                        abs(co.lambda_slashed[k]) * f4 / (cb / 4) ** k)
    return _result("coefficient decay bounds (max ratio to bound)", worst, 1.0)


def _jump_residual(w, k, zp, beta, h=1e-4):
    g = lambda z: propagator.hat_green(w, k, z, zp, beta)
    right = (-3 * g(0.0) + 4 * g(h) - g(2 * h)) / (2 * h)
    left = (3 * g(0.0) - 4 * g(-h) + g(-2 * h)) / (2 * h)
    target = -2 * beta * g(0.0)
    return abs(right - left - target) / abs(target)


def propagator_checks(seed=6, n_erfc=400):
    rng = np.random.default_rng(seed)
    jump = max(_jump_residual(complex(rng.uniform(-3, 0.5), rng.uniform(-0.5, 0.5)),
                              rng.uniform(0, 1), z, rng.uniform(0.3, 2))
               for z in rng.uniform(0.2, 3, 20) * rng.choice([-1, 1], 20))
    i1 = 0.0
    for _ in range(10):
        t, Z, b = rng.uniform(0.1, 3), rng.uniform(-4, 4), rng.uniform(0.3, 2)
        ref = propagator.i1_quadrature(t, Z, b)
        i1 = max(i1, abs(propagator.i1_integral(t, Z, b) - ref) / abs(ref))
    mpmath.mp.dps = 30
    erfc = 0.0
    r = 5 * np.sqrt(rng.uniform(0, 1, n_erfc))
    th = rng.uniform(0, 2 * np.pi, n_erfc)
    for x in r * np.exp(1j * th):
        ref = complex(mpmath.erfc(mpmath.mpc(x.real, x.imag)))
        erfc = max(erfc, abs(complex_erfc(x) - ref) / abs(ref))
    ok = jump <= 1e-6 and i1 <= 1e-8 and erfc <= 1e-12
    return CheckResult("propagator: jump / I1 / erfc", ok, max(jump / 1e-6, i1 / 1e-8, erfc / 1e-12), 1.0,
                       f"[jump {jump:.2e} <= 1e-6, I1 {i1:.2e} <= 1e-8, erfc {erfc:.2e} <= 1e-12]")


def regularity(qt=0.05, c0=1e-3, eps_list=(1e-2, 1e-3, 1e-4)):
    rep = dispersion.regularity_probe(qt, c0, eps_list)
    ok = rep.slope >= 1.0 and rep.bounded
    return CheckResult("regularity at w = 2q", bool(ok), rep.slope, 1.0,
                       f"[slope {rep.slope:.4f} >= 1, max|Lambda|/|Lambda(2q+0.05)| = {rep.max_ratio:.3g} <= 10]")


def rank_nullity(qt=0.05, c0=1e-3, gap_min=10.0, agree=1e-6):
    root = dispersion.find_root(qt, c0)
    M = dispersion.matrix_elements(ScaledPoint(qt, root.wt), c0).entries - np.eye(6)
    v_minor, _ = amplitude.minor_null_vector(M)
    v_svd, s = dispersion.null_vector(M)
    diff = np.max(np.abs(v_minor - v_svd)) / np.max(np.abs(v_svd))
    gap = s[-2] / s[-1]
    ok = gap >= gap_min and diff <= agree
    return CheckResult("rank 5 / null vectors agree", bool(ok), diff, agree,
                       f"[singular value gap {gap:.3g} >= {gap_min:g}]")


def run_all(with_oracle=True):
    checks = [
        ("1", kernel_vs_quadrature),
        ("2", functional_equation),
        ("3", det_symmetry),
    ]
    if with_oracle:
        for qt, c0 in ((0.02, 1e-3), (0.05, 1e-3), (0.05, 1e-2)):
            checks.append(("4", lambda qt=qt, c0=c0: oracle_agreement(qt, c0)))
        checks.append(("5", mode_shape))
    checks += [
        ("6", integral_equation),
        ("7", semiclassical_agreement),
        ("8", classical_identity),
        ("9", coefficient_bounds),
        ("10", propagator_checks),
        ("11", regularity),
        ("12", rank_nullity),
    ]
    out = []
    for tag, fn in checks:
        out.append((tag, fn()))
    return out
