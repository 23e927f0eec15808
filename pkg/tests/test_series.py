import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sheetplasmon import series as S
from sheetplasmon.errors import DomainError
from sheetplasmon.params import ScaledPoint
from sheetplasmon.series import BoundaryValues

P = ScaledPoint(0.05, 0.01)
C0 = 1e-3


def regime_points():
    return st.tuples(st.floats(0.01, 0.5), st.floats(0.03, 0.97), st.floats(1e-4, 1.0)).map(
        lambda t: (ScaledPoint(t[0], t[0] ** 2 + t[1] * (t[0] - t[0] ** 2)), t[2]))


def test_leading_coefficients_are_one():
    c = S.lambda_seq(P, C0, 5)
    assert c.lambda_plus[0] == 1 and c.lambda_minus[0] == 1 and c.lambda_slashed[0] == 1


def test_first_coefficient_bound_example():
    c = S.lambda_seq(P, C0, 3)
    assert abs(c.lambda_plus[1]) <= 1.5e-3


@given(regime_points())
def test_frequency_flip_swaps_families(pc):
    p, c0 = pc
    a = S.lambda_seq(p, c0, 6)
    b = S.lambda_seq(p.negated(), c0, 6)
    np.testing.assert_allclose(a.lambda_plus, b.lambda_minus, rtol=1e-14)
    np.testing.assert_allclose(a.lambda_minus, b.lambda_plus, rtol=1e-14)
    np.testing.assert_allclose(a.lambda_slashed, b.lambda_slashed, rtol=1e-14)


@given(regime_points())
def test_products_match_recursion(pc):
    p, c0 = pc
    a = S.lambda_seq(p, c0, 8)
    r = S.lambda_recursion(p, c0, 8)
    for x, y in zip((a.lambda_plus, a.lambda_minus, a.lambda_slashed), r):
        np.testing.assert_allclose(x, y, rtol=1e-12)


@settings(max_examples=50)
@given(regime_points())
def test_decay_bounds(pc):
    p, c0 = pc
    c = S.lambda_seq(p, c0, 30)
    cb = S.bound_constant(c0)
    for n in range(31):
        f4 = math.factorial(n) ** 4
        assert abs(c.lambda_plus[n]) <= cb ** n / f4 * (1 + 1e-12)
        assert abs(c.lambda_minus[n]) <= cb ** n / f4 * (1 + 1e-12)
        assert abs(c.lambda_slashed[n]) <= (cb / 4) ** n / f4 * (1 + 1e-12)


def test_vanishing_factor_is_named():
    # alpha_+ = 0.5 at (1.5, 3), so 4(1 + alpha_+) - 2w = 0 at j = 1
    with pytest.raises(DomainError, match="4j"):
        S.lambda_seq(ScaledPoint(1.5, 3.0), C0, 3)


def test_default_n_max():
    for c0 in (1e-4, 1e-3, 1e-2, 0.1, 1.0):
        n = S.default_n_max(c0)
        assert n <= 7
        assert S.tail_bound(c0, n) < S.TAIL_TARGET
        assert n == 0 or S.tail_bound(c0, n - 1) >= S.TAIL_TARGET
    assert S.default_n_max(1e300) == S.N_MAX_CAP


def test_pole_spacing():
    ps = S.pole_set(P, 10)
    np.testing.assert_allclose(np.diff(ps.s_slashed), -2.0, rtol=0, atol=1e-14)
    np.testing.assert_allclose(np.diff(ps.s_plus.real), -2.0, rtol=0, atol=1e-14)
    np.testing.assert_allclose(np.diff(ps.s_minus.real), -2.0, rtol=0, atol=1e-14)
    assert np.all(ps.all().real < -1)


def _bv(seed):
    rng = np.random.default_rng(seed)
    return BoundaryValues.from_array(rng.normal(size=6) + 1j * rng.normal(size=6))


def test_residues_linear():
    assert S.residues0(P, C0, BoundaryValues.from_array(np.zeros(6))) == (0, 0, 0)
    bv = _bv(0)
    r1 = np.array(S.residues0(P, C0, bv))
    r2 = np.array(S.residues0(P, C0, bv.scaled(2.0)))
    np.testing.assert_allclose(r2, 2 * r1, rtol=1e-15)


def test_slashed_residue_depends_on_sum_only():
    bv = _bv(1).as_array()
    other = bv.copy()
    other[0] += 0.3
    other[1] -= 0.3
    other[2:] = 7.0
    a = S.residues0(P, C0, BoundaryValues.from_array(bv))[2]
    b = S.residues0(P, C0, BoundaryValues.from_array(other))[2]
    assert a == pytest.approx(b, rel=1e-15)


def test_breve_f_pole_exclusion():
    exp = S.build_expansion(P, C0, _bv(2))
    with pytest.raises(DomainError):
        S.breve_f(exp.poles.s_plus[0], exp)


def test_breve_f_decays_on_real_axis():
    exp = S.build_expansion(P, C0, _bv(3))
    start = np.max(np.abs(exp.poles.all())) + 1
    vals = [abs(S.breve_f(s, exp)) for s in np.geomspace(start, 1e6, 40)]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1e-4 * vals[0]


def test_residue_recovery():
    exp = S.build_expansion(P, C0, _bv(4))
    for pole, ref in ((exp.poles.s_plus[0], exp.r0_plus), (exp.poles.s_minus[0], exp.r0_minus),
                      (exp.poles.s_slashed[0], exp.r0_slashed)):
        assert abs(S.pole_residue_limit(exp, pole) - ref) <= 1e-9 * abs(ref)


def test_boundary_values_reproduced(profile_005):
    exp, bv, p = profile_005.expansion, profile_005.bv, profile_005.point
    ap, am = p.alpha(1), p.alpha(-1)
    got = [S.breve_f(s, exp) for s in (p.qt, -p.qt, 1 + ap, 1 - ap, 1 + am, 1 - am)]
    np.testing.assert_allclose(got, bv.as_array(), rtol=1e-9)


def test_functional_residual_small_at_root(profile_005):
    rng = np.random.default_rng(5)
    for _ in range(20):
        s = complex(rng.uniform(-0.95, 4), rng.uniform(-3, 3))
        r = S.functional_residual(s, profile_005.expansion, profile_005.point, C0)
        assert abs(r) <= 1e-9 * abs(S.breve_f(s, profile_005.expansion))


def test_functional_residual_detects_wrong_boundary_values(profile_005):
    exp = S.build_expansion(profile_005.point, C0, _bv(6))
    r = S.functional_residual(0.5 + 0.5j, exp, profile_005.point, C0)
    assert abs(r) > 1e-5 * abs(S.breve_f(0.5 + 0.5j, exp))


def test_functional_residual_linear(profile_005):
    s = 0.3 - 1.1j
    e = profile_005.expansion
    r1 = S.functional_residual(s, e, profile_005.point, C0)
    r2 = S.functional_residual(s, e.scaled(2.0), profile_005.point, C0)
    assert abs(r2 - 2 * r1) <= 1e-12 * abs(2 * S.breve_f(s, e))


def test_functional_residual_bounded_near_removable_point(profile_005):
    e, p = profile_005.expansion, profile_005.point
    ref = abs(S.breve_f(0.5, e))
    for h in (1e-3, 1e-5, 1e-7):
        s = -2 + p.qt + h * (1 + 1j)
        assert abs(S.functional_residual(s, e, p, C0)) <= 1e-6 * ref
