import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sheetplasmon import kernel as K
from sheetplasmon.errors import DomainError
from sheetplasmon.oracle import GridSpec, build_operator, symmetry_defects
from sheetplasmon.params import ScaledPoint

# mpmath quadrature of the defining integral at 30 digits
FROZEN = [
    ((-0.98, 0.05, 0.4, 0.9), -36.477871714153014419),
    ((-1.03, 0.2, -1.1, 0.7), 4.0353500385337855227),
    ((-0.99 + 0.01j, 0.1, 2.0, -0.5), -0.014349840966798351795 + 12.656101925146423807j),
]


@pytest.mark.parametrize("args,ref", FROZEN)
def test_frozen_values(args, ref):
    assert abs(K.script_g(*args) - ref) <= 1e-12 * abs(ref)


def test_example_vs_quadrature():
    a = K.script_g(-1 + 0.02, 0.05, 0.4, 0.9)
    b = K.script_g_oracle(-1 + 0.02, 0.05, 0.4, 0.9)
    assert abs(a - b) <= 1e-10 * abs(b)


def test_reflection_example():
    w = -1 + 0.02
    assert K.script_g(w, 0.05, 0.3, -0.7) == pytest.approx(K.script_g(w, 0.05, -0.3, 0.7), rel=1e-14)


def test_random_agreement_with_quadrature():
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(100):
        qt = rng.uniform(0.01, 0.5)
        wt = rng.uniform(qt * qt, qt) * rng.choice([-1, 1])
        z, zp = rng.uniform(-5, 5, 2)
        a = K.script_g(-1 + wt, qt, z, zp)
        b = K.script_g_oracle(-1 + wt, qt, z, zp)
        worst = max(worst, abs(a - b) / abs(b))
    assert worst <= 1e-10


@given(st.floats(-4, 4), st.floats(-4, 4), st.floats(0.02, 0.5), st.floats(0.05, 0.95))
def test_parity(z, zp, qt, frac):
    w = -1 + qt * qt + frac * (qt - qt * qt)
    assert K.script_g(w, qt, -z, -zp) == pytest.approx(K.script_g(w, qt, z, zp), rel=1e-12)


def test_continuity_in_zp():
    w, qt, z = -0.97, 0.1, 0.8
    for c in (0.0, z):
        left = K.script_g(w, qt, z, c - 1e-13)
        right = K.script_g(w, qt, z, c + 1e-13)
        mid = K.script_g(w, qt, z, c)
        assert abs(left - right) <= 1e-12 * abs(mid)
        assert abs(mid - right) <= 1e-12 * abs(mid)


def test_regions_agree_on_diagonal():
    # z = z' sits on the I/II boundary; approach from both sides
    for z in (0.1, 0.7, 2.5):
        a = K.script_g(-0.95, 0.2, z, z * (1 + 1e-14))
        b = K.script_g(-0.95, 0.2, z, z * (1 - 1e-14))
        assert abs(a - b) <= 1e-12 * abs(a)


def test_dispatch_is_total():
    zs = np.array([-2.0, -1.0, -0.0, 0.0, 0.5, 1.0, 2.0])
    Z, ZP = np.meshgrid(zs, zs)
    a = K.script_g_alpha(complex(np.sqrt(1.0 + 0.04 - 0.1)), 0.2, Z, ZP)
    assert np.all(np.isfinite(a))


def test_real_for_real_alpha():
    assert K.script_g(-0.97, 0.1, 0.3, -1.2).imag == 0
    assert K.script_g_oracle(-0.97, 0.1, 0.3, -1.2).imag == 0


def test_decay_in_qt():
    vals = [abs(K.script_g(-1 + 0.5 * q, q, 0.3, 0.6)) for q in (1.0, 2.0, 4.0, 8.0, 16.0)]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    # at large qt the value scales like 1/qt or faster
    assert vals[-1] * 16 <= vals[0] * 2


def test_pole_and_cut_errors():
    with pytest.raises(DomainError):
        K.script_g(-1.0, 1e-300, 0.1, 0.2)  # alpha == 1
    with pytest.raises(DomainError):
        K.script_g(0.5, 0.1, 0.1, 0.2)      # on the cut
    with pytest.raises(DomainError):
        K.script_g(-0.97, 0.0, 0.1, 0.2)


def test_context_caches_alpha():
    p = ScaledPoint(0.05, 0.012)
    ctx = K.KernelContext.build(p, 1e-3)
    assert ctx.alpha_plus == p.alpha(1) and ctx.alpha_minus == p.alpha(-1)


def test_slashed_frequency_flip():
    p = ScaledPoint(0.05, 0.012)
    a = K.KernelContext.build(p, 1e-3)
    b = K.KernelContext.build(p.negated(), 1e-3)
    for z, zp in ((0.3, 0.8), (-1.2, 0.4), (2.0, -2.5)):
        assert K.slashed_kernel(a, z, zp) == pytest.approx(K.slashed_kernel(b, z, zp), rel=1e-14)


def test_slashed_parity():
    ctx = K.KernelContext.build(ScaledPoint(0.05, 0.012), 1e-3)
    for z, zp in ((0.3, 0.8), (1.2, 0.4), (0.5, -2.5)):
        assert K.slashed_kernel(ctx, -z, zp) == pytest.approx(K.slashed_kernel(ctx, z, -zp), rel=1e-13)


def test_operator_symmetry_after_smoothing():
    # The kernel factors as A D_q with A symmetric, so D_q W K is the symmetric form;
    # the plain weighted kernel W^1/2 K W^1/2 is not.
    op = build_operator(ScaledPoint(0.05, 0.0101), 1e-3)
    raw, smooth = symmetry_defects(op)
    assert smooth <= 1e-5
    assert raw > 1e-2


def test_dq_apply_exact_integral():
    z = np.linspace(0.0, 30.0, 3001)
    w = np.full_like(z, z[1] - z[0])
    w[0] = w[-1] = 0.5 * (z[1] - z[0])
    out = K.dq_apply(np.exp(-z), z, w, 1.0, even=True)
    assert out[0] == pytest.approx(1.0, abs=1e-4)
    assert np.max(np.abs(out - (1 + z) * np.exp(-z))) <= 1e-4


def test_dq_apply_linear_and_even():
    z, w = GridSpec().nodes()
    zf = np.concatenate([-z[::-1], z])
    wf = np.concatenate([w[::-1], w])
    u, v = np.exp(-zf ** 2), np.cos(zf) * np.exp(-np.abs(zf))
    a = K.dq_apply(2 * u - 3 * v, zf, wf, 0.3)
    b = 2 * K.dq_apply(u, zf, wf, 0.3) - 3 * K.dq_apply(v, zf, wf, 0.3)
    assert np.max(np.abs(a - b)) <= 1e-13 * np.max(np.abs(a))
    assert np.allclose(a, a[::-1], rtol=1e-13, atol=0)
    with pytest.raises(DomainError):
        K.dq_apply(u, zf, wf, 0.0)
