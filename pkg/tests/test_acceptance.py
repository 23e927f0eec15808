"""One test per acceptance criterion, each at its stated tolerance.

Every test records a PASS/FAIL line; the lines are repeated in the
"acceptance criteria" section of the pytest terminal summary.
"""
import pytest

from conftest import oracle_root
from sheetplasmon import checks


def test_01_kernel_closed_form_vs_quadrature(report):
    r = checks.kernel_vs_quadrature(n=200, threshold=1e-8, time_limit=10.0)
    report("1", r)
    assert r.passed


def test_02_functional_equation(report):
    r = checks.functional_equation(qt=0.05, c0=1e-3, n=20, threshold=1e-9)
    report("2", r)
    assert r.passed


def test_03_determinant_symmetry(report):
    r = checks.det_symmetry(n=100, threshold=1e-12)
    report("3", r)
    assert r.passed


@pytest.mark.slow
@pytest.mark.parametrize("qt,c0", [(0.02, 1e-3), (0.05, 1e-3), (0.05, 1e-2)])
def test_04_series_vs_oracle_root(report, qt, c0):
    r = checks.oracle_agreement(qt, c0, threshold=1e-3, time_limit=60.0)
    report("4", r)
    assert r.passed


@pytest.mark.slow
def test_05_mode_shape(report):
    r = checks.mode_shape(0.05, 1e-3, threshold=0.9999, orc=oracle_root(0.05, 1e-3))
    report("5", r)
    assert r.passed


def test_06_integral_residual(report):
    r = checks.integral_equation(qt=0.05, c0=1e-3, threshold=1e-6, detune=0.05, min_gain=10.0)
    report("6", r)
    assert r.passed


def test_07_semiclassical_agreement(report):
    r = checks.semiclassical_agreement(c0=1e-3, q_grid=(0.02, 0.05, 0.08))
    report("7", r)
    assert r.passed


def test_08_classical_quantum_identity(report):
    r = checks.classical_identity(n=20, threshold=1e-14)
    report("8", r)
    assert r.passed


def test_09_coefficient_bounds(report):
    r = checks.coefficient_bounds(n=50, n_max=30)
    report("9", r)
    assert r.passed


def test_10_propagator(report):
    r = checks.propagator_checks()
    report("10", r)
    assert r.passed


def test_11_regularity(report):
    r = checks.regularity(qt=0.05, c0=1e-3, eps_list=(1e-2, 1e-3, 1e-4))
    report("11", r)
    assert r.passed


def test_12_rank_nullity(report):
    r = checks.rank_nullity(qt=0.05, c0=1e-3, gap_min=10.0, agree=1e-6)
    report("12", r)
    assert r.passed
