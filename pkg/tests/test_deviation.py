import numpy as np
import pytest
from scipy.integrate import quad
from scipy.optimize import minimize_scalar

from h2entangle import deviation
from h2entangle.deviation import (MeasureKind, MinimumTag, alpha_min, correlation_energy,
                                  mean_square_deviation, minimize_residual, residual)
from h2entangle.errors import QuadratureNotConverged
from h2entangle.numerics import bisect, golden_section_min, integrate, trapezoid_weights

# Frozen from scipy.integrate.quad / minimize_scalar applied to the closed-form
# g = 1 measures, independently of this package.
ALPHA_ENTROPY = 0.6912167831394108
ALPHA_CONCURRENCE = 0.38324913760195983
LAMBDA_MIN_ENTROPY = 0.4853060160237449
LAMBDA_MIN_CONCURRENCE = 0.3705312619348804
RESIDUAL_MIN_CONCURRENCE = -0.035781082013913


def h2(p):
    return -sum(x * np.log2(x) for x in (p, 1 - p) if x > 0)


def oracle_measure(kind, lam):
    if kind is MeasureKind.ENTROPY:
        return h2(0.5 + 1 / np.sqrt(lam * lam + 4))
    return lam / np.sqrt(lam * lam + 4)


def test_correlation_energy_examples():
    assert correlation_energy(0.0) == 0.0
    assert correlation_energy(1.0) == pytest.approx(np.sqrt(5) - 2, abs=1e-15)
    assert correlation_energy(2 * np.sqrt(2)) == pytest.approx(2 * np.sqrt(3) - 2, abs=1e-14)
    lam = np.linspace(0, 50, 500)
    assert np.all(np.diff(correlation_energy(lam)) > 0)


def test_integrate_examples():
    assert integrate(lambda x: x * x, 0, 1) == pytest.approx(1 / 3, abs=1e-12)
    expected = (np.sqrt(5) + 4 * np.arcsinh(0.5) - 4) / 2
    assert integrate(correlation_energy, 0, 1) == pytest.approx(expected, abs=1e-12)
    assert integrate(lambda x: np.zeros_like(x), 0, 1) == 0.0


def test_integrate_not_converged():
    with pytest.raises(QuadratureNotConverged):
        integrate(lambda x: np.sin(1e9 * x) * np.cos(x * 1e7), 0, 1, tol=1e-15)


def test_integrate_full_output_and_bad_interval():
    val, panels = integrate(np.exp, 0, 1, full_output=True)
    assert val == pytest.approx(np.e - 1, abs=1e-12) and panels >= 16
    with pytest.raises(ValueError):
        integrate(np.exp, 1, 0)


def test_golden_section_and_bisect():
    x, fx = golden_section_min(lambda t: (t - 0.3) ** 2 + 1, 0, 1, tol=1e-9)
    assert x == pytest.approx(0.3, abs=1e-7) and fx == pytest.approx(1)
    assert bisect(lambda t: t ** 3 - 2, 0, 2, tol=1e-12) == pytest.approx(2 ** (1 / 3), abs=1e-11)
    with pytest.raises(ValueError):
        bisect(lambda t: t * t + 1, -1, 1)


def test_trapezoid_weights():
    x = np.array([0.0, 0.5, 2.0, 3.0])
    y = x ** 2
    assert np.sum(trapezoid_weights(x) * y) == pytest.approx(np.trapezoid(y, x))


@pytest.mark.parametrize("kind, expected", [
    (MeasureKind.ENTROPY, ALPHA_ENTROPY),
    (MeasureKind.CONCURRENCE, ALPHA_CONCURRENCE),
])
def test_alpha_min_matches_quadrature_oracle(kind, expected):
    assert alpha_min(kind) == pytest.approx(expected, abs=1e-9)
    # the printed magnitudes
    printed = 0.691217 if kind is MeasureKind.ENTROPY else 0.383249
    assert abs(alpha_min(kind)) == pytest.approx(printed, abs=1e-3)


def test_alpha_min_other_window_oracle():
    for kind in MeasureKind:
        num = quad(lambda x: correlation_energy(x) * oracle_measure(kind, x), 0, 0.1, epsabs=1e-16)[0]
        den = quad(lambda x: oracle_measure(kind, x) ** 2, 0, 0.1, epsabs=1e-16)[0]
        assert alpha_min(kind, window=(0, 0.1)) == pytest.approx(num / den, rel=1e-8)


def test_alpha_min_proportional_measure(monkeypatch):
    c = 2.5
    monkeypatch.setattr(deviation, "measure", lambda kind, lam, g=1.0: c * correlation_energy(lam, g))
    deviation._alpha_min.cache_clear()
    try:
        assert alpha_min(MeasureKind.ENTROPY, window=(0, 1)) == pytest.approx(1 / c, abs=1e-10)
    finally:
        deviation._alpha_min.cache_clear()


def test_alpha_min_stable_under_refinement():
    for kind in MeasureKind:
        coarse = alpha_min(kind, tol=1e-9)
        fine = alpha_min(kind, tol=1e-13)
        assert coarse == pytest.approx(fine, abs=1e-8)


def test_residual_examples():
    for kind in MeasureKind:
        assert residual(kind, 0.7, 0.0) == 0.0
    expected = np.sqrt(5) - 2 - 0.383249 / np.sqrt(5)
    assert residual(MeasureKind.CONCURRENCE, 0.383249, 1.0) == pytest.approx(expected, abs=1e-15)
    assert expected == pytest.approx(0.06467, abs=1e-5)


def test_residual_affine_in_alpha():
    lam = np.linspace(0, 1, 37)
    for kind in MeasureKind:
        a1, a2 = 0.13, 1.71
        lhs = residual(kind, a1, lam) + residual(kind, a2, lam)
        np.testing.assert_allclose(lhs, 2 * residual(kind, (a1 + a2) / 2, lam), atol=1e-12)


@pytest.mark.parametrize("kind, lam_min", [
    (MeasureKind.ENTROPY, LAMBDA_MIN_ENTROPY),
    (MeasureKind.CONCURRENCE, LAMBDA_MIN_CONCURRENCE),
])
def test_minimize_residual(kind, lam_min):
    res = minimize_residual(kind, alpha_min(kind))
    assert res.tag is MinimumTag.INTERIOR
    assert res.lambda_min == pytest.approx(lam_min, abs=2e-6)
    printed = 0.485 if kind is MeasureKind.ENTROPY else 0.371
    assert res.lambda_min == pytest.approx(printed, abs=5e-3)
    assert res.residual_at_min == pytest.approx(residual(kind, res.alpha_min, res.lambda_min))


def test_minimize_residual_concurrence_value():
    res = deviation.analyze(MeasureKind.CONCURRENCE)
    assert res.residual_at_min == pytest.approx(RESIDUAL_MIN_CONCURRENCE, abs=1e-10)
    assert res.integration_panels > 0


def test_minimize_residual_tags():
    assert minimize_residual(MeasureKind.ENTROPY, 0.0).tag is MinimumTag.MONOTONE
    # a large scale pushes the minimum beyond the window
    assert minimize_residual(MeasureKind.CONCURRENCE, 5.0).tag is MinimumTag.BOUNDARY


def test_quadratic_optimality():
    for kind in MeasureKind:
        a = alpha_min(kind)
        i0 = mean_square_deviation(kind, a)
        for d in (1e-3, 1e-2, 1e-1):
            assert mean_square_deviation(kind, a + d) > i0
            assert mean_square_deviation(kind, a - d) > i0


def test_relative_deviation_drops_below_ten_percent():
    lam = np.linspace(0.6, 1.0, 81)
    a = alpha_min(MeasureKind.ENTROPY)
    rel_s, rel_e = deviation.relative_deviations(MeasureKind.ENTROPY, a, lam)
    assert rel_s.min() < 0.10
    assert rel_e.min() < 0.10


def test_window_sensitivity():
    assert alpha_min(MeasureKind.ENTROPY, window=(0, 0.1)) != pytest.approx(ALPHA_ENTROPY, abs=1e-3)


def test_scipy_oracle_minimum():
    # recomputes the frozen minimum from scratch to guard the constants above
    for kind, frozen in [(MeasureKind.ENTROPY, LAMBDA_MIN_ENTROPY),
                         (MeasureKind.CONCURRENCE, LAMBDA_MIN_CONCURRENCE)]:
        a = alpha_min(kind)
        r = minimize_scalar(lambda x: correlation_energy(x) - a * oracle_measure(kind, x),
                            bounds=(0, 1), method="bounded", options={"xatol": 1e-12})
        # location of a flat minimum is only resolvable to ~sqrt(eps)
        assert r.x == pytest.approx(frozen, abs=1e-7)
