import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from h2entangle import ci_bridge, deviation
from h2entangle.ci_bridge import (CisdCoefficients, Denominator, SampleSeries, alpha_over_r,
                                  cisd_entropy, expansion_coefficients, fit_log_linear,
                                  ingest_series, s_of_ecorr, split_ascending_branch)
from h2entangle.errors import (InvariantViolation, NonPositive, NotNormalized, ParseError,
                               SingularBasis, TooFewSamples)
from h2entangle.measures import entropy_region_I_closed


def series(r, e, s):
    return SampleSeries(np.asarray(r, float), np.asarray(e, float), np.asarray(s, float))


def test_cisd_entropy_examples():
    assert cisd_entropy(CisdCoefficients(1.0)) == 0.0
    half = np.sqrt(0.5)
    assert cisd_entropy(CisdCoefficients(half, singles=(half,))) == pytest.approx(1.0, abs=1e-15)
    # normalized variant: c0 = 0.98, paired double 0.1, mixed double fills the rest
    mixed = np.sqrt(1 - 0.98 ** 2 - 0.1 ** 2)
    p = mixed ** 2
    expected = -p * np.log2(p) - (1 - p) * np.log2(1 - p)
    c = CisdCoefficients(0.98, doubles_mixed=(mixed,), doubles_paired=(0.1,))
    assert cisd_entropy(c) == pytest.approx(expected, abs=1e-14)
    assert cisd_entropy(c) == pytest.approx(0.1924, abs=1e-4)


def test_cisd_not_normalized():
    with pytest.raises(NotNormalized):
        cisd_entropy(CisdCoefficients(0.98, doubles_mixed=(0.17607,), doubles_paired=(0.1,)))


def test_cisd_permutation_invariance():
    c = CisdCoefficients(0.9, singles=(0.2, 0.1), doubles_mixed=(0.3,),
                         doubles_paired=(0.2, np.sqrt(1 - 0.81 - 0.05 - 0.09 - 0.04)))
    d = CisdCoefficients(0.9, singles=(0.1, 0.2), doubles_mixed=(0.3,),
                         doubles_paired=(c.doubles_paired[1], 0.2))
    assert cisd_entropy(c) == cisd_entropy(d)


def test_s_of_ecorr_examples():
    assert s_of_ecorr(1e-12) < 1e-9
    assert s_of_ecorr(np.sqrt(5) - 2) == pytest.approx(0.2983, abs=1e-3)
    assert s_of_ecorr(2 * np.sqrt(3) - 2) == pytest.approx(entropy_region_I_closed(1, 2 * np.sqrt(2)), abs=1e-10)
    with pytest.raises(NonPositive):
        s_of_ecorr(0.0)


def test_substitution_identity():
    for lam in np.linspace(0.06, 3.0, 50):
        assert s_of_ecorr(deviation.correlation_energy(lam)) == pytest.approx(
            entropy_region_I_closed(1.0, lam), abs=1e-10)


def test_expansion_coefficients():
    a, b = expansion_coefficients()
    assert b == pytest.approx(-1 / (4 * np.log(2)), abs=1e-3)
    # leading-order a = 1/2 + 1/(4 ln 2), from expanding the binary entropy at small E
    assert a == pytest.approx(ci_bridge.ANALYTIC_A, abs=1e-2)


def test_fit_model_in_model_out():
    e = np.geomspace(1e-4, 0.5, 30)
    s = 0.5 * e - 0.36 * e * np.log(e)
    fit = fit_log_linear(series(np.arange(30), e, s))
    assert fit.a_coef == pytest.approx(0.5, abs=1e-10)
    assert fit.b_coef == pytest.approx(-0.36, abs=1e-10)
    assert fit.rss < 1e-20


def test_fit_two_points_interpolates():
    e = np.array([0.01, 0.1])
    s = 0.2 * e + 0.05 * e * np.log(e)
    fit = fit_log_linear(series([0, 1], e, s))
    assert fit.rss < 1e-12
    np.testing.assert_allclose(fit(e), s, atol=1e-12)


def test_fit_sign_of_ising_data():
    e = np.linspace(1e-4, 1e-2, 20)
    assert fit_log_linear(series(np.arange(20), e, s_of_ecorr(e))).b_coef < 0


def test_fit_sign_opposite_for_concave_data():
    e = np.linspace(1e-3, 0.05, 20)
    s = 2.0 * e + 0.4 * e * np.log(e)
    assert fit_log_linear(series(np.arange(20), e, s)).b_coef > 0


def test_fit_errors():
    with pytest.raises(SingularBasis):
        fit_log_linear(series([0, 1, 2], [0.1] * 3, [0.2] * 3))
    with pytest.raises(NonPositive):
        fit_log_linear(series([0, 1], [0.0, 0.1], [0.0, 0.2]))


def test_split_ascending_branch():
    s = series([0, 1, 2, 3], [0.1, 0.2, 0.3, 0.4], [0.1] * 4)
    assert len(split_ascending_branch(s)) == 4
    s = series([0, 1, 2, 3, 4], [0.1, 0.3, 0.5, 0.4, 0.2], [0.1] * 5)
    branch = split_ascending_branch(s)
    assert len(branch) == 3 and branch.e_corr[-1] == 0.5
    assert len(split_ascending_branch(series([0, 1], [0.5, 0.2], [0.1, 0.1]))) == 1


def test_alpha_over_r_examples():
    r = np.linspace(0, 3, 31)
    e = 0.2 + r ** 2
    c = 4.0
    assert alpha_over_r(series(r, e, e / c / 10), Denominator.SQUARED) == pytest.approx(10 * c, rel=1e-12)
    s0 = 0.3
    expected = np.trapezoid(e * s0, r) / np.trapezoid(np.full_like(r, s0), r)
    assert alpha_over_r(series(r, e, np.full_like(r, s0)), "plain") == pytest.approx(expected, rel=1e-12)
    with pytest.raises(TooFewSamples):
        alpha_over_r(series([0, 1], [0.1, 0.2], [0.1, 0.2]))


def test_alpha_over_r_reproduces_alpha_min():
    lam = np.linspace(0, 1, 2001)
    r = 0.5 + 2.0 * lam
    s = series(r, deviation.correlation_energy(lam), deviation.measure("entropy", lam))
    assert alpha_over_r(s) == pytest.approx(deviation.alpha_min("entropy"), abs=1e-3)


def write(tmp_path, text, name="series.csv"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


def test_ingest_valid(tmp_path):
    p = write(tmp_path, "# comment\nR_angstrom,E_corr,S_vN\n1.5,0.02,0.3\n0.5,0.01,0.1\n1.0,0.03,0.2\n")
    s = ingest_series(p)
    assert len(s) == 3
    np.testing.assert_array_equal(s.abscissa, [0.5, 1.0, 1.5])
    np.testing.assert_array_equal(s.entropy, [0.1, 0.2, 0.3])
    assert not s.has_purity


def test_ingest_purity_columns(tmp_path):
    p = write(tmp_path, "R_angstrom,E_corr,S_vN,Tr_rho,Tr_rho2\n0.5,0.01,0.1,1,0.9\n1.0,0.02,0.2,1,0.8\n")
    s = ingest_series(p)
    np.testing.assert_array_equal(s.trace_rho_sq, [0.9, 0.8])


@pytest.mark.parametrize("text, error, line", [
    ("R_angstrom,E_corr,S_vN\n0.5,0.01,1.2\n", InvariantViolation, None),
    ("R_angstrom,E_corr,S_vN\n0.5,0.01,0.1\n0.5,0.02,0.2\n", InvariantViolation, None),
    ("R_angstrom,E_corr,S_vN\n0.5,abc,0.1\n", ParseError, 2),
    ("# c\nR_angstrom,E_corr,S_vN\n0.5,0.01\n", ParseError, 3),
    ("R,E,S\n0.5,0.01,0.1\n", ParseError, 1),
    ("R_angstrom,E_corr,S_vN\n0.5,nan,0.1\n", InvariantViolation, None),
    ("", ParseError, None),
])
def test_ingest_errors(tmp_path, text, error, line):
    with pytest.raises(error) as info:
        ingest_series(write(tmp_path, text))
    if line is not None:
        assert info.value.line == line


def test_shipped_synthetic_file_roundtrip(tmp_path):
    from importlib.resources import files
    path = files("h2entangle") / "data" / "synthetic_ising_series.csv"
    assert "SYNTHETIC" in path.read_text(encoding="utf-8").splitlines()[0]
    s = ingest_series(path)
    gen = ci_bridge.synthetic_series()
    np.testing.assert_allclose(s.e_corr, gen.e_corr, rtol=1e-8)
    ci_bridge.write_series(s, tmp_path / "copy.csv")
    s2 = ingest_series(tmp_path / "copy.csv")
    np.testing.assert_array_equal(s2.entropy, s.entropy)


def test_synthetic_pipeline():
    s = ci_bridge.synthetic_series()
    branch = split_ascending_branch(s)
    assert 1 < len(branch) < len(s)
    assert fit_log_linear(branch).b_coef < 0


@settings(max_examples=50, deadline=None)
@given(st.floats(0.05, 3.0), st.floats(-1.0, 1.0))
def test_fit_exact_on_model_class(a, b):
    e = np.geomspace(1e-3, 0.3, 12)
    fit = fit_log_linear(series(np.arange(12), e, a * e + b * e * np.log(e)))
    assert fit.a_coef == pytest.approx(a, abs=1e-9)
    assert fit.b_coef == pytest.approx(b, abs=1e-9)
    assert fit.rss < 1e-20
