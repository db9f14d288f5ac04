import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import ndtr

from gouproc.errors import NumericError
from gouproc.stable import (
    StableParams,
    crossover_radius,
    fit_alpha_symmetric,
    sample_stable,
    stable_cdf,
    stable_cdf_fn,
    stable_cf,
    stable_pdf_series,
)
from gouproc.streams import substream

# Reference density values computed independently by high-precision
# quadrature of the inversion integral (mpmath quadosc, 40 digits),
# frozen here.
REF_PDF = {
    # (alpha, x): density of S_alpha(1, 0, 0)
    (1.5, 0.0): 0.28735275145216443729,
    (1.5, 1.0): 0.20203815960789469992,
    (1.5, 5.0): 0.0071117360476557830106,
    (1.3, 2.0): 0.076080111849877676803,
    (1.9, 3.0): 0.029941757147406044485,
    (0.6, 0.5): 0.19793819993374611966,
    (0.6, 3.0): 0.026449283932722310576,
}


class TestParams:
    def test_valid(self):
        p = StableParams(alpha=1.5, sigma=2.0, beta=0.5, mu=-1.0)
        assert p.alpha == 1.5

    @pytest.mark.parametrize("kw", [dict(alpha=0.0), dict(alpha=2.0001), dict(alpha=-1.0),
                                    dict(alpha=1.5, sigma=0.0), dict(alpha=1.5, sigma=-2.0),
                                    dict(alpha=1.5, beta=1.5), dict(alpha=1.0, beta=0.3)])
    def test_invalid(self, kw):
        with pytest.raises((ValueError, NumericError)):
            StableParams(**kw)


class TestCharacteristicFunction:
    def test_gaussian_case(self):
        p = StableParams(alpha=2.0, sigma=1.0)
        th = np.linspace(-3, 3, 7)
        assert np.allclose(stable_cf(p, th), np.exp(-th**2), rtol=1e-12)

    def test_cauchy_case(self):
        p = StableParams(alpha=1.0, sigma=2.0)
        assert stable_cf(p, 1.5) == pytest.approx(math.exp(-3.0), rel=1e-12)

    @given(st.floats(0.3, 2.0), st.floats(-20.0, 20.0))
    def test_modulus_bounded(self, alpha, theta):
        if abs(alpha - 1.0) < 1e-6:
            alpha = 1.05
        p = StableParams(alpha=alpha, sigma=1.0, beta=0.4 if alpha != 2.0 else 0.0)
        assert abs(stable_cf(p, theta)) <= 1.0 + 1e-12

    def test_location_shifts_phase_only(self):
        p0 = StableParams(alpha=1.5, sigma=1.0)
        p1 = StableParams(alpha=1.5, sigma=1.0, mu=2.0)
        th = 0.7
        assert abs(stable_cf(p1, th)) == pytest.approx(abs(stable_cf(p0, th)), rel=1e-12)


class TestDensityClosedForms:
    def test_gaussian_density(self):
        p = StableParams(alpha=2.0, sigma=1.0)
        # S_2(sigma) is N(0, 2 sigma^2)
        assert stable_pdf_series(p, 0.0) == pytest.approx(1 / (2 * math.sqrt(math.pi)), rel=1e-14)
        x = np.array([-1.0, 0.5, 3.0])
        expect = np.exp(-(x**2) / 4.0) / (2 * math.sqrt(math.pi))
        assert np.allclose(stable_pdf_series(p, x), expect, rtol=1e-13)

    def test_cauchy_density(self):
        p = StableParams(alpha=1.0, sigma=1.0)
        assert stable_pdf_series(p, 0.0) == pytest.approx(1 / math.pi, rel=1e-14)
        assert stable_pdf_series(p, 1.0) == pytest.approx(1 / (2 * math.pi), rel=1e-14)


class TestDensitySeries:
    @pytest.mark.parametrize("key", sorted(REF_PDF))
    def test_frozen_reference_values(self, key):
        # worst measured series error on these points is ~3e-9 absolute
        # (near the expansion crossover); well inside the 1e-6 target
        alpha, x = key
        p = StableParams(alpha=alpha, sigma=1.0)
        assert stable_pdf_series(p, x) == pytest.approx(REF_PDF[key], abs=1e-8)

    @pytest.mark.parametrize("alpha", [0.6, 1.3, 1.5, 1.9])
    def test_symmetry(self, alpha):
        p = StableParams(alpha=alpha, sigma=1.0)
        x = np.array([0.3, 1.0, 2.7, 6.0])
        assert np.allclose(stable_pdf_series(p, x), stable_pdf_series(p, -x), rtol=1e-12)

    @given(st.floats(1.1, 2.0), st.floats(0.1, 5.0), st.floats(-4.0, 4.0))
    @settings(max_examples=30, deadline=None)
    def test_affine_scaling(self, alpha, sigma, x):
        base = StableParams(alpha=alpha, sigma=1.0)
        scaled = StableParams(alpha=alpha, sigma=sigma)
        f1 = stable_pdf_series(scaled, sigma * x)
        f0 = stable_pdf_series(base, x)
        assert f1 == pytest.approx(f0 / sigma, rel=1e-7, abs=1e-300)

    def test_location_shift(self):
        p0 = StableParams(alpha=1.5, sigma=1.0)
        p1 = StableParams(alpha=1.5, sigma=1.0, mu=3.0)
        assert stable_pdf_series(p1, 3.5) == pytest.approx(stable_pdf_series(p0, 0.5), rel=1e-12)

    def test_nonnegative_on_wide_grid(self):
        p = StableParams(alpha=1.5, sigma=1.0)
        x = np.linspace(-60.0, 60.0, 2001)
        assert np.all(np.asarray(stable_pdf_series(p, x)) >= 0.0)

    def test_near_one_pocket_raises(self):
        # close to the Cauchy order both expansions stall at moderate z;
        # the failure must surface, not silent garbage
        with pytest.raises(NumericError):
            stable_pdf_series(StableParams(alpha=1.03, sigma=1.0), 1.2)

    def test_numeric_error_carries_partial(self):
        try:
            stable_pdf_series(StableParams(alpha=1.03, sigma=1.0), 1.2)
        except NumericError as exc:
            assert exc.partial is not None
        else:
            pytest.fail("expected NumericError")

    def test_small_alpha_small_z_value(self):
        # alpha = 0.3 at small z is served by the convergent tail series
        v = stable_pdf_series(StableParams(alpha=0.3, sigma=1.0), 0.1)
        assert v == pytest.approx(0.447168036513, abs=2e-6)

    def test_tiny_alpha_center_coefficients_overflow_safely(self):
        # center-series coefficients pass 1e308 within a few terms here;
        # the affected lanes must fail over to the tail series, not raise
        # OverflowError
        assert crossover_radius(0.01) > 0
        v = stable_pdf_series(StableParams(alpha=0.1, sigma=1.0), 1.0)
        assert v == pytest.approx(0.0183013976624, abs=1e-8)
        v = stable_pdf_series(StableParams(alpha=0.02, sigma=1.0), 3.0)
        assert v == pytest.approx(0.00122539338901, abs=1e-8)

    def test_skewed_pdf_integrates_to_one(self):
        # beta != 0 exercises the branch-dependent sine arguments
        from scipy.integrate import quad

        p = StableParams(alpha=1.5, sigma=1.0, beta=0.25)
        total, _ = quad(lambda x: stable_pdf_series(p, x), -200, 200, limit=400)
        assert total == pytest.approx(1.0, abs=5e-4)

    def test_extremal_skew_light_tail_raises(self):
        # beta = 2 - alpha kills the left tail series identically; the
        # light side beyond the crossover cannot return a finite lie
        with pytest.raises(NumericError):
            stable_pdf_series(StableParams(alpha=1.5, sigma=1.0, beta=0.5), -6.6)

    def test_crossover_radius_positive(self):
        for alpha in (0.6, 1.3, 1.5, 1.9):
            assert crossover_radius(alpha) > 0

    def test_crossover_rejects_closed_forms(self):
        with pytest.raises(ValueError):
            crossover_radius(2.0)
        with pytest.raises(ValueError):
            crossover_radius(1.0)


class TestCdf:
    def test_gaussian_cdf(self):
        p = StableParams(alpha=2.0, sigma=1.0)
        # F(1) for N(0, 2): Phi(1/sqrt 2)
        assert stable_cdf(p, 1.0) == pytest.approx(float(ndtr(1 / math.sqrt(2))), rel=1e-12)

    def test_cauchy_cdf(self):
        p = StableParams(alpha=1.0, sigma=1.0)
        assert stable_cdf(p, 1.0) == pytest.approx(0.75, rel=1e-12)
        assert stable_cdf(p, 0.0) == pytest.approx(0.5, rel=1e-12)

    def test_series_cdf_midpoint(self):
        p = StableParams(alpha=1.5, sigma=1.0)
        assert stable_cdf(p, 0.0) == pytest.approx(0.5, abs=1e-10)

    def test_cdf_monotone(self):
        p = StableParams(alpha=1.5, sigma=1.0)
        x = np.linspace(-10, 10, 101)
        F = np.array([stable_cdf(p, float(v)) for v in x])
        assert np.all(np.diff(F) > 0)

    def test_fast_cdf_matches_quadrature_cdf(self):
        fast = stable_cdf_fn(1.5)
        p = StableParams(alpha=1.5, sigma=1.0)
        x = np.array([-8.0, -2.0, -0.5, 0.0, 0.7, 3.0, 12.0, 55.0, 80.0])
        slow = np.array([stable_cdf(p, float(v)) for v in x])
        assert np.allclose(fast(x), slow, atol=5e-8)

    def test_fast_cdf_closed_forms(self):
        f2 = stable_cdf_fn(2.0)
        assert f2(np.array([1.0]))[0] == pytest.approx(float(ndtr(1 / math.sqrt(2))), rel=1e-12)
        f1 = stable_cdf_fn(1.0)
        assert f1(np.array([1.0]))[0] == pytest.approx(0.75, rel=1e-12)


class TestSampler:
    def test_deterministic_given_stream(self):
        p = StableParams(alpha=1.7, sigma=1.0)
        a = sample_stable(p, substream(3, "s"), size=8)
        b = sample_stable(p, substream(3, "s"), size=8)
        assert np.array_equal(a, b)

    def test_scalar_when_size_none(self):
        p = StableParams(alpha=1.7, sigma=1.0)
        assert isinstance(sample_stable(p, substream(3, "s")), float)

    def test_gaussian_variance(self):
        p = StableParams(alpha=2.0, sigma=1.5)
        x = sample_stable(p, substream(5, "s"), size=200_000)
        assert np.var(x) == pytest.approx(2 * 1.5**2, rel=0.02)

    def test_cauchy_quartile(self):
        p = StableParams(alpha=1.0, sigma=1.0)
        x = sample_stable(p, substream(6, "s"), size=200_000)
        assert np.quantile(x, 0.75) == pytest.approx(1.0, abs=0.02)

    @pytest.mark.parametrize("alpha", [1.3, 1.7])
    def test_ecdf_matches_cdf(self, alpha):
        p = StableParams(alpha=alpha, sigma=1.0)
        x = np.sort(sample_stable(p, substream(8, "s"), size=50_000))
        F = stable_cdf_fn(alpha)(x)
        ecdf = np.arange(1, x.size + 1) / x.size
        # K-S distance at n = 50000: 1.36/sqrt(n) ~ 0.006 at 5%
        assert np.max(np.abs(F - ecdf)) < 0.01

    def test_location_scale(self):
        p = StableParams(alpha=1.5, sigma=2.0, mu=5.0)
        x = sample_stable(p, substream(9, "s"), size=100_000)
        assert np.median(x) == pytest.approx(5.0, abs=0.05)

    def test_skewed_sampler_changes_median(self):
        p = StableParams(alpha=1.5, sigma=1.0, beta=0.8)
        x = sample_stable(p, substream(10, "s"), size=100_000)
        assert abs(np.median(x)) > 0.05


class TestFitAlphaSymmetric:
    def test_recovers_parameters(self):
        p = StableParams(alpha=1.5, sigma=2.0)
        x = sample_stable(p, substream(11, "fit"), size=4000)
        a, s = fit_alpha_symmetric(x)
        assert a == pytest.approx(1.5, abs=0.1)
        assert s == pytest.approx(2.0, rel=0.1)

    def test_gaussian_sample(self):
        x = substream(12, "fit").normal(0.0, math.sqrt(2.0), size=4000)
        a, _ = fit_alpha_symmetric(x)
        assert a > 1.85
