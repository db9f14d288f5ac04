import math

import numpy as np
import pytest

from gouproc.kernels import Cosine, Exponential, QuadraticGaussian, eval_kernel
from gouproc.simulate import (
    BrownianStd,
    Path,
    PoissonUnitJump,
    SymmetricStable,
    ou_poisson_exact,
    sigma_W_quadratic,
    sigma_eps_cosine,
    simulate_cosine,
    simulate_general,
    simulate_ou,
    simulate_quadratic,
)
from gouproc.streams import substream

# scales recomputed at 30 digits with mpmath quadrature
SIGMA_EPS = {
    (1.1, 1.0): 1.58239588556,
    (1.1, 2.0): 1.04520301876,
    (1.5, 1.0): 1.34499633342,
    (1.5, 2.0): 0.946664367595,
    (2.0, 1.0): 1.20608818642,
    (2.0, 2.0): 0.90044398836,
}
SIGMA_W_2_1_1 = [0.7733977028, 0.7849796267, 0.7906075206, 0.7916141991, 0.7916167372]


class TestNoiseScales:
    @pytest.mark.parametrize("key", sorted(SIGMA_EPS))
    def test_sigma_eps_frozen(self, key):
        alpha, a = key
        assert sigma_eps_cosine(alpha, a, 1.0) == pytest.approx(SIGMA_EPS[key], abs=1e-9)

    @pytest.mark.parametrize("a,h", [(1.0, 1.0), (2.0, 1.0), (0.7, 0.3), (3.0, 0.05)])
    def test_sigma_eps_gaussian_closed_form(self, a, h):
        # 2 int_0^h cos^2(a s) ds = h + sin(2 a h) / (2 a)
        assert sigma_eps_cosine(2.0, a, h) == pytest.approx(
            math.sqrt(h + math.sin(2 * a * h) / (2 * a)), rel=1e-12
        )

    def test_sigma_eps_rejects_bad_args(self):
        with pytest.raises(ValueError):
            sigma_eps_cosine(0.0, 1.0, 1.0)
        with pytest.raises(ValueError):
            sigma_eps_cosine(2.1, 1.0, 1.0)
        with pytest.raises(ValueError):
            sigma_eps_cosine(1.5, -1.0, 1.0)
        with pytest.raises(ValueError):
            sigma_eps_cosine(1.5, 1.0, 0.0)

    @pytest.mark.parametrize("k,expect", list(zip([0, 1, 2, 5, 8], SIGMA_W_2_1_1)))
    def test_sigma_w_frozen(self, k, expect):
        assert sigma_W_quadratic(2.0, 1.0, 1.0, k) == pytest.approx(expect, abs=1e-8)

    def test_sigma_w_stable_frozen(self):
        assert sigma_W_quadratic(1.5, 1.0, 1.0, 0) == pytest.approx(0.7606103577, abs=1e-8)

    def test_sigma_w_stabilizes_in_k(self):
        vals = [sigma_W_quadratic(2.0, 1.0, 1.0, k) for k in (0, 1, 2, 5, 8)]
        diffs = np.diff(vals)
        assert (diffs > 0).all()
        assert abs(vals[-1] - vals[-2]) / vals[-1] < 1e-4

    def test_sigma_w_rejects_bad_args(self):
        with pytest.raises(ValueError):
            sigma_W_quadratic(2.0, 1.0, 1.0, -1)
        with pytest.raises(ValueError):
            sigma_W_quadratic(2.5, 1.0, 1.0, 0)


class TestZeroNoise:
    def test_cosine_reproduces_kernel(self):
        a, h, n = 1.3, 0.1, 200
        path = simulate_cosine(a, 2.0, h, n, v0_pair=(1.0, math.cos(a * h)), zero_noise=True)
        t = h * np.arange(n)
        assert np.allclose(path.values, np.cos(a * t), atol=1e-9)

    def test_quadratic_reproduces_kernel(self):
        a, h, n = 0.8, 0.2, 60
        path = simulate_quadratic(a, 2.0, h, n, v0=1.0, zero_noise=True)
        t = h * np.arange(n)
        assert np.allclose(path.values, np.exp(-a * t * t), rtol=1e-12)

    def test_ou_reproduces_kernel(self):
        theta, h, n = 0.9, 0.25, 80
        path = simulate_ou(theta, BrownianStd(), h, n, v0=2.0, zero_noise=True)
        t = h * np.arange(n)
        assert np.allclose(path.values, 2.0 * np.exp(-theta * t), rtol=1e-12)

    def test_general_reproduces_any_kernel(self):
        for spec in (Exponential(1.1), Cosine(2.0), QuadraticGaussian(0.6)):
            path = simulate_general(spec, BrownianStd(), 0.3, 15, v0=1.5, zero_noise=True)
            t = 0.3 * np.arange(15)
            assert np.allclose(path.values, 1.5 * eval_kernel(spec, t), rtol=1e-12)


class TestDeterminism:
    def test_same_stream_same_path(self):
        p1 = simulate_cosine(2.0, 1.5, 0.1, 50, rng=substream(7, "sim"))
        p2 = simulate_cosine(2.0, 1.5, 0.1, 50, rng=substream(7, "sim"))
        assert np.array_equal(p1.values, p2.values)

    def test_different_index_different_path(self):
        p1 = simulate_cosine(2.0, 1.5, 0.1, 50, rng=substream(7, "sim", 0))
        p2 = simulate_cosine(2.0, 1.5, 0.1, 50, rng=substream(7, "sim", 1))
        assert not np.array_equal(p1.values, p2.values)

    def test_stable_init_deterministic(self):
        p1 = simulate_cosine(2.0, 1.5, 0.1, 10, rng=substream(3, "s"), stable_init=True)
        p2 = simulate_cosine(2.0, 1.5, 0.1, 10, rng=substream(3, "s"), stable_init=True)
        assert np.array_equal(p1.values, p2.values)
        assert np.isfinite(p1.values).all()


class TestCosineRecursion:
    def test_residuals_match_noise_law(self):
        # alpha = 2: residuals are iid Gaussian with sd sigma_eps
        a, h, n = 1.0, 0.5, 6000
        path = simulate_cosine(a, 2.0, h, n, rng=substream(11, "resid"))
        v = path.values
        eps = v[2:] - 2 * math.cos(a * h) * v[1:-1] + v[:-2]
        sd = sigma_eps_cosine(2.0, a, h)
        assert eps.std(ddof=1) == pytest.approx(sd, rel=0.05)
        assert abs(eps.mean()) < 4 * sd / math.sqrt(n - 2)

    def test_requires_rng(self):
        with pytest.raises(ValueError):
            simulate_cosine(1.0, 1.5, 0.1, 10)

    def test_rejects_short_path(self):
        with pytest.raises(ValueError):
            simulate_cosine(1.0, 1.5, 0.1, 1, zero_noise=True)


class TestOu:
    def test_stationary_variance_gaussian(self):
        # Var V = 1 / (2 theta) under standard Brownian noise
        theta, h, n = 1.0, 0.1, 30000
        path = simulate_ou(theta, BrownianStd(), h, n, v0=0.0, rng=substream(5, "ou"))
        v = path.values[2000:]
        assert v.var(ddof=1) == pytest.approx(1.0 / (2 * theta), rel=0.1)

    def test_poisson_mean_level(self):
        # stationary mean lam / theta
        theta, lam = 1.0, 2.0
        path = ou_poisson_exact(theta, lam, 0.1, 40000, v0=0.0, rng=substream(9, "oup"))
        assert path.values[5000:].mean() == pytest.approx(lam / theta, rel=0.1)

    def test_poisson_path_decays_between_jumps(self):
        theta, h = 0.7, 0.05
        path = ou_poisson_exact(theta, 1.0, h, 500, v0=1.0, rng=substream(2, "oup"))
        v = path.values
        # unit positive jumps: each step is at least the pure decay
        assert (v[1:] >= math.exp(-theta * h) * v[:-1] - 1e-12).all()

    def test_rejects_bad_theta(self):
        with pytest.raises(ValueError):
            simulate_ou(0.0, BrownianStd(), 0.1, 10, zero_noise=True)


class TestGeneralIntegrator:
    def test_poisson_couples_with_event_driven(self):
        # same substream, same event times: the integrator approaches the
        # exact construction as the refinement grows
        theta, lam, h, n = 1.0, 3.0, 0.2, 40
        exact = ou_poisson_exact(theta, lam, h, n, v0=1.0, rng=substream(13, "couple"))
        approx = simulate_general(
            Exponential(theta),
            PoissonUnitJump(lam),
            h,
            n,
            v0=1.0,
            rng=substream(13, "couple"),
            substeps=200,
        )
        assert np.max(np.abs(exact.values - approx.values)) < 0.05

    def test_gaussian_variance_growth_cosine(self):
        # Var V(t) = int_0^t cos^2(a s) ds for v0 = 0 under Brownian noise
        a, h = 1.0, 0.5
        t = 2.0
        k = int(t / h)
        vals = []
        for i in range(400):
            p = simulate_general(
                Cosine(a), BrownianStd(), h, k + 1, rng=substream(17, "var", i), substeps=40
            )
            vals.append(p.values[k])
        target = t / 2 + math.sin(2 * a * t) / (4 * a)
        assert np.var(vals, ddof=1) == pytest.approx(target, rel=0.2)

    def test_stable_noise_runs(self):
        p = simulate_general(
            Cosine(1.0), SymmetricStable(1.5), 0.2, 20, rng=substream(1, "gs"), substeps=20
        )
        assert np.isfinite(p.values).all()

    def test_rejects_bad_substeps(self):
        with pytest.raises(ValueError):
            simulate_general(Cosine(1.0), BrownianStd(), 0.1, 10, substeps=0, zero_noise=True)


class TestSpecs:
    def test_stable_noise_index_domain(self):
        with pytest.raises(ValueError):
            SymmetricStable(1.0)
        with pytest.raises(ValueError):
            SymmetricStable(2.1)
        assert SymmetricStable(2.0).alpha == 2.0

    def test_poisson_intensity_domain(self):
        with pytest.raises(ValueError):
            PoissonUnitJump(0.0)

    def test_path_validation(self):
        with pytest.raises(ValueError):
            Path(0.0, np.zeros(5))
        with pytest.raises(ValueError):
            Path(0.1, np.zeros(1))
        p = Path(0.5, np.arange(4, dtype=float))
        assert np.allclose(p.times, [0.0, 0.5, 1.0, 1.5])
