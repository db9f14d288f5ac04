"""Path simulation for GOU-type processes.

Exact discrete recursions are provided for the Cosine and Quadratic OU
kernels, an exact AR(1) step for the Exponential kernel, and a
Riemann-sum integrator for arbitrary kernel/noise pairs.

Noise-scale conventions
-----------------------
Two normalizations of "standard" noise coexist in the underlying theory
and cannot be reconciled at alpha = 2:

* The Gaussian results (variance, autocovariance, stationarity) are
  stated for standard Brownian motion, Var L(t) = t.
* The stable machinery uses the standard symmetric alpha-stable motion
  with cf exp(-t |theta|^alpha), whose alpha = 2 member has
  Var L(t) = 2t.

This module follows the Brownian convention for Gaussian noise: every
draw whose nominal law is "S_2(scale)" is generated as a Gaussian with
standard deviation equal to ``scale``.  That choice makes the OU
stationary variance equal 1/(2 theta), keeps ``simulate_general`` with
``BrownianStd`` consistent with the autocovariance formulas, and makes
the alpha = 2 Cosine recursion agree in distribution with the general
integrator.  For alpha < 2 draws use the stable law S_alpha(scale)
exactly.  Consequence (documented, deliberate): fitting the stable
likelihood, in which S_2(sigma) has variance 2 sigma^2, to alpha = 2
simulated data estimates sigma_eps / sqrt(2), not sigma_eps.  No
quantity with alpha < 2 is affected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .kernels import Cosine, Exponential, KernelSpec, QuadraticGaussian, eval_kernel
from .stable import StableParams, sample_stable
from .streams import poisson_event_times

__all__ = [
    "BrownianStd",
    "SymmetricStable",
    "PoissonUnitJump",
    "NoiseSpec",
    "Path",
    "sigma_eps_cosine",
    "simulate_cosine",
    "sigma_W_quadratic",
    "simulate_quadratic",
    "simulate_ou",
    "ou_poisson_exact",
    "simulate_general",
]


@dataclass(frozen=True)
class BrownianStd:
    """Standard Brownian noise, Var L(t) = t."""


@dataclass(frozen=True)
class SymmetricStable:
    """Symmetric alpha-stable noise with stability index in (1, 2].

    The process-level results require alpha > 1; the distribution
    toolkit itself supports all alpha.
    """

    alpha: float

    def __post_init__(self):
        if not (1.0 < self.alpha <= 2.0):
            raise ValueError("noise stability index must lie in (1, 2]")


@dataclass(frozen=True)
class PoissonUnitJump:
    """Poisson process with intensity lam and unit jumps (measure lam * delta_1)."""

    lam: float

    def __post_init__(self):
        if self.lam <= 0:
            raise ValueError("lam must be positive")


NoiseSpec = BrownianStd | SymmetricStable | PoissonUnitJump


@dataclass
class Path:
    """A simulated trajectory on the uniform grid t = k h."""

    h: float
    values: np.ndarray
    kernel: object = None
    noise: object = None
    v0: object = None
    seed: object = None

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.h <= 0:
            raise ValueError("h must be positive")
        if self.values.size < 2:
            raise ValueError("a path needs at least two values")

    @property
    def times(self) -> np.ndarray:
        return self.h * np.arange(self.values.size)


def _draw(alpha: float, scale: float, size: int, rng: np.random.Generator) -> np.ndarray:
    """Noise draw under the module convention (see module docstring)."""
    if alpha == 2.0:
        return rng.normal(0.0, scale, size)
    return sample_stable(StableParams(alpha, scale), rng, size)


def _abs_cos_pow_integral(alpha: float, a: float, lo: float, hi: float) -> float:
    """int_lo^hi |cos(a s)|^alpha ds with subdivision at the cos zeros."""
    zeros = []
    m = math.floor((a * lo / math.pi) - 0.5) + 1
    while (m + 0.5) * math.pi / a < hi:
        z = (m + 0.5) * math.pi / a
        if z > lo:
            zeros.append(z)
        m += 1
    pts = [lo, *zeros, hi]
    total = 0.0
    for x0, x1 in zip(pts[:-1], pts[1:]):
        v, _ = quad(
            lambda s: abs(math.cos(a * s)) ** alpha, x0, x1, epsabs=1e-13, epsrel=1e-13
        )
        total += v
    return total


def sigma_eps_cosine(alpha: float, a: float, h: float) -> float:
    """Scale of the Cosine-recursion noise: (2 int_0^h |cos(a s)|^alpha ds)^(1/alpha)."""
    if not (0.0 < alpha <= 2.0):
        raise ValueError("alpha must lie in (0, 2]")
    if a <= 0 or h <= 0:
        raise ValueError("a and h must be positive")
    return (2.0 * _abs_cos_pow_integral(alpha, a, 0.0, h)) ** (1.0 / alpha)


def simulate_cosine(
    a: float,
    alpha: float,
    h: float,
    n: int,
    v0_pair: tuple[float, float] = (0.0, 0.0),
    rng: np.random.Generator | None = None,
    zero_noise: bool = False,
    stable_init: bool = False,
) -> Path:
    """Cosine-kernel path by the recursion
    V((k+1)h) = 2 cos(a h) V(kh) - V((k-1)h) + eps_k,
    eps_k i.i.d. with scale ``sigma_eps_cosine(alpha, a, h)``.

    ``zero_noise`` drops the noise term (test hook: the recursion then
    reproduces cos(a k h) exactly from v0_pair = (1, cos(a h))).
    ``stable_init`` replaces v0_pair with two standard S_alpha(1) draws.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if not (0.0 < alpha <= 2.0):
        raise ValueError("alpha must lie in (0, 2]")
    if rng is None and not zero_noise:
        raise ValueError("rng is required unless zero_noise is set")
    v = np.empty(n)
    if stable_init:
        v[0], v[1] = sample_stable(StableParams(alpha, 1.0), rng, 2)
    else:
        v[0], v[1] = v0_pair
    if n == 2:
        return Path(h, v, kernel=Cosine(a), noise=("stable", alpha), v0=tuple(v))
    c = 2.0 * math.cos(a * h)
    if zero_noise:
        eps = np.zeros(n - 2)
    else:
        eps = _draw(alpha, sigma_eps_cosine(alpha, a, h), n - 2, rng)
    for k in range(1, n - 1):
        v[k + 1] = c * v[k] - v[k - 1] + eps[k - 1]
    return Path(h, v, kernel=Cosine(a), noise=("stable", alpha), v0=tuple(v[:2]))


def sigma_W_quadratic(alpha: float, a: float, h: float, k: int) -> float:
    """Scale of the Quadratic-recursion noise at step k.

    sigma_W^alpha = int_0^{kh} exp(-alpha a ((kh-s)^2 + (2k+1) h^2))
                    (exp(2 a s h) - 1)^alpha ds
                  + int_{kh}^{(k+1)h} exp(-alpha a ((kh-s)^2 - 2 s h
                    + (2k+1) h^2)) ds
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if not (0.0 < alpha <= 2.0) or a <= 0 or h <= 0:
        raise ValueError("invalid parameters")
    total = 0.0
    if k >= 1:

        def first(s):
            x = 2.0 * a * s * h
            # log(e^x - 1), stable for both large and small x
            log_em1 = x + math.log1p(-math.exp(-x)) if x > 1e-8 else math.log(math.expm1(x))
            return math.exp(
                alpha * log_em1 - alpha * a * ((k * h - s) ** 2 + (2 * k + 1) * h * h)
            )

        v, _ = quad(first, 0.0, k * h, limit=200, epsabs=1e-13, epsrel=1e-13)
        total += v

    def second(s):
        return math.exp(-alpha * a * ((k * h - s) ** 2 - 2 * s * h + (2 * k + 1) * h * h))

    v, _ = quad(second, k * h, (k + 1) * h, epsabs=1e-13, epsrel=1e-13)
    total += v
    return total ** (1.0 / alpha)


def simulate_quadratic(
    a: float,
    alpha: float,
    h: float,
    n: int,
    v0: float = 0.0,
    rng: np.random.Generator | None = None,
    zero_noise: bool = False,
) -> Path:
    """Quadratic-kernel path by the recursion
    V((k+1)h) = exp(-a (2k+1) h^2) V(kh) + W_k,
    W_k with per-step scale ``sigma_W_quadratic(alpha, a, h, k)``.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if rng is None and not zero_noise:
        raise ValueError("rng is required unless zero_noise is set")
    v = np.empty(n)
    v[0] = v0
    for k in range(n - 1):
        decay = math.exp(-a * (2 * k + 1) * h * h)
        w = 0.0
        if not zero_noise:
            w = float(_draw(alpha, sigma_W_quadratic(alpha, a, h, k), 1, rng)[0])
        v[k + 1] = decay * v[k] + w
    return Path(h, v, kernel=QuadraticGaussian(a), noise=("stable", alpha), v0=v0)


def ou_poisson_exact(
    theta: float,
    lam: float,
    h: float,
    n: int,
    v0: float,
    rng: np.random.Generator,
) -> Path:
    """Event-driven exact OU path under unit-jump Poisson noise:
    V(t) = v0 exp(-theta t) + sum_{T_i <= t} exp(-theta (t - T_i)).
    """
    t_grid = h * np.arange(n)
    times = poisson_event_times(lam, t_grid[-1], rng)
    v = v0 * np.exp(-theta * t_grid)
    for ti in times:
        mask = t_grid >= ti
        v[mask] += np.exp(-theta * (t_grid[mask] - ti))
    return Path(h, v, kernel=Exponential(theta), noise=PoissonUnitJump(lam), v0=v0)


def simulate_ou(
    theta: float,
    noise: NoiseSpec,
    h: float,
    n: int,
    v0: float = 0.0,
    rng: np.random.Generator | None = None,
    zero_noise: bool = False,
) -> Path:
    """Exponential-kernel path.

    Gaussian/stable noise uses the exact AR(1) step
    V((k+1)h) = exp(-theta h) V(kh) + xi_k with
    xi scale sigma_xi, sigma_xi^alpha = (1 - exp(-alpha theta h)) /
    (alpha theta); Poisson noise uses the event-driven exact
    construction.
    """
    if theta <= 0:
        raise ValueError("theta must be positive")
    if n < 2:
        raise ValueError("n must be >= 2")
    if zero_noise:
        v = v0 * np.exp(-theta * h * np.arange(n))
        return Path(h, v, kernel=Exponential(theta), noise=noise, v0=v0)
    if rng is None:
        raise ValueError("rng is required unless zero_noise is set")
    if isinstance(noise, PoissonUnitJump):
        return ou_poisson_exact(theta, noise.lam, h, n, v0, rng)
    alpha = 2.0 if isinstance(noise, BrownianStd) else noise.alpha
    sigma_xi = ((1.0 - math.exp(-alpha * theta * h)) / (alpha * theta)) ** (1.0 / alpha)
    decay = math.exp(-theta * h)
    xi = _draw(alpha, sigma_xi, n - 1, rng)
    v = np.empty(n)
    v[0] = v0
    for k in range(n - 1):
        v[k + 1] = decay * v[k] + xi[k]
    return Path(h, v, kernel=Exponential(theta), noise=noise, v0=v0)


def simulate_general(
    kernel: KernelSpec,
    noise: NoiseSpec,
    h: float,
    n: int,
    v0: float = 0.0,
    rng: np.random.Generator | None = None,
    substeps: int = 10,
    zero_noise: bool = False,
) -> Path:
    """Riemann-sum integrator for V(t) = v0 rho(t) + int_0^t rho(t-s) dL(s).

    The noise increments live on the refined grid of step h / substeps
    and are shared by every output time, so all V(kh) see one
    realization of L.  The kernel is evaluated at the left endpoint of
    each refined cell.  Poisson increments are binned event times drawn
    by ``poisson_event_times``, so a run with the same stream couples
    exactly with the event-driven construction.
    """
    if substeps < 1:
        raise ValueError("substeps must be >= 1")
    if n < 2:
        raise ValueError("n must be >= 2")
    t_grid = h * np.arange(n)
    if zero_noise:
        v = v0 * eval_kernel(kernel, t_grid)
        return Path(h, np.asarray(v, dtype=float), kernel=kernel, noise=noise, v0=v0)
    if rng is None:
        raise ValueError("rng is required unless zero_noise is set")
    delta = h / substeps
    m = (n - 1) * substeps
    s_grid = delta * np.arange(m)  # left endpoints
    if isinstance(noise, BrownianStd):
        inc = rng.normal(0.0, math.sqrt(delta), m)
    elif isinstance(noise, SymmetricStable):
        if noise.alpha == 2.0:
            inc = rng.normal(0.0, math.sqrt(delta), m)
        else:
            inc = sample_stable(
                StableParams(noise.alpha, delta ** (1.0 / noise.alpha)), rng, m
            )
    elif isinstance(noise, PoissonUnitJump):
        times = poisson_event_times(noise.lam, t_grid[-1], rng)
        inc = np.zeros(m)
        if times.size:
            idx = np.minimum((times / delta).astype(int), m - 1)
            np.add.at(inc, idx, 1.0)
    else:
        raise ValueError(f"unsupported noise: {noise!r}")
    v = np.empty(n)
    v[0] = v0 * float(eval_kernel(kernel, 0.0))
    for k in range(1, n):
        t = t_grid[k]
        j = k * substeps  # cells fully to the left of t
        w = eval_kernel(kernel, t - s_grid[:j])
        v[k] = v0 * float(eval_kernel(kernel, t)) + float(w @ inc[:j])
    return Path(h, v, kernel=kernel, noise=noise, v0=v0)
