"""Dependence structure: autocovariance and codifference.

For Gaussian noise the autocovariance of V(t) = V0 rho(t) +
int_0^t rho(t-s) dB(s) (V0 centered, variance sigma0^2, independent
of B) is

    gamma(t, t+h) = sigma0^2 rho(t) rho(t+h) + int_0^t rho(u) rho(u+h) du.

For stable noise second moments do not exist; the codifference

    tau(s; k, t) = ln E e^{is(V(t+k) - V(t))} - ln E e^{isV(t+k)}
                   - ln E e^{-isV(t)}

replaces covariance.  For the Cosine kernel with V0 = 0 it reduces to
integrals of |cos|^alpha terms, computed here by quadrature; at
alpha = 2, s = 1 it equals twice the covariance.

The empirical codifference estimator replaces each characteristic
function by its sample average and carries a sqrt((n-k)/n) finite-sample
factor.  Lags are in sample steps (time lag k h).
"""

from __future__ import annotations

import cmath
import math

import numpy as np
from scipy.integrate import quad

from .errors import DegeneracyError
from .kernels import KernelSpec, eval_kernel

__all__ = [
    "acf_theoretical",
    "variance_theoretical",
    "codiff_theoretical_cosine",
    "codiff_empirical",
    "codiff_empirical_complex",
]

_QUAD_OPTS = dict(limit=300, epsabs=1e-12, epsrel=1e-12)


def acf_theoretical(kernel: KernelSpec, sigma0_sq: float, t: float, h: float) -> float:
    """Autocovariance gamma(t, t+h) under Gaussian noise."""
    if sigma0_sq < 0:
        raise ValueError("sigma0_sq must be nonnegative")
    if t < 0 or h < 0:
        raise ValueError("t and h must be nonnegative")
    head = sigma0_sq * float(eval_kernel(kernel, t)) * float(eval_kernel(kernel, t + h))
    if t == 0:
        return head
    v, _ = quad(
        lambda u: float(eval_kernel(kernel, u)) * float(eval_kernel(kernel, u + h)),
        0.0,
        t,
        **_QUAD_OPTS,
    )
    return head + v


def variance_theoretical(kernel: KernelSpec, sigma0_sq: float, t: float) -> float:
    """Var V(t) under Gaussian noise: sigma0^2 rho(t)^2 + int_0^t rho(t-s)^2 ds."""
    if sigma0_sq < 0:
        raise ValueError("sigma0_sq must be nonnegative")
    if t < 0:
        raise ValueError("t must be nonnegative")
    rho_t = float(eval_kernel(kernel, t))
    head = sigma0_sq * rho_t * rho_t
    if t == 0:
        return head
    v, _ = quad(lambda s: float(eval_kernel(kernel, t - s)) ** 2, 0.0, t, **_QUAD_OPTS)
    return head + v


def codiff_theoretical_cosine(a: float, alpha: float, s: float, k: float, t: float) -> float:
    """Codifference tau(s; k, t) of the Cosine process with V0 = 0.

    tau = -|s|^a [ int_0^t |rho(t+k-u) - rho(t-u)|^a du
                   + int_t^{t+k} |rho(t+k-u)|^a du ]
          + |s|^a int_0^{t+k} |rho(t+k-u)|^a du
          + |s|^a int_0^t |rho(t-u)|^a du,         rho(x) = cos(a x).

    ``k`` and ``t`` are time quantities (the recursion lag k corresponds
    to time lag k h).
    """
    if not (1.0 < alpha <= 2.0):
        raise ValueError("alpha must lie in (1, 2]")
    if a <= 0 or k < 0 or t < 0:
        raise ValueError("a must be positive; k and t nonnegative")
    sa = abs(s) ** alpha

    def rho(x):
        return math.cos(a * x)

    d1, _ = quad(lambda u: abs(rho(t + k - u) - rho(t - u)) ** alpha, 0.0, t, **_QUAD_OPTS)
    d2, _ = quad(lambda u: abs(rho(t + k - u)) ** alpha, t, t + k, **_QUAD_OPTS)
    p1, _ = quad(lambda u: abs(rho(t + k - u)) ** alpha, 0.0, t + k, **_QUAD_OPTS)
    p2, _ = quad(lambda u: abs(rho(t - u)) ** alpha, 0.0, t, **_QUAD_OPTS)
    return sa * (p1 + p2 - d1 - d2)


def codiff_empirical_complex(series, s: float, k: int) -> complex:
    """Empirical codifference with both parts, before taking the real part.

    tau_hat(s; k) = sqrt((n-k)/n) [ ln m1 - ln m2 - ln m3 ],
    m1 = mean exp(is (V_{j+k} - V_j)), m2 = mean exp(is V_{j+k}),
    m3 = mean exp(-is V_j), principal-branch logarithms.
    """
    v = np.asarray(series, dtype=float)
    n = v.size
    if not 0 <= k < n:
        raise ValueError("lag k must satisfy 0 <= k < len(series)")
    lead, lag = v[k:], v[: n - k]
    m1 = np.mean(np.exp(1j * s * (lead - lag)))
    m2 = np.mean(np.exp(1j * s * lead))
    m3 = np.mean(np.exp(-1j * s * lag))
    for name, m in (("m1", m1), ("m2", m2), ("m3", m3)):
        if abs(m) < 1e-12:
            raise DegeneracyError(f"characteristic-function mean {name} has modulus < 1e-12")
    scale = math.sqrt((n - k) / n)
    return scale * (cmath.log(m1) - cmath.log(m2) - cmath.log(m3))


def codiff_empirical(series, s: float, k: int) -> float:
    """Real part of the empirical codifference (the reported value)."""
    return codiff_empirical_complex(series, s, k).real
