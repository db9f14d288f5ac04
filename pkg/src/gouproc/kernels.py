"""Memory kernel families for GOU-type processes.

A memory kernel rho(.) with rho(0) = 1 weights how past noise increments
persist in V(t) = V0 rho(t) + int_0^t rho(t-s) dL(s).  Four closed-form
families are provided:

* ``Exponential(theta)`` -- rho(t) = exp(-theta t), the classical OU
  kernel, solving rho' + theta rho = 0.
* ``Cosine(a)`` -- rho(t) = cos(a t), solving rho'' + a^2 rho = 0.
* ``QuadraticGaussian(a)`` -- rho(t) = exp(-a t^2), solving
  rho'' + 2a(1 - 2a t^2) rho = 0.
* ``Airy(n_terms)`` -- the power-series solution of rho'' = t rho with
  rho(0) = 1, rho'(0) = 0:  rho(t) = 1 + sum_k t^{3k} / ((2*3)(5*6)...
  ((3k-1)(3k))).  The series is evaluated on t in [0, 5], where a short
  partial sum converges cleanly; n_terms caps the number of series terms
  beyond the constant.

All kernels are frozen dataclasses usable as callables on scalars or
arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Exponential",
    "Cosine",
    "QuadraticGaussian",
    "Airy",
    "KernelSpec",
    "eval_kernel",
    "kernel_ode_residual",
    "airy_tail_fraction",
]

_AIRY_T_MAX = 5.0


@dataclass(frozen=True)
class Exponential:
    theta: float

    def __post_init__(self):
        if self.theta <= 0:
            raise ValueError("theta must be positive")

    def __call__(self, t):
        return np.exp(-self.theta * np.asarray(t, dtype=float))


@dataclass(frozen=True)
class Cosine:
    a: float

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError("a must be positive")

    def __call__(self, t):
        return np.cos(self.a * np.asarray(t, dtype=float))


@dataclass(frozen=True)
class QuadraticGaussian:
    a: float

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError("a must be positive")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return np.exp(-self.a * t * t)


def _airy_coefficients(n_terms: int) -> np.ndarray:
    # c_k = 1 / ((2*3)(5*6)...((3k-1)(3k))), coefficient of t^{3k}
    coeffs = np.empty(n_terms)
    c = 1.0
    for k in range(1, n_terms + 1):
        c /= (3 * k - 1) * (3 * k)
        coeffs[k - 1] = c
    return coeffs


@dataclass(frozen=True)
class Airy:
    """Truncated series kernel; ``n_terms`` terms beyond the constant 1.

    The default keeps every term down to the 1e-14 relative level on the
    supported domain t in [0, 5].
    """

    n_terms: int = 40

    def __post_init__(self):
        if self.n_terms < 1:
            raise ValueError("n_terms must be >= 1")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t > _AIRY_T_MAX):
            raise ValueError(f"Airy kernel is evaluated on t <= {_AIRY_T_MAX} only")
        coeffs = _airy_coefficients(self.n_terms)
        out = np.ones_like(t)
        cube = t**3
        power = np.ones_like(t)
        for c in coeffs:
            power = power * cube
            out = out + c * power
        return out


KernelSpec = Exponential | Cosine | QuadraticGaussian | Airy


def eval_kernel(spec: KernelSpec, t):
    """Evaluate rho(t); t must be nonnegative (scalar or array)."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be nonnegative")
    out = spec(t)
    return float(out) if out.ndim == 0 else out


def _curvature_term(spec: KernelSpec, t: float):
    """f with rho'' + f(t) rho = 0 for the second-order families."""
    if isinstance(spec, Cosine):
        return spec.a**2
    if isinstance(spec, QuadraticGaussian):
        return 2 * spec.a * (1 - 2 * spec.a * t * t)
    if isinstance(spec, Airy):
        # rho'' = t rho, i.e. f(t) = -t.
        return -t
    raise ValueError(
        "kernel_ode_residual applies to the second-order families "
        "(Cosine, QuadraticGaussian, Airy); Exponential is first order"
    )


def kernel_ode_residual(spec: KernelSpec, t: float, step: float) -> float:
    """Central-difference residual of the kernel's second-order ODE.

    Returns rho''(t) + f(t) rho(t) estimated with the given step; the
    result tends to 0 as step shrinks (up to roundoff) when the kernel
    solves its defining equation.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    if step <= 0:
        raise ValueError("step must be positive")
    f = _curvature_term(spec, t)
    rp, r0, rm = (eval_kernel(spec, t + step), eval_kernel(spec, t), eval_kernel(spec, t - step))
    second = (rp - 2.0 * r0 + rm) / step**2
    return second + f * r0


def airy_tail_fraction(n_terms: int, t: float = _AIRY_T_MAX) -> float:
    """Size of the last retained Airy term at t, relative to the sum.

    The default ``Airy.n_terms`` keeps this below 1e-14 on the supported
    domain, which is the truncation rule the default encodes.
    """
    coeffs = _airy_coefficients(n_terms)
    return coeffs[-1] * t ** (3 * n_terms) / float(Airy(n_terms)(t))
