"""Gamma, zeta, the completed zeta function, K-Bessel, 1F1 and Gamma(0, t)."""

from __future__ import annotations

import math
from functools import lru_cache

import mpmath
import numpy as np
from scipy import special as sp

from .quadrature import cauchy_taylor


class PoleError(ValueError):
    """Evaluation requested at (or numerically on top of) a pole."""


def gamma(z) -> complex:
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == round(z.real):
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    return complex(sp.gamma(z))


def rgamma(z) -> complex:
    return complex(sp.rgamma(complex(z)))


def riemann_zeta(s) -> complex:
    s = complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    return complex(mpmath.zeta(s))


def completed_zeta(u) -> complex:
    """Lambda(u) = pi^{-u/2} Gamma(u/2) zeta(u)."""
    u = complex(u)
    if u in (0, 1):
        raise PoleError(f"Lambda has a pole at u = {u.real:g}")
    return complex(mpmath.power(mpmath.pi, -u / 2) * mpmath.gamma(u / 2) * mpmath.zeta(u))


def inv_completed_zeta(u) -> complex:
    """1 / Lambda(u), finite (zero) at the poles u = 0, 1."""
    u = complex(u)
    if u == 0 or u == 1:
        return 0j
    return complex(mpmath.power(mpmath.pi, u / 2) * mpmath.rgamma(u / 2) / mpmath.zeta(u))


def besselK(s, x: float, h: float = 0.05) -> complex:
    """K_s(x) = int_0^inf e^{-x cosh u} cosh(s u) du (trapezoid, x > 0)."""
    x = float(x)
    if not x > 0:
        raise ValueError("besselK needs x > 0")
    s = complex(s)
    # truncate where the integrand is below 1e-18 of its size at 0
    U = 1.0
    while x * (math.cosh(U) - 1.0) - abs(s.real) * U < 45.0:
        U += 0.5
    u = np.arange(0.0, U + h, h)
    f = np.exp(-x * np.cosh(u)) * np.cosh(s * u)
    return complex(h * (np.sum(f) - 0.5 * f[0]))


def besselK_array(s, x: np.ndarray, h: float = 0.05) -> np.ndarray:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x <= 0):
        raise ValueError("besselK needs x > 0")
    s = complex(s)
    xmin = float(np.min(x))
    U = 1.0
    while xmin * (math.cosh(U) - 1.0) - abs(s.real) * U < 45.0:
        U += 0.5
    u = np.arange(0.0, U + h, h)
    f = np.exp(-np.outer(x, np.cosh(u))) * np.cosh(s * u)
    return h * (np.sum(f, axis=1) - 0.5 * f[:, 0])


def kummer1F1(a, b, z) -> complex:
    return complex(mpmath.hyp1f1(complex(a), complex(b), complex(z)))


def gamma0(t) -> complex:
    """Gamma(0, t) = E_1(t) for Re t > 0."""
    t = complex(t)
    if not t.real > 0:
        raise ValueError("Gamma(0, t) implemented for Re t > 0")
    return complex(sp.exp1(t))


_KINDS = {
    "besselK": besselK,
    "kummer1F1": kummer1F1,
    "gamma0": gamma0,
    "riemann_zeta": riemann_zeta,
    "gamma": gamma,
    "completed_zeta": completed_zeta,
}


def special_kit(kind: str, *args) -> complex:
    try:
        fn = _KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown special function {kind!r}") from None
    return fn(*args)


@lru_cache(maxsize=1)
def laurent_constants(radius: float = 0.25, nodes: int = 32) -> tuple[float, float]:
    """(a0, b1) with Lambda(1+h) = 1/h + a0 + O(h), Lambda(2+h) = pi/6 + b1 h + O(h^2)."""
    c_a = cauchy_taylor(lambda h: completed_zeta(1 + h) - 1 / h, 0.0, radius, nodes)
    c_b = cauchy_taylor(lambda h: completed_zeta(2 + h), 0.0, radius, nodes)
    return float(c_a[0].real), float(c_b[1].real)
