"""Dedekind eta: log eta by its Lambert-type series and eta^4 by the product."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from . import kernels

Y_MIN = 0.05


def _terms_needed(y_min: float, tol: float, max_terms: int) -> int:
    rate = 2 * math.pi * y_min
    n = int(math.ceil((math.log(10.0 / tol) + 5.0) / rate)) + 2
    if n > max_terms:
        raise ValueError(f"Im z = {y_min:.3g} needs {n} terms > max_terms={max_terms}")
    return n


@lru_cache(maxsize=8)
def sigma_table(nmax: int, power: float = -1.0) -> np.ndarray:
    return kernels.divisor_power_table(nmax, complex(power)).real.copy()


def log_eta(z, tol: float = 1e-15, y_min: float = Y_MIN, max_terms: int = 5000):
    """pi i z / 12 - sum_n sigma_{-1}(n) e^{2 pi i n z}; scalar or array ``z``."""
    z = np.asarray(z, dtype=complex)
    y = float(np.min(z.imag)) if z.size else 1.0
    if y <= y_min:
        raise ValueError(f"log_eta needs Im z > {y_min}, got {y}")
    N = _terms_needed(y, tol, max_terms)
    sig = sigma_table(N)
    q = np.exp(2j * math.pi * z)
    series = np.polyval(sig[::-1], q)  # sum_{n=0}^N sig[n] q^n with sig[0] = 0
    out = 1j * math.pi * z / 12 - series
    return complex(out) if out.ndim == 0 else out


def log_eta_product(z, nmax: int = 400) -> complex:
    """Independent evaluation as pi i z/12 + sum log(1 - q^n)."""
    q = np.exp(2j * math.pi * complex(z))
    n = np.arange(1, nmax + 1)
    return complex(1j * math.pi * z / 12 + np.sum(np.log1p(-(q**n))))


@lru_cache(maxsize=8)
def eta_power_series(power: int = 4, N: int = 64) -> tuple[int, ...]:
    """Coefficients c_m with eta^power = e^{pi i power z/12} sum_m c_m q^m."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return tuple(int(c) for c in kernels.eta_product_coefficients(power, N))


def eta4(z, tol: float = 1e-16, y_min: float = Y_MIN):
    """eta(z)^4 = q6 * sum_m c_m q^m with q6 = e^{pi i z/3}."""
    z = np.asarray(z, dtype=complex)
    y = float(np.min(z.imag))
    if y <= y_min:
        raise ValueError(f"eta4 needs Im z > {y_min}, got {y}")
    N = _terms_needed(y, tol, 10**5)
    c = np.array(eta_power_series(4, N), dtype=float)
    q = np.exp(2j * math.pi * z)
    out = np.exp(1j * math.pi * z / 3) * np.polyval(c[::-1], q)
    return complex(out) if out.ndim == 0 else out


def eta4_reduced(z, tol: float = 1e-16, y_floor: float = 1e-8):
    """eta^4 at any height, via eta^4(z + 1) = e^{pi i/3} eta^4(z), eta^4(-1/z) = -z^2 eta^4(z)."""
    z = np.asarray(z, dtype=complex)
    if z.size and float(np.min(z.imag)) < y_floor:
        raise ValueError(f"eta4_reduced needs Im z >= {y_floor}")
    w = np.atleast_1d(z).copy()
    factor = np.ones_like(w)
    for _ in range(500):
        n = np.round(w.real)
        w = w - n
        factor = factor * np.exp(1j * math.pi * n / 3)
        inside = np.abs(w) < 1 - 1e-14
        if not np.any(inside):
            break
        factor[inside] = -factor[inside] / w[inside] ** 2
        w[inside] = -1 / w[inside]
    else:  # pragma: no cover
        raise ArithmeticError("fundamental-domain reduction did not terminate")
    out = factor * eta4(w, tol, y_min=0.5)
    return complex(out[0]) if z.ndim == 0 else out.reshape(z.shape)
