"""Whittaker W_{kappa,s}(t) from its integral representations.

Two routes are implemented:

* the ray integral, valid when Re(s - kappa + 1/2) > 0,

      W = e^{-t/2} t^kappa / Gamma(s - kappa + 1/2)
          * int_0^{inf e^{i phi}} e^{-x} x^{s-kappa-1/2} (1 + x/t)^{s+kappa-1/2} dx

* the loop integral around 0 (two rays plus a circle of radius delta), valid
  off the poles of Gamma(kappa + 1/2 - s).

``t`` may have argument in (-pi/2, 3pi/2); the ray is tilted anti-clockwise
when arg t > pi/2 so that the branch point x = -t stays off the path.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special as sp

from .quadrature import cauchy_derivative, exp_sinh_grid, gauss_legendre


def _arg_t(t: np.ndarray) -> np.ndarray:
    a = np.angle(t)
    return np.where(a <= -0.5 * math.pi, a + 2 * math.pi, a)


def _tilt(arg_t: np.ndarray) -> np.ndarray:
    return np.where(arg_t > 0.5 * math.pi, 0.5 * (arg_t - 0.5 * math.pi), 0.0)


def _log1p_ratio(x, t):
    return np.log1p(x / t)


def _ray(kappa, s, t, arg_t, phi, h):
    a = s - kappa - 0.5
    b = s + kappa - 0.5
    log_u, log_jac = exp_sinh_grid(h)
    e = np.exp(1j * phi)[..., None]
    u = np.exp(log_u)
    x = u * e
    expo = (-x + a[..., None] * log_u + b[..., None] * _log1p_ratio(x, t[..., None]) + log_jac)
    integral = np.sum(np.exp(expo), axis=-1)
    log_t = np.log(np.abs(t)) + 1j * arg_t
    pref = np.exp(-t / 2 + kappa * log_t + 1j * phi * (a + 1)) * sp.rgamma(a + 1)
    return pref * integral


def _loop(kappa, s, t, arg_t, phi, h, circle_nodes=96):
    a = s - kappa - 0.5
    b = s + kappa - 0.5
    delta = np.minimum(0.5, 0.5 * np.abs(t))
    log_v, log_jac = exp_sinh_grid(h)
    e = np.exp(1j * phi)[..., None]
    u = delta[..., None] + np.exp(log_v)
    x = u * e
    expo = -x + a[..., None] * np.log(u) + b[..., None] * _log1p_ratio(x, t[..., None]) + log_jac
    rays = 2j * np.sin(math.pi * a) * np.exp(1j * phi * (1 + a)) * np.sum(np.exp(expo), axis=-1)
    gx, gw = gauss_legendre(circle_nodes)
    psi = phi[..., None] + math.pi * (gx + 1.0)  # psi in [phi, phi + 2 pi]
    xc = delta[..., None] * np.exp(1j * psi)
    integrand = (np.exp(-xc) * delta[..., None] ** a[..., None] * np.exp(1j * a[..., None] * (psi - math.pi))
                 * np.exp(b[..., None] * _log1p_ratio(xc, t[..., None])) * 1j * xc)
    circle = np.sum(integrand * (math.pi * gw), axis=-1)
    log_t = np.log(np.abs(t)) + 1j * arg_t
    pref = -sp.gamma(-a) / (2j * math.pi) * np.exp(-t / 2 + kappa * log_t)
    return pref * (rays + circle)


def whittaker_W(kappa, s, t, method: str = "auto", phi=None, h: float = 1.0 / 32):
    """W_{kappa,s}(t), broadcasting over array arguments.

    ``method``: ``"auto"`` uses the ray integral where it converges and the
    loop otherwise; ``"ray"`` / ``"loop"`` force one route.
    """
    kappa, s, t = np.broadcast_arrays(np.asarray(kappa, dtype=complex),
                                      np.asarray(s, dtype=complex),
                                      np.asarray(t, dtype=complex))
    if np.any(t == 0):
        raise ValueError("W_{kappa,s}(t) needs t != 0")
    arg_t = _arg_t(t)
    if np.any(arg_t >= 1.5 * math.pi):
        raise ValueError("arg t must lie in (-pi/2, 3pi/2)")
    phi = _tilt(arg_t) if phi is None else np.broadcast_to(np.asarray(phi, dtype=float), t.shape)
    a = s - kappa - 0.5
    ray_ok = (a + 1).real > 0
    if method == "ray":
        if not np.all(ray_ok):
            raise ValueError("ray integral needs Re(s - kappa + 1/2) > 0")
        use_ray = np.ones(t.shape, dtype=bool)
    elif method == "loop":
        bad = np.isclose(a, np.round(a.real)) & (np.round(a.real) >= 0)
        if np.any(bad):
            raise ValueError("loop integral hits a pole of Gamma(kappa + 1/2 - s); use the ray route")
        use_ray = np.zeros(t.shape, dtype=bool)
    elif method == "auto":
        use_ray = ray_ok
    else:
        raise ValueError(f"unknown method {method!r}")
    out = np.empty(t.shape, dtype=complex)
    if np.any(use_ray):
        m = use_ray
        out[m] = _ray(kappa[m], s[m], t[m], arg_t[m], phi[m], h)
    if np.any(~use_ray):
        m = ~use_ray
        out[m] = _loop(kappa[m], s[m], t[m], arg_t[m], phi[m], h)
    return complex(out) if out.ndim == 0 else out


def whittaker_dW_ds(kappa, s, t, order: int = 1, radius: float = 0.25) -> complex:
    """d^order/ds^order W_{kappa,s}(t) by a Cauchy contour in s."""
    return cauchy_derivative(lambda ss: whittaker_W(kappa, ss, t), complex(s), order,
                             radius=radius, nodes=32, vectorized=True)
