"""Quadrature rules and contour differentiation shared by the kernels."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class PrecisionConfig:
    target_tol: float = 1e-13
    max_terms: int = 2000
    quad_nodes: int = 32

    def __post_init__(self):
        if not self.target_tol > 0:
            raise ValueError("target_tol must be positive")
        if self.max_terms < 1 or self.quad_nodes < 2:
            raise ValueError("max_terms and quad_nodes must be positive")

    def halved(self) -> "PrecisionConfig":
        return PrecisionConfig(self.target_tol / 2, self.max_terms, self.quad_nodes)


DEFAULT = PrecisionConfig()


@lru_cache(maxsize=64)
def gauss_legendre(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def gl_nodes(a: float, b: float, n: int = 32, panels: int = 1):
    """Composite Gauss-Legendre nodes/weights on [a, b] (real or complex ends)."""
    x, w = gauss_legendre(n)
    edges = np.linspace(0.0, 1.0, panels + 1)
    nodes, weights = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        nodes.append(mid + half * x)
        weights.append(half * w)
    t = np.concatenate(nodes)
    wt = np.concatenate(weights)
    return a + (b - a) * t, (b - a) * wt


@lru_cache(maxsize=16)
def exp_sinh_grid(h: float = 1.0 / 32, lo: float = -7.0, hi: float = 4.0):
    """Nodes for int_0^inf via u = exp(pi/2 sinh tau): returns (log u, log du/dtau * h)."""
    tau = np.arange(lo, hi + h / 2, h)
    log_u = 0.5 * math.pi * np.sinh(tau)
    log_jac = log_u + np.log(0.5 * math.pi * np.cosh(tau)) + math.log(h)
    return log_u, log_jac


def cauchy_taylor(f, center: complex, radius: float = 0.25, nodes: int = 32, vectorized: bool = False):
    """Taylor coefficients c_k = f^(k)(center)/k! from samples on a circle.

    Returns an array of length ``nodes``; only the first few are accurate
    (aliasing error ~ (radius/R)^nodes, round-off ~ eps*max|f|/radius^k).
    """
    theta = 2 * math.pi * np.arange(nodes) / nodes
    pts = center + radius * np.exp(1j * theta)
    vals = np.asarray(f(pts) if vectorized else [f(p) for p in pts], dtype=complex)
    coef = np.fft.fft(vals) / nodes
    return coef / radius ** np.arange(nodes)


def cauchy_derivative(f, center: complex, order: int, radius: float = 0.25, nodes: int = 32,
                      vectorized: bool = False) -> complex:
    c = cauchy_taylor(f, center, radius, nodes, vectorized)
    return complex(c[order] * math.factorial(order))


def cauchy_taylor_2d(f, c1: complex, c2: complex, r1: float = 0.25, r2: float = 0.25,
                     nodes: int = 32, vectorized: bool = True):
    """Mixed Taylor coefficients c_{jk} of f(v, w) around (c1, c2)."""
    th = 2 * math.pi * np.arange(nodes) / nodes
    v = c1 + r1 * np.exp(1j * th)
    w = c2 + r2 * np.exp(1j * th)
    V, Wg = np.meshgrid(v, w, indexing="ij")
    if vectorized:
        vals = np.asarray(f(V, Wg), dtype=complex)
    else:
        vals = np.array([[f(a, b) for b in w] for a in v], dtype=complex)
    coef = np.fft.fft2(vals) / nodes**2
    j = np.arange(nodes)
    return coef / np.outer(r1**j, r2**j)
