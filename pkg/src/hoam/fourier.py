"""Fourier terms on the universal cover: classical and higher order.

Classical terms live in W_r(nu, s): functions ``e^{2 pi i nu x} h(y) e^{i r theta}``
with Casimir eigenvalue ``1/4 - s^2``.  Higher-order terms of type
``m = (m1, m2)`` are obtained from holomorphic families ``h(r, nu)`` by
applying ``Q_{m1}(d_r / pi i) Q_{m2}(d_nu / 2 pi i)`` at ``(r, nu) = (k, n)``;
for ``n = 0`` they are polynomials in ``x, theta`` times powers of ``y``.

The weight-0 Eisenstein series and its Taylor coefficients at ``s = -1/2``
are at the end of the module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import exp1

from .covering_group import CoveringElement, PointHTheta, apply, n_elem
from .group_algebra import q_polynomial
from .handles import FormHandle
from .special_functions import eta as _eta
from .special_functions.kit import (besselK_array, completed_zeta, inv_completed_zeta,
                                    kummer1F1, laurent_constants)
from .special_functions.quadrature import cauchy_derivative, cauchy_taylor, cauchy_taylor_2d, gl_nodes
from .special_functions.whittaker import whittaker_W

KINDS = ("omega", "omega_hat", "mu", "eta_hol", "eta_mm", "h_mm")
BASE_FAMILIES = ("omega", "omega_hat", "mu", "zero_mode", "zero_mode_log")


@dataclass(frozen=True)
class FourierTermSpec:
    kind: str
    k: complex = 0
    n: complex = 1
    s: complex = 0.5
    m: tuple[int, int] = (0, 0)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind in ("omega", "omega_hat") and complex(self.n).real == 0:
            raise ValueError("omega and omega_hat need Re nu != 0")
        if min(self.m) < 0:
            raise ValueError("type m must have non-negative entries")
        if self.kind in ("eta_mm", "h_mm") and complex(self.k).imag == 0 and int(complex(self.k).real) % 2:
            raise ValueError("higher-order terms need even weight k")


def _as_point(p) -> PointHTheta:
    return p if isinstance(p, PointHTheta) else PointHTheta(complex(p), 0.0)


# -- classical basis ----------------------------------------------------------------


def _sign(nu: complex) -> int:
    re = complex(nu).real
    if re == 0:
        raise ValueError("sign(Re nu) undefined for Re nu = 0")
    return 1 if re > 0 else -1


def omega(r, nu, s, z: complex, theta: float, eps: int | None = None):
    """omega_r(nu, s); arrays r, nu broadcast (``eps`` fixes sign(Re nu) for a contour)."""
    eps = _sign(nu) if eps is None else eps
    return (np.exp(2j * math.pi * nu * z.real) * whittaker_W(r * eps / 2, s, 4 * math.pi * nu * eps * z.imag)
            * np.exp(1j * r * theta))


def omega_hat(r, nu, s, z: complex, theta: float, eps: int | None = None):
    eps = _sign(nu) if eps is None else eps
    return (np.exp(2j * math.pi * nu * z.real) * whittaker_W(-r * eps / 2, s, -4 * math.pi * nu * eps * z.imag)
            * np.exp(1j * r * theta))


def mu_term(r, nu, s, z: complex, theta: float):
    y = z.imag
    return (np.exp(2j * math.pi * nu * z) * y ** (0.5 + s)
            * kummer1F1(0.5 + s - r / 2, 1 + 2 * s, 4 * math.pi * nu * y) * np.exp(1j * r * theta))


def eta_hol(r, nu, z: complex, theta: float):
    return z.imag ** (r / 2) * np.exp(2j * math.pi * nu * z) * np.exp(1j * r * theta)


def basis_eval(spec: FourierTermSpec, p) -> complex:
    """omega_r, omega_hat_r, mu_r or eta_r at (z, theta)."""
    p = _as_point(p)
    k, n, s = complex(spec.k), complex(spec.n), complex(spec.s)
    if spec.kind == "omega":
        return complex(omega(k, n, s, p.z, p.theta))
    if spec.kind == "omega_hat":
        return complex(omega_hat(k, n, s, p.z, p.theta))
    if spec.kind == "mu":
        return complex(mu_term(k, n, s, p.z, p.theta))
    if spec.kind == "eta_hol":
        return complex(eta_hol(k, n, p.z, p.theta))
    if spec.kind == "eta_mm":
        return eta_mm(spec, p)
    return h_mm(spec, "omega", p)


def _q_eval(q: int, x):
    return complex(q_polynomial(q)(x)) if np.ndim(x) == 0 else q_polynomial(q)(x)


def eta_mm(spec: FourierTermSpec, p) -> complex:
    """Q_{m1}((2 i theta + log y) / 2 pi i) Q_{m2}(z) eta_k(n; z, theta)."""
    p = _as_point(p)
    m1, m2 = spec.m
    arg1 = (2j * p.theta + math.log(p.y)) / (2j * math.pi)
    return _q_eval(m1, arg1) * _q_eval(m2, p.z) * complex(eta_hol(complex(spec.k), complex(spec.n), p.z, p.theta))


# -- higher-order terms h^m ---------------------------------------------------------


def _family(base: str, s: complex, eps: int):
    if base == "omega":
        return lambda r, nu, z, t: omega(r, nu, s, z, t, eps)
    if base == "omega_hat":
        return lambda r, nu, z, t: omega_hat(r, nu, s, z, t, eps)
    if base == "mu":
        return np.vectorize(lambda r, nu, z, t: mu_term(r, nu, s, z, t), otypes=[complex])
    raise ValueError(f"no (r, nu) family for {base!r}")


def _q_weights(m: int, scale: complex) -> list[complex]:
    """Coefficients c_j of Q_m(d / scale) = sum_j c_j d^j."""
    coeffs = q_polynomial(m).coefficients
    return [complex(c) / scale**j for j, c in enumerate(coeffs)]


def _h_mm_family(spec: FourierTermSpec, base: str, p: PointHTheta, radius: float, nodes: int) -> complex:
    m1, m2 = spec.m
    k, n = complex(spec.k), complex(spec.n)
    if base != "mu" and abs(n.real) <= radius:
        raise ValueError("the nu-contour would cross Re nu = 0")
    fam = _family(base, complex(spec.s), _sign(n) if n.real else 1)

    def f(r, nu):
        return fam(r, nu, p.z, p.theta)

    if m1 == 0 and m2 == 0:
        return complex(f(k, n))
    c = cauchy_taylor_2d(f, k, n, radius, radius, nodes=nodes, vectorized=True)
    wr = _q_weights(m1, 1j * math.pi)
    wn = _q_weights(m2, 2j * math.pi)
    total = 0j
    for a, ca in enumerate(wr):
        for b, cb in enumerate(wn):
            if ca and cb:
                total += ca * cb * math.factorial(a) * math.factorial(b) * c[a, b]
    return total


# Polynomials in (x, theta) as 2-D coefficient arrays P[i, j] for x^i theta^j.


def _poly_dx(P: np.ndarray) -> np.ndarray:
    out = np.zeros_like(P)
    out[:-1, :] = P[1:, :] * np.arange(1, P.shape[0])[:, None]
    return out


def _poly_dt(P: np.ndarray) -> np.ndarray:
    out = np.zeros_like(P)
    out[:, :-1] = P[:, 1:] * np.arange(1, P.shape[1])[None, :]
    return out


def _poly_eval(P: np.ndarray, x: float, t: float) -> complex:
    xs = x ** np.arange(P.shape[0])
    ts = t ** np.arange(P.shape[1])
    return complex(xs @ P @ ts)


def _top_polynomial(m1: int, m2: int) -> np.ndarray:
    """Q_{m1}(theta / pi) Q_{m2}(x)."""
    P = np.zeros((m2 + 1, m1 + 1), dtype=complex)
    qx = q_polynomial(m2).coefficients
    qt = q_polynomial(m1).coefficients
    for i, cx in enumerate(qx):
        for j, ct in enumerate(qt):
            P[i, j] = complex(cx) * complex(ct) / math.pi**j
    return P


@lru_cache(maxsize=64)
def zero_mode_polynomials(k: int, s: complex, sign: int, m1: int, m2: int, log_branch: bool = False):
    """Coefficient polynomials g_a (and log-partners gl_a) of the n = 0 ansatz.

    Without log: h = sum_a g_a(x, theta) y^{beta + a} e^{ik theta}, beta = 1/2 + sign*s,
    with -a(a + 2 sign s) g_a - d_x^2 g_{a-2} + (d_theta + ik) d_x g_{a-1} = 0.
    With ``log_branch`` (s = 0): h = sum_a (g_a + gl_a log y) y^{1/2 + a} e^{ik theta}
    seeded by gl_0 = top polynomial, g_0 = 0.
    """
    top = _top_polynomial(m1, m2)
    zero = np.zeros_like(top)

    def drive(g_prev2, g_prev1):
        out = np.zeros_like(top)
        if g_prev2 is not None:
            out -= _poly_dx(_poly_dx(g_prev2))
        if g_prev1 is not None:
            d = _poly_dx(g_prev1)
            out += _poly_dt(d) + 1j * k * d
        return out

    if not log_branch:
        gs = [top]
        for a in range(1, m2 + 1):
            rhs = drive(gs[a - 2] if a >= 2 else None, gs[a - 1])
            denom = a * (a + 2 * sign * s)
            if abs(denom) < 1e-12:
                if not np.any(rhs):
                    gs.append(zero.copy())
                    continue
                raise ZeroDivisionError("resonant exponent: the ansatz needs log terms")
            gs.append(rhs / denom)
        return tuple(gs), None
    if s != 0:
        raise ValueError("the logarithmic branch is for s = 0")
    gl = [top]
    g = [zero.copy()]
    for a in range(1, m2 + 1):
        rhs_l = drive(gl[a - 2] if a >= 2 else None, gl[a - 1])
        gl.append(rhs_l / a**2)
        rhs = drive(g[a - 2] if a >= 2 else None, g[a - 1]) - 2 * a * gl[a]
        g.append(rhs / a**2)
    return tuple(g), tuple(gl)


def _h_mm_zero(spec: FourierTermSpec, base: str, p: PointHTheta) -> complex:
    k = int(complex(spec.k).real)
    s = complex(spec.s)
    m1, m2 = spec.m
    x, y, t = p.x, p.y, p.theta
    phase = np.exp(1j * k * t)
    if base == "zero_mode_log":
        g, gl = zero_mode_polynomials(k, s, 1, m1, m2, True)
        total = sum((_poly_eval(ga, x, t) + _poly_eval(la, x, t) * math.log(y)) * y ** (0.5 + a)
                    for a, (ga, la) in enumerate(zip(g, gl)))
        return complex(total * phase)
    sign = 1
    if base == "zero_mode" and complex(spec.n) != 0:
        raise ValueError("zero_mode needs n = 0")
    g, _ = zero_mode_polynomials(k, s, sign, m1, m2, False)
    total = sum(_poly_eval(ga, x, t) * y ** (0.5 + sign * s + a) for a, ga in enumerate(g))
    return complex(total * phase)


def h_mm(spec: FourierTermSpec, base_family: str, p, radius: float = 0.25, nodes: int = 32,
         sign: int = 1) -> complex:
    """Higher-order Fourier term of type ``spec.m`` built over ``base_family``.

    For n != 0 (families omega, omega_hat, mu) the parameter derivatives are
    double Cauchy integrals around (k, n).  For n = 0 use ``zero_mode``
    (y^{1/2 + sign s}; pass ``sign=-1`` via ``s -> -s``) or ``zero_mode_log``.
    """
    p = _as_point(p)
    if base_family not in BASE_FAMILIES:
        raise ValueError(f"unknown base family {base_family!r}")
    if base_family.startswith("zero_mode"):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if sign == -1:
            spec = FourierTermSpec(spec.kind, spec.k, spec.n, -complex(spec.s), spec.m)
        return _h_mm_zero(spec, base_family, p)
    return _h_mm_family(spec, base_family, p, radius, nodes)


def term_handle(spec: FourierTermSpec, base_family: str = "omega", **kw) -> FormHandle:
    """Wrap a Fourier term as a covering-group FormHandle."""
    if spec.kind == "h_mm":
        ev = lambda p: h_mm(spec, base_family, p, **kw)  # noqa: E731
    elif spec.kind == "eta_mm":
        ev = lambda p: eta_mm(spec, p)  # noqa: E731
    else:
        ev = lambda p: basis_eval(spec, p)  # noqa: E731
    return FormHandle(f"{spec.kind}{spec.m}({spec.k},{spec.n},{spec.s})", ev, "covering_group",
                      (int(complex(spec.k).real), "generalised"), ("Casimir", 0.25 - complex(spec.s) ** 2))


# -- Fourier extraction ---------------------------------------------------------------


def _evaluator(f):
    if isinstance(f, FormHandle):
        return lambda p: f(p)
    return f


def fourier_extract_est(f, nu, g, cusp_scaling: CoveringElement | None = None, panels: int = 8,
                        order: int = 16) -> tuple[complex, float]:
    """int_0^1 e^{-2 pi i nu x} f(g_k n(x) g) dx, with a panel-doubling error estimate."""
    g = _as_point(g)
    F = _evaluator(f)

    def integral(npan):
        x, w = gl_nodes(0.0, 1.0, order, npan)
        vals = []
        for xi in x:
            q = apply(n_elem(float(xi)), g)
            if cusp_scaling is not None:
                q = apply(cusp_scaling, q)
            vals.append(F(q))
        return complex(np.sum(w * np.exp(-2j * math.pi * nu * x) * np.array(vals, dtype=complex)))

    coarse = integral(panels)
    fine = integral(2 * panels)
    return fine, abs(fine - coarse)


def fourier_extract(f, cusp_scaling=None, nu=0, g=None, panels: int = 8, order: int = 16) -> complex:
    if g is None:
        raise ValueError("an evaluation point g is required")
    return fourier_extract_est(f, nu, g, cusp_scaling, panels, order)[0]


def higher_order_expansion(f, g=None, n_max: int = 10, panels: int | None = None, order: int = 16) -> dict:
    """Expansion of a weight-0 second order form in eta^{(1,0)}_0(0), eta^{(0,1)}_0(0), eta_0(n).

    The coefficients of the two type-(1,0), (0,1) terms are f|(zeta - 1) and
    f|(tau - 1) (both must be constants); the rest is periodic and is expanded
    classically, coefficient n = F_n(rest)(g) / eta_0(n; g).
    """
    # dividing by eta_0(n; g) = e^{-2 pi n y} amplifies quadrature noise, so work low
    g = PointHTheta(complex(0.0, 1.0 / max(n_max, 1))) if g is None else _as_point(g)
    if panels is None:
        panels = max(4, int(math.ceil(3.0 / g.y)))
    F = _evaluator(f)
    c10 = F(PointHTheta(g.z, g.theta + math.pi)) - F(g)
    c01 = F(PointHTheta(g.z + 1, g.theta)) - F(g)

    def rest(p):
        s10 = eta_mm(FourierTermSpec("eta_mm", 0, 0, 0.5, (1, 0)), p)
        s01 = eta_mm(FourierTermSpec("eta_mm", 0, 0, 0.5, (0, 1)), p)
        return F(p) - c10 * s10 - c01 * s01

    x, w = gl_nodes(0.0, 1.0, order, panels)
    vals = np.array([rest(apply(n_elem(float(xi)), g)) for xi in x], dtype=complex)
    coeffs = {}
    for n in range(0, n_max + 1):
        Fn = complex(np.sum(w * np.exp(-2j * math.pi * n * x) * vals))
        coeffs[n] = Fn / complex(eta_hol(0, n, g.z, g.theta))
    return {"eta(1,0)": c10, "eta(0,1)": c01, "eta(n)": coeffs}


def L_expansion_reference(n_max: int = 10) -> dict:
    sig = _eta.sigma_table(n_max)
    return {"eta(1,0)": 1j * math.pi, "eta(0,1)": 1j * math.pi / 6,
            "eta(n)": {n: (0.0 if n == 0 else -2 * sig[n]) for n in range(n_max + 1)}}


# -- growth -------------------------------------------------------------------------


def growth_exponent(f, n: int, ys=(10.0, 15.0), x: float = 0.0, theta: float = 0.0, sign: int = -1) -> float:
    """Power A in |f(iy)| ~ y^A e^{sign 2 pi |n| y}, from two heights.

    A finite A means f = O(e^{(delta + sign 2 pi |n|) y}) for every delta > 0.
    """
    F = _evaluator(f)
    y0, y1 = ys
    l0 = math.log(abs(F(PointHTheta(complex(x, y0), theta)))) - sign * 2 * math.pi * abs(n) * y0
    l1 = math.log(abs(F(PointHTheta(complex(x, y1), theta)))) - sign * 2 * math.pi * abs(n) * y1
    return (l1 - l0) / math.log(y1 / y0)


# -- the weight-0 Eisenstein series -------------------------------------------------


def _eis_terms(y: float, tol: float) -> int:
    return max(2, int(math.ceil((math.log(1.0 / tol) + 5) / (2 * math.pi * y))) + 1)


def eisenstein0(s, z, tol: float = 1e-16) -> complex:
    """E(0, s; z) from its Fourier expansion (meromorphically continued in s)."""
    s = complex(s)
    z = complex(z)
    y = z.imag
    if y <= 0:
        raise ValueError("z must lie in the upper half plane")
    c0 = completed_zeta(2 * s) * inv_completed_zeta(2 * s + 1)
    c1 = inv_completed_zeta(2 * s + 1)
    total = y ** (0.5 + s) + c0 * y ** (0.5 - s)
    if c1 != 0:
        N = _eis_terms(y, tol)
        n = np.arange(1, N + 1)
        sig = _divisor_sums(N, 2 * s)
        K = besselK_array(s, 2 * math.pi * n * y)
        # omega_0(n, s) = e^{2 pi i n x} W_{0,s}(4 pi |n| y) = e^{2 pi i n x} 2 sqrt(|n| y) K_s(2 pi |n| y)
        coeff = sig[1:] * n ** (-s - 0.5) * 2 * np.sqrt(n * y) * K
        total += c1 * complex(np.sum(coeff * 2 * np.cos(2 * math.pi * n * z.real)))
    return complex(total)


def _divisor_sums(N: int, power: complex) -> np.ndarray:
    from .special_functions import kernels
    return np.asarray(kernels.divisor_power_table(N, complex(power)))


def eisenstein_C0(s) -> complex:
    s = complex(s)
    return completed_zeta(2 * s) * inv_completed_zeta(2 * s + 1)


@dataclass
class TaylorReport:
    point: complex
    coefficients: dict
    residuals: dict = field(default_factory=dict)
    derived: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def c(v):
            return {"re": float(v.real), "im": float(v.imag)}
        return {
            "point": c(self.point),
            "coefficients": {k: c(v) for k, v in self.coefficients.items()},
            "residuals": {k: float(v) for k, v in self.residuals.items()},
            "derived": {k: c(v) for k, v in self.derived.items()},
        }


def A01_formula(z, tol: float = 1e-16) -> float:
    """log y - (pi/3) y - 2 sum sigma_{-1}(n) (q^n + conj q^n)."""
    z = complex(z)
    y = z.imag
    N = _eis_terms(y, tol)
    sig = _eta.sigma_table(N)
    n = np.arange(1, N + 1)
    qn = np.exp(2j * math.pi * n * z)
    return float(math.log(y) - math.pi * y / 3 - 2 * np.sum(sig[1:] * 2 * qn.real))


def A02_formula(z, variant: str = "derived", tol: float = 1e-16) -> float:
    """Second Taylor coefficient A_{0,2} (coefficient of xi^2 / 2) of E(0, -1/2 + xi).

    ``variant="derived"`` doubles the xi^2 coefficients of the n-th Fourier
    terms, exactly as for the y-terms; ``variant="printed"`` keeps the n-sum
    coefficients (-4 a0, 2, -2), which miss that factor 2.
    """
    z = complex(z)
    y = z.imag
    a0, b1 = laurent_constants()
    N = _eis_terms(y, tol) + 4
    n = np.arange(1, N + 1)
    sig = _eta.sigma_table(N)[1:]
    logsum = np.array([sum(math.log(d * d / m) / d for d in range(1, m + 1) if m % d == 0) for m in n])
    qn = np.exp(2j * math.pi * n * z)
    q_plus = 2 * qn.real                      # q^n + conj(q)^n
    q_minus = 2 * np.cos(2 * math.pi * n * z.real) * np.exp(2 * math.pi * n * y)  # q^-n + conj(q)^-n
    G = exp1(4 * math.pi * n * y)
    factors = {"derived": 2.0, "printed": 1.0}
    if variant not in factors:
        raise ValueError(f"unknown variant {variant!r}")
    nsum = factors[variant] * np.sum(-4 * a0 * sig * q_plus + 2 * sig * q_minus * G - 2 * logsum * q_plus)
    return float(math.log(y) ** 2 + (8 * b1 - 4 * math.pi * a0 / 3 + 2 * math.pi / 3 * math.log(y)) * y + nsum)


def eisenstein_taylor(z, degree: int = 2, radius: float = 0.25, nodes: int = 32) -> TaylorReport:
    """Taylor coefficients of xi -> E(0, -1/2 + xi; z) by a Cauchy contour.

    ``A_{0,1}`` is the xi coefficient and ``A_{0,2}`` twice the xi^2
    coefficient; ``A_{1,0}``, ``A_{1,1}`` and ``A_{2,0}`` follow from the
    specialisations e^{rL}, e^{-r conj L} and are reported as derived.
    """
    if degree < 0 or degree > 6:
        raise ValueError("degree must be between 0 and 6")
    z = complex(z)
    coef = cauchy_taylor(lambda xi: eisenstein0(-0.5 + xi, z), 0.0, radius, nodes)
    coefficients = {f"xi^{j}": complex(coef[j]) for j in range(degree + 1)}
    report = TaylorReport(z, coefficients)
    report.residuals["constant_term_minus_1"] = abs(coef[0] - 1)
    L = _L(z)
    if degree >= 1:
        report.derived["A01"] = complex(coef[1])
        report.residuals["A01_minus_formula"] = abs(coef[1] - A01_formula(z))
        report.residuals["A01_minus_2ReL"] = abs(coef[1] - 2 * L.real)
        dr = cauchy_derivative(lambda r: np.exp(r * L), 0.0, 1, radius=1.0, nodes=32, vectorized=True)
        A10 = dr - 0.5 * coef[1]
        report.derived["A10"] = complex(A10)
        report.residuals["A10_minus_iImL"] = abs(A10 - 1j * L.imag)
    if degree >= 2:
        A02 = 2 * complex(coef[2])
        report.derived["A02"] = A02
        report.residuals["A02_minus_formula"] = abs(A02 - A02_formula(z))
        report.derived["A20_by_identity"] = complex((L * L).real - 0.25 * A02)
        report.derived["A11_by_identity"] = complex(1j * (L * L).imag)
    return report


def _L(z: complex) -> complex:
    return complex(0.5 * math.log(z.imag) + 2 * _eta.log_eta(z))
