"""Weight-2 newform data, the vanishing pairing with L1, and L'_f(1).

Integrals along the imaginary axis run over y = e^s with composite
Gauss-Legendre panels.  Below ``1/sqrt(N)`` the form is evaluated through
the Fricke involution, ``f(i/(Ny)) = -N y^2 f(iy)``, which is the
invariance ``f(W_N w) d(W_N w) = f(w) dw`` restricted to the axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .special_functions.eta import log_eta
from .special_functions.kit import special_kit
from .special_functions.quadrature import gl_nodes

ORACLE_37A = 0.305999773834052  # L'(E, 1) for 37a, used only as a regression pin


class CoefficientError(ValueError):
    pass


@dataclass(frozen=True)
class NewformData:
    level: int
    weight: int
    label: str
    coeffs: np.ndarray  # coeffs[n] = a_n, coeffs[0] = 0
    fricke_sign: int = 1

    @property
    def n_max(self) -> int:
        return len(self.coeffs) - 1

    @property
    def root_number(self) -> int:
        return -self.fricke_sign


def _check(level: int, weight: int, fricke: int, a: list[int]) -> None:
    if weight != 2:
        raise CoefficientError(f"only weight 2 is supported, got {weight}")
    if fricke != 1:
        raise CoefficientError("fricke_sign must be +1 so that f(W_N w) d(W_N w) = f(w) dw")
    if len(a) < 2 or a[1] != 1:
        raise CoefficientError("a_1 must equal 1")
    n_max = len(a) - 1
    for m in range(2, min(50, n_max) + 1):
        for n in range(m + 1, min(50, n_max // m) + 1):
            if math.gcd(m, n) == 1 and a[m * n] != a[m] * a[n]:
                raise CoefficientError(f"multiplicativity fails: a_{m * n} != a_{m} a_{n}")
    _ = level


def parse_coeffs(text: str, source: str = "<string>") -> NewformData:
    header = {"level": None, "weight": "2", "label": "", "fricke_sign": "1"}
    a = [0]
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, val = line[1:].partition(":")
            if sep and key.strip() in header:
                header[key.strip()] = val.strip()
            continue
        parts = line.split()
        try:
            n, an = int(parts[0]), int(parts[1])
            if len(parts) != 2:
                raise ValueError
        except (ValueError, IndexError):
            raise CoefficientError(f"{source}:{lineno}: expected 'n a_n', got {raw!r}") from None
        if n != len(a):
            raise CoefficientError(f"{source}:{lineno}: expected n = {len(a)}, got {n}")
        a.append(an)
    if header["level"] is None:
        raise CoefficientError(f"{source}: missing '# level:' header")
    try:
        level, weight, fricke = int(header["level"]), int(header["weight"]), int(header["fricke_sign"])
    except ValueError:
        raise CoefficientError(f"{source}: malformed header") from None
    _check(level, weight, fricke, a)
    return NewformData(level, weight, header["label"], np.array(a, dtype=float), fricke)


def load_coeffs(path) -> NewformData:
    path = Path(path)
    return parse_coeffs(path.read_text(), str(path))


def builtin_37a() -> NewformData:
    return parse_coeffs(resources.files("hoam").joinpath("data/37a.txt").read_text(), "37a.txt")


# -- evaluation --------------------------------------------------------------------


def _direct(nf: NewformData, y: np.ndarray, tol: float) -> np.ndarray:
    ymin = float(np.min(y))
    need = math.log(10.0 * (1 + nf.n_max) / tol) / (2 * math.pi * ymin)
    if need > nf.n_max:
        raise CoefficientError(f"n_max = {nf.n_max} cannot reach tol {tol:g} at y = {ymin:.4g}")
    M = min(nf.n_max, int(need) + 2)
    n = np.arange(1, M + 1)
    return np.exp(-2 * math.pi * np.outer(y, n)) @ nf.coeffs[1 : M + 1]


def eval_form(nf: NewformData, y, tol: float = 1e-15):
    """f(iy), directly for y >= 1/sqrt(N), else through the Fricke fold."""
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0):
        raise ValueError("eval_form needs y > 0")
    flat = np.atleast_1d(y)
    out = np.empty_like(flat)
    cut = 1.0 / math.sqrt(nf.level)
    hi = flat >= cut
    if hi.any():
        out[hi] = _direct(nf, flat[hi], tol)
    if (~hi).any():
        yl = flat[~hi]
        out[~hi] = -_direct(nf, 1.0 / (nf.level * yl), tol) / (nf.level * yl**2)
    return float(out[0]) if y.ndim == 0 else out


def _y_low(nf: NewformData, tol: float) -> float:
    """Below this height |f(iy)| (1 + |log y|) stays under tol/10."""
    bound = float(np.abs(nf.coeffs[1:60]).sum())
    N = nf.level
    y = 1.0 / math.sqrt(N)
    while y > 1e-6:
        yy = 1.0 / (N * y)
        if bound * math.exp(-2 * math.pi * yy) / (N * y * y) * (1 + abs(math.log(y)) + yy) < tol / 10:
            return y
        y *= 0.9
    return y


def axis_integral(nf: NewformData, g, tol: float = 1e-12, panels: int = 48, order: int = 24,
                  y_high: float | None = None) -> tuple[float, float]:
    """int_0^inf f(iy) g(y) dy on (y_low, y_high] plus the tail bound beyond y_high.

    Returns ``(value, tail_bound)``; ``g`` is vectorised over y and grows at most linearly.
    """
    if y_high is None:
        y_high = (math.log(10.0 / tol) + 5) / (2 * math.pi)
    y_low = _y_low(nf, tol)
    s, w = gl_nodes(math.log(y_low), math.log(y_high), order, panels)
    y = np.exp(s)
    vals = eval_form(nf, y) * np.asarray(g(y)) * y
    value = complex(np.sum(vals * w))
    bound = float(np.abs(nf.coeffs[1:60]).sum()) * (1 + y_high) * math.exp(-2 * math.pi * y_high) / (2 * math.pi)
    return value, bound


def _log_eta_axis(y):
    return log_eta(1j * np.asarray(y), tol=1e-16, y_min=1e-9, max_terms=400000).real


def L1_axis(nf: NewformData, y, theta: float = 0.0):
    """L1(iy, theta) = L(iy, theta) + L(iNy, theta) on the imaginary axis.

    The two log eta terms use the direct series at every height, so no
    modular transformation enters the pairing.
    """
    y = np.asarray(y, dtype=float)
    N = nf.level
    return (0.5 * np.log(y) + 2 * _log_eta_axis(y) + 0.5 * np.log(N * y) + 2 * _log_eta_axis(N * y)
            + 2j * theta)


def u_axis(nf: NewformData, y):
    """u(iy) = log eta(iy) + log eta(iNy)."""
    y = np.asarray(y, dtype=float)
    return _log_eta_axis(y) + _log_eta_axis(nf.level * y)


def lvalue_at_one(nf: NewformData, tol: float = 1e-12) -> float:
    """L_f(1) = 2 pi int_0^inf f(iy) dy."""
    v, _ = axis_integral(nf, lambda y: np.ones_like(y), tol)
    return 2 * math.pi * v.real


def oracle_lprime(nf: NewformData, tol: float = 1e-14) -> float:
    """L'_f(1) = 2 sum a_n/n Gamma(0, 2 pi n/sqrt N) for root number -1."""
    if nf.root_number != -1:
        raise CoefficientError("the oracle formula needs root number -1 (odd analytic rank)")
    c = 2 * math.pi / math.sqrt(nf.level)
    total, n = 0.0, 1
    while True:
        if n > nf.n_max:
            raise CoefficientError(f"series truncation insufficient at n_max = {nf.n_max}")
        term = nf.coeffs[n] / n * special_kit("gamma0", c * n).real
        total += term
        if math.exp(-c * n) * (n + 1) < tol:
            break
        n += 1
    return float(2 * total)


@dataclass
class GoldfeldReport:
    label: str
    level: int
    theta: float
    lvalue_at_one: float
    pairing_integral: complex
    pairing_theta_shift: float
    lprime_via_u: float
    lprime_oracle: float
    relative_difference: float
    tail_bound: float
    tolerance: float

    @property
    def checks(self) -> dict:
        return {
            "pairing_vanishes": abs(self.pairing_integral) < 1e-6,
            "theta_independent": self.pairing_theta_shift < 1e-8,
            "lprime_matches_oracle": self.relative_difference < 1e-4,
        }

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "level": self.level,
            "theta": self.theta,
            "lvalue_at_one": self.lvalue_at_one,
            "pairing_integral": {"re": self.pairing_integral.real, "im": self.pairing_integral.imag},
            "pairing_theta_shift": self.pairing_theta_shift,
            "lprime_via_u": self.lprime_via_u,
            "lprime_oracle": self.lprime_oracle,
            "relative_difference": self.relative_difference,
            "tail_bound": self.tail_bound,
            "tolerance": self.tolerance,
            "checks": self.checks,
            "verdict": "pass" if self.passed else "fail",
        }


def goldfeld_report(nf: NewformData, theta: float = 0.7, tol: float = 1e-12) -> GoldfeldReport:
    """Pairing of f with L1 on the axis and L'_f(1) = -4 pi int f(iy) u(iy) dy."""
    l1 = lvalue_at_one(nf, tol)
    if abs(l1) > 1e-6:
        raise CoefficientError(f"L_f(1) = {l1:.3g} is not numerically zero")
    pair0, tail = axis_integral(nf, lambda y: L1_axis(nf, y, 0.0), tol)
    pair_t, _ = axis_integral(nf, lambda y: L1_axis(nf, y, theta), tol)
    via_u, tail_u = axis_integral(nf, lambda y: u_axis(nf, y), tol)
    lprime = -4 * math.pi * via_u.real
    oracle = oracle_lprime(nf)
    return GoldfeldReport(
        label=nf.label, level=nf.level, theta=theta, lvalue_at_one=l1,
        pairing_integral=pair0, pairing_theta_shift=abs(pair_t - pair0),
        lprime_via_u=lprime, lprime_oracle=oracle,
        relative_difference=abs(lprime - oracle) / abs(oracle),
        tail_bound=max(tail, 4 * math.pi * tail_u), tolerance=tol,
    )


__all__ = ["NewformData", "CoefficientError", "parse_coeffs", "load_coeffs", "builtin_37a", "eval_form",
           "axis_integral", "L1_axis", "u_axis", "lvalue_at_one", "oracle_lprime", "GoldfeldReport",
           "goldfeld_report", "ORACLE_37A"]
