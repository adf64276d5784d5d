"""The universal covering group of SL2(R) acting on H x R.

An element is stored as an SL2(R) matrix together with an integer winding
``n``: the element is ``lift(mat) * k(2 pi n)``, where ``lift`` is the section
acting by ``(z, theta) -> (mat.z, theta - arg(cz + d))`` with the principal
branch of ``arg`` in ``(-pi, pi]``.  Products are resolved by comparing the
action at the base point ``(i, 0)``; G~ acts freely, so one point suffices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

TWO_PI = 2.0 * math.pi
WINDING_TOL = 1e-9


@dataclass(frozen=True)
class PointHTheta:
    z: complex
    theta: float = 0.0

    def __post_init__(self):
        if not self.z.imag > 0:
            raise ValueError(f"point must lie in the upper half plane, got {self.z}")

    @property
    def x(self) -> float:
        return self.z.real

    @property
    def y(self) -> float:
        return self.z.imag

    def to_json(self) -> dict:
        return {"x": self.z.real, "y": self.z.imag, "theta": self.theta}


BASE_POINT = PointHTheta(1j, 0.0)


def arg_j(c: float, d: float, z: complex) -> float:
    """Principal argument of cz + d, with arg(d) = pi exactly when c = 0, d < 0."""
    if c == 0:
        if d == 0:
            raise ValueError("degenerate automorphy factor")
        return 0.0 if d > 0 else math.pi
    return math.atan2(c * z.imag, c * z.real + d)


def mobius(mat, z):
    a, b, c, d = mat
    return (a * z + b) / (c * z + d)


@dataclass(frozen=True)
class CoveringElement:
    mat: tuple[float, float, float, float]
    winding: int = 0

    def __post_init__(self):
        a, b, c, d = self.mat
        if abs(a * d - b * c - 1.0) > 1e-9:
            raise ValueError(f"determinant must be 1, got {a * d - b * c}")

    def __matmul__(self, other: "CoveringElement") -> "CoveringElement":
        return compose(self, other)

    def __call__(self, p: PointHTheta) -> PointHTheta:
        return apply(self, p)

    def to_json(self) -> dict:
        return {"mat": [float(v) for v in self.mat], "winding": int(self.winding)}


def lift(m) -> CoveringElement:
    """Section g -> g~ with winding 0; the determinant is renormalised."""
    arr = np.asarray(m, dtype=float).reshape(2, 2)
    det = float(np.linalg.det(arr))
    if not np.isfinite(det) or abs(det) < 1e-12:
        raise ValueError("matrix is not invertible")
    if abs(det - 1.0) > 1e-9:
        if det < 0:
            raise ValueError("determinant must be positive")
        if np.linalg.cond(arr) > 1e12:
            raise ValueError("badly conditioned matrix")
    arr = arr / math.sqrt(det)
    return CoveringElement(_clean(arr.ravel()), 0)


def apply(e: CoveringElement, p: PointHTheta) -> PointHTheta:
    a, b, c, d = e.mat
    z = p.z
    zz = (a * z + b) / (c * z + d)
    return PointHTheta(complex(zz), p.theta - arg_j(c, d, z) + TWO_PI * e.winding)


SNAP = 1e-13


def _clean(mat) -> tuple[float, float, float, float]:
    # round-off around c = 0 would otherwise flip the section across its cut
    return tuple(0.0 if abs(v) < SNAP else float(v) for v in mat)


def _with_base_theta(mat, theta_at_base: float) -> CoveringElement:
    """Element with matrix ``mat`` sending (i, 0) to (mat.i, theta_at_base)."""
    mat = _clean(mat)
    a, b, c, d = mat
    base = -arg_j(c, d, 1j)
    n_real = (theta_at_base - base) / TWO_PI
    n = round(n_real)
    if abs(n_real - n) * TWO_PI > WINDING_TOL:
        raise ArithmeticError(f"winding residual {abs(n_real - n) * TWO_PI:.3e}")
    return CoveringElement(tuple(float(v) for v in mat), int(n))


def compose(e1: CoveringElement, e2: CoveringElement) -> CoveringElement:
    m1 = np.array(e1.mat).reshape(2, 2)
    m2 = np.array(e2.mat).reshape(2, 2)
    target = apply(e1, apply(e2, BASE_POINT))
    return _with_base_theta((m1 @ m2).ravel(), target.theta)


def invert(e: CoveringElement) -> CoveringElement:
    a, b, c, d = e.mat
    inv = _clean((d, -b, -c, a))
    p1 = apply(e, BASE_POINT)
    # the inverse must bring p1 back to theta = 0
    shift = -arg_j(inv[2], inv[3], p1.z)
    n_real = (0.0 - p1.theta - shift) / TWO_PI
    n = round(n_real)
    if abs(n_real - n) * TWO_PI > WINDING_TOL:
        raise ArithmeticError("winding residual in inverse")
    return CoveringElement(inv, int(n))


def compose_all(*elements: CoveringElement) -> CoveringElement:
    acc = IDENTITY
    for e in elements:
        acc = compose(acc, e)
    return acc


def power(e: CoveringElement, m: int) -> CoveringElement:
    base = e if m >= 0 else invert(e)
    acc = IDENTITY
    for _ in range(abs(m)):
        acc = compose(acc, base)
    return acc


IDENTITY = CoveringElement((1.0, 0.0, 0.0, 1.0), 0)


# one-parameter subgroups


def n_elem(x: float) -> CoveringElement:
    return CoveringElement((1.0, float(x), 0.0, 1.0), 0)


def a_elem(y: float) -> CoveringElement:
    if y <= 0:
        raise ValueError("a(y) needs y > 0")
    r = math.sqrt(y)
    return CoveringElement((r, 0.0, 0.0, 1.0 / r), 0)


def k_elem(theta: float) -> CoveringElement:
    """k(theta): acts on (i, t) as (i, t + theta)."""
    c, s = math.cos(theta), math.sin(theta)
    return _with_base_theta((c, s, -s, c), float(theta))


def k_action(theta: float, p: PointHTheta) -> PointHTheta:
    """Direct formula for k(theta), independent of the section."""
    c, s = math.cos(theta), math.sin(theta)
    z = p.z
    j = -z * s + c
    zz = (z * c + s) / j
    return PointHTheta(complex(zz), float(p.theta + theta - np.angle(np.exp(1j * theta) * j)))


def iwasawa(e: CoveringElement) -> tuple[float, float, float]:
    p = apply(e, BASE_POINT)
    return p.z.real, p.z.imag, p.theta


def from_iwasawa(x: float, y: float, theta: float) -> CoveringElement:
    return compose_all(n_elem(x), a_elem(y), k_elem(theta))


def same_action(e1: CoveringElement, e2: CoveringElement, points) -> float:
    """Maximum action discrepancy over ``points``."""
    worst = 0.0
    for p in points:
        p1, p2 = apply(e1, p), apply(e2, p)
        worst = max(worst, abs(p1.z - p2.z), abs(p1.theta - p2.theta))
    return worst


# the modular lift

T = n_elem(1.0)
S = k_elem(-math.pi / 2)
ZETA = k_elem(math.pi)
EPS2 = invert(S)
EPS1 = compose(invert(T), invert(S))

MODULAR_GENERATORS = {"t": T, "s": S, "z": ZETA}


def word_element(word: str, gens: dict | None = None) -> CoveringElement:
    """Evaluate a word like ``"s*t^-1*s"`` over named covering elements."""
    from .group_algebra import parse_word

    gens = MODULAR_GENERATORS if gens is None else gens
    acc = IDENTITY
    for g, e in parse_word(word):
        if g not in gens:
            raise ValueError(f"unknown generator {g!r}")
        acc = compose(acc, power(gens[g], e))
    return acc


# Lie operators by finite differences

LIE_TAGS = ("X", "H", "W", "Eplus", "Eminus", "Casimir")

_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
_OFF = np.arange(-2, 3)


def _as_callable(f) -> Callable[[complex, float], complex]:
    if hasattr(f, "evaluate_xyt"):
        return f.evaluate_xyt
    return f


def partials(f, p: PointHTheta, h: float = 1e-3) -> dict:
    """First and second partial derivatives of f(z, theta) in x, y, theta."""
    F = _as_callable(f)
    x, y, t = p.z.real, p.z.imag, p.theta
    hy = h * y
    fx = [F(complex(x + k * h, y), t) for k in _OFF]
    fy = [F(complex(x, y + k * hy), t) for k in _OFF]
    ft = [F(complex(x, y), t + k * h) for k in _OFF]
    out = {
        "f": fx[2],
        "x": np.dot(_D1, fx) / h,
        "y": np.dot(_D1, fy) / hy,
        "t": np.dot(_D1, ft) / h,
        "xx": np.dot(_D2, fx) / h**2,
        "yy": np.dot(_D2, fy) / hy**2,
    }
    mixed = 0.0
    for i, ci in zip(_OFF, _D1):
        if ci == 0:
            continue
        for j, cj in zip(_OFF, _D1):
            if cj == 0:
                continue
            mixed += ci * cj * F(complex(x + i * h, y), t + j * h)
    out["xt"] = mixed / h**2
    return out


def lie_apply(tag: str, f, p: PointHTheta, h: float = 1e-3) -> complex:
    """Apply a Lie operator in (x, y, theta) coordinates by 4th order differences."""
    if tag not in LIE_TAGS:
        raise ValueError(f"unknown Lie operator {tag!r}")
    validity = getattr(f, "valid", None)
    if validity is not None:
        for dz in (2 * h, -2 * h, 2j * h * p.y, -2j * h * p.y):
            if not validity(PointHTheta(p.z + dz, p.theta)):
                raise ValueError(f"stencil leaves the validity region of {f.name}")
    d = partials(f, p, h)
    y, t = p.y, p.theta
    if tag == "X":
        return complex(d["x"])
    if tag == "H":
        return complex(2 * y * d["y"])
    if tag == "W":
        return complex(d["t"])
    if tag == "Eplus":
        return complex(np.exp(2j * t) * (2j * y * d["x"] + 2 * y * d["y"] - 1j * d["t"]))
    if tag == "Eminus":
        return complex(np.exp(-2j * t) * (-2j * y * d["x"] + 2 * y * d["y"] + 1j * d["t"]))
    return complex(-(y**2) * d["yy"] - y**2 * d["xx"] + y * d["xt"])


def weight_laplacian(F, z: complex, k: int, h: float = 1e-3, variant: str = "efC") -> complex:
    """Weight-k Laplacian of a function F on H by 4th order differences.

    ``variant="efC"``: -y^2 (F_xx + F_yy) + i k y F_x, for h = y^{k/2} f.
    ``variant="Lk"``: the same plus -k y F_y + (k/2)(1 - k/2) F, for f itself.
    """
    x, y = z.real, z.imag
    fx = [F(complex(x + j * h, y)) for j in _OFF]
    fy = [F(complex(x, y + j * h)) for j in _OFF]
    Fxx = np.dot(_D2, fx) / h**2
    Fyy = np.dot(_D2, fy) / h**2
    Fx = np.dot(_D1, fx) / h
    out = -(y**2) * (Fxx + Fyy) + 1j * k * y * Fx
    if variant == "Lk":
        Fy = np.dot(_D1, fy) / h
        out += -k * y * Fy + 0.5 * k * (1 - 0.5 * k) * fx[2]
    elif variant != "efC":
        raise ValueError(f"unknown variant {variant!r}")
    return complex(out)
