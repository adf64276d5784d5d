"""Explicit higher-order forms on the commutator subgroup of the modular group.

The commutator subgroup is free on

    C = [[2, -1], [-1, 1]],   D = [[2, 1], [1, 1]],

and ``H(z) = -2 pi i int_{i oo}^z eta^4`` maps it onto the hexagonal lattice
``Lambda = varpi Z[rho]``: ``H(gamma z) = H(z) + lambda(gamma)``.  From H we
build ``W = zeta(H)``, the path integral ``K``, the harmonic ``B11 = b11(H)``
with its holomorphic/antiholomorphic split ``A + B``, and the covering-group
form ``L(z, theta) = log y / 2 + 2 log eta(z) + i theta``.

H is evaluated by reducing z to the standard fundamental domain of SL2(Z),
using ``H(z + 1) = rho H(z)`` and ``H(-1/z) = 2 H(i) - H(z)``, and summing the
q-series there.  The raw series is kept as ``method="series"``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .covering_group import PointHTheta
from .group_algebra import Word, format_word, parse_word
from .handles import FormHandle, RegionError
from .special_functions import eta as _eta
from .special_functions.quadrature import gl_nodes
from .special_functions.weierstrass import (DEFAULT_LATTICE, RHO, SQRT3, HexLattice,
                                            S_series, SingularityError, s_combined)

Y_GUARD = 0.05
REDUCE_GUARD = 1e-8
PATH_Y_MIN = 0.01

C_MAT = ((2, -1), (-1, 1))
D_MAT = ((2, 1), (1, 1))
GCOM_GENERATORS = {"C": C_MAT, "D": D_MAT}


# -- words in the commutator subgroup ----------------------------------------


def _as_word(w) -> Word:
    return parse_word(w) if isinstance(w, str) else tuple(w)


def _mat_mul(m1, m2):
    (a, b), (c, d) = m1
    (e, f), (g, h) = m2
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def _mat_inv(m):
    (a, b), (c, d) = m
    return ((d, -b), (-c, a))


def gcom_matrix(word) -> tuple:
    """Integer matrix of a word over C, D (exact)."""
    acc = ((1, 0), (0, 1))
    for g, e in _as_word(word):
        if g not in GCOM_GENERATORS:
            raise ValueError(f"{g!r} is not a generator of the commutator subgroup")
        base = GCOM_GENERATORS[g] if e > 0 else _mat_inv(GCOM_GENERATORS[g])
        for _ in range(abs(e)):
            acc = _mat_mul(acc, base)
    return acc


def gcom_act(word, z):
    """Mobius action of a word over C, D on z (scalar or array)."""
    (a, b), (c, d) = gcom_matrix(word)
    return (a * np.asarray(z) + b) / (c * np.asarray(z) + d)


def lambda_hom(word, lat: HexLattice = DEFAULT_LATTICE) -> complex:
    """The homomorphism lambda: lambda(C) = rho varpi, lambda(D) = conj(rho) varpi."""
    vals = {"C": lat.varpi * RHO, "D": lat.varpi * RHO.conjugate()}
    total = 0j
    for g, e in _as_word(word):
        if g not in vals:
            raise ValueError(f"{g!r} is not a generator of the commutator subgroup")
        total += e * vals[g]
    return total


def random_gcom_word(rng: np.random.Generator, max_len: int = 4) -> str:
    """Freely reduced random word over C, D of length 1..max_len."""
    letters = [("C", 1), ("C", -1), ("D", 1), ("D", -1)]
    length = int(rng.integers(1, max_len + 1))
    out: list = []
    while len(out) < length:
        g, e = letters[int(rng.integers(0, 4))]
        if out and out[-1] == (g, -e):
            continue
        out.append((g, e))
    return format_word(tuple(out))


# -- H -------------------------------------------------------------------------


@lru_cache(maxsize=4)
def _h_coefficients(N: int) -> np.ndarray:
    c = np.array(_eta.eta_power_series(4, N), dtype=float)
    return -6.0 * c / (6.0 * np.arange(N) + 1.0)


def _h_series(z: np.ndarray, tol: float = 1e-16) -> np.ndarray:
    y = float(np.min(z.imag))
    N = _eta._terms_needed(y, tol, 10**5)
    coeff = _h_coefficients(N)
    q = np.exp(2j * math.pi * z)
    return np.exp(1j * math.pi * z / 3) * np.polyval(coeff[::-1], q)


@lru_cache(maxsize=1)
def _h_s_constant() -> complex:
    return complex(2 * _h_series(np.array([1j]))[0])


def _check_height(z: np.ndarray, y_min: float):
    if z.size and float(np.min(z.imag)) < y_min:
        raise RegionError(f"Im z = {float(np.min(z.imag)):.3g} below the guard {y_min}")


def H_form(z, method: str = "reduce", y_min: float | None = None):
    """H(z) = sum_m c_m (-6/(6m+1)) q6^{6m+1}, q6 = e^{pi i z/3}.

    ``method="reduce"`` maps z into the fundamental domain first;
    ``method="series"`` sums the expansion at z itself.
    """
    z = np.asarray(z, dtype=complex)
    if y_min is None:
        y_min = REDUCE_GUARD if method == "reduce" else Y_GUARD
    _check_height(z, y_min)
    if method == "series":
        out = _h_series(z)
        return complex(out) if out.ndim == 0 else out
    if method != "reduce":
        raise ValueError(f"unknown method {method!r}")
    w = np.atleast_1d(z).copy()
    A = np.ones_like(w)
    B = np.zeros_like(w)
    cS = _h_s_constant()
    for _ in range(500):
        n = np.round(w.real)
        w = w - n
        A = A * RHO**n
        inside = np.abs(w) < 1 - 1e-14
        if not np.any(inside):
            break
        w[inside] = -1 / w[inside]
        B[inside] = B[inside] + A[inside] * cS
        A[inside] = -A[inside]
    else:  # pragma: no cover - reduction always terminates for Im z > 0
        raise ArithmeticError("fundamental-domain reduction did not terminate")
    out = A * _h_series(w) + B
    return complex(out[0]) if z.ndim == 0 else out.reshape(z.shape)


def H_derivative(z):
    """H'(z) = -2 pi i eta(z)^4."""
    return -2j * math.pi * _eta.eta4_reduced(z)


# -- W and K -------------------------------------------------------------------


def W_form(z, lat: HexLattice = DEFAULT_LATTICE):
    """W = zeta(H(z); Lambda)."""
    return lat.zeta(H_form(z))


@dataclass(frozen=True)
class PathSpec:
    """Polyline base_point -> waypoints -> target, integrated by Gauss-Legendre."""

    base_point: complex = 1j
    waypoints: tuple = ()
    order: int = 24
    tol: float = 1e-13

    def __post_init__(self):
        for p in (self.base_point, *self.waypoints):
            if not complex(p).imag > 0:
                raise ValueError(f"path vertex {p} is not in the upper half plane")

    def vertices(self, target: complex) -> list[complex]:
        return [complex(self.base_point), *map(complex, self.waypoints), complex(target)]


DEFAULT_PATH = PathSpec()


def _graded_breaks(a: complex, b: complex) -> list[float]:
    """Parameters 0 = t0 < ... < 1 with each piece no longer than half its lowest height."""
    ts = [0.0]
    length = abs(b - a)
    while ts[-1] < 1.0:
        t = ts[-1]
        y = min((a + t * (b - a)).imag, (a + min(1.0, t + 0.5) * (b - a)).imag)
        step = max(0.5 * y / length, 1e-6)
        # the height may drop inside the step; shrink until it does not matter
        while step > 1e-6 and 0.5 * (a + min(1.0, t + step) * (b - a)).imag < step * length:
            step *= 0.5
        ts.append(min(1.0, t + step))
    return ts


def _segment_integral(g, a: complex, b: complex, order: int, tol: float) -> complex:
    if abs(b - a) == 0:
        return 0j
    ts = _graded_breaks(a, b)
    total = 0j
    for t0, t1 in zip(ts, ts[1:]):
        prev = None
        panels = 1
        for _ in range(8):
            t, w = gl_nodes(t0, t1, order, panels)
            val = complex(np.sum(w * g(a + t * (b - a)))) * (b - a)
            if prev is not None and abs(val - prev) <= tol * max(1.0, abs(val)):
                break
            prev, panels = val, 2 * panels
        else:
            raise ArithmeticError("path quadrature did not converge")
        total += val
    return total


def path_integral(g, target: complex, path: PathSpec = DEFAULT_PATH) -> complex:
    """int g(tau) d tau along the polyline of ``path`` ending at ``target``."""
    verts = path.vertices(target)
    if min(v.imag for v in verts) < PATH_Y_MIN:
        raise RegionError(f"path vertex below Im = {PATH_Y_MIN}")
    return sum(_segment_integral(g, a, b, path.order, path.tol) for a, b in zip(verts, verts[1:]))


def K_form(z, path: PathSpec = DEFAULT_PATH, lat: HexLattice = DEFAULT_LATTICE) -> complex:
    """K(z) = int_{z0}^z -2 pi i W(tau) eta(tau)^4 d tau."""
    def g(tau):
        return lat.zeta(H_form(tau)) * H_derivative(tau)
    return path_integral(g, complex(z), path)


# -- b11, B11 and the A/B split ----------------------------------------------


def b11(u, lat: HexLattice = DEFAULT_LATTICE, terms: int = 16, exclusion: float = 1e-6):
    """Real harmonic third order form on C minus the lattice points with Im <= 0."""
    u = np.asarray(u, dtype=complex)
    P = lat.varpi
    w = u / P - 0.5j * SQRT3
    poly = (math.pi / SQRT3) * (2 * (w * w).real + 1)
    out = (poly + s_combined(u, lat, terms, exclusion=exclusion)
           + s_combined(P * RHO - u, lat, terms, exclusion=exclusion))
    return complex(out) if np.ndim(out) == 0 else out


def B11(z, lat: HexLattice = DEFAULT_LATTICE):
    return b11(H_form(z), lat)


def a_direct(u, lat: HexLattice = DEFAULT_LATTICE):
    """Holomorphic part of b11 on 0 < Im u < varpi sqrt(3)/2."""
    u = np.asarray(u, dtype=complex)
    P = lat.varpi
    if np.any(u.imag <= 0) or np.any(u.imag >= 0.5 * P * SQRT3):
        raise RegionError("a_direct needs 0 < Im u < varpi sqrt(3)/2")
    out = (math.pi / (2 * SQRT3) + (math.pi / SQRT3) * (u / P - 0.5j * SQRT3) ** 2
           + S_series(u, lat) + S_series(P * RHO - u, lat))
    return complex(out) if np.ndim(out) == 0 else out


def _S_prime(u, lat: HexLattice, terms: int = 24):
    """S'(u) continued to all of C minus the singular set."""
    u = np.asarray(u, dtype=complex)
    P, Q = lat.varpi, lat.nome
    half = 0.5 * P * SQRT3
    k = np.maximum(np.ceil((half - u.imag) / half), 1).astype(int)
    xi = np.exp(2j * math.pi * u / P)
    acc = np.zeros(u.shape, dtype=complex)
    for j in range(int(np.max(k))):
        t = xi * Q**j
        acc = acc - np.where(j < k, t / (1 - t), 0)
    xs = np.exp(2j * math.pi * (u + k * P * RHO) / P)
    m = np.arange(1, terms + 1)
    coeff = 1.0 / (Q**m - 1)
    direct = np.polyval(np.concatenate([coeff[::-1], [0.0]]), xs)
    return (2j * math.pi / P) * (direct + acc)


def a_prime(u, lat: HexLattice = DEFAULT_LATTICE):
    u = np.asarray(u, dtype=complex)
    P = lat.varpi
    return ((2 * math.pi / (SQRT3 * P)) * (u / P - 0.5j * SQRT3)
            + _S_prime(u, lat) - _S_prime(P * RHO - u, lat))


# reference point in the standard fundamental domain whose image lies in the
# upper half of the fundamental hexagon
Z_REF = complex(-0.25, 1.2)


@lru_cache(maxsize=4)
def _a_at_ref(lat: HexLattice) -> complex:
    return a_direct(H_form(Z_REF), lat)


def A_form(z, lat: HexLattice = DEFAULT_LATTICE, path: PathSpec | None = None) -> complex:
    """Holomorphic A, continued from the defining region along a path from Z_REF."""
    path = PathSpec(base_point=Z_REF) if path is None else path
    if complex(path.base_point) != Z_REF:
        raise ValueError("A_form paths must start at Z_REF")

    def g(tau):
        return a_prime(H_form(tau), lat) * H_derivative(tau)
    return _a_at_ref(lat) + path_integral(g, complex(z), path)


def AB_forms(z, lat: HexLattice = DEFAULT_LATTICE, path: PathSpec | None = None):
    """(A, B) with A holomorphic, B antiholomorphic and A + B = B11."""
    A = A_form(z, lat, path)
    return A, B11(z, lat) - A


def ab_table(z, lat: HexLattice = DEFAULT_LATTICE) -> dict:
    """The four combinations A|(g-1) + f(...), B|(g-1) + f(...) for g in {C, D}.

    Each is constant in z; the constants themselves are only reported.
    """
    f, P = lat.f_const, lat.varpi
    z = complex(z)
    Hz = H_form(z)
    A0, B0 = AB_forms(z, lat)
    out = {}
    for g, lam_bar in (("C", RHO.conjugate() * P), ("D", RHO * P)):
        Ag, Bg = AB_forms(complex(gcom_act(g, z)), lat)
        out[f"A|({g}-1)"] = Ag - A0 + f * (lam_bar * Hz + P**2 / 2)
        out[f"B|({g}-1)"] = Bg - B0 + f * (lam_bar.conjugate() * np.conj(Hz) + P**2 / 2)
    return out


# -- the covering-group form L ----------------------------------------------------

ALPHA = {"t": math.pi / 6, "s": -math.pi / 2, "z": math.pi}


def L_cov(z, theta=0.0, variant: str = "L", N: int = 37, k: int = 1, y_min: float = Y_GUARD):
    """L(z, theta) = log(y)/2 + 2 log eta(z) + i theta and its variants.

    variant: ``"L"``; ``"L1"`` for L(z, theta) + L(Nz, theta); ``"ImL"``;
    ``"power"`` for L^k.
    """
    z = np.asarray(z, dtype=complex)
    _check_height(z, y_min)

    def base(zz):
        return 0.5 * np.log(zz.imag) + 2 * _eta.log_eta(zz, y_min=min(y_min, 0.5 * float(np.min(zz.imag)))) + 1j * np.asarray(theta)

    if variant == "L":
        out = base(z)
    elif variant == "L1":
        out = base(z) + base(N * z)
    elif variant == "ImL":
        out = base(z).imag.astype(complex)
    elif variant == "power":
        out = base(z) ** k
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return complex(out) if np.ndim(out) == 0 else out


# -- the two-variable family h(v, w; u) -------------------------------------


def _G(mu, u, w, lat: HexLattice, terms: int):
    P, Q = lat.varpi, lat.nome
    eta = cmath.exp(-w * P * SQRT3)
    total = 0j
    for m in range(-terms, terms + 1):
        # xi^(mu+m) means exp(2 pi i u (mu+m)/varpi), not a principal power
        total += cmath.exp(2j * math.pi * u * (mu + m) / P) / ((mu + m) * (eta * Q**m - 1))
    return total


def _h_terms(u: complex, lat: HexLattice, tol: float = 1e-17) -> int:
    # |xi| = e^{-2 pi Im u/varpi}; the m < 0 tail decays like (|q|/|xi|)^|m|
    r_plus = math.exp(-2 * math.pi * u.imag / lat.varpi)
    rate = max(r_plus, abs(lat.nome) / r_plus)
    return int(math.ceil(math.log(tol) / math.log(rate))) + 2


def h_vw(v: complex, w: complex, u: complex, lat: HexLattice = DEFAULT_LATTICE,
         terms: int | None = None) -> complex:
    """h(v, w; u) = G_mu(u, w) + G_{-mu}(-conj u, -v), mu = (v + w) varpi / (2 pi)."""
    P = lat.varpi
    if not 0 < u.imag < 0.5 * P * SQRT3:
        raise RegionError("h_vw needs 0 < Im u < varpi sqrt(3)/2")
    mu = (v + w) * P / (2 * math.pi)
    if abs(mu - round(mu.real)) < 1e-12:
        raise SingularityError("mu = (v + w) varpi / 2 pi is an integer")
    if abs(w) < 1e-14 or abs(v) < 1e-14:
        raise SingularityError("v and w must be nonzero")
    if terms is None:
        terms = min(_h_terms(complex(u), lat), 4000)
    return _G(mu, u, w, lat, terms) + _G(-mu, -u.conjugate(), -v, lat, terms)


# -- handles -------------------------------------------------------------------


def _upper(p) -> bool:
    return complex(p).imag >= Y_GUARD


def _reducible(p) -> bool:
    return complex(p).imag >= REDUCE_GUARD


def _cov_valid(p: PointHTheta) -> bool:
    return p.z.imag >= Y_GUARD


def form_handle(name: str, lat: HexLattice = DEFAULT_LATTICE, N: int = 37) -> FormHandle:
    """Forms by name: H, W, K, B11, A, B, L, L1, ImL, L^k."""
    if name == "H":
        return FormHandle("H", lambda z: H_form(z), weight_info=(0, "strict"), validity=_reducible)
    if name == "W":
        return FormHandle("W", lambda z: W_form(z, lat), validity=_reducible)
    if name == "K":
        return FormHandle("K", lambda z: K_form(z, lat=lat), validity=lambda z: complex(z).imag >= PATH_Y_MIN)
    if name == "B11":
        return FormHandle("B11", lambda z: B11(z, lat), eigen_info=("Laplace", 0.0), validity=_reducible)
    if name == "A":
        return FormHandle("A", lambda z: A_form(z, lat), validity=lambda z: complex(z).imag >= PATH_Y_MIN)
    if name == "B":
        return FormHandle("B", lambda z: AB_forms(z, lat)[1], validity=lambda z: complex(z).imag >= PATH_Y_MIN)
    if name == "L":
        return FormHandle("L", lambda p: L_cov(p.z, p.theta), "covering_group", (0, "generalised"),
                          ("Casimir image", 0.5), _cov_valid)  # Casimir L is the constant 1/2
    if name == "L1":
        return FormHandle("L1", lambda p: L_cov(p.z, p.theta, "L1", N=N), "covering_group",
                          (0, "generalised"), None, _cov_valid)
    if name == "ImL":
        return FormHandle("ImL", lambda p: L_cov(p.z, p.theta, "ImL"), "covering_group",
                          (0, "generalised"), ("Casimir", 0.0), _cov_valid)
    if name.startswith("L^"):
        k = int(name[2:])
        return FormHandle(name, lambda p: L_cov(p.z, p.theta, "power", k=k), "covering_group",
                          (0, "generalised"), None, _cov_valid)
    raise ValueError(f"unknown form {name!r}")


FORM_NAMES = ("H", "W", "K", "B11", "A", "B", "L", "L1", "ImL", "L^k")
