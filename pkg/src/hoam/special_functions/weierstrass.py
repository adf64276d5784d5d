"""Weierstrass zeta/wp on the hexagonal lattice varpi*Z[rho] and the series S(u).

Primary evaluation uses the trigonometric (q-) expansion in the period
``varpi`` with nome ``Q = e^{2 pi i rho} = -e^{-pi sqrt 3}``; arguments are
first reduced by lattice vectors, whose quasi-periods are measured from the
unreduced expansion inside its convergence strip.  Symmetric lattice sums are
available as an independent route (``method="lattice"``).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import special as sp

from . import kernels

RHO = cmath.exp(1j * math.pi / 3)
SQRT3 = math.sqrt(3.0)


class SingularityError(ValueError):
    """Argument too close to a lattice point / logarithmic singularity."""


def varpi_closed_form() -> float:
    """Real period of H: sqrt(pi) Gamma(1/6) / (sqrt(3) Gamma(2/3)) = 4.2065..."""
    return math.sqrt(math.pi) * sp.gamma(1 / 6) / (SQRT3 * sp.gamma(2 / 3))


@dataclass(frozen=True)
class HexLattice:
    varpi: float = field(default_factory=varpi_closed_form)
    series_terms: int = 40

    @property
    def rho(self) -> complex:
        return RHO

    @property
    def nome(self) -> float:
        """Q = e^{2 pi i rho} = -e^{-pi sqrt 3}."""
        return -math.exp(-math.pi * SQRT3)

    @property
    def f_const(self) -> float:
        return -2 * math.pi / (self.varpi**2 * SQRT3)

    @property
    def a_const(self) -> float:
        return 2 * math.pi / (self.varpi * SQRT3)

    @property
    def periods(self) -> tuple[complex, complex]:
        return complex(self.varpi), self.varpi * RHO

    def coordinates(self, u):
        """Real (m, n) with u = m*varpi + n*varpi*rho."""
        w = np.asarray(u, dtype=complex) / self.varpi
        n = w.imag / RHO.imag
        m = w.real - n * RHO.real
        return m, n

    def nearest(self, u):
        m, n = self.coordinates(u)
        best = None
        for dm in (0, 1):
            for dn in (0, 1):
                mm = np.floor(m) + dm
                nn = np.floor(n) + dn
                d = np.abs(u - self.varpi * (mm + nn * RHO))
                if best is None:
                    best = (d, mm, nn)
                else:
                    pick = d < best[0]
                    best = (np.where(pick, d, best[0]), np.where(pick, mm, best[1]),
                            np.where(pick, nn, best[2]))
        return best

    # -- trigonometric expansion -------------------------------------------

    @cached_property
    def _lambert(self) -> np.ndarray:
        n = np.arange(1, self.series_terms + 1)
        Q = self.nome
        return Q**n / (1 - Q**n)

    @cached_property
    def e2(self) -> float:
        n = np.arange(1, self.series_terms + 1)
        return float(1 - 24 * np.sum(n * self._lambert))

    @cached_property
    def _linear_coeff(self) -> float:
        # zeta(u) = c u + (pi/P) cot(pi u/P) + (4 pi/P) sum L_n sin(2 pi n u/P)
        return math.pi**2 * self.e2 / (3 * self.varpi**2)

    def zeta_strip(self, u):
        """Expansion valid for |Im u| < varpi*sqrt(3)/2 (no lattice reduction)."""
        u = np.asarray(u, dtype=complex)
        P = self.varpi
        v = math.pi * u / P
        n = np.arange(1, self.series_terms + 1)
        sines = np.sin(2 * np.multiply.outer(v, n))
        out = self._linear_coeff * u + (math.pi / P) / np.tan(v) + (4 * math.pi / P) * (sines @ self._lambert)
        return out

    def wp_strip(self, u):
        u = np.asarray(u, dtype=complex)
        P = self.varpi
        v = math.pi * u / P
        n = np.arange(1, self.series_terms + 1)
        cosines = np.cos(2 * np.multiply.outer(v, n))
        return (-self._linear_coeff + (math.pi / P) ** 2 / np.sin(v) ** 2
                - (8 * math.pi**2 / P**2) * (cosines @ (n * self._lambert)))

    @cached_property
    def quasi_periods(self) -> tuple[complex, complex]:
        """(hbar(varpi), hbar(rho varpi)) from zeta(u0 + w) - zeta(u0) at generic u0."""
        w1, w2 = self.periods
        u1 = 0.2137 * self.varpi + 0.1011j * self.varpi
        u2 = -0.5 * w2 + 0.1371 * self.varpi + 0.0173j * self.varpi
        h1 = complex(self.zeta_strip(u1 + w1) - self.zeta_strip(u1))
        h2 = complex(self.zeta_strip(u2 + w2) - self.zeta_strip(u2))
        return h1, h2

    def quasi_period(self, omega) -> complex:
        m, n = self.coordinates(omega)
        mi, ni = round(float(m)), round(float(n))
        if abs(m - mi) > 1e-9 or abs(n - ni) > 1e-9:
            raise ValueError(f"{omega} is not a lattice vector")
        h1, h2 = self.quasi_periods
        return mi * h1 + ni * h2

    def _reduce(self, u, exclusion: float):
        d, m, n = self.nearest(u)
        if np.any(d < exclusion * self.varpi):
            raise SingularityError("argument within the exclusion radius of a lattice point")
        u0 = u - self.varpi * (m + n * RHO)
        return u0, m, n

    def zeta(self, u, method: str = "series", exclusion: float = 1e-6, N: int = 120):
        if method == "lattice":
            return self.lattice_sums(u, N)[0]
        u = np.asarray(u, dtype=complex)
        u0, m, n = self._reduce(u, exclusion)
        h1, h2 = self.quasi_periods
        out = self.zeta_strip(u0) + m * h1 + n * h2
        return complex(out) if out.ndim == 0 else out

    def wp(self, u, method: str = "series", exclusion: float = 1e-6, N: int = 120):
        if method == "lattice":
            return self.lattice_sums(u, N)[1]
        u = np.asarray(u, dtype=complex)
        u0, _, _ = self._reduce(u, exclusion)
        out = self.wp_strip(u0)
        return complex(out) if out.ndim == 0 else out

    def lattice_sums(self, u, N: int = 120) -> tuple[complex, complex]:
        """Symmetric hexagonal partial sums (zeta, wp) up to hex radius N."""
        u = complex(u)
        d, _, _ = self.nearest(u)
        if d < 1e-6 * self.varpi:
            raise SingularityError("argument too close to a lattice point")
        w1, w2 = self.periods
        return kernels.hex_lattice_sums(u, w1, w2, int(N))


def weierstrass(kind: str, u, lat: HexLattice | None = None, **kw):
    lat = DEFAULT_LATTICE if lat is None else lat
    if kind == "zeta":
        return lat.zeta(u, **kw)
    if kind == "p":
        return lat.wp(u, **kw)
    if kind == "quasi_period":
        return lat.quasi_period(u)
    raise ValueError(f"unknown kind {kind!r}")


# -- the series S(u) ---------------------------------------------------------


def _S_direct(u, lat: HexLattice, terms: int):
    u = np.asarray(u, dtype=complex)
    m = np.arange(1, terms + 1)
    Q = lat.nome
    xi = np.exp(2j * math.pi * u / lat.varpi)
    coeff = 1.0 / (m * (Q**m - 1))
    return np.polyval(np.concatenate([coeff[::-1], [0.0]]), xi)


def _shift_count(u, lat: HexLattice):
    half_height = 0.5 * lat.varpi * SQRT3
    k = np.ceil((half_height - np.asarray(u).imag) / half_height)
    return np.maximum(k, 1).astype(int)


def S_series(u, lat: HexLattice | None = None, terms: int = 16):
    """S(u) for Im u > 0 via one shift: S(u) = S(u + varpi rho) + log(1 - xi)."""
    lat = DEFAULT_LATTICE if lat is None else lat
    u = np.asarray(u, dtype=complex)
    if np.any(u.imag <= 0):
        raise ValueError("raw S(u) is single-valued only for Im u > 0")
    xi = np.exp(2j * math.pi * u / lat.varpi)
    out = _S_direct(u + lat.varpi * RHO, lat, terms) + np.log1p(-xi)
    return complex(out) if out.ndim == 0 else out


def s_combined(u, lat: HexLattice | None = None, terms: int = 16, steps=None,
               exclusion: float = 1e-6):
    """S(u) + S(-conj u), continued to all of C minus {lambda in Lambda, Im lambda <= 0}."""
    lat = DEFAULT_LATTICE if lat is None else lat
    u = np.asarray(u, dtype=complex)
    k = _shift_count(u, lat) if steps is None else np.broadcast_to(np.asarray(steps), u.shape)
    kmax = int(np.max(k))
    Q = lat.nome
    xi = np.exp(2j * math.pi * u / lat.varpi)
    acc = np.zeros(u.shape)
    for j in range(kmax):
        active = j < k
        w = 1 - xi * Q**j
        if np.any(active & (np.abs(w) < 2 * math.pi * exclusion)):
            raise SingularityError("argument at a logarithmic singularity of S(u) + S(-conj u)")
        acc = acc + np.where(active, 2 * np.log(np.abs(w)), 0.0)
    shifted = u + k * lat.varpi * RHO
    out = 2 * _S_direct(shifted, lat, terms).real + acc
    out = out.astype(complex)
    return complex(out) if out.ndim == 0 else out


DEFAULT_LATTICE = HexLattice()
