"""Special-function kit: eta, Weierstrass functions, Whittaker kernel, zeta."""

from .eta import eta4, eta4_reduced, eta_power_series, log_eta, log_eta_product, sigma_table
from .kernels import BACKEND
from .kit import (PoleError, besselK, completed_zeta, gamma, gamma0, inv_completed_zeta,
                  kummer1F1, laurent_constants, rgamma, riemann_zeta, special_kit)
from .quadrature import DEFAULT as DEFAULT_PRECISION
from .quadrature import PrecisionConfig, cauchy_derivative, cauchy_taylor, cauchy_taylor_2d
from .weierstrass import (DEFAULT_LATTICE, RHO, HexLattice, S_series, SingularityError,
                          s_combined, varpi_closed_form, weierstrass)
from .whittaker import whittaker_dW_ds, whittaker_W

__all__ = [
    "BACKEND", "DEFAULT_LATTICE", "DEFAULT_PRECISION", "HexLattice", "PoleError",
    "PrecisionConfig", "RHO", "S_series", "SingularityError", "besselK", "cauchy_derivative",
    "cauchy_taylor", "cauchy_taylor_2d", "completed_zeta", "eta4", "eta4_reduced", "eta_power_series",
    "gamma", "gamma0", "inv_completed_zeta", "kummer1F1", "laurent_constants", "log_eta",
    "log_eta_product", "rgamma", "riemann_zeta", "s_combined", "sigma_table", "special_kit",
    "varpi_closed_form", "weierstrass", "whittaker_W", "whittaker_dW_ds",
]
