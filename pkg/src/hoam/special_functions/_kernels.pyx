# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: hexagonal lattice sums and divisor-power sieves."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def hex_lattice_sums(double complex u, double complex w1, double complex w2, int N):
    """Symmetric Weierstrass sums over the points m*w1 + n*w2 with
    max(|m|, |n|, |m+n|) <= N, excluding 0.  Returns (zeta, wp)."""
    cdef int m, n, lo, hi
    cdef double complex om, d, z_acc = 0, p_acc = 0
    for m in range(-N, N + 1):
        lo = -N if -N > -N - m else -N - m
        hi = N if N < N - m else N - m
        for n in range(lo, hi + 1):
            if m == 0 and n == 0:
                continue
            om = m * w1 + n * w2
            d = u - om
            z_acc += 1.0 / d + 1.0 / om + u / (om * om)
            p_acc += 1.0 / (d * d) - 1.0 / (om * om)
    return 1.0 / u + z_acc, 1.0 / (u * u) + p_acc


def divisor_power_table(int nmax, double complex power):
    """sigma_power(n) = sum_{d | n} d**power for n = 0..nmax (entry 0 unused)."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.zeros(nmax + 1, dtype=np.complex128)
    cdef int d, m
    cdef double complex dp
    for d in range(1, nmax + 1):
        dp = np.exp(power * np.log(d))
        for m in range(d, nmax + 1, d):
            out[m] += dp
    return out


def eta_product_coefficients(int power, int N):
    """Integer coefficients of prod_{n>=1} (1 - q^n)^power up to q^(N-1)."""
    cdef cnp.ndarray[cnp.int64_t, ndim=1] c = np.zeros(N, dtype=np.int64)
    cdef int n, k, j
    c[0] = 1
    for n in range(1, N):
        for k in range(power):
            # multiply in place by (1 - q^n), highest degree first
            for j in range(N - 1, n - 1, -1):
                c[j] -= c[j - n]
    return c
