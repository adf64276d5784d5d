"""Pure Python/numpy versions of the compiled kernels (same signatures)."""

import numpy as np


def hex_lattice_sums(u: complex, w1: complex, w2: complex, N: int):
    m = np.arange(-N, N + 1)
    M, Nn = np.meshgrid(m, m, indexing="ij")
    keep = (np.abs(M + Nn) <= N) & ~((M == 0) & (Nn == 0))
    om = (M[keep] * w1 + Nn[keep] * w2).astype(complex)
    d = u - om
    z = 1.0 / u + np.sum(1.0 / d + 1.0 / om + u / om**2)
    p = 1.0 / u**2 + np.sum(1.0 / d**2 - 1.0 / om**2)
    return complex(z), complex(p)


def divisor_power_table(nmax: int, power: complex):
    out = np.zeros(nmax + 1, dtype=complex)
    for d in range(1, nmax + 1):
        out[d::d] += np.exp(power * np.log(d))
    return out


def eta_product_coefficients(power: int, N: int):
    c = [0] * N
    c[0] = 1
    for n in range(1, N):
        for _ in range(power):
            for j in range(N - 1, n - 1, -1):
                c[j] -= c[j - n]
    return np.array(c, dtype=np.int64)
