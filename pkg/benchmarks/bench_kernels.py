"""Time the compiled kernels against the Python fallback and check they agree.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from hoam.special_functions import DEFAULT_LATTICE, kernels
from hoam.special_functions import _kernels_py as py

W1, W2 = DEFAULT_LATTICE.periods
CASES = {
    "hex_lattice_sums(N=120)": lambda m: m.hex_lattice_sums(0.3 + 0.2j, W1, W2, 120),
    "divisor_power_table(20000)": lambda m: m.divisor_power_table(20000, -1.0 + 0j),
    "eta_product_coefficients(4, 4000)": lambda m: m.eta_product_coefficients(4, 4000),
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    compiled = kernels.compiled_backend
    print(f"active backend: {kernels.BACKEND}")
    print(f"{'kernel':36s} {'python [ms]':>12s} {'compiled [ms]':>14s} {'speedup':>8s}  agree")
    for name, fn in CASES.items():
        t_py = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat)) * 1e3
        if compiled is None:
            print(f"{name:36s} {t_py:12.2f} {'n/a':>14s} {'':>8s}  -")
            continue
        t_c = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=args.repeat)) * 1e3
        agree = np.allclose(np.asarray(fn(py)), np.asarray(fn(compiled)), rtol=1e-12, atol=0)
        print(f"{name:36s} {t_py:12.2f} {t_c:14.2f} {t_py / t_c:8.1f}  {agree}")


if __name__ == "__main__":
    main()
