"""Write the q-expansion of the weight-2 newform of level 37 attached to y^2 + y = x^3 - x.

a_p = p - #{(x, y) mod p on the affine curve}; prime powers by the Hecke
recursion (a_{p^k} = a_p^k at the bad prime); extended multiplicatively.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

LEVEL = 37


def primes_upto(n: int) -> list[int]:
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return [int(p) for p in np.nonzero(sieve)[0]]


def a_prime(p: int) -> int:
    x = np.arange(p, dtype=np.int64)
    rhs = (x * x % p * x - x) % p
    lhs = (x * x + x) % p
    counts = np.bincount(lhs, minlength=p)  # number of y with y^2 + y = c
    return p - int(counts[rhs].sum())


def coefficients(nmax: int) -> list[int]:
    a = [0] * (nmax + 1)
    a[1] = 1
    for p in primes_upto(nmax):
        ap = a_prime(p)
        pk, prev, cur = p, 1, ap
        while pk <= nmax:
            a[pk] = cur
            nxt = ap * cur - (0 if p == LEVEL else p) * prev
            prev, cur = cur, nxt
            pk *= p
    # multiplicative extension via smallest prime factor
    spf = list(range(nmax + 1))
    for p in primes_upto(int(nmax**0.5) + 1):
        for m in range(p * p, nmax + 1, p):
            if spf[m] == m:
                spf[m] = p
    for n in range(2, nmax + 1):
        p = spf[n]
        pk = p
        while n % (pk * p) == 0:
            pk *= p
        if pk != n:
            a[n] = a[pk] * a[n // pk]
    return a


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=2000)
    ap.add_argument("--out", default="-")
    args = ap.parse_args(argv)
    a = coefficients(args.nmax)
    lines = [f"# level: {LEVEL}", "# weight: 2", "# label: 37a", "# fricke_sign: 1"]
    lines += [f"{n} {a[n]}" for n in range(1, args.nmax + 1)]
    text = "\n".join(lines) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
