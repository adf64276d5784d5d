"""Exact algebra on presentations of Fuchsian groups and their central lifts.

Words are tuples of ``(generator, exponent)`` letters.  Generator ids are
strings: ``"a1" .. "a{ngen-1}"`` for the free parabolic/hyperbolic part,
``"z"`` for the central element and ``"e1" .. "e{nell}"`` for the elliptic
generators (which satisfy ``e_j ** v_j == z``).

Everything here is exact: coefficients are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Letter = tuple[str, int]
Word = tuple[Letter, ...]
QTuple = tuple[int, ...]

CENTRAL = "z"


@dataclass(frozen=True)
class Presentation:
    """Canonical generators of a cofinite Fuchsian group with cusps."""

    n_par: int = 1
    n_ell: int = 0
    genus: int = 0
    elliptic_orders: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n_par < 1:
            raise ValueError("at least one cusp is required (n_par >= 1)")
        if self.genus < 0 or self.n_ell < 0:
            raise ValueError("genus and n_ell must be non-negative")
        if len(self.elliptic_orders) != self.n_ell:
            raise ValueError("elliptic_orders must have length n_ell")
        if any(v < 2 for v in self.elliptic_orders):
            raise ValueError("elliptic orders must be >= 2")

    @property
    def ngen(self) -> int:
        return self.n_par + 2 * self.genus

    @property
    def free_generators(self) -> tuple[str, ...]:
        return tuple(f"a{j}" for j in range(1, self.ngen))

    @property
    def generators(self) -> tuple[str, ...]:
        ell = tuple(f"e{j}" for j in range(1, self.n_ell + 1))
        return self.free_generators + (CENTRAL,) + ell

    def order_of(self, gen: str) -> int:
        return self.elliptic_orders[int(gen[1:]) - 1]

    @classmethod
    def free(cls, ngen: int) -> "Presentation":
        """Free group on ``ngen - 1`` letters plus the central generator."""
        return cls(n_par=ngen)

    @classmethod
    def modular(cls) -> "Presentation":
        """The lift of PSL2(Z): one cusp, elliptic points of order 3 and 2."""
        return cls(n_par=1, n_ell=2, genus=0, elliptic_orders=(3, 2))


# ---------------------------------------------------------------------------
# words

_LETTER = re.compile(r"^([A-Za-z])(\d*)(?:\^(-?\d+))?$")


def parse_word(text: str) -> Word:
    """Parse ``"a1*a2^-1*z^2"``; ``"1"`` or ``""`` is the empty word."""
    text = text.strip()
    if text in ("", "1"):
        return ()
    letters = []
    for chunk in text.split("*"):
        m = _LETTER.match(chunk.strip())
        if m is None:
            raise ValueError(f"cannot parse letter {chunk!r}")
        gen = m.group(1) + m.group(2)
        exp = int(m.group(3)) if m.group(3) is not None else 1
        if exp != 0:
            letters.append((gen, exp))
    return tuple(letters)


def format_word(w: Word) -> str:
    if not w:
        return "1"
    return "*".join(g if e == 1 else f"{g}^{e}" for g, e in w)


def _free_reduce(letters: Iterable[Letter]) -> list[Letter]:
    out: list[Letter] = []
    for g, e in letters:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            e += out.pop()[1]
            if e == 0:
                continue
        out.append((g, e))
    return out


def reduce_word(w: Word | str, p: Presentation) -> Word:
    """Normal form: freely reduced, elliptic exponents in ``[1, v)``,
    all powers of the central generator collected at the right end."""
    if isinstance(w, str):
        w = parse_word(w)
    valid = set(p.generators)
    for g, _ in w:
        if g not in valid:
            raise ValueError(f"unknown generator {g!r} for {p}")
    central = 0
    letters = list(w)
    while True:
        body = []
        for g, e in letters:
            if g == CENTRAL:
                central += e
            elif g.startswith("e"):
                quo, rem = divmod(e, p.order_of(g))
                central += quo
                if rem:
                    body.append((g, rem))
            else:
                body.append((g, e))
        reduced = _free_reduce(body)
        stable = all(not g.startswith("e") or 0 < e < p.order_of(g) for g, e in reduced)
        letters = reduced
        if stable:
            break
    if central:
        letters.append((CENTRAL, central))
    return tuple(letters)


def multiply(u: Word, v: Word, p: Presentation) -> Word:
    return reduce_word(tuple(u) + tuple(v), p)


def inverse(w: Word, p: Presentation) -> Word:
    return reduce_word(tuple((g, -e) for g, e in reversed(w)), p)


# ---------------------------------------------------------------------------
# dimension formula and basis tuples


def n_dim(ngen: int, q: int) -> int:
    """Dimension of the q-th graded piece of the augmentation ideal of the lift."""
    if ngen < 1 or q < 1:
        raise ValueError("need ngen >= 1 and q >= 1")
    return sum((ngen - 1) ** m for m in range(q + 1))


def enumerate_basis_tuples(ngen: int, q: int) -> list[QTuple]:
    """All q-tuples over ``1..ngen`` whose entries equal to ``ngen`` trail,
    in lexicographic order."""
    if ngen < 1 or q < 1:
        raise ValueError("need ngen >= 1 and q >= 1")
    out = []
    for head_len in range(q + 1):
        for head in itertools.product(range(1, ngen), repeat=head_len):
            out.append(tuple(head) + (ngen,) * (q - head_len))
    out.sort()
    return out


def is_qtuple(t: Sequence[int], ngen: int) -> bool:
    seen_top = False
    for x in t:
        if not 1 <= x <= ngen:
            return False
        if x == ngen:
            seen_top = True
        elif seen_top:
            return False
    return True


# ---------------------------------------------------------------------------
# Q-polynomials


@dataclass(frozen=True)
class QPolynomial:
    """Polynomial with exact rational coefficients in ascending powers."""

    coefficients: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def shift(self, h=1) -> "QPolynomial":
        """Coefficients of X -> P(X + h)."""
        n = len(self.coefficients)
        out = [Fraction(0)] * n
        for k, c in enumerate(self.coefficients):
            for j in range(k + 1):
                out[j] += c * _binom_int(k, j) * Fraction(h) ** (k - j)
        return QPolynomial(tuple(out))

    def __sub__(self, other: "QPolynomial") -> "QPolynomial":
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (Fraction(0),) * (n - len(self.coefficients))
        b = other.coefficients + (Fraction(0),) * (n - len(other.coefficients))
        coeffs = [x - y for x, y in zip(a, b)]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        return QPolynomial(tuple(coeffs))

    def __str__(self):
        terms = [f"({c})*X^{k}" for k, c in enumerate(self.coefficients) if c]
        return " + ".join(terms) or "0"


def _binom_int(n: int, k: int) -> int:
    from math import comb
    return comb(n, k)


@lru_cache(maxsize=None)
def q_polynomial(q: int) -> QPolynomial:
    """Q_q with Q_0 = 1, Q_q(0) = 0 and Q_{q+1}(X+1) - Q_{q+1}(X) = Q_q(X).

    Built from the falling factorial X(X-1)...(X-q+1)/q!.
    """
    if q < 0:
        raise ValueError("q must be >= 0")
    coeffs = [Fraction(1)]
    for j in range(q):
        # multiply by (X - j) / (j + 1)
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] += c / (j + 1)
            nxt[k] -= c * j / (j + 1)
        coeffs = nxt
    return QPolynomial(tuple(coeffs))


def q_value(q: int, x):
    """Q_q(x) for exact or floating/complex x."""
    return q_polynomial(q)(x)


# ---------------------------------------------------------------------------
# truncated non-commutative power series (Magnus embedding)


@dataclass(frozen=True)
class TruncatedNCSeries:
    max_degree: int
    terms: dict = field(default_factory=dict)

    @classmethod
    def one(cls, max_degree: int) -> "TruncatedNCSeries":
        return cls(max_degree, {(): Fraction(1)})

    @classmethod
    def letter_power(cls, j: int, m: int, max_degree: int) -> "TruncatedNCSeries":
        # (1 + X_j)^m = sum_l Q_l(m) X_j^l, valid for negative m as well
        terms = {}
        for l in range(max_degree + 1):
            c = q_value(l, Fraction(m))
            if c:
                terms[(j,) * l] = c
        return cls(max_degree, terms)

    def __mul__(self, other: "TruncatedNCSeries") -> "TruncatedNCSeries":
        d = min(self.max_degree, other.max_degree)
        out: dict = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                if len(ka) + len(kb) > d:
                    continue
                key = ka + kb
                out[key] = out.get(key, 0) + ca * cb
        return TruncatedNCSeries(d, {k: v for k, v in out.items() if v})

    def coefficient(self, key: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(key), Fraction(0))


def phi0(w: Word) -> Word:
    """Image in the free quotient: delete central and elliptic letters."""
    return tuple(_free_reduce((g, e) for g, e in w if g.startswith("a")))


def magnus(w: Word, max_degree: int) -> TruncatedNCSeries:
    acc = TruncatedNCSeries.one(max_degree)
    for g, e in w:
        if not g.startswith("a"):
            raise ValueError("Magnus image is defined on free generators only")
        acc = acc * TruncatedNCSeries.letter_power(int(g[1:]), e, max_degree)
    return acc


def psi(w: Word, j: int, p: Presentation) -> Fraction:
    """Homomorphism psi_j to Q: psi_j(a_j') = delta, psi_ngen(z) = 1,
    psi_ngen(e_l) = 1/v_l and psi_j(z) = 0 for j < ngen."""
    total = Fraction(0)
    for g, e in w:
        if g.startswith("a"):
            if int(g[1:]) == j:
                total += e
        elif j == p.ngen:
            if g == CENTRAL:
                total += e
            else:
                total += Fraction(e, p.order_of(g))
    return total


def g_function(index: QTuple, w: Word) -> Fraction:
    index = tuple(index)
    if not index:
        return Fraction(1)
    return magnus(w, len(index)).coefficient(index)


def f_function(index: QTuple, w: Word, p: Presentation) -> Fraction:
    index = tuple(index)
    if not is_qtuple(index, p.ngen):
        raise ValueError(f"{index} is not a q-tuple for ngen={p.ngen}")
    m = sum(1 for x in index if x == p.ngen)
    head = index[: len(index) - m]
    return g_function(head, phi0(w)) * q_value(m, psi(w, p.ngen, p))


def phi_function(lm: tuple[int, int], ab: tuple[int, int]) -> Fraction:
    l, m = lm
    a, b = ab
    return q_value(l, Fraction(a)) * q_value(m, Fraction(b))


def dual_function(kind: str, index, arg, p: Presentation | None = None) -> Fraction:
    """Evaluate g_i, f_i or phi^(l,m) exactly.

    ``kind='g'``: ``arg`` is a word in the free generators only.
    ``kind='f'``: ``arg`` is any word of ``p``.
    ``kind='phi'``: ``index=(l, m)``, ``arg=(a, b)`` exponents of z^a t^b.
    """
    if kind == "phi":
        if len(index) != 2 or len(arg) != 2:
            raise ValueError("phi needs index (l, m) and arg (a, b)")
        return phi_function(tuple(index), tuple(arg))
    if isinstance(arg, str):
        arg = parse_word(arg)
    if kind == "g":
        if any(not g.startswith("a") for g, _ in arg):
            raise ValueError("g_i takes words in the free generators only")
        if p is not None:
            arg = reduce_word(arg, p)
            if any(x < 1 or x >= p.ngen for x in index):
                raise ValueError("g index entries must lie in 1..ngen-1")
        return g_function(index, arg)
    if kind == "f":
        if p is None:
            raise ValueError("f_i needs a presentation")
        return f_function(index, reduce_word(arg, p), p)
    raise ValueError(f"unknown kind {kind!r}")


def basis_word(index: QTuple, ngen: int) -> tuple[Word, ...]:
    """The generator words alpha_{i(1)}, ..., alpha_{i(q)}; ngen maps to z."""
    return tuple(((CENTRAL, 1),) if x == ngen else ((f"a{x}", 1),) for x in index)
