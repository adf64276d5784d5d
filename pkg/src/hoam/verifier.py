"""Difference products, perturbation and order checks, operator residuals.

``f|(g_1 - 1)...(g_q - 1)(p) = sum_S (-1)^{q-|S|} f(prod_{i in S} g_i . p)``
with the product taken in ascending order, i.e. the right action
``(f|g)(p) = f(g p)``.  Composite elements are formed exactly in the group
before ``f`` is evaluated.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .covering_group import (CoveringElement, PointHTheta, apply, compose_all, lie_apply, lift,
                             weight_laplacian, word_element)
from .explicit_forms import GCOM_GENERATORS, gcom_matrix
from .group_algebra import (Presentation, basis_word, dual_function, enumerate_basis_tuples,
                            format_word, multiply, parse_word)
from .handles import FormHandle, RegionError
from .parallel import pmap

ACTIONS = ("left_translation_cov", "mobius_weight_k", "torus_translation", "group_word")

SL2Z_GENERATORS = {"t": ((1, 1), (0, 1)), "s": ((0, -1), (1, 0))}
_GCOM_LIFTS = {g: lift(m) for g, m in GCOM_GENERATORS.items()}


@dataclass(frozen=True)
class DifferenceProductSpec:
    words: tuple
    action: str = "left_translation_cov"
    weight: int = 0
    presentation: Presentation | None = None

    def __post_init__(self):
        if len(self.words) < 1:
            raise ValueError("a difference product needs q >= 1 factors")
        if self.action not in ACTIONS:
            raise ValueError(f"unknown action {self.action!r}")
        if self.action == "group_word" and self.presentation is None:
            raise ValueError("the group_word action needs a presentation")

    @property
    def q(self) -> int:
        return len(self.words)


# -- element handling per action ---------------------------------------------------


def _matrix_of(w):
    if isinstance(w, str):
        letters = parse_word(w)
        gens = {g for g, _ in letters}
        if gens <= set(GCOM_GENERATORS):
            return gcom_matrix(letters)
        if gens <= set(SL2Z_GENERATORS):
            acc = ((1, 0), (0, 1))
            for g, e in letters:
                m = SL2Z_GENERATORS[g]
                if e < 0:
                    (a, b), (c, d) = m
                    m = ((d, -b), (-c, a))
                for _ in range(abs(e)):
                    acc = _mul(acc, m)
            return acc
        raise ValueError(f"cannot read {w!r} as a matrix word")
    arr = tuple(tuple(r) for r in w)
    return arr


def _mul(m1, m2):
    (a, b), (c, d) = m1
    (e, f), (g, h) = m2
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def _resolve(spec: DifferenceProductSpec, w):
    if spec.action == "left_translation_cov":
        if isinstance(w, CoveringElement):
            return w
        if isinstance(w, str) and {g for g, _ in parse_word(w)} <= set(GCOM_GENERATORS):
            return word_element(w, _GCOM_LIFTS)
        return word_element(w)
    if spec.action == "mobius_weight_k":
        return _matrix_of(w)
    if spec.action == "torus_translation":
        return complex(w)
    return parse_word(w) if isinstance(w, str) else tuple(w)


def _identity(spec: DifferenceProductSpec):
    if spec.action == "left_translation_cov":
        return compose_all()
    if spec.action == "mobius_weight_k":
        return ((1, 0), (0, 1))
    if spec.action == "torus_translation":
        return 0j
    return ()


def _combine(spec: DifferenceProductSpec, elems):
    if spec.action == "left_translation_cov":
        return compose_all(*elems)
    if spec.action == "mobius_weight_k":
        acc = ((1, 0), (0, 1))
        for m in elems:
            acc = _mul(acc, m)
        return acc
    if spec.action == "torus_translation":
        return sum(elems, 0j)
    acc: tuple = ()
    for w in elems:
        acc = multiply(acc, w, spec.presentation)
    return acc


def _evaluate(f, spec: DifferenceProductSpec, g, p):
    """(f|g)(p) for the composite g."""
    if spec.action == "left_translation_cov":
        point = apply(g, p if isinstance(p, PointHTheta) else PointHTheta(complex(p), 0.0))
        return _call(f, point)
    if spec.action == "mobius_weight_k":
        (a, b), (c, d) = g
        z = complex(p.z if isinstance(p, PointHTheta) else p)
        j = c * z + d
        factor = cmath.exp(-1j * spec.weight * cmath.phase(j)) if spec.weight else 1.0
        return factor * _call(f, (a * z + b) / j)
    if spec.action == "torus_translation":
        return _call(f, complex(p) + g)
    return f(multiply(g, p, spec.presentation))


def _call(f, point):
    if isinstance(f, FormHandle) and not f.valid(point):
        raise RegionError(f"composite image {point} outside the validity region of {f.name}")
    return f(point)


def apply_difference_product(f, spec: DifferenceProductSpec, p=None):
    """sum over subsets S of (-1)^{q-|S|} f((prod_{i in S} g_i) p), ascending products."""
    elems = [_resolve(spec, w) for w in spec.words]
    if p is None:
        p = _identity(spec) if spec.action == "group_word" else PointHTheta(1j, 0.0)
    q = len(elems)
    total = Fraction(0) if spec.action == "group_word" else 0j
    for mask in range(1 << q):
        chosen = [elems[i] for i in range(q) if mask >> i & 1]
        g = _combine(spec, chosen)
        sign = -1 if (q - len(chosen)) % 2 else 1
        try:
            total += sign * _evaluate(f, spec, g, p)
        except RegionError as exc:
            names = [spec.words[i] if isinstance(spec.words[i], str) else f"g{i + 1}"
                     for i in range(q) if mask >> i & 1]
            raise RegionError(f"composite {'*'.join(map(str, names)) or '1'}: {exc}") from exc
    return total


# -- reports -------------------------------------------------------------------------


def _point_json(p):
    if isinstance(p, PointHTheta):
        return p.to_json()
    if isinstance(p, tuple):
        return format_word(p)
    z = complex(p)
    return {"re": z.real, "im": z.imag}


def _word_json(w):
    if isinstance(w, str):
        return w
    if isinstance(w, CoveringElement):
        return w.to_json()
    if isinstance(w, complex):
        return {"re": w.real, "im": w.imag}
    return str(w)


@dataclass
class VerificationReport:
    check: str
    samples: list = field(default_factory=list)
    tolerance: float = 0.0
    metadata: dict = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max((r for _, r in self.samples), default=0.0)

    @property
    def verdict(self) -> str:
        return "pass" if self.samples and self.max_residual <= self.tolerance else "fail"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "verdict": self.verdict,
            "max_residual": float(self.max_residual),
            "tolerance": float(self.tolerance),
            "samples": [{"input": inp, "residual": float(r)} for inp, r in self.samples],
            "metadata": self.metadata,
        }


# -- sampling ------------------------------------------------------------------------


def sample_points(rng: np.random.Generator, n: int, y_range=(1.5, 4.0), x_range=(-0.5, 0.5),
                  covering: bool = False) -> list:
    pts = []
    for _ in range(n):
        z = complex(rng.uniform(*x_range), rng.uniform(*y_range))
        pts.append(PointHTheta(z, float(rng.uniform(-math.pi, math.pi))) if covering else z)
    return pts


def _tuples(pool: Sequence, q: int, samples: int, rng: np.random.Generator) -> list[tuple]:
    every = list(itertools.product(pool, repeat=q))
    if len(every) <= samples:
        return every
    idx = rng.choice(len(every), size=samples, replace=False)
    return [every[i] for i in sorted(idx)]


def _mu_value(mu, words: tuple):
    if callable(mu):
        return mu(words)
    return mu[tuple(words)]


def check_perturbation(f, phi, mu, q: int, pool: Sequence, points: Sequence, tol: float,
                       action: str = "left_translation_cov", samples: int = 16, seed: int = 0,
                       weight: int = 0, name: str | None = None, tuples=None) -> VerificationReport:
    """Residuals |f|(g_1 - 1)...(g_q - 1)(p) - mu(g_1..g_q) phi(p)| over sampled tuples and points."""
    rng = np.random.default_rng(seed)
    if tuples is None:
        tuples = _tuples(pool, q, samples, rng)
    tuples = [tuple(t) for t in tuples]
    phi_fn = phi if callable(phi) else (lambda p, c=phi: c)

    def one(job):
        words, p = job
        spec = DifferenceProductSpec(tuple(words), action, weight)
        val = apply_difference_product(f, spec, p)
        return abs(val - _mu_value(mu, tuple(words)) * phi_fn(p))

    jobs = [(w, p) for w in tuples for p in points]
    residuals = pmap(one, jobs)
    report = VerificationReport(name or f"perturbation(q={q})", tolerance=tol)
    for (w, p), r in zip(jobs, residuals):
        report.samples.append(({"words": [_word_json(x) for x in w], "point": _point_json(p)}, float(r)))
    asym = 0.0
    for w in tuples:
        base = _mu_value(mu, tuple(w))
        for perm in itertools.permutations(w):
            asym = max(asym, abs(_mu_value(mu, tuple(perm)) - base))
    report.metadata = {"seed": seed, "q": q, "action": action,
                       "pool": [_word_json(x) for x in (pool or ())],
                       "commutative": bool(asym < tol), "permutation_spread": float(asym)}
    return report


def estimate_multilinear(f, phi, q: int, tuples: Sequence[tuple], points: Sequence,
                         action: str = "left_translation_cov", weight: int = 0) -> dict:
    """mu_hat(tuple) = f|(g_1 - 1)...(g_q - 1)(p) / phi(p), averaged over points.

    Returns ``{"table": {tuple: value}, "spread": {tuple: max deviation across points}}``.
    """
    phi_fn = phi if callable(phi) else (lambda p, c=phi: c)
    table, spread = {}, {}
    for words in tuples:
        vals = []
        for p in points:
            ph = phi_fn(p)
            if ph == 0:
                raise ZeroDivisionError("phi vanishes at a sample point")
            spec = DifferenceProductSpec(tuple(words), action, weight)
            vals.append(apply_difference_product(f, spec, p) / ph)
        mean = sum(vals) / len(vals)
        table[tuple(words)] = mean
        spread[tuple(words)] = max(abs(v - mean) for v in vals)
    return {"table": table, "spread": spread}


def check_order(f, q: int, pool: Sequence, points: Sequence, tol: float,
                action: str = "left_translation_cov", samples: int = 16, seed: int = 0,
                weight: int = 0, name: str | None = None, tuples=None) -> VerificationReport:
    """f|(g_1 - 1)...(g_q - 1) = 0 on sampled q-tuples from ``pool``."""
    report = check_perturbation(f, 0.0, lambda w: 0.0, q, pool, points, tol, action, samples, seed,
                                weight, name or f"order(q={q})", tuples)
    report.metadata.pop("commutative", None)
    report.metadata.pop("permutation_spread", None)
    return report


OPERATOR_TAGS = ("L_k", "laplace_weight", "Casimir", "Eminus", "Eplus")


def operator_residual(f, tag: str, lam, points: Sequence, tol: float, h: float = 1e-3,
                      k: int = 0, name: str | None = None) -> VerificationReport:
    """max |(op - lam) f| at the sample points, 4th order stencils with step h."""
    if tag not in OPERATOR_TAGS:
        raise ValueError(f"unknown operator {tag!r}")
    report = VerificationReport(name or f"operator({tag})", tolerance=tol,
                                metadata={"tag": tag, "lambda": _point_json(complex(lam)), "h": h, "k": k})
    for p in points:
        if tag in ("L_k", "laplace_weight"):
            z = complex(p.z if isinstance(p, PointHTheta) else p)
            F = f if not isinstance(f, FormHandle) else (lambda zz, ff=f: ff(zz))
            val = weight_laplacian(F, z, k, h, "Lk" if tag == "L_k" else "efC") - lam * F(z)
        else:
            pt = p if isinstance(p, PointHTheta) else PointHTheta(complex(p), 0.0)
            fv = f.evaluate_xyt(pt.z, pt.theta) if hasattr(f, "evaluate_xyt") else f(pt.z, pt.theta)
            val = lie_apply(tag, f, pt, h) - lam * fv
        report.samples.append((_point_json(p), float(abs(val))))
    return report


# -- exact dual system ---------------------------------------------------------------


def dual_system_matrix(ngen: int, q: int, kind: str = "g") -> list[list[Fraction]]:
    """M[i][j] = (ml_q g_i)(b(j)), computed with exact difference products.

    ``kind="g"``: the functions g_i on the free group, tuples over 1..ngen-1.
    ``kind="f"``: the functions f_i on the central extension, all q-tuples
    with trailing ngen entries (the last generator is the central z).
    """
    if ngen < 2 or q < 1:
        raise ValueError("need ngen >= 2 and q >= 1")
    p = Presentation.free(ngen)
    if kind == "g":
        tuples = sorted(itertools.product(range(1, ngen), repeat=q))
        fn = lambda i: (lambda w: dual_function("g", i, w, p))  # noqa: E731
        words = lambda j: tuple(((f"a{x}", 1),) for x in j)  # noqa: E731
    elif kind == "f":
        tuples = enumerate_basis_tuples(ngen, q)
        fn = lambda i: (lambda w: dual_function("f", i, w, p))  # noqa: E731
        words = lambda j: basis_word(j, ngen)  # noqa: E731
    else:
        raise ValueError(f"unknown kind {kind!r}")
    M = []
    for i in tuples:
        row = []
        for j in tuples:
            spec = DifferenceProductSpec(words(j), "group_word", presentation=p)
            row.append(apply_difference_product(fn(i), spec, ()))
        M.append(row)
    return M


def is_identity(M) -> bool:
    return all(M[i][j] == (1 if i == j else 0) for i in range(len(M)) for j in range(len(M)))
