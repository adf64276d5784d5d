"""Command line entry point: ``hoam <subcommand> [flags]``.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error, 3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from pathlib import Path

from . import SCHEMA, __version__
from .group_algebra import enumerate_basis_tuples, n_dim
from .handles import RegionError
from .verifier import VerificationReport, dual_system_matrix, is_identity

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

CSV_FIELDS = ("schema", "command", "check", "sample", "residual", "tolerance", "verdict", "input")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- report emission ------------------------------------------------------------------


def envelope(command: str, checks: list[VerificationReport], payload: dict | None = None) -> dict:
    passed = bool(checks) and all(c.passed for c in checks)
    out = {"schema": SCHEMA, "version": __version__, "command": command, "verdict": "pass" if passed else "fail",
           "checks": [c.to_json() for c in checks]}
    if payload:
        out["result"] = payload
    return out


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for chk in report["checks"]:
            for i, s in enumerate(chk["samples"]):
                w.writerow([report["schema"], report["command"], chk["check"], i, repr(s["residual"]),
                            repr(chk["tolerance"]), chk["verdict"],
                            json.dumps(s["input"], separators=(",", ":"), sort_keys=False)])
        return buf.getvalue()
    if fmt == "text":
        if "text" in report.get("result", {}):
            return str(report["result"]["text"]) + "\n"
        lines = [f"{c['verdict'].upper():4s}  {c['check']}  max_residual={c['max_residual']:.3e}  "
                 f"tol={c['tolerance']:.1e}" for c in report["checks"]]
        lines.append(f"verdict: {report['verdict']}")
        return "\n".join(lines) + "\n"
    raise UsageError(f"unknown format {fmt!r}")


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the target directory, then rename over ``path``."""
    target = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- subcommands ------------------------------------------------------------------------


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _check_ngen_q(a, ngen_min: int):
    if a.ngen < ngen_min or a.q < 1:
        raise UsageError(f"need --ngen >= {ngen_min} and --q >= 1")


def cmd_dims(a):
    _check_ngen_q(a, 1)
    count = len(enumerate_basis_tuples(a.ngen, a.q)) if a.ngen >= 2 else 1
    dim = n_dim(a.ngen, a.q)
    rep = VerificationReport("enumerated basis count = n_dim", tolerance=0.0)
    rep.samples.append(({"ngen": a.ngen, "q": a.q, "n_dim": dim, "enumerated": count}, float(abs(count - dim))))
    return [rep], {"ngen": a.ngen, "q": a.q, "n_dim": dim, "text": dim}


def cmd_dual_basis(a):
    _check_ngen_q(a, 2)
    M = dual_system_matrix(a.ngen, a.q, a.kind)
    wrong = sum(1 for i, row in enumerate(M) for j, v in enumerate(row) if v != (1 if i == j else 0))
    rep = VerificationReport(f"dual system matrix ({a.kind}) is the identity", tolerance=0.0)
    rep.samples.append(({"ngen": a.ngen, "q": a.q, "kind": a.kind, "size": len(M)}, float(wrong)))
    assert is_identity(M) == (wrong == 0)
    text = "\n".join(" ".join(str(v) for v in row) for row in M)
    return [rep], {"matrix": [[str(v) for v in row] for row in M], "text": text}


def cmd_verify(a):
    from . import suites
    if a.samples is not None and a.samples < 1:
        raise UsageError("--samples must be positive")
    if a.what == "covering-relations":
        s = suites.covering_relations(samples=a.samples or 10, seed=a.seed, tol=a.tol or 1e-10)
    elif a.what == "perturbation":
        s = suites.perturbation_suite(a.form, samples=a.samples or 20, seed=a.seed, word_len=a.word_len, k=a.k,
                                      tol=a.tol)
    else:
        s = suites.order_suite(a.form, samples=a.samples or 20, seed=a.seed, word_len=a.word_len, k=a.k, tol=a.tol)
    return s.reports, {"suite": s.suite, "metadata": s.metadata}


def cmd_fourier(a):
    from . import suites
    s = suites.fourier_suite(a.form, n_max=a.n_max, tol=a.tol)
    return s.reports, {"suite": s.suite, "metadata": s.metadata}


def cmd_eisenstein(a):
    from . import suites
    if a.z.imag <= 0:
        raise UsageError("--z must lie in the upper half plane")
    s = suites.eisenstein_suite((a.z,), degree=a.degree)
    return s.reports, {"suite": s.suite, "metadata": s.metadata}


def cmd_b11(a):
    from . import suites
    s = suites.b11_suite(samples=a.samples or 6, seed=a.seed, tol=a.tol or 1e-8)
    return s.reports, {"suite": s.suite, "metadata": s.metadata}


def cmd_lprime(a):
    from dataclasses import replace

    from . import lfunction as lf
    try:
        nf = lf.load_coeffs(a.coeffs) if a.coeffs else lf.builtin_37a()
    except (OSError, lf.CoefficientError) as exc:
        raise UsageError(str(exc)) from None
    if a.max_terms:
        nf = replace(nf, coeffs=nf.coeffs[: a.max_terms + 1])
    try:
        r = lf.goldfeld_report(nf, theta=a.theta, tol=a.tol or 1e-12)
    except lf.CoefficientError as exc:  # too few coefficients for the requested accuracy
        raise UsageError(str(exc)) from None
    checks = []
    from .suites import single
    checks.append(single("pairing int f L1 vanishes", abs(r.pairing_integral), 1e-6))
    checks.append(single("pairing independent of theta", r.pairing_theta_shift, 1e-8, {"theta": a.theta}))
    checks.append(single("-4 pi int f u = L'(1) oracle (relative)", r.relative_difference, 1e-4))
    checks.append(single("L'(1) oracle positive", 0.0 if r.lprime_oracle > 0 else 1.0, 0.0))
    return checks, r.to_json()


# -- parser -----------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("output and numerics")
    g.add_argument("--format", choices=("json", "csv", "text"), default=None,
                   help="report format (default json; text for dims)")
    g.add_argument("--out", help="write the report here atomically instead of stdout")
    g.add_argument("--tol", type=float, default=None, help="override the check tolerance")
    g.add_argument("--seed", type=int, default=0, help="seed for sampled points and words (default 0)")
    g.add_argument("--samples", type=int, default=None, help="number of sampled words or points")
    g.add_argument("--max-terms", type=int, default=None, help="cap on series terms / coefficients read")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    p = _Parser(prog="hoam", description="Higher-order automorphic forms: exact algebra and numerical checks.")
    p.add_argument("--version", action="version", version=f"hoam {__version__} ({SCHEMA})")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("dims", parents=[common], help="dimension formula n(Gamma, q)",
                       description="Dimension n(Gamma, q) of the q-th graded quotient of the augmentation ideal "
                                   "of the lifted group, checked against the enumerated q-tuple basis.")
    d.add_argument("--ngen", type=int, required=True)
    d.add_argument("--q", type=int, required=True)
    d.set_defaults(fn=cmd_dims)

    d = sub.add_parser("dual-basis", parents=[common], help="exact dual system of g_i / f_i functions",
                       description="Matrix of the dual functions g_i (free group) or f_i (central extension) on "
                                   "the q-tuple basis words, by exact difference products; must be the identity.")
    d.add_argument("--ngen", type=int, required=True)
    d.add_argument("--q", type=int, required=True)
    d.add_argument("--kind", choices=("g", "f"), default="g")
    d.set_defaults(fn=cmd_dual_basis)

    v = sub.add_parser("verify", help="covering group relations, perturbation and order checks",
                       description="Checks in the universal covering group and on higher-order forms.")
    vs = v.add_subparsers(dest="what", required=True, parser_class=_Parser)
    c = vs.add_parser("covering-relations", parents=[common],
                      description="Modular presentation of the covering group (s^2 t = t s^2, tstst = s, "
                                  "(ts)^3 = zeta^-1), the k(theta) homomorphism and a(y)n(x) commutation.")
    c.set_defaults(fn=cmd_verify)
    from .suites import ORDER_FORMS, PERTURBATION_FORMS, FOURIER_FORMS
    for name, forms, desc in (
            ("perturbation", PERTURBATION_FORMS,
             "Transformation laws f|(g1-1)...(gq-1) = mu(g1..gq) phi for the explicit forms: H and W on the "
             "commutator subgroup, K (third order), A and B11, the covering form L and its powers L^k."),
            ("order", ORDER_FORMS,
             "Vanishing of f|(g1-1)...(gq-1) one step above the order of H, W, K, A, B11, L and L^k.")):
        x = vs.add_parser(name, parents=[common], description=desc)
        x.add_argument("--form", choices=forms, required=True)
        x.add_argument("--word-len", type=int, default=4, help="maximal length of random commutator words")
        x.add_argument("--k", type=int, default=3 if name == "perturbation" else 2, help="power for Lk")
        x.set_defaults(fn=cmd_verify)

    f = sub.add_parser("fourier", parents=[common], help="Fourier terms and expansions",
                       description="Fourier machinery on the covering group: expansion of L in eta terms, "
                                   "extraction of omega_k(n, s) terms, type relations of eta^m and h^m, growth.")
    f.add_argument("--form", choices=FOURIER_FORMS, default="L")
    f.add_argument("--n-max", type=int, default=10)
    f.set_defaults(fn=cmd_fourier)

    e = sub.add_parser("eisenstein", help="weight 0 Eisenstein series at s = -1/2",
                       description="Taylor expansion of E(0, s) around s = -1/2.")
    es = e.add_subparsers(dest="what", required=True, parser_class=_Parser)
    t = es.add_parser("taylor", parents=[common],
                      description="Taylor coefficients of s -> E(0, s; z) at s = -1/2: constant term 1, "
                                  "A01 = 2 Re L, A02 against its closed form, and the functional equation.")
    t.add_argument("--z", type=_complex, default=complex(0.1, 1.1), help="point X+Yi (default 0.1+1.1i)")
    t.add_argument("--degree", type=int, default=2)
    t.set_defaults(fn=cmd_eisenstein)

    b = sub.add_parser("b11", help="the third order harmonic form b11",
                       description="Harmonic third order form b11 on the torus minus the lattice.")
    bs = b.add_subparsers(dest="what", required=True, parser_class=_Parser)
    bv = bs.add_parser("verify", parents=[common],
                       description="Translation relations of b11, harmonicity, the scaled bilinear table of "
                                   "B11 = b11(H), third order of A and constancy of the A/B table.")
    bv.set_defaults(fn=cmd_b11)

    lp = sub.add_parser("lprime", parents=[common], help="L'(1) of a weight 2 newform via log eta",
                        description="Weight 2 newform: vanishing of the pairing with L1 = L(z) + L(Nz), its "
                                    "theta-independence, and L'(1) = -4 pi int f(iy) u(iy) dy against an "
                                    "incomplete-gamma oracle.")
    lp.add_argument("--coeffs", help="coefficient file ('# level: N' header, then 'n a_n'); default: shipped 37a")
    lp.add_argument("--theta", type=float, default=0.7)
    lp.set_defaults(fn=cmd_lprime)
    return p


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return EXIT_PASS if exc.code in (0, None) else EXIT_USAGE
    fmt = args.format or ("text" if args.command in ("dims",) else "json")
    try:
        from .parallel import thread_count
        try:
            thread_count()
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        checks, payload = args.fn(args)
        report = envelope(_command_name(args), checks, payload)
        if fmt != "text" and payload:
            payload.pop("text", None)
        text = render(report, fmt)
    except (UsageError, RegionError) as exc:
        print(f"hoam: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"hoam: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.out:
        write_atomic(args.out, text)
    else:
        stdout.write(text)
    return EXIT_PASS if report["verdict"] == "pass" else EXIT_FAIL


def _command_name(args) -> str:
    what = getattr(args, "what", None)
    return f"{args.command} {what}" if what else args.command


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
