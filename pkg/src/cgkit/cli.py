"""``cgkit``: run the check suites and emit JSON reports.

Exit status: 0 when every non-info check passes, 1 when any check fails,
2 for usage errors and unreadable or malformed input files.
"""

from __future__ import annotations

import argparse
import sys
from math import comb

from . import __version__, modp
from .report import Report, check, timed

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


def _ints(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}")


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _positive(name):
    def conv(text):
        v = int(text)
        if v < 1:
            raise argparse.ArgumentTypeError(f"{name} must be positive")
        return v
    return conv


def _modulus(text: str) -> int:
    try:
        return modp.validate_modulus(int(text))
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


# ---------------------------------------------------------------------------
# r


R_CHECKS = ("ybe", "hecke", "structure", "twist")


def cmd_r_build(a) -> tuple[Report | None, str | None]:
    from .rmatrix import build_cg, dumps_rmatrix, loads_rmatrix
    if a.source:
        try:
            R = loads_rmatrix(_read(a.source))
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"malformed R-matrix file {a.source}: {e}")
    else:
        if a.n is None:
            raise InputError("r build needs --n or --from")
        R = build_cg(a.n, a.one_param)
    return None, dumps_rmatrix(R)


def cmd_r_check(a) -> Report:
    from .rmatrix import (build_cg, check_hecke, check_structure_identities,
                          check_twist_suite, check_yang_baxter, loads_rmatrix)
    wanted = [c.strip() for c in a.checks.split(",") if c.strip()]
    unknown = [c for c in wanted if c not in R_CHECKS]
    if unknown:
        raise InputError(f"unknown checks {unknown}; choose from {', '.join(R_CHECKS)}")
    if a.file:
        try:
            R = loads_rmatrix(_read(a.file))
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"malformed R-matrix file {a.file}: {e}")
        n = R.n
    elif a.n is not None:
        n = a.n
        R = build_cg(n, a.one_param)
    else:
        raise InputError("r check needs --n or --file")
    params = {"n": n, "checks": wanted, "file": a.file, "one_param": a.one_param}
    out = []
    for name in wanted:
        with timed(out, a.timing):
            if name == "ybe":
                out.append(check_yang_baxter(R))
            elif name == "hecke":
                out.append(check_hecke(R))
            elif name == "structure":
                out.extend(check_structure_identities(n) if n >= 2 else [])
            elif name == "twist":
                out.extend(check_twist_suite(n))
    return Report("r check", params, out)


# ---------------------------------------------------------------------------
# qa


POINCARE = {
    "lambda": lambda n, d: comb(n, d),
    "sym": lambda n, d: comb(n + d - 1, d),
    "frt": lambda n, d: comb(n * n + d - 1, d),
}


def cmd_qa_poincare(a) -> Report:
    from .ideal import graded_dimension_trials
    from .quantum import presentation
    pres = presentation(a.algebra, a.n)
    out = []
    dims = []
    for d in range(a.max_deg + 1):
        with timed(out, a.timing):
            gd = graded_dimension_trials(pres, d, a.modulus, a.seed, a.trials)
            want = POINCARE[a.algebra](a.n, d)
            ok = gd.unanimous and gd.dimension == want
            dims.append(gd.dimension)
            out.append(check(f"poincare_deg{d}", ok,
                             None if ok else {"degree": d, "per_trial": gd.per_trial,
                                              "expected": want},
                             degree=d, dimension=gd.dimension, expected=want,
                             per_trial=gd.per_trial, unanimous=gd.unanimous))
    params = {"algebra": a.algebra, "n": a.n, "max_deg": a.max_deg, "modulus": a.modulus,
              "seed": a.seed, "trials": a.trials, "dimensions": dims}
    return Report("qa poincare", params, out)


def cmd_qa_det(a) -> Report:
    from .quantum import check_det_pairings, check_det_normality
    out = []
    with timed(out, a.timing):
        out.extend(check_det_pairings(a.n))
    if not a.skip_normality:
        with timed(out, a.timing):
            out.extend(check_det_normality(a.n, a.mode, a.modulus, a.seed, a.trials))
    params = {"n": a.n, "mode": a.mode, "modulus": a.modulus, "seed": a.seed, "trials": a.trials,
              "skip_normality": a.skip_normality}
    return Report("qa det", params, out)


def cmd_qa_normality(a) -> Report:
    from .quantum import check_det_normality
    out = []
    with timed(out, a.timing):
        out.extend(check_det_normality(a.n, a.mode, a.modulus, a.seed, a.trials))
    params = {"n": a.n, "mode": a.mode, "modulus": a.modulus, "seed": a.seed, "trials": a.trials}
    return Report("qa normality", params, out)


def cmd_qa_dual(a) -> Report:
    from .dual import l_functionals, psi_phi_check
    out = []
    with timed(out, a.timing):
        out.extend(l_functionals(a.n, a.word_deg)[0])
    with timed(out, a.timing):
        out.extend(psi_phi_check(a.n, a.max_deg))
    return Report("qa dual", {"n": a.n, "max_deg": a.max_deg, "word_deg": a.word_deg}, out)


# ---------------------------------------------------------------------------
# bd


def _bd_input(a):
    from .bd import TripleError, cg_triple, check_bijection, empty_triple, loads_bd
    from .lie import build_reductive
    if a.file:
        try:
            g, t, f0 = loads_bd(_read(a.file))
            check_bijection(g, t)
        except (ValueError, TripleError) as e:
            raise InputError(str(e))
        return g, t, f0
    if a.rank is None:
        raise InputError("need --rank (matrix size) or --file")
    try:
        g = build_reductive(a.algebra, a.rank)
    except ValueError as e:
        raise InputError(str(e))
    t = cg_triple(a.rank) if a.triple == "cg" else empty_triple()
    return g, t, None


def cmd_bd_run(a) -> Report:
    from .bd import bd_to_doc, cg_pipeline, dumps_bd, run_quadruple
    g, t, f0 = _bd_input(a)
    out = []
    with timed(out, a.timing):
        if not a.file and a.triple == "cg" and g.type == "sl":
            if g.m < 3:
                raise InputError("the CG triple needs --rank >= 3")
            out.extend(cg_pipeline(g.m, semiclassical=not a.no_compare))
        else:
            res, _ = run_quadruple(g, t, f0)
            out.extend(res)
    qd = next((c.details["quotient_dim"] for c in out if c.name == "subalgebra_dimensions"), None)
    params = {"algebra": g.type, "rank": g.m, "B1": list(t.B1), "B2": list(t.B2),
              "tau": {str(k): v for k, v in sorted(t.tau.items())}, "file": a.file,
              "quotient_dim": qd}
    if a.emit:
        from .bd import solve_f0
        quad_f0 = f0 if f0 is not None else solve_f0(g, t).particular
        _write(a.emit, dumps_bd(bd_to_doc(g.type, g.m, t, quad_f0)))
    return Report("bd run", params, out)


def cmd_bd_validate(a) -> Report:
    from .bd import BDQuadruple, check_quadruple, validate_triple
    g, t, f0 = _bd_input(a)
    out = list(validate_triple(g, t))
    if f0 is not None:
        out.extend(check_quadruple(g, BDQuadruple(t, f0)))
    return Report("bd validate", {"algebra": g.type, "rank": g.m, "file": a.file}, out)


# ---------------------------------------------------------------------------
# limit


def cmd_limit(a) -> Report:
    from .rmatrix import build_cg, check_cybe_operator, semiclassical_limit
    direction = a.direction or (a.n, 1)
    if len(direction) != 2:
        raise InputError("--direction needs two integers (q, p)")
    out = []
    with timed(out, a.timing):
        r = semiclassical_limit(build_cg(a.n), direction)
        out.append(check_cybe_operator(r))
    if a.compare:
        if a.n < 3:
            raise InputError("--compare needs n >= 3")
        from .bd import build_f, cg_triple, semiclassical_comparison, solve_f0, BDQuadruple
        from .lie import build_reductive
        g = build_reductive("sl", a.n)
        t = cg_triple(a.n)
        F = build_f(g, BDQuadruple(t, solve_f0(g, t).particular))
        res = semiclassical_comparison(a.n, g, F)
        if tuple(direction) != (a.n, 1):
            res.details["note"] = "the BD side always uses the direction (n, 1)"
        out.append(res)
    return Report("limit", {"n": a.n, "direction": list(direction), "compare": a.compare}, out)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for random specializations")
    common.add_argument("--modulus", type=_modulus, default=modp.DEFAULT_MODULUS,
                        help="prime modulus above 2^60 (default 2^61-1)")
    common.add_argument("--trials", type=_positive("--trials"), default=3)
    common.add_argument("--timing", action="store_true",
                        help="record wall-clock timings (makes reports nondeterministic)")

    p = argparse.ArgumentParser(prog="cgkit", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"cgkit {__version__}")
    sub = p.add_subparsers(dest="group", required=True)

    r = sub.add_parser("r", help="Cremmer-Gervais R-matrices").add_subparsers(dest="cmd", required=True)
    rb = r.add_parser("build", parents=[common], help="emit an R-matrix file")
    rb.add_argument("--n", type=_positive("--n"))
    rb.add_argument("--one-param", action="store_true", help="use q = p^n")
    rb.add_argument("--from", dest="source", help="re-emit an existing R-matrix file")
    rb.set_defaults(func=cmd_r_build)
    rc = r.add_parser("check", parents=[common], help="run R-matrix check suites")
    rc.add_argument("--n", type=_positive("--n"))
    rc.add_argument("--file", help="R-matrix file to check instead of building R_n")
    rc.add_argument("--one-param", action="store_true")
    rc.add_argument("--checks", default="ybe,hecke", help=f"comma list from {','.join(R_CHECKS)}")
    rc.set_defaults(func=cmd_r_check)

    qa = sub.add_parser("qa", help="quantum algebra checks").add_subparsers(dest="cmd", required=True)
    qp = qa.add_parser("poincare", parents=[common], help="graded dimensions")
    qp.add_argument("--algebra", choices=sorted(POINCARE), required=True)
    qp.add_argument("--n", type=_positive("--n"), required=True)
    qp.add_argument("--max-deg", type=int, default=3)
    qp.set_defaults(func=cmd_qa_poincare)
    for name, func, help_ in (("det", cmd_qa_det, "det_q pairings and normality"),
                              ("normality", cmd_qa_normality, "det_q normality only")):
        qd = qa.add_parser(name, parents=[common], help=help_)
        qd.add_argument("--n", type=_positive("--n"), required=True)
        qd.add_argument("--mode", choices=("exact", "specialized"),
                        help="default: exact for n=2, specialized otherwise")
        if name == "det":
            qd.add_argument("--skip-normality", action="store_true")
        qd.set_defaults(func=func)
    qdu = qa.add_parser("dual", parents=[common], help="l+/l- functionals and psi/phi")
    qdu.add_argument("--n", type=_positive("--n"), required=True)
    qdu.add_argument("--max-deg", type=int, default=3)
    qdu.add_argument("--word-deg", type=int, default=2)
    qdu.set_defaults(func=cmd_qa_dual)

    bd = sub.add_parser("bd", help="Belavin-Drinfeld data").add_subparsers(dest="cmd", required=True)
    for name, func in (("run", cmd_bd_run), ("validate", cmd_bd_validate)):
        b = bd.add_parser(name, parents=[common])
        b.add_argument("--algebra", choices=("sl", "gl"), default="sl")
        b.add_argument("--rank", type=int, help="matrix size m of gl(m) / sl(m)")
        b.add_argument("--triple", choices=("cg", "empty"), default="cg")
        b.add_argument("--file", help="BD data file")
        if name == "run":
            b.add_argument("--emit", help="write the BD data (with solved f0) to this file")
            b.add_argument("--no-compare", action="store_true",
                           help="skip the informational semiclassical comparison")
        b.set_defaults(func=func)

    lim = sub.add_parser("limit", parents=[common], help="semiclassical limit and CYBE")
    lim.add_argument("--n", type=_positive("--n"), required=True)
    lim.add_argument("--direction", type=_ints, help="q,p exponents (default n,1)")
    lim.add_argument("--compare", action="store_true", help="compare with the BD r-matrix")
    lim.set_defaults(func=cmd_limit)
    return p


def run(argv=None) -> tuple[int, Report | None]:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return (e.code if isinstance(e.code, int) else EXIT_USAGE), None
    try:
        res = a.func(a)
    except (InputError, ValueError) as e:
        # ValueError: parameters outside the supported range (e.g. det_q for n > 5)
        print(f"cgkit: error: {e}", file=sys.stderr)
        return EXIT_USAGE, None
    if isinstance(res, tuple):  # file emitters
        _, text = res
        _write(a.out, text)
        return EXIT_OK, None
    _write(a.out, res.to_json())
    return (EXIT_OK if res.passed else EXIT_FAIL), res


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
