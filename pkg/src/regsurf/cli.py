"""Command-line front end.

Exit codes: 0 success, 1 verified negative (a singular matrix, a failed
fixture or certificate), 2 usage error, 3 budget exceeded.  Errors are
reported as one JSON object on stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .groebner import Budget, BudgetExceeded, kernel_of_map, minimal_generator_degrees, partial_elimination
from .linalg import to_csv
from .polyring import parse_section_map
from .schema import validate
from .sections import bundled_map, exponent_points, sections, twisted_cubic

BUDGET_ENV = "REGSURF_BUDGET"
BUILTINS = ("x6_surface", "reg11_surface", "reg11_threefold", "r1_threefold", "y6_lambda", "twisted_cubic")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_budget(text: str | None) -> Budget:
    """``PAIRS`` or ``PAIRS:SECONDS``; defaults 10^7 pairs and 30 minutes."""
    if not text:
        return Budget()
    pairs, _, secs = text.partition(":")
    try:
        b = Budget(max_pairs=int(pairs), max_seconds=float(secs) if secs else Budget().max_seconds)
    except ValueError as exc:
        raise UsageError(f"bad budget {text!r}: expected PAIRS or PAIRS:SECONDS") from exc
    if b.max_pairs <= 0 or b.max_seconds <= 0:
        raise UsageError("budget values must be positive")
    return b


def _load_map(args):
    given = [x for x in (args.map, args.builtin, args.family) if x]
    if len(given) != 1:
        raise UsageError("give exactly one of --map, --builtin, --family")
    mod = getattr(args, "modulus", 0) or 0
    if args.map:
        with open(args.map) as fh:
            return parse_section_map(fh.read(), mod)
    if args.builtin:
        smap = twisted_cubic() if args.builtin == "twisted_cubic" else bundled_map(args.builtin)
        return smap.with_modulus(mod) if mod else smap
    if args.m is None:
        raise UsageError("--family needs --m")
    return sections(args.m, args.family, mod)


def _add_map_args(p):
    p.add_argument("--map", help="section-map file")
    p.add_argument("--builtin", choices=BUILTINS)
    p.add_argument("--family", choices=("X", "Y"))
    p.add_argument("--m", type=int)


def _common(p, formats=("json",)):
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--out")
    p.add_argument("--budget", default=None)
    p.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="regsurf", description="Certify the X_m counterexample surfaces.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("certify", help="degree, maxdeg bound and L/W invertibility for X_m")
    p.add_argument("--m", type=int, nargs="+", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-dim", type=int, default=None)
    p.add_argument("--timings", action="store_true", help="include wall times (output is then not reproducible)")
    _common(p, ("json", "csv"))

    p = sub.add_parser("matrices", help="emit N_i / N / L / W")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--which", choices=("N1", "N2", "N3", "N4", "N", "L", "W"), required=True)
    p.add_argument("--mod", type=int, default=0)
    p.add_argument("--mode", choices=("closed_form", "expansion"), default="closed_form")
    _common(p, ("csv", "json"))

    p = sub.add_parser("fixtures", help="compare with the mod-3 fixtures and check column certificates")
    p.add_argument("--which", choices=("L", "W"), nargs="+", default=["L", "W"])
    _common(p)

    p = sub.add_parser("kernel", help="ideal of the image of a section map")
    _add_map_args(p)
    p.add_argument("--lex", action="store_true", help="pure lex elimination order")
    p.add_argument("--modulus", type=int, default=0)
    _common(p)

    p = sub.add_parser("pei", help="partial elimination ideals of the kernel")
    _add_map_args(p)
    p.add_argument("--var", required=True, help="name of the eliminated target variable")
    p.add_argument("--modulus", type=int, default=0)
    _common(p)

    p = sub.add_parser("hilbert", help="Hilbert function values and polynomial fit")
    _add_map_args(p)
    p.add_argument("--degree", type=int, nargs="*", default=[])
    p.add_argument("--primes", type=int, nargs="+", default=None)
    p.add_argument("--fit-start", type=int, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--h1", type=int, nargs="*", default=[])
    _common(p, ("json", "csv"))

    p = sub.add_parser("degree", help="toric degree of Y_m")
    p.add_argument("--m", type=int, nargs="+", required=True)
    _common(p, ("json", "csv"))

    p = sub.add_parser("bound", help="m^((r+1) 2^n - 1)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    _common(p)
    return ap


# ---------------------------------------------------------------- commands


def _certify_one(job):
    from .certifier.certify import DEFAULT_MAX_DIM, certify

    m, seed, max_dim, timings = job
    r = certify(m, seed=seed, max_dim=max_dim or DEFAULT_MAX_DIM)
    return r.as_dict(with_timings=timings)


def _pmap(fn, jobs, workers):
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(fn, jobs))
    return [fn(j) for j in jobs]


def cmd_certify(args):
    if any(m < 6 for m in args.m):
        raise UsageError("m must be at least 6")
    jobs = [(m, args.seed, args.max_dim, args.timings) for m in args.m]
    reports = _pmap(_certify_one, jobs, args.workers)
    for r in reports:
        validate(r)
    negative = any(r["eg_violated"] is False for r in reports)
    if args.format == "csv":
        cols = ["m", "k", "degree", "maxdeg_lower_bound", "L_invertible", "W_invertible", "eg_violated", "conjectured_regularity"]
        rows = []
        for r in reports:
            rows.append(
                [
                    r["m"],
                    r["k"],
                    r["degree"],
                    r["maxdeg_lower_bound"],
                    None if r["L_invertible"] is None else r["L_invertible"]["verdict"],
                    None if r["W_invertible"] is None else r["W_invertible"]["verdict"],
                    r["eg_violated"],
                    r["conjectured_regularity"]["value"],
                ]
            )
        return _csv(cols, rows), 1 if negative else 0
    body = reports[0] if len(reports) == 1 else reports
    return _json(body), 1 if negative else 0


def cmd_matrices(args):
    from .certifier.matrices import CertMatrixSpec, build_matrix

    if args.k < 1:
        raise UsageError("k must be positive")
    try:
        M = build_matrix(CertMatrixSpec(args.k, args.which, args.mode), modulus=args.mod)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "csv":
        return to_csv(M), 0
    return _report("matrices", {"rows": M.nrows, "cols": M.ncols, "modulus": args.mod, "entries": M.rows()}), 0


def cmd_fixtures(args):
    from .certifier.lemmas import verify_column_certificates
    from .certifier.matrices import build_matrix_mod3

    out, bad = {}, False
    for w in args.which:
        M, diff = build_matrix_mod3(1, w)
        chk = verify_column_certificates(w, M)
        out[w] = {
            "fixture_diff": [list(d) for d in diff],
            "certificates_ok": chk.ok,
            "staircase_ok": chk.staircase_ok,
            "combinations_ok": chk.combinations_ok,
            "bold_pivots_used": chk.bold_pivots_used,
            "failures": [list(map(_plain, f)) for f in chk.failures],
        }
        bad |= bool(diff) or not chk.ok
    return _report("fixtures", out), 1 if bad else 0


def cmd_kernel(args):
    smap = _load_map(args)
    K = kernel_of_map(smap, use_lex=args.lex, budget=parse_budget(args.budget))
    degs = minimal_generator_degrees(K.ideal, budget=parse_budget(args.budget))
    res = {
        "ring": list(smap.target.names),
        "groebner_basis": [g.to_string() for g in K.basis.polys],
        "minimal_generator_degrees": degs.as_dict()["counts"],
        "maxdeg": degs.maxdeg,
        "coefficients": f"GF({smap.source.modulus})" if smap.source.modulus else "QQ",
    }
    return _report("kernel", res), 0


def cmd_pei(args):
    from .groebner import elimination_order_for

    smap = _load_map(args)
    names = list(smap.target.names)
    if args.var not in names:
        raise UsageError(f"--var must be one of {names}")
    v = names.index(args.var)
    budget = parse_budget(args.budget)
    K = kernel_of_map(smap, x_order=elimination_order_for(len(names), v), budget=budget)
    F = partial_elimination(K.basis, v, budget=budget)
    res = {
        "eliminated": args.var,
        "stabilization_number": F.s,
        "max_var_degree": F.max_var_degree,
        "K": [
            {
                "i": i,
                "unit": G.is_unit(),
                "basis_size": len(G),
                "basis": [g.to_string() for g in G.polys] if len(G) <= 40 else None,
            }
            for i, G in enumerate(F.ks)
        ],
    }
    return _report("pei", res), 0


def _hilbert_one(job):
    from .certifier.hilbert import DEFAULT_PRIMES, hilbert_dim

    smap_text, d, primes = job
    return hilbert_dim(parse_section_map(smap_text), d, primes or DEFAULT_PRIMES).as_dict()


def cmd_hilbert(args):
    from .certifier.hilbert import DEFAULT_PRIMES, hilbert_poly_fit

    smap = _load_map(args)
    if any(d < 0 for d in args.degree):
        raise UsageError("degrees must be nonnegative")
    primes = tuple(args.primes) if args.primes else None
    jobs = [(smap.to_text(), d, primes) for d in args.degree]
    values = _pmap(_hilbert_one, jobs, args.workers)
    res = {"values": values}
    if args.fit_start is not None:
        fit = hilbert_poly_fit(smap, args.fit_start, args.samples, h1_degrees=args.h1, primes=primes or DEFAULT_PRIMES)
        res["fit"] = fit.as_dict()
    elif args.h1:
        raise UsageError("--h1 needs --fit-start")
    if args.format == "csv":
        return _csv(["d", "value", "primes_agree"], [[v["d"], v["value"], v["primes_agree"]] for v in values]), 0
    return _report("hilbert", res), 0


def cmd_degree(args):
    from .certifier.toric import toric_degree

    if any(m < 6 for m in args.m):
        raise UsageError("m must be at least 6")
    rows = []
    for m in args.m:
        t = toric_degree(exponent_points(m))
        rows.append(
            {
                "m": m,
                "normalized_volume": t.normalized_volume,
                "lattice_index": t.lattice_index,
                "degree": t.degree,
                "formula": m * m - m + 3,
            }
        )
    if args.format == "csv":
        cols = ["m", "normalized_volume", "lattice_index", "degree", "formula"]
        return _csv(cols, [[r[c] for c in cols] for r in rows]), 0
    return _report("degree", rows), 0


def cmd_bound(args):
    from .certifier.certify import cc_bound

    try:
        return _report("bound", {"n": args.n, "r": args.r, "m": args.m, "bound": cc_bound(args.n, args.r, args.m)}), 0
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


COMMANDS = {
    "certify": cmd_certify,
    "matrices": cmd_matrices,
    "fixtures": cmd_fixtures,
    "kernel": cmd_kernel,
    "pei": cmd_pei,
    "hilbert": cmd_hilbert,
    "degree": cmd_degree,
    "bound": cmd_bound,
}


# ---------------------------------------------------------------- output


def _plain(x):
    if isinstance(x, tuple):
        return list(x)
    return x


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _report(command: str, result) -> str:
    body = {"command": command, "result": result, "tool_version": __version__}
    validate(body, kind="computation")
    return _json(body)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(["" if v is None else v for v in r] for r in rows)
    return buf.getvalue()


def _fail(kind: str, message: str, code: int, extra: dict | None = None) -> int:
    err = {"error": kind, "message": message, "exit_code": code}
    if extra:
        err.update(extra)
    sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
    return code


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "budget", None) is None and hasattr(args, "budget"):
            args.budget = os.environ.get(BUDGET_ENV)
        if getattr(args, "workers", 1) < 1:
            raise UsageError("--workers must be at least 1")
        text, code = COMMANDS[args.command](args)
    except UsageError as exc:
        return _fail("usage", str(exc), 2)
    except BudgetExceeded as exc:
        return _fail("budget_exceeded", str(exc), 3, {"stats": exc.stats})
    except (OSError, ValueError) as exc:
        return _fail("usage", str(exc), 2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
