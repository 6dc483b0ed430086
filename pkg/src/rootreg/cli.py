"""Command-line front end.

Exit codes: 0 success, 1 a validation or verification failure, 2 a usage
error (bad arguments, unknown algebra, unreadable catalog).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

ROOT_HELP = (
    "Simple roots are named a1..a8, numbered left to right along the Dynkin "
    "diagram (Bourbaki order)."
)


class UsageError(Exception):
    pass


def _emit(obj, fmt, text, out):
    if fmt == "json":
        out.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")
    else:
        out.write(text + ("\n" if not text.endswith("\n") else ""))


def _parse_roots(text: str, rank: int):
    S = set()
    for tok in text.split(","):
        tok = tok.strip().lower()
        if not tok:
            continue
        if tok.startswith("a"):
            tok = tok[1:]
        try:
            i = int(tok)
        except ValueError:
            raise UsageError(f"bad simple-root name {tok!r}; use a1..a{rank}") from None
        if not 1 <= i <= rank:
            raise UsageError(f"simple root a{i} out of range 1..{rank}")
        S.add(i)
    if not S:
        raise UsageError("--omit needs at least one simple root")
    return S


def _data_for(args):
    from .numerology import get_entry
    from .rootsys import CatalogError, RootSystemError, build_root_system, make_restricted

    if args.algebra:
        try:
            return get_entry(args.algebra).restricted_data()
        except CatalogError as exc:
            raise UsageError(str(exc)) from None
    if args.type:
        try:
            system = build_root_system(args.type, args.rank)
        except (RootSystemError, ValueError) as exc:
            raise UsageError(str(exc)) from None
        dim = len(system.roots) + system.rank
        return make_restricted(system, dim, name=f"{args.type}{args.rank} (split)")
    raise UsageError("give --algebra NAME or --type T --rank N")


def _rstr(v):
    from ._rational import rstr

    return rstr(v)


# -- subcommands ---------------------------------------------------------------

def cmd_tables(args, out):
    from .numerology import list_real_forms, validate_tables
    from .numerology.tables import HEADER, export_csv

    entries = list_real_forms(family=args.family) if args.family else None
    if entries is not None and not entries:
        raise UsageError(f"no catalog entries for family {args.family!r}")
    report = validate_tables(args.ranks, entries=entries, r_rule=args.r_rule)
    rows = [c.row for c in report.checks]
    if args.format == "csv":
        out.write(export_csv(rows))
    elif args.format == "json":
        payload = {
            "rows": [dict(zip(HEADER, (r.name, r.restricted_type, r.real_rank, r.n, r.d, r.v, r.r)))
                     for r in rows],
            **report.as_dict(),
        }
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        width = max(len(r.name) for r in rows) if rows else 4
        lines = [f"{'name':<{width}}  type  rank    n    d    v    r"]
        for c in report.checks:
            r = c.row
            flag = "" if c.ok else f"   <- table v={c.expected_v} r={c.expected_r}"
            lines.append(f"{r.name:<{width}}  {r.restricted_type:<5} {r.real_rank:>4} {r.n:>4} {r.d:>4}"
                         f" {r.v:>4} {r.r:>4}{flag}")
        lines.append(f"{len(report.checks)} rows, {len(report.mismatches)} mismatches")
        out.write("\n".join(lines) + "\n")
    if report.mismatches:
        sys.stderr.write(f"{len(report.mismatches)} rows differ from the tables: "
                         + ", ".join(c.row.name for c in report.mismatches) + "\n")
        return EXIT_FAIL
    return EXIT_OK


def cmd_r0(args, out):
    from .parabolic import standard_parabolic
    from .regularity import r0

    data = _data_for(args)
    S = _parse_roots(args.omit, data.system.rank)
    p = standard_parabolic(data, S)
    res = r0(p, pairwise=args.pairwise)
    obj = {
        "algebra": data.name,
        "S": [f"a{i}" for i in sorted(S)],
        "codim": p.codim,
        "r0": _rstr(res.value),
        "witness": [_rstr(c) for c in res.witness.coords],
        "tight_pairs": [[list(a), list(b)] for a, b in res.tight_pairs],
        "denominator_bound": res.denominator_bound,
    }
    text = f"r0 = {obj['r0']}  (S = {{{', '.join(obj['S'])}}}, codim {p.codim}, witness {obj['witness']})"
    _emit(obj, args.format, text, out)
    return EXIT_OK


def cmd_rmin(args, out):
    from .parabolic import min_codim_v, standard_parabolic
    from .regularity import r0, r_min

    data = _data_for(args)
    v, argmin = min_codim_v(data)
    per = {f"a{min(S)}": _rstr(r0(standard_parabolic(data, S)).value) for S in argmin}
    value = r_min(data)
    obj = {"algebra": data.name, "v": v, "r_min": _rstr(value), "r0_at_codim_v": per}
    text = f"r_min = {obj['r_min']}  (v = {v}; r0 at codim-v parabolics: {per})"
    _emit(obj, args.format, text, out)
    return EXIT_OK


def cmd_charts(args, out):
    from .flagchart import FlagChartContext, check_tau_identities

    try:
        blocks = [int(b) for b in args.blocks.split(",")] if args.blocks else [1] * args.n
    except ValueError:
        raise UsageError(f"bad --blocks {args.blocks!r}") from None
    if args.n is not None and sum(blocks) != args.n:
        raise UsageError(f"blocks {blocks} do not sum to n = {args.n}")
    ctx = FlagChartContext(blocks, rational=args.rational)
    rep = check_tau_identities(ctx, args.samples, args.seed)
    obj = {"n": ctx.n, "blocks": list(ctx.blocks), "mode": "rational" if args.rational else "float",
           **rep.as_dict()}
    text = (f"n={ctx.n} blocks={list(ctx.blocks)} samples={rep.samples} draws={rep.draws} skipped={rep.skipped} "
            f"max_residual={rep.max_residual:.3e} violations={len(rep.violations)}")
    _emit(obj, args.format, text, out)
    return EXIT_OK if rep.ok and rep.samples == args.samples else EXIT_FAIL


def cmd_conjugacy(args, out):

    from ._rational import q
    from .subres import JetPolynomial, build_conjugacy, sweep_conjugacy

    lam = q(args.lam)
    eps = q(args.eps)
    f = JetPolynomial([{(1,): lam, (2,): eps}], 3)
    res = build_conjugacy([[lam]], f, args.s, step=args.step)
    obj = res.summary()
    ok = res.residual_sup <= 1e-8 and res.max_ratio <= res.kappa * 1.01
    if args.sweep:
        bump = JetPolynomial([{(2,): q(1), (3,): q(-1, 3)}], 3)
        sweep = sweep_conjugacy([[lam]], bump, [10.0 ** -k for k in range(1, 5)], args.s, step=args.step)
        norms = [r["hhat_minus_id"] for r in sweep]
        obj["sweep"] = sweep
        ok = ok and all(a > b for a, b in zip(norms, norms[1:]))
    obj["ok"] = ok
    text = (f"hbar = {res.hbar.to_dict()['components']}\n"
            f"kappa = {res.kappa:.6f}, max tail ratio = {res.max_ratio:.6f}, "
            f"residual_sup = {res.residual_sup:.3e}, offgrid = {res.residual_offgrid:.3e}, "
            f"|hhat - id| = {res.hhat_minus_id:.6f}")
    if args.sweep:
        text += "\n" + "\n".join(f"eps={r['epsilon']:.0e}  |hhat - id| = {r['hhat_minus_id']:.6e}"
                                 for r in obj["sweep"])
    _emit(obj, args.format, text, out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_graphtf(args, out):
    from .graphtf import check_instance

    rng = np.random.default_rng(args.seed)
    results = [check_instance(rng, i, steps=args.steps, max_dim=args.max_dim) for i in range(args.instances)]
    failures = sum(not r["ok"] for r in results)
    obj = {"instances": args.instances, "failures": failures, "results": results}
    text = "\n".join(
        f"#{r['instance']:<3} dims={r['dims']} lip={r['lip']:.4f} <= {r['lip_bound']:.4f}  "
        f"final distance ratio={r['log'][-1]['distance'] / max(r['log'][0]['distance'], 1e-300):.3e}  "
        f"{'ok' if r['ok'] else 'FAIL'}" for r in results)
    text += f"\n{args.instances} instances, {failures} failures"
    _emit(obj, args.format, text, out)
    return EXIT_OK if failures == 0 else EXIT_FAIL


def _fraction(text: str):
    from fractions import Fraction

    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for all randomness")
    common.add_argument("--catalog", help="catalog JSON (overrides ROOTREG_CATALOG)")

    p = argparse.ArgumentParser(prog="rootreg", description=__doc__.splitlines()[0], epilog=ROOT_HELP)
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tables", parents=[common], help="compute and validate the v and r columns")
    t.add_argument("--ranks", type=int, default=8, help="largest real rank to include")
    t.add_argument("--family", help="restrict to one family, e.g. 'su(n,m)'")
    t.add_argument("--r-rule", choices=("min", "codim-v"), default="min")
    t.set_defaults(func=cmd_tables)

    def algebra_args(sp):
        sp.add_argument("--algebra", help="catalog name, e.g. 'sl(5,R)' or 'E_VII'")
        sp.add_argument("--type", help="root system type for a split form, e.g. A, C, E8")
        sp.add_argument("--rank", type=int, help="rank with --type")

    r = sub.add_parser("r0", parents=[common], help="critical regularity of one parabolic", epilog=ROOT_HELP)
    algebra_args(r)
    r.add_argument("--omit", required=True, help="simple roots in S, e.g. a1,a3")
    r.add_argument("--pairwise", action="store_true", help="use the pairwise ratio system")
    r.set_defaults(func=cmd_r0)

    m = sub.add_parser("rmin", parents=[common], help="r_min over codim-v parabolics")
    algebra_args(m)
    m.set_defaults(func=cmd_rmin)

    c = sub.add_parser("charts", parents=[common], help="fuzz the chart identities of tau")
    c.add_argument("--n", type=int, help="matrix size")
    c.add_argument("--blocks", help="block sizes, e.g. 1,2")
    c.add_argument("--samples", type=int, default=1000)
    c.add_argument("--rational", action="store_true", help="exact rational arithmetic")
    c.set_defaults(func=cmd_charts)

    j = sub.add_parser("conjugacy", parents=[common], help="1-dim conjugacy demo for f = lam x + eps x^2")
    j.add_argument("--lam", type=_fraction, default="1/2", help="contraction rate, e.g. 1/2 or 0.5")
    j.add_argument("--eps", type=_fraction, default="1/10", help="quadratic coefficient")
    j.add_argument("--s", type=float, default=2.0)
    j.add_argument("--step", type=float, default=1e-3)
    j.add_argument("--sweep", action="store_true", help="also sweep the perturbation size")
    j.set_defaults(func=cmd_conjugacy)

    g = sub.add_parser("graphtf", parents=[common], help="graph-transform bounds on random instances")
    g.add_argument("--instances", type=int, default=20)
    g.add_argument("--steps", type=int, default=5)
    g.add_argument("--max-dim", type=int, default=2, choices=(1, 2, 3))
    g.set_defaults(func=cmd_graphtf)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format == "csv" and args.command != "tables":
        parser.error("--format csv is only available for 'tables'")
    if args.command == "charts" and args.n is None and not args.blocks:
        parser.error("charts needs --n or --blocks")
    if args.command in ("r0", "rmin") and args.type and args.rank is None:
        parser.error("--type needs --rank")
    saved = os.environ.get("ROOTREG_CATALOG")
    if args.catalog:
        os.environ["ROOTREG_CATALOG"] = args.catalog
    try:
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"rootreg: error: {exc}\n")
        return EXIT_USAGE
    except Exception as exc:  # catalog problems surface as usage errors
        from .rootsys import CatalogError

        if isinstance(exc, CatalogError):
            sys.stderr.write(f"rootreg: error: {exc}\n")
            return EXIT_USAGE
        raise
    finally:
        if args.catalog:
            if saved is None:
                os.environ.pop("ROOTREG_CATALOG", None)
            else:
                os.environ["ROOTREG_CATALOG"] = saved


if __name__ == "__main__":
    sys.exit(main())
