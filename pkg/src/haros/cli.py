"""Command-line front end: graph dumps, entropy atlases, verification and family tables."""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import logging
import math
import sys

from . import oracle
from .analytics import cf_geometric_mean, khinchin_constant, thomae_mean
from .entropy import entropy_curve, entropy_S, reduced_H, sample_from_profile
from .families import (NOBLE_FAMILIES, RATIONAL_FAMILIES, convergent_distribution,
                       family_slope, identify_family, noble_members, rational_members,
                       theoretical_dist)
from .farey import CFSpec, decimal_to_cfspec, evaluate, path_to_rational, rational_to_path
from .graph import (DEFAULT_BUDGET, BudgetExceeded, atom, build, check_budget,
                    collapse, distribution_for, iter_profiles)
from .serialize import format_rational, graph_record, parse_rational, write_entropy_csv

log = logging.getLogger("haros")


class UsageError(ValueError):
    pass


def _graph_input(args):
    if args.path is not None:
        path = args.path.strip().upper()
        x = path_to_rational(path)
        check_budget(x.denominator, args.budget, f"graph of {x}")
        return build(path)
    if args.cf is not None:
        spec = CFSpec.parse(args.cf)
        if not spec.is_rational:
            raise UsageError(f"graph needs a finite continued fraction, got {args.cf!r}")
        x = spec.rational()
    else:
        x = parse_rational(args.fraction)
    check_budget(x.denominator, args.budget, f"graph of {x}")
    if x in (0, 1):
        return atom(x)
    return build(rational_to_path(x))


def cmd_graph(args, out):
    try:
        g = _graph_input(args)
    except BudgetExceeded:
        raise
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.collapsed:
        out.write(json.dumps(list(collapse(g))) + "\n")
    else:
        out.write(json.dumps(graph_record(g, dist=args.dist)) + "\n")
    return 0


def cmd_entropy(args, out):
    samples = entropy_curve(args.order, thin=args.thin, workers=args.workers, budget=args.budget)
    n = write_entropy_csv(out, samples, reduced=args.reduced, means=args.means)
    log.info("wrote %d rows for F_%d", n, args.order)
    return 0


def _run_check(name, args):
    b = args.budget
    if name == "theorem1":
        return oracle.check_theorem1(args.max_q or 200, budget=b)
    if name == "holes":
        return oracle.check_holes(14 if args.max_len is None else args.max_len)
    if name == "conjecture1":
        if args.long:
            return oracle.check_conjecture1(args.max_q or 1000, args.max_k or 60, budget=b)
        return oracle.check_conjecture1(args.max_q or 200, 20 if args.max_k is None else args.max_k,
                                        budget=b)
    if name == "scaling":
        return oracle.check_scaling(args.max_q or 100, budget=b)
    if name == "derham":
        return oracle.check_derham(args.max_q or 100)
    if name == "families":
        return oracle.check_families(args.count or 30)
    if name == "noble":
        return oracle.check_noble(args.depth or 40)
    if name == "metallic":
        return oracle.check_metallic(args.depth or 40)
    raise UsageError(f"unknown check {name!r}")


def cmd_verify(args, out):
    names = oracle.CHECKS if args.check == "all" else (args.check,)
    reports = []
    for name in names:
        r = _run_check(name, args)
        reports.append(r)
        if args.format == "jsonl":
            out.write(r.to_json(timing=args.timing) + "\n")
            out.flush()
    if args.format == "csv":
        out.write(oracle.reports_csv(reports))
    return 0 if all(r.status == "pass" for r in reports) else 1


def _parse_irrational(args) -> CFSpec:
    if args.cf is not None:
        try:
            return CFSpec.parse(args.cf)
        except ValueError as e:
            raise UsageError(str(e)) from None
    try:
        spec = decimal_to_cfspec(args.decimal, max_terms=args.depth)
    except (ValueError, ArithmeticError):
        raise UsageError(f"cannot use decimal {args.decimal!r}: expected a number in (0, 1)") from None
    log.warning("decimal %s truncated to the continued fraction %s; the result is approximate",
                args.decimal, spec)
    return spec


def cmd_irrational(args, out):
    spec = _parse_irrational(args)
    # compact profiles: work grows with depth, not with the convergent's denominator
    x, dist = convergent_distribution(spec, args.depth)
    fam = identify_family(spec)
    log.info("spec %s, depth-%d convergent q=%d, family %s", spec, args.depth, x.denominator,
             fam[0] if fam else "none")
    w = csv.writer(out, lineterminator="\n")
    header = ["k", "count", "q", "P"]
    if fam:
        header.append("theory")
    w.writerow(header)
    top = args.max_k or dist.max_degree
    for k in range(2, top + 1):
        c = dist.count(k)
        row = [k, c, dist.q, f"{c / dist.q:.17g}"]
        if fam:
            row.append(f"{theoretical_dist(fam[0], k, fam[1]):.17g}")
        w.writerow(row)
    return 0


def cmd_families(args, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["family", "member", "x", "H_over_x", "slope", "abs_err"])
    for name in RATIONAL_FAMILIES:
        slope = family_slope(name)
        for x in rational_members(name, args.count):
            r = reduced_H(x, entropy_S(distribution_for(x))) / float(x)
            w.writerow([name, format_rational(x), f"{float(x):.17g}", f"{r:.17g}",
                        f"{slope:.17g}", f"{abs(r - slope):.3g}"])
    for name in NOBLE_FAMILIES:
        slope = family_slope(name)
        for spec in noble_members(name, min(args.count, 10)):
            c, d = convergent_distribution(spec, args.depth)
            r = reduced_H(c, entropy_S(d)) / float(c)
            w.writerow([name, str(spec), f"{evaluate(spec):.17g}", f"{r:.17g}",
                        f"{slope:.17g}", f"{abs(r - slope):.3g}"])
    return 0


def cmd_means(args, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["p", "q", "x", "k_mean", "thomae", "k_geo", "cf_geo"])
    cf_geos = []
    for prof in iter_profiles(args.order, args.budget):
        s = sample_from_profile(prof)
        x = s.x
        g = cf_geometric_mean(x)
        cf_geos.append(g)
        w.writerow([x.numerator, x.denominator, f"{s.x_float:.17g}", format_rational(s.k_mean),
                    format_rational(thomae_mean(x)), f"{s.k_geo:.17g}", f"{g:.17g}"])
    if cf_geos:
        log.info("mean CF geometric mean over F_%d: %.6f (Khinchin constant %.6f)",
                 args.order, math.fsum(cf_geos) / len(cf_geos), khinchin_constant())
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="haros", description=__doc__)
    p.add_argument("--out", help="write output to this file instead of standard output")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="maximum number of graph nodes a command may construct (default %(default)s)")
    p.add_argument("--log-level", default="WARNING",
                   choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("graph", help="dump the Haros graph of a rational")
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("fraction", nargs="?", help="p/q in [0, 1]")
    src.add_argument("--path", help="Farey tree path such as LLRR")
    src.add_argument("--cf", help="finite continued fraction such as [2,2]")
    g.add_argument("--dist", action="store_true", help="include the degree distribution")
    g.add_argument("--collapsed", action="store_true", help="print only the collapsed degree sequence")
    g.set_defaults(func=cmd_graph)

    e = sub.add_parser("entropy", help="entropy curve over a Farey sequence, as CSV")
    e.add_argument("--order", type=int, required=True)
    e.add_argument("--reduced", action="store_true", help="add the reduced entropy H")
    e.add_argument("--means", action="store_true", help="add arithmetic and geometric mean degree")
    e.add_argument("--thin", type=int, help="keep every n-th row")
    e.add_argument("--workers", type=int, default=1, help="worker processes (output is identical)")
    e.set_defaults(func=cmd_entropy)

    v = sub.add_parser("verify", help="run brute-force checks; exit 1 on any failure")
    v.add_argument("check", choices=oracle.CHECKS + ("all",))
    v.add_argument("--max-q", type=int)
    v.add_argument("--max-k", type=int)
    v.add_argument("--max-len", type=int)
    v.add_argument("--depth", type=int)
    v.add_argument("--count", type=int)
    v.add_argument("--long", action="store_true", help="conjecture1 over F_1000 up to k = 60")
    v.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")
    v.add_argument("--timing", action="store_true", help="include elapsed seconds in reports")
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("irrational", help="degree distribution of a deep convergent, as CSV")
    isrc = i.add_mutually_exclusive_group(required=True)
    isrc.add_argument("--cf", help='continued fraction spec such as "[2,4,(1)]"')
    isrc.add_argument("--decimal", help="decimal number in (0, 1); truncated to --depth CF terms")
    i.add_argument("--depth", type=int, default=40)
    i.add_argument("--max-k", type=int, help="last degree to print (default: largest present)")
    i.set_defaults(func=cmd_irrational)

    f = sub.add_parser("families", help="H(x)/x for family members against their slopes")
    f.add_argument("--count", type=int, default=30)
    f.add_argument("--depth", type=int, default=80, help="convergent depth for noble members")
    f.set_defaults(func=cmd_families)

    m = sub.add_parser("means", help="mean degrees and CF geometric means over a Farey sequence")
    m.add_argument("--order", type=int, required=True)
    m.set_defaults(func=cmd_means)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level, stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    if args.budget <= 0:
        parser.error("--budget must be positive")
    if getattr(args, "depth", 1) is not None and getattr(args, "depth", 1) < 1:
        parser.error("--depth must be >= 1")
    with contextlib.ExitStack() as stack:
        out = sys.stdout
        if args.out:
            out = stack.enter_context(open(args.out, "w", newline=""))
        try:
            return args.func(args, out)
        except UsageError as e:
            parser.error(str(e))
        except BudgetExceeded as e:
            print(f"haros: {e}", file=sys.stderr)
            return 2
        except ValueError as e:
            print(f"haros: error: {e}", file=sys.stderr)
            return 2


if __name__ == "__main__":
    sys.exit(main())
