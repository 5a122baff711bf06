"""Text formats: rationals, graph JSON dumps, entropy and distribution CSV."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Iterable

from .graph import HarosGraph, collapse, degree_distribution


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" (or an integer) into a Fraction in [0, 1]."""
    s = text.strip()
    try:
        if "/" in s:
            p, q = s.split("/")
            x = Fraction(int(p), int(q))
        else:
            x = Fraction(int(s))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot parse rational {text!r}; expected p/q") from None
    if not 0 <= x <= 1:
        raise ValueError(f"{text!r} is outside [0, 1]")
    return x


def graph_record(g: HarosGraph, dist: bool = True) -> dict:
    """JSON-ready dump of a graph; every number is a decimal string."""
    rec = {
        "p": str(g.label.numerator),
        "q": str(g.label.denominator),
        "path": g.path,
        "open_degrees": [str(k) for k in g.open_degrees],
        "collapsed": [str(k) for k in collapse(g)],
    }
    if dist:
        d = degree_distribution(g)
        rec["distribution"] = {str(k): f"{c}/{d.q}" for k, c in d.counts.items()}
    return rec


def graph_json(g: HarosGraph, dist: bool = True) -> str:
    return json.dumps(graph_record(g, dist))


def entropy_csv(samples: Iterable, reduced: bool = True, means: bool = True) -> str:
    buf = io.StringIO()
    write_entropy_csv(buf, samples, reduced, means)
    return buf.getvalue()


def write_entropy_csv(fh, samples: Iterable, reduced: bool = True, means: bool = True) -> int:
    header = ["p", "q", "x", "S"]
    if reduced:
        header.append("H")
    if means:
        header += ["k_mean", "k_geo"]
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    n = 0
    for s in samples:
        row = [s.x.numerator, s.x.denominator, f"{s.x_float:.17g}", f"{s.S:.17g}"]
        if reduced:
            row.append(f"{s.H:.17g}")
        if means:
            row += [format_rational(s.k_mean), f"{s.k_geo:.17g}"]
        w.writerow(row)
        n += 1
    return n


def read_entropy_csv(fh) -> list[dict]:
    """Rows back with p, q, k_mean parsed exactly and the reals as floats."""
    rows = []
    for r in csv.DictReader(fh):
        out = {"x": Fraction(int(r["p"]), int(r["q"]))}
        for key in ("x_float", "S", "H", "k_geo"):
            src = "x" if key == "x_float" else key
            if src in r:
                out[key] = float(r[src])
        if "k_mean" in r:
            num, den = r["k_mean"].split("/")
            out["k_mean"] = Fraction(int(num), int(den))
        rows.append(out)
    return rows
