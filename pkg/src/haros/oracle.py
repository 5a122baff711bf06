"""Brute-force verification harness.

Every check builds Haros graphs from scratch and compares them with a closed form,
a scaling identity or a family formula. The constructed graph is always one side
of the comparison.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .analytics import HALF, closed_form_row, hole_predicate, new_degree_rule
from .entropy import derham_check, entropy_S, reduced_H
from .families import (NOBLE_FAMILIES, RATIONAL_FAMILIES, c1_spec, c3n12_spec,
                       convergent_distribution, family_slope, metallic_spec, noble_members,
                       rational_members, theoretical_dist)
from .farey import GOLDEN, ONE, ZERO, apply_F, iter_farey
from .graph import (DEFAULT_BUDGET, BudgetExceeded, atom, check_budget, concat,
                    degree_distribution, distribution_for, farey_work, iter_profiles)

log = logging.getLogger(__name__)

MAX_FAILURE_ROWS = 100
MAX_HOLE_LEN = 20

CHECKS = ("theorem1", "holes", "conjecture1", "scaling", "derham", "families", "noble", "metallic")


@dataclass
class CheckReport:
    check_id: str
    instances_tested: int = 0
    failures: list = field(default_factory=list)
    failure_count: int = 0
    elapsed: float = 0.0

    @property
    def status(self) -> str:
        return "pass" if self.failure_count == 0 else "fail"

    def fail(self, instance, lhs, rhs) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_FAILURE_ROWS:
            self.failures.append((str(instance), str(lhs), str(rhs)))

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "check": self.check_id,
            "status": self.status,
            "instances_tested": self.instances_tested,
            "failure_count": self.failure_count,
            "failures": [list(f) for f in self.failures],
        }
        # wall time varies between runs, so it is opt-in
        if timing:
            d["elapsed"] = round(self.elapsed, 3)
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing))


class _timed:
    def __init__(self, report):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.elapsed = time.perf_counter() - self.t0
        log.info("%s: %s, %d instances, %d failures, %.2fs", self.report.check_id,
                 self.report.status, self.report.instances_tested,
                 self.report.failure_count, self.report.elapsed)
        return False


def _interior(order: int) -> Iterable[Fraction]:
    return (x for x in iter_farey(order) if 0 < x < 1)


def check_theorem1(max_q: int = 200, profiles=None, budget: int | None = DEFAULT_BUDGET) -> CheckReport:
    """P(2), P(3), P(4) of every interior fraction with q <= max_q against the table.

    ``profiles`` overrides the constructed graphs (used to test the harness itself).
    """
    if max_q < 2:
        raise ValueError(f"max_q must be >= 2, got {max_q}")
    if profiles is None:
        profiles = iter_profiles(max_q, budget)
    rep = CheckReport("theorem1")
    with _timed(rep):
        for pr in profiles:
            x = pr.label
            d = pr.distribution()
            rep.instances_tested += 1
            low = x if x <= HALF else 1 - x
            expected = {2: low, 3: 1 - 2 * low, 4: HALF if x == HALF else Fraction(0)}
            for k, e in expected.items():
                if d[k] != e:
                    rep.fail(f"{x} k={k}", d[k], e)
    return rep


def check_holes(max_len: int = 14) -> CheckReport:
    """Every path of length <= max_len: hole rule, boundary degree and merge-node bound."""
    if max_len > MAX_HOLE_LEN:
        raise BudgetExceeded(f"max_len {max_len} means 2**{max_len} paths; the limit is {MAX_HOLE_LEN}")
    if max_len < 0:
        raise ValueError(f"max_len must be >= 0, got {max_len}")
    rep = CheckReport("holes")
    with _timed(rep):
        # depth-first over (path, G_left, G_node, G_right); the root is 1/1
        stack = [("", atom(ZERO), atom(ONE), atom(ONE))]
        while stack:
            path, gl, g, gr = stack.pop()
            rep.instances_tested += 1
            if path:
                _check_hole_graph(rep, path, g)
            if len(path) < max_len:
                nxt = []
                if path:
                    nxt.append((path + "R", g, concat(g, gr, path + "R"), gr))
                nxt.append((path + "L", gl, concat(gl, g, path + "L"), g))
                stack.extend(nxt)
    return rep


def _check_hole_graph(rep, path, g):
    counts = degree_distribution(g).counts
    for kappa in range(5, len(path) + 3):
        absent = counts.get(kappa, 0) == 0
        if hole_predicate(path, kappa) != absent:
            rep.fail(f"{path} k={kappa}", "hole" if absent else "present",
                     "hole" if not absent else "present")
    if g.boundary_degree != len(path) + 3:
        rep.fail(f"{path} boundary", g.boundary_degree, len(path) + 3)
    merged = g.open_degrees[g.merge_index]
    if not merged < g.boundary_degree:
        rep.fail(f"{path} merge node", merged, f"< {g.boundary_degree}")


def check_conjecture1(max_q: int = 200, max_k: int = 20, profiles=None,
                      budget: int | None = DEFAULT_BUDGET) -> CheckReport:
    """Triangle closed form against constructed graphs for 5 <= k <= max_k."""
    if max_k < 5:
        raise ValueError(f"the triangle formula covers k >= 5, got max_k={max_k}")
    if profiles is None:
        profiles = iter_profiles(max_q, budget)
    rep = CheckReport("conjecture1")
    with _timed(rep):
        for pr in profiles:
            x = pr.label
            d = pr.distribution()
            rep.instances_tested += 1
            row = closed_form_row(x, max_k)
            for k in range(5, max_k + 1):
                if d[k] != row[k]:
                    rep.fail(f"{x} k={k}", d[k], row[k])
    return rep


def check_scaling(max_q: int = 100, k_range=(5, 15), m_range=(1, 3),
                  budget: int | None = DEFAULT_BUDGET) -> CheckReport:
    """P(k, x) = (1 + m x) P(k + m, x/(1 + m x)), plus the P(5, F(x)) rule."""
    k_lo, k_hi = k_range
    m_lo, m_hi = m_range
    if k_lo < 5 or m_lo < 1:
        raise ValueError("scaling needs k >= 5 and m >= 1")
    # each x needs its own graph plus one graph per m, each no larger than (1 + m) q
    check_budget(farey_work(max_q) * (1 + sum(range(m_lo + 1, m_hi + 2))), budget,
                 f"scaling sweep over F_{max_q}")
    rep = CheckReport("scaling")
    with _timed(rep):
        for x in _interior(max_q):
            rep.instances_tested += 1
            dx = distribution_for(x)
            for m in range(m_lo, m_hi + 1):
                y = apply_F(x, m)
                dy = distribution_for(y)
                for k in range(k_lo, k_hi + 1):
                    lhs, rhs = dx[k], (1 + m * x) * dy[k + m]
                    if lhs != rhs:
                        rep.fail(f"{x} k={k} m={m}", lhs, rhs)
                if m == 1 and x != HALF:
                    got, want = dy[5], new_degree_rule(x)
                    if got != want:
                        rep.fail(f"P(5,F({x}))", got, want)
    return rep


def check_derham(max_q: int = 100, tol: float = 1e-9) -> CheckReport:
    """S(z) = (z + 2) H(1/(z + 2)) for z in F_max_q within [1/2, 1]."""
    rep = CheckReport("derham")
    with _timed(rep):
        for z in iter_farey(max_q):
            if z < HALF:
                continue
            rep.instances_tested += 1
            lhs, rhs = derham_check(z)
            if not abs(lhs - rhs) < tol:
                rep.fail(z, repr(lhs), repr(rhs))
    return rep


def check_families(count: int = 30, tol: float = 1e-10, noble_count: int = 10,
                   noble_depth: int = 80) -> CheckReport:
    """H(x)/x against the family slopes.

    Rational members are built exactly; noble members through their depth
    ``noble_depth`` convergents.
    """
    rep = CheckReport("families")
    with _timed(rep):
        for name in RATIONAL_FAMILIES:
            slope = family_slope(name)
            for x in rational_members(name, count):
                rep.instances_tested += 1
                h = reduced_H(x, entropy_S(distribution_for(x)))
                got = h / float(x)
                if not abs(got - slope) < tol:
                    rep.fail(f"{name} {x}", repr(got), repr(slope))
        for name in NOBLE_FAMILIES:
            slope = family_slope(name)
            for spec in noble_members(name, noble_count):
                rep.instances_tested += 1
                x, d = convergent_distribution(spec, noble_depth)
                got = reduced_H(x, entropy_S(d)) / float(x)
                if not abs(got - slope) < tol:
                    rep.fail(f"{name} {spec}", repr(got), repr(slope))
    return rep


def _max_abs_error(dist, family, param, max_k):
    fp = dist.float_probabilities()
    return max(abs(fp.get(k, 0.0) - theoretical_dist(family, k, param)) for k in range(2, max_k + 1))


def check_noble(depth: int = 40, tol: float = 1e-6, tail_depth: int = 25,
                tail_tol: float = 1e-3) -> CheckReport:
    """Deep convergents of C1(2..4) and C3(2..4,1,2) against their closed forms,
    plus golden tail ratios P(k+1)/P(k) for 5 <= k <= 12."""
    rep = CheckReport("noble")
    with _timed(rep):
        for family, make in (("C1", c1_spec), ("C3n12", c3n12_spec)):
            for n in (2, 3, 4):
                rep.instances_tested += 1
                _, d = convergent_distribution(make(n), depth)
                err = _max_abs_error(d, family, n, depth)
                if not err < tol:
                    rep.fail(f"{family}({n}) depth={depth}", repr(err), f"< {tol}")
        _, d = convergent_distribution(GOLDEN, tail_depth)
        fp = d.float_probabilities()
        g = theoretical_dist("golden", 6) / theoretical_dist("golden", 5)
        for k in range(5, 13):
            rep.instances_tested += 1
            ratio = fp.get(k + 1, 0.0) / fp[k] if fp.get(k) else float("nan")
            if not abs(ratio - g) < tail_tol:
                rep.fail(f"golden tail k={k}", repr(ratio), repr(g))
    return rep


def check_metallic(depth: int = 40, bs=(2, 3), tol: float = 1e-6) -> CheckReport:
    """Convergents of [(b)]: inner degrees only at 2, 3 and bn + 3, the boundary at
    len(path) + 3, and probabilities matching the metallic formula."""
    rep = CheckReport("metallic")
    with _timed(rep):
        for b in bs:
            rep.instances_tested += 1
            x, d = convergent_distribution(metallic_spec(b), depth)
            boundary = b * depth + 2  # path length b * depth - 1, plus 3
            for k, c in d.counts.items():
                allowed = k in (2, 3) or (k > 4 and (k - 3) % b == 0)
                if not allowed and not (k == boundary and c == 1):
                    rep.fail(f"[({b})] depth={depth} k={k}", f"{c}/{d.q}", "0")
            if d.count(boundary) < 1:
                rep.fail(f"[({b})] depth={depth} boundary", d.count(boundary), ">= 1")
            err = _max_abs_error(d, "metallic", b, b * depth)
            if not err < tol:
                rep.fail(f"[({b})] depth={depth}", repr(err), f"< {tol}")
    return rep


def run_all(budget: int | None = DEFAULT_BUDGET) -> list[CheckReport]:
    """Every check at its desk-scale default."""
    return [
        check_theorem1(200, budget=budget),
        check_holes(14),
        check_conjecture1(200, 20, budget=budget),
        check_scaling(100, budget=budget),
        check_derham(100),
        check_families(30),
        check_noble(40),
        check_metallic(40),
    ]


def reports_jsonl(reports: Iterable[CheckReport], timing: bool = False) -> str:
    return "".join(r.to_json(timing) + "\n" for r in reports)


def reports_csv(reports: Iterable[CheckReport]) -> str:
    """One summary row per check (instance "*"), then one row per recorded failure."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["check", "instance", "status", "lhs", "rhs"])
    for r in reports:
        w.writerow([r.check_id, "*", r.status, r.instances_tested, r.failure_count])
        for inst, lhs, rhs in r.failures:
            w.writerow([r.check_id, inst, "fail", lhs, rhs])
    return buf.getvalue()
