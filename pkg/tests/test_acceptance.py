"""Acceptance criteria 1-11, one test each, each printing a single PASS/FAIL line.

The lines are collected in RESULTS and repeated in the terminal summary by conftest.
"""

import math
import time
from fractions import Fraction as F

import pytest

from haros import oracle
from haros.analytics import cf_mean_statistics, khinchin_constant
from haros.entropy import (H_of, box_counting_dimension, derham_check, entropy_curve,
                           scan_extrema)
from haros.families import (PHI_INV, c1_spec, convergent_distribution, family_slope,
                            metallic_spec, noble_members, theoretical_dist)
from haros.entropy import entropy_S, reduced_H
from haros.farey import GOLDEN, convergents
from haros.graph import iter_profiles, mean_degree

RESULTS = []


def record(n, ok, detail):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def test_criterion_01_low_degree_table():
    t0 = time.perf_counter()
    r = oracle.check_theorem1(200)
    dt = time.perf_counter() - t0
    ok = r.status == "pass" and r.instances_tested == 12231 and dt < 10
    record(1, ok, f"P(2..4) exact on {r.instances_tested} fractions of F_200, "
                  f"{r.failure_count} failures, {dt:.2f}s (< 10s)")
    assert ok, r.failures


def test_criterion_02_thomae_mean():
    bad, n = [], 0
    for prof in iter_profiles(200):
        n += 1
        if mean_degree(prof) != 4 - F(2, prof.q):
            bad.append(prof.label)
    ok = not bad and n == 12231
    record(2, ok, f"mean degree = 4 - 2/q exactly on {n} fractions, {len(bad)} failures")
    assert ok, bad[:10]


def test_criterion_03_hole_rule():
    t0 = time.perf_counter()
    r = oracle.check_holes(14)
    dt = time.perf_counter() - t0
    ok = r.status == "pass" and r.instances_tested == 2 ** 14 and dt < 60
    record(3, ok, f"hole rule on {r.instances_tested} paths, {r.failure_count} failures, "
                  f"{dt:.2f}s (< 60s)")
    assert ok, r.failures


def test_criterion_04_triangle_formula():
    r = oracle.check_conjecture1(200, 20)
    ok = r.status == "pass" and r.instances_tested == 12231
    record(4, ok, f"closed form = graphs for 5 <= k <= 20 on F_200, {r.failure_count} failures")
    assert ok, r.failures


def test_criterion_04_long_mode():
    t0 = time.perf_counter()
    r = oracle.check_conjecture1(1000, 60)
    dt = time.perf_counter() - t0
    ok = r.status == "pass" and r.instances_tested == 304191
    record(4, ok, f"long mode: 5 <= k <= 60 on F_1000 ({r.instances_tested} fractions), "
                  f"{r.failure_count} failures, {dt:.1f}s")
    assert ok, r.failures


def test_criterion_05_scaling():
    r = oracle.check_scaling(100, (5, 15), (1, 3))
    ok = r.status == "pass"
    record(5, ok, f"scaling for k in [5,15], m in [1,3] plus P(5,F(x)) rule on "
                  f"{r.instances_tested} fractions, {r.failure_count} failures")
    assert ok, r.failures


def test_criterion_06_functional_equation():
    r = oracle.check_derham(100, tol=1e-9)
    lhs, rhs = derham_check(F(1, 2))
    h25 = H_of(F(2, 5))
    anchor = (abs(lhs - math.log(2)) < 1e-12 and abs(rhs - math.log(2)) < 1e-9
              and abs(h25 - 0.27726) < 1e-5)
    ok = r.status == "pass" and anchor
    record(6, ok, f"|S(z) - (z+2)H(1/(z+2))| < 1e-9 on {r.instances_tested} z, "
                  f"{r.failure_count} failures; z=1/2: {lhs:.6f} vs {rhs:.6f}, H(2/5)={h25:.5f}")
    assert ok, r.failures


def test_criterion_07_rational_families():
    r = oracle.check_families(30, tol=1e-10, noble_count=0)
    ok = r.status == "pass" and r.instances_tested == 120
    record(7, ok, f"H(x)/x within 1e-10 of the slope for 4 x 30 members, {r.failure_count} failures")
    assert ok, r.failures


def test_criterion_08_golden_maximum():
    e = scan_extrema(entropy_curve(144))
    golden = set(convergents(GOLDEN, 30))
    on_golden = e.argmax in golden or (1 - e.argmax) in golden
    _, d = convergent_distribution(GOLDEN, 25)
    fp = d.float_probabilities()
    ratios = [fp[k + 1] / fp[k] for k in range(5, 13)]
    worst = max(abs(r - PHI_INV) for r in ratios)
    ok = on_golden and worst < 1e-3
    record(8, ok, f"argmax of S over F_144 = {e.argmax} (golden convergent or mirror: {on_golden}); "
                  f"depth-25 tail ratio error {worst:.2e} (< 1e-3)")
    assert ok


def test_criterion_09_noble_maxima():
    errs = {}
    for n in (2, 3, 4):
        _, d = convergent_distribution(c1_spec(n), 40)
        fp = d.float_probabilities()
        errs[n] = max(abs(fp.get(k, 0.0) - theoretical_dist("C1", k, n))
                      for k in range(2, d.max_degree + 1))
    slope = family_slope("noble_C1")
    slope_errs = []
    for spec in noble_members("noble_C1", 10):
        x, d = convergent_distribution(spec, 80)
        slope_errs.append(abs(reduced_H(x, entropy_S(d)) / float(x) - slope))
    ok = max(errs.values()) < 1e-6 and max(slope_errs) < 1e-10
    record(9, ok, f"C1(2..4) depth-40 max error {max(errs.values()):.2e} (< 1e-6); "
                  f"slope {slope:.10f} reproduced within {max(slope_errs):.1e} on 10 members")
    assert ok


@pytest.mark.xfail(strict=True, raises=AssertionError,
                   reason="finite [(2)] convergents carry one boundary node of even degree 2*depth+2")
def test_criterion_10_metallic():
    depth = 40
    x, d = convergent_distribution(metallic_spec(2), depth)
    allowed = lambda k: k in (2, 3) or (k >= 5 and k % 2 == 1)
    off = {k: c for k, c in d.counts.items() if not allowed(k)}
    err = max(abs(d.count(k) / d.q - theoretical_dist("metallic", k, 2))
              for k in range(2, d.max_degree + 1))
    support_ok = not off
    ok = support_ok and err < 1e-6
    detail = f"[(2)] depth {depth}: max error {err:.2e} (< 1e-6); "
    if support_ok:
        detail += "support exactly {2,3} u {2n+3}"
    else:
        # every finite convergent of [(2)] has boundary degree 2*depth + 2, which is even
        detail += ("support not exact: " + ", ".join(f"k={k} count {c}/{d.q}" for k, c in off.items())
                   + " (boundary node, degree 2*depth+2)")
    record(10, ok, detail)
    assert support_ok, f"degrees outside {{2,3}} u {{2n+3}}: {off}"
    assert err < 1e-6


def test_criterion_11_soft_report():
    stats = cf_mean_statistics(1000)
    k0 = khinchin_constant()
    in_band = 2.2 <= stats["mean"] <= 3.2
    curve = entropy_curve(1000)
    scales = [32, 64, 128, 256, 512]
    d0 = box_counting_dimension(curve, scales)
    d0_ok = abs(d0 - 1.43) <= 0.15
    record(11, in_band and d0_ok,
           f"(soft, non-gating) K0={k0:.6f}; CF geometric means over F_1000: mean {stats['mean']:.3f} "
           f"[{'in' if in_band else 'outside'} 2.2..3.2], log-mean {stats['log_mean']:.3f}, "
           f"pooled {stats['pooled']:.3f}, median {stats['median']:.3f}; "
           f"box-counting D0={d0:.3f} over {len(curve)} samples "
           f"[{'within' if d0_ok else 'outside'} 1.43 +/- 0.15]")
