"""Closed-form degree distributions, holes, scaling laws and mean-degree statistics.

For k >= 5 the piecewise-linear form locates the triangle containing x by walking
x's Farey path to depth k - 3 while tracking ancestors; tree levels are never
materialized. Exact inputs give exact ``Fraction`` outputs.
"""

from __future__ import annotations

import itertools
import math
import statistics
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from scipy.special import zeta

from .farey import (
    ONE,
    ZERO,
    CFSpec,
    apply_F,
    evaluate,
    iter_farey,
    iter_path_symbols,
    mediant,
    rational_to_cf,
    validate_path,
)
from .graph import (
    distribution_for,
    geometric_mean_degree,
    mean_degree,
)

HALF = Fraction(1, 2)

__all__ = [
    "PiecewiseLinearCell",
    "closed_form_P",
    "closed_form_row",
    "conjecture_cell",
    "hole_predicate",
    "verify_scaling",
    "new_degree_rule",
    "interval_index",
    "mean_degree",
    "geometric_mean_degree",
    "thomae_mean",
    "cf_geometric_mean",
    "khinchin_constant",
    "khinchin_product",
    "closed_form_row_spec",
    "cf_mean_statistics",
]


@dataclass(frozen=True)
class PiecewiseLinearCell:
    """Triangle of P(k, .): rises on (left, apex), falls on (apex, right)."""

    left: Fraction
    apex: Fraction
    right: Fraction
    k: int

    def value(self, x):
        if self.left < x < self.apex:
            return self.left.denominator * x - self.left.numerator
        if self.apex < x < self.right:
            return self.right.numerator - self.right.denominator * x
        if x == self.left:
            return Fraction(1, self.left.denominator)
        if x == self.right:
            return Fraction(1, self.right.denominator)
        return 0


def _low_degrees(k: int, x):
    """Closed-form values for k <= 4 (x interior)."""
    lower = x <= HALF
    if k == 2:
        return x if lower else 1 - x
    if k == 3:
        return 1 - 2 * x if lower else 2 * x - 1
    if k == 4:
        return HALF if x == HALF else Fraction(0)
    return Fraction(0)


def _high_degrees(symbols: Iterable[str], x, max_k: int, terminal: bool) -> dict:
    """P(k, x) for 5 <= k <= max_k from a single descent along x's path.

    ``terminal`` says the symbol stream ends exactly at x (rational x).
    """
    out = {}
    prefix = list(itertools.islice(symbols, max_k - 2))
    left, node, right = ZERO, ONE, ONE
    for depth, s in enumerate(prefix, start=1):
        if s == "L":
            right, node = node, mediant(left, node)
        else:
            left, node = node, mediant(node, right)
        k = depth + 3
        if k < 5 or k > max_k:
            continue
        # node sits at level k - 2; x is either node itself or one step further down
        if depth == len(prefix) and terminal:
            out[k] = Fraction(1, node.denominator)
            break
        if depth == len(prefix):
            # stream ran past max_k - 2 symbols without reaching this level's successor
            break
        nxt = prefix[depth]
        if nxt == s:
            out[k] = Fraction(0)
        elif s == "L":
            # apex (parent) lies to the right of node
            out[k] = node.denominator * x - node.numerator
        else:
            out[k] = node.numerator - node.denominator * x
    for k in range(5, max_k + 1):
        out.setdefault(k, Fraction(0))
    return out


def closed_form_row(x: Fraction, max_k: int) -> dict[int, Fraction]:
    """P(k, x) for 2 <= k <= max_k from the closed forms, exact.

    The endpoints 0/1 and 1/1 are the one-node graph of degree 2.
    """
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if x in (ZERO, ONE):
        return {k: Fraction(int(k == 2)) for k in range(2, max_k + 1)}
    row = {k: _low_degrees(k, x) for k in range(2, min(max_k, 4) + 1)}
    if max_k >= 5:
        row.update(_high_degrees(iter_path_symbols(x), x, max_k, terminal=True))
    return row


def closed_form_P(k: int, x: Fraction) -> Fraction:
    """P(k, x) from the closed forms (low-degree table for k <= 4, triangles for k >= 5)."""
    if k < 2:
        return Fraction(0)
    return closed_form_row(x, k)[k]


def closed_form_row_spec(spec: CFSpec, max_k: int) -> dict[int, float]:
    """Float P(k, x) for an eventually periodic x, read off its infinite path."""
    if spec.is_rational:
        return {k: float(v) for k, v in closed_form_row(spec.rational(), max_k).items()}
    x = evaluate(spec)
    row = {k: float(_low_degrees(k, x)) for k in range(2, min(max_k, 4) + 1)}
    if max_k >= 5:
        symbols = _spec_symbols(spec)
        row.update({k: float(v) for k, v in
                    _high_degrees(symbols, x, max_k, terminal=False).items()})
    return row


def _spec_symbols(spec: CFSpec):
    for i, a in enumerate(spec.terms()):
        yield from ("L" if i % 2 == 0 else "R") * a


def conjecture_cell(x: Fraction, k: int) -> PiecewiseLinearCell | None:
    """The triangle of P(k, .) whose closure contains x, or None if x is outside all of them."""
    if k < 5:
        raise ValueError(f"triangles exist only for k >= 5, got {k}")
    x = Fraction(x)
    if x in (ZERO, ONE):
        return None
    symbols = list(itertools.islice(iter_path_symbols(x), k - 2))
    if len(symbols) < k - 3:
        return None
    left, node, right = ZERO, ONE, ONE
    for s in symbols[: k - 4]:
        if s == "L":
            right, node = node, mediant(left, node)
        else:
            left, node = node, mediant(node, right)
    # node is the apex at level k - 3
    cell = PiecewiseLinearCell(mediant(left, node), node, mediant(node, right), k)
    return cell if cell.left <= x <= cell.right else None


def hole_predicate(path: str, kappa: int) -> bool:
    """True when degree kappa is absent from G_x: symbols kappa-3 and kappa-2 repeat."""
    validate_path(path)
    if not 5 <= kappa <= len(path) + 2:
        raise ValueError(f"kappa must lie in [5, {len(path) + 2}] for a path of length "
                         f"{len(path)}, got {kappa}")
    return path[kappa - 4] == path[kappa - 3]


def verify_scaling(x: Fraction, k: int, m: int = 1) -> tuple[Fraction, Fraction]:
    """Both sides of P(k, x) = (1 + m x) P(k + m, x / (1 + m x)), from constructed graphs."""
    if k < 5:
        raise ValueError(f"scaling holds for k >= 5, got {k}")
    x = Fraction(x)
    lhs = distribution_for(x)[k]
    rhs = (1 + m * x) * distribution_for(apply_F(x, m))[k + m]
    return lhs, rhs


def new_degree_rule(x: Fraction) -> Fraction:
    """Predicted P(5, F(x)): 0 below 1/2 and (2x - 1)/(x + 1) above."""
    x = Fraction(x)
    if x == HALF or not 0 < x < 1:
        raise ValueError(f"rule is stated for x in (0, 1) other than 1/2, got {x}")
    return Fraction(0) if x < HALF else (2 * x - 1) / (x + 1)


def interval_index(x: Fraction) -> int:
    """n with x in (1/(n+1), 1/n], for x in (0, 1/2]."""
    x = Fraction(x)
    if not 0 < x <= HALF:
        raise ValueError(f"interval index is defined on (0, 1/2], got {x}")
    return rational_to_cf(x)[0]


def thomae_mean(x: Fraction) -> Fraction:
    """4 - 2/q: the arithmetic mean degree of G_{p/q}."""
    return 4 - Fraction(2, Fraction(x).denominator)


def cf_geometric_mean(x: Fraction) -> float:
    terms = rational_to_cf(x)
    # the product of the terms never exceeds q, so it converts to float safely
    return math.prod(terms) ** (1.0 / len(terms))


def khinchin_constant(terms: int = 60) -> float:
    """Khinchin's constant via the zeta series for ln(K0) ln(2).

    ln K0 * ln 2 = sum_n (zeta(2n) - 1)/n * (1 - 1/2 + ... + 1/(2n-1)); the terms
    decay like 4**-n, unlike the infinite product.
    """
    total = []
    alt = 0.0
    for n in range(1, terms + 1):
        alt += 1.0 / (2 * n - 1) - (1.0 / (2 * n - 2) if n > 1 else 0.0)
        # Hurwitz zeta(s, 2) = zeta(s) - 1 without cancellation
        total.append(float(zeta(2 * n, 2)) / n * alt)
    return math.exp(math.fsum(total) / math.log(2))


def khinchin_product(r_max: int) -> float:
    """Truncated product prod_{r <= r_max} (1 + 1/(r(r+2)))**log2(r)."""
    s = math.fsum(math.log2(r) * math.log1p(1.0 / (r * (r + 2))) for r in range(2, r_max + 1))
    return math.exp(s)


def cf_mean_statistics(order: int) -> dict[str, float]:
    """Summaries of the CF geometric means over the interior of F_order.

    ``mean`` averages the per-fraction geometric means, ``log_mean`` averages their
    logarithms, ``pooled`` is the geometric mean of every term of every fraction
    and ``median`` is the median per-fraction value.
    """
    per_x, logs = [], []
    log_sum, n_terms = [], 0
    for x in iter_farey(order):
        if 0 < x < 1:
            terms = rational_to_cf(x)
            per_x.append(cf_geometric_mean(x))
            s = math.fsum(math.log(a) for a in terms)
            logs.append(s / len(terms))
            log_sum.append(s)
            n_terms += len(terms)
    if not per_x:
        raise ValueError(f"F_{order} has no interior fractions")
    return {
        "count": len(per_x),
        "mean": math.fsum(per_x) / len(per_x),
        "log_mean": math.exp(math.fsum(logs) / len(logs)),
        "pooled": math.exp(math.fsum(log_sum) / n_terms),
        "median": statistics.median(per_x),
    }
