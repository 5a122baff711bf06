"""Golden, noble and metallic families: theoretical distributions, members and slopes.

Irrational family members are CFSpec values. Their brute-force counterparts are
the distributions of deep convergents, built as compact degree profiles.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .farey import CFSpec, GOLDEN, evaluate, fibonacci
from .graph import DegreeDistribution, build_profile, build_profile_from_terms

PHI_INV = (math.sqrt(5.0) - 1.0) / 2.0

RATIONAL_FAMILIES = ("one_over_n", "two_over_2n1", "three_over_3n2", "three_over_3n1")
NOBLE_FAMILIES = ("noble_C1", "noble_C3n12")
SLOPE_FAMILIES = RATIONAL_FAMILIES + NOBLE_FAMILIES
THEORY_FAMILIES = ("golden", "C1", "C3n12", "metallic")


def family_slope(name: str) -> float:
    """Slope a of the line H(x) = a x through the members of a family."""
    g = PHI_INV
    slopes = {
        "one_over_n": 0.0,
        "two_over_2n1": math.log(2),
        "three_over_3n2": math.log(3),
        "three_over_3n1": math.log(3) - 2.0 / 3.0 * math.log(2),
        "noble_C1": -math.log(g) * (3 + g),
        "noble_C3n12": math.log(3 + g) - math.log(1 - g) / (3 + g),
    }
    try:
        return slopes[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {', '.join(SLOPE_FAMILIES)}") from None


def rational_members(name: str, count: int) -> list[Fraction]:
    """First ``count`` members of a rational family, all in (0, 1/2]."""
    # start indices keep every member on the x <= 1/2 branch of H
    makers = {
        "one_over_n": (2, lambda n: Fraction(1, n)),
        "two_over_2n1": (2, lambda n: Fraction(2, 2 * n + 1)),
        "three_over_3n2": (2, lambda n: Fraction(3, 3 * n + 2)),
        "three_over_3n1": (2, lambda n: Fraction(3, 3 * n + 1)),
    }
    if name not in makers:
        raise ValueError(f"unknown rational family {name!r}; choose from {', '.join(RATIONAL_FAMILIES)}")
    start, f = makers[name]
    return [f(n) for n in range(start, start + count)]


def c1_spec(n: int) -> CFSpec:
    if n < 2:
        raise ValueError(f"C1(n) needs n >= 2, got {n}")
    return CFSpec((n,), (1,))


def c3n12_spec(n: int) -> CFSpec:
    if n < 2:
        raise ValueError(f"C3(n,1,2) needs n >= 2, got {n}")
    return CFSpec((n, 1, 2), (1,))


def metallic_spec(b: int) -> CFSpec:
    if b < 1:
        raise ValueError(f"metallic index must be >= 1, got {b}")
    return CFSpec((), (b,))


def noble_members(name: str, count: int) -> list[CFSpec]:
    if name == "noble_C1":
        return [c1_spec(n) for n in range(2, 2 + count)]
    if name == "noble_C3n12":
        return [c3n12_spec(n) for n in range(2, 2 + count)]
    raise ValueError(f"unknown noble family {name!r}; choose from {', '.join(NOBLE_FAMILIES)}")


def identify_family(spec: CFSpec) -> tuple[str, int | None] | None:
    """(family, parameter) when the spec has a theoretical distribution, else None."""
    if spec.is_rational:
        return None
    if spec.period == (1,):
        if all(a == 1 for a in spec.transient):
            return ("golden", None)
        if len(spec.transient) == 1:
            return ("C1", spec.transient[0])
        if len(spec.transient) == 3 and spec.transient[1:] == (1, 2) and spec.transient[0] >= 2:
            return ("C3n12", spec.transient[0])
        return None
    b = spec.metallic_index
    if b is not None:
        return ("metallic", b)
    return None


def theoretical_dist(family: str, k: int, param: int | None = None) -> float:
    """Closed-form P(k, x) for a golden, C1(n), C3(n,1,2) or metallic(b) number."""
    if k < 2:
        return 0.0
    g = PHI_INV
    if family == "metallic" and param == 1:
        family = "golden"
    if family == "golden":
        x = g
        if k == 2:
            return 1 - x
        if k == 3:
            return 2 * x - 1
        if k == 4:
            return 0.0
        return x ** (k - 1)
    if family == "C1":
        n = _check_param(family, param, 2)
        x = 1.0 / (n + g)
        if k == 2:
            return x
        if k == 3:
            return 1 - 2 * x
        if k <= n + 2:
            return 0.0
        return x * g ** (k - n - 1)
    if family == "C3n12":
        n = _check_param(family, param, 2)
        x = (3 + g) / ((3 * n + 2) + (n + 1) * g)
        if k == 2:
            return x
        if k == 3:
            return 1 - 2 * x
        if k <= n + 2:
            return 0.0
        if k == n + 3:
            return x / (3 + g)
        if k == n + 4:
            return (1 + g) / (3 + g) * x
        if k == n + 5:
            return 0.0
        # the tail exponent k - n - 4 is the one that normalizes the distribution
        return x / (3 + g) * g ** (k - n - 4)
    if family == "metallic":
        b = _check_param(family, param, 1)
        x = 2.0 / (b + math.sqrt(b * b + 4))
        if k == 2:
            return x
        if k == 3:
            return 1 - 2 * x
        if k == 4 or (k - 3) % b:
            return 0.0
        return (1 - x) * x ** ((k - 3) // b)
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(THEORY_FAMILIES)}")


def _check_param(family, param, lo):
    if param is None or param < lo:
        raise ValueError(f"{family} needs an integer parameter >= {lo}, got {param}")
    return param


def theoretical_row(family: str, max_k: int, param: int | None = None) -> dict[int, float]:
    return {k: theoretical_dist(family, k, param) for k in range(2, max_k + 1)}


def family_value(family: str, param: int | None = None) -> float:
    """The irrational x whose distribution theoretical_dist describes."""
    if family == "golden":
        return evaluate(GOLDEN)
    if family == "C1":
        return evaluate(c1_spec(param))
    if family == "C3n12":
        return evaluate(c3n12_spec(param))
    if family == "metallic":
        return evaluate(metallic_spec(param))
    raise ValueError(f"unknown family {family!r}")


def fibonacci_convergent_dist(n: int) -> DegreeDistribution:
    """Distribution of G_{F(n-1)/F(n)}, built along the zigzag path of length n - 1."""
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    path = "".join("LR"[i % 2] for i in range(n - 1))
    prof = build_profile(path)
    assert prof.label == Fraction(fibonacci(n - 1), fibonacci(n))
    return prof.distribution()


def convergent_distribution(spec: CFSpec, depth: int) -> tuple[Fraction, DegreeDistribution]:
    """The depth-th convergent of spec and the exact distribution of its graph."""
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    terms = list(itertools.islice(spec.terms(), depth))
    prof = build_profile_from_terms(terms)
    return prof.label, prof.distribution()
