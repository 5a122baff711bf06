"""Exact Farey machinery: mediants, Farey sequences, tree paths and continued fractions.

Rationals are :class:`fractions.Fraction` values in [0, 1]. Tree paths are plain
strings over ``"L"``/``"R"``; the empty string is the root 1/1 and every
non-empty path starts with ``L``. Continued fractions of numbers in (0, 1) are
written without the integer part, ``[a1, a2, ...]`` meaning
``1/(a1 + 1/(a2 + ...))``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)

# |level_n| = 2**(n-2); beyond this we refuse to materialize a level.
DEFAULT_LEVEL_CAP = 30

_PHI_INV = 2.0 / (1.0 + math.sqrt(5.0))


def mediant(a: Fraction, b: Fraction) -> Fraction:
    """Return (p + p')/(q + q') in lowest terms."""
    return Fraction(a.numerator + b.numerator, a.denominator + b.denominator)


def are_neighbours(a: Fraction, b: Fraction) -> bool:
    """True when a < b are Farey neighbours, i.e. p'q - pq' = 1."""
    return b.numerator * a.denominator - a.numerator * b.denominator == 1


def farey_sequence(n: int) -> list[Fraction]:
    """Ascending list of reduced fractions in [0, 1] with denominator <= n."""
    if n < 1:
        raise ValueError(f"Farey order must be >= 1, got {n}")
    return list(iter_farey(n))


def iter_farey(n: int) -> Iterator[Fraction]:
    # next-term recurrence, O(1) per element
    a, b, c, d = 0, 1, 1, n
    yield Fraction(a, b)
    while c <= n:
        k = (n + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
        yield Fraction(a, b)


def farey_length(n: int) -> int:
    """|F_n| = 1 + sum of Euler's totient up to n."""
    return 1 + sum(totients(n)[1:])


def totients(n: int) -> list[int]:
    phi = list(range(n + 1))
    for i in range(2, n + 1):
        if phi[i] == i:
            for j in range(i, n + 1, i):
                phi[j] -= phi[j] // i
    return phi


def tree_level(n: int, cap: int = DEFAULT_LEVEL_CAP) -> list[Fraction]:
    """The fractions first appearing at level n of the Farey binary tree, ascending.

    Level 1 is {0/1, 1/1}, level 2 is {1/2}; level n >= 3 holds 2**(n-2) fractions.
    """
    if n < 1:
        raise ValueError(f"tree level must be >= 1, got {n}")
    if n > cap:
        raise ValueError(
            f"level {n} holds 2**{n - 2} fractions; raise cap (currently {cap}) to allow it")
    if n == 1:
        return [ZERO, ONE]
    # (left ancestor, node, right ancestor) triples, ascending by node
    triples = [(ZERO, Fraction(1, 2), ONE)]
    for _ in range(n - 2):
        nxt = []
        for left, node, right in triples:
            nxt.append((left, mediant(left, node), node))
            nxt.append((node, mediant(node, right), right))
        triples = nxt
    return [node for _, node, _ in triples]


# --------------------------------------------------------------------------- paths

_PATH_RE = re.compile(r"^(L[LR]*)?$")


def validate_path(path: str) -> str:
    if not _PATH_RE.match(path):
        raise ValueError(f"invalid Farey path {path!r}: expected L/R symbols starting with L")
    return path


def descend(path: str) -> tuple[Fraction, Fraction, Fraction]:
    """Walk the tree along ``path`` and return (left ancestor, node, right ancestor).

    The node lies strictly between its two ancestors, which are Farey neighbours.
    """
    validate_path(path)
    left, node, right = ZERO, ONE, ONE
    for s in path:
        if s == "L":
            right = node
            node = mediant(left, node)
        else:
            left = node
            node = mediant(node, right)
    return left, node, right


def path_to_rational(path: str) -> Fraction:
    return descend(path)[1]


def path_level(path: str) -> int:
    """Tree level of the node reached by ``path`` (the root 1/1 sits at level 1)."""
    return len(path) + 1


def rational_to_path(x: Fraction) -> str:
    return cf_to_path(rational_to_cf(x))


def iter_path_symbols(x: Fraction) -> Iterator[str]:
    """Lazily yield the path symbols of a rational in (0, 1).

    Useful when only a prefix is needed, e.g. the first k symbols of 1/10**6.
    """
    terms = rational_to_cf(x)
    for i, a in enumerate(terms):
        reps = a - 1 if i == len(terms) - 1 else a
        s = "L" if i % 2 == 0 else "R"
        for _ in range(reps):
            yield s


def level_of(x: Fraction) -> int:
    """Tree level of x: 1 for the endpoints, else (sum of CF terms)."""
    x = Fraction(x)
    if x in (ZERO, ONE):
        return 1
    return sum(rational_to_cf(x))


# --------------------------------------------------------------- continued fractions

def _check_interior(x: Fraction) -> Fraction:
    x = Fraction(x)
    if not 0 < x < 1:
        raise ValueError(f"{x} is not in the open interval (0, 1)")
    return x


def rational_to_cf(x: Fraction) -> tuple[int, ...]:
    """Canonical continued fraction terms of x in (0, 1); the last term is >= 2."""
    x = _check_interior(x)
    p, q = x.numerator, x.denominator
    terms = []
    while p:
        a, r = divmod(q, p)
        terms.append(a)
        q, p = p, r
    return tuple(terms)


def canonical_cf(terms: Sequence[int]) -> tuple[int, ...]:
    """Normalize [..., a, 1] to [..., a + 1]; reject terms that do not give a value in (0, 1)."""
    terms = [int(a) for a in terms]
    if not terms or any(a < 1 for a in terms):
        raise ValueError(f"continued fraction terms must be positive integers, got {terms}")
    if len(terms) > 1 and terms[-1] == 1:
        terms[-2] += 1
        terms.pop()
    if terms == [1]:
        raise ValueError("[1] equals 1/1, which has no continued fraction in (0, 1)")
    return tuple(terms)


def cf_to_rational(terms: Sequence[int]) -> Fraction:
    p, q = 0, 1
    for a in reversed(terms):
        p, q = q, a * q + p
    return Fraction(p, q)


def cf_to_path(terms: Sequence[int]) -> str:
    """L^a1 R^a2 L^a3 ... with the final block shortened by one."""
    terms = canonical_cf(terms)
    blocks = []
    for i, a in enumerate(terms):
        reps = a - 1 if i == len(terms) - 1 else a
        blocks.append(("L" if i % 2 == 0 else "R") * reps)
    return "".join(blocks)


def path_to_cf(path: str) -> tuple[int, ...]:
    """Inverse of :func:`cf_to_path` for non-empty paths."""
    validate_path(path)
    if not path:
        raise ValueError("the empty path is 1/1, which has no continued fraction in (0, 1)")
    runs = [len(m.group(0)) for m in re.finditer(r"L+|R+", path)]
    runs[-1] += 1
    return tuple(runs)


def apply_F(x: Fraction, m: int = 1) -> Fraction:
    """x / (1 + m x): prepends m to the first continued-fraction term."""
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    x = Fraction(x)
    return x / (1 + m * x)


def fibonacci(n: int) -> int:
    """Fibonacci numbers with F_0 = F_1 = 1."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    a, b = 1, 1
    for _ in range(n):
        a, b = b, a + b
    return a


# --------------------------------------------------------------------- CF specs

@dataclass(frozen=True)
class CFSpec:
    """Eventually periodic continued fraction ``[transient..., (period...)]``.

    An empty period means the value is rational.
    """

    transient: tuple[int, ...] = ()
    period: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "transient", tuple(int(a) for a in self.transient))
        object.__setattr__(self, "period", tuple(int(a) for a in self.period))
        if any(a < 1 for a in self.transient + self.period):
            raise ValueError(f"continued fraction terms must be positive: {self}")
        if not self.period:
            # raises for empty or value-1 inputs
            canonical_cf(self.transient)

    @property
    def is_rational(self) -> bool:
        return not self.period

    @property
    def is_noble(self) -> bool:
        return self.period == (1,)

    @property
    def metallic_index(self) -> int | None:
        """b when the spec is the metallic ratio [(b)], else None."""
        if not self.transient and len(self.period) == 1:
            return self.period[0]
        return None

    def terms(self) -> Iterator[int]:
        yield from self.transient
        if self.period:
            while True:
                yield from self.period

    def rational(self) -> Fraction:
        if self.period:
            raise ValueError(f"{self} is irrational")
        return cf_to_rational(self.transient)

    def __str__(self) -> str:
        parts = [str(a) for a in self.transient]
        if self.period:
            parts.append("(" + ",".join(str(b) for b in self.period) + ")")
        return "[" + ",".join(parts) + "]"

    @classmethod
    def parse(cls, text: str) -> "CFSpec":
        """Parse ``[a1,...,(b1,...)]``; a leading ``0;`` is accepted and dropped."""
        s = re.sub(r"\s+", "", text)
        m = re.fullmatch(r"\[(?:0;)?([0-9,]*?),?(?:\(([0-9,]+)\))?\]", s)
        if not m:
            raise ValueError(f"cannot parse continued fraction {text!r}")
        head, per = m.group(1), m.group(2)
        transient = tuple(int(t) for t in head.split(",") if t) if head else ()
        period = tuple(int(t) for t in per.split(",") if t) if per else ()
        return cls(transient, period)

    @classmethod
    def from_rational(cls, x: Fraction) -> "CFSpec":
        return cls(rational_to_cf(x))


GOLDEN = CFSpec((), (1,))


def _convergent_pairs(terms: Iterator[int], depth: int) -> Iterator[tuple[int, int]]:
    p_prev, q_prev, p, q = 1, 0, 0, 1
    for _, a in zip(range(depth), terms):
        p_prev, q_prev, p, q = p, q, a * p + p_prev, a * q + q_prev
        yield p, q


def convergents(spec: CFSpec, depth: int) -> list[Fraction]:
    """The first ``depth`` convergents (fewer if a rational spec runs out of terms)."""
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    return [Fraction(p, q) for p, q in _convergent_pairs(spec.terms(), depth)]


def evaluate(spec: CFSpec) -> float:
    """Float value of an eventually periodic continued fraction."""
    if spec.is_rational:
        return float(spec.rational())
    # last two transient convergents: x = (p_m + t p_{m-1}) / (q_m + t q_{m-1}),
    # t being the value of the purely periodic tail
    p_prev, q_prev, p, q = 1, 0, 0, 1
    for a in spec.transient:
        p_prev, q_prev, p, q = p, q, a * p + p_prev, a * q + q_prev
    if spec.is_noble:
        t = _PHI_INV
    else:
        # t = (P_n + t P_{n-1}) / (Q_n + t Q_{n-1})  =>  Q_{n-1} t^2 + (Q_n - P_{n-1}) t - P_n = 0
        pairs = list(_convergent_pairs(iter(spec.period), len(spec.period)))
        P_n, Q_n = pairs[-1]
        P_prev, Q_prev = pairs[-2] if len(pairs) > 1 else (0, 1)
        b = Q_n - P_prev
        disc = b * b + 4 * Q_prev * P_n
        # rationalized root avoids cancellation
        t = 2 * P_n / (b + math.sqrt(disc))
    return (p + t * p_prev) / (q + t * q_prev)


def decimal_to_cfspec(text: str, max_terms: int = 40) -> CFSpec:
    """Truncated continued fraction of a decimal string in (0, 1).

    The decimal is read exactly, so the terms are those of the written value; beyond
    the precision of the input they carry no information about the intended real.
    """
    x = Fraction(text)
    x = _check_interior(x)
    terms = rational_to_cf(x)[:max_terms]
    return CFSpec(canonical_cf(terms))
