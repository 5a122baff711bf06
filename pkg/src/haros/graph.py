"""Haros graph construction by graph concatenation.

A Haros graph is stored as its open degree sequence (q + 1 nodes). Horizontal
visibility graphs are unigraphs, so nothing else is needed to pin the graph down.
Observables use the collapsed presentation, where the two extreme nodes are
identified into a single boundary node placed last.

Two representations follow the same concatenation rule:

* :class:`HarosGraph` keeps the whole ordered sequence (O(q) memory);
* :class:`DegreeProfile` keeps only the extreme degrees and the multiset of inner
  degrees, which is all a degree distribution needs. It scales to convergents
  whose graphs have 10**15 nodes or more.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping

from .farey import (ONE, ZERO, are_neighbours, canonical_cf, mediant, rational_to_cf,
                    rational_to_path, totients, validate_path)


class BudgetExceeded(ValueError):
    """A sweep would construct more nodes than the configured work budget."""


DEFAULT_BUDGET = 10**9


@dataclass(frozen=True)
class HarosGraph:
    open_degrees: tuple[int, ...]
    label: Fraction
    path: str = ""
    # open-sequence index of the node merged by the last concatenation
    merge_index: int | None = None

    @property
    def q(self) -> int:
        return len(self.open_degrees) - 1

    @property
    def boundary_degree(self) -> int:
        return self.open_degrees[0] + self.open_degrees[-1]

    def collapsed(self) -> tuple[int, ...]:
        return collapse(self)


def atom(label: Fraction = ZERO) -> HarosGraph:
    """G_0: two nodes joined by an edge, standing for both 0/1 and 1/1."""
    return HarosGraph((1, 1), Fraction(label), "")


def _is_atom(g) -> bool:
    return g.q == 1 and g.label in (ZERO, ONE)


def _concat_label(left, right) -> Fraction:
    # G_0 is 0/1 on the left of a concatenation and 1/1 on the right
    a = ZERO if _is_atom(left) else left.label
    b = ONE if _is_atom(right) else right.label
    if not are_neighbours(a, b):
        raise ValueError(f"{a} and {b} are not Farey neighbours; cannot concatenate")
    return mediant(a, b)


def concat(left: HarosGraph, right: HarosGraph, path: str | None = None) -> HarosGraph:
    """Merge the last node of ``left`` with the first of ``right`` and close with an edge."""
    label = _concat_label(left, right)
    a, b = left.open_degrees, right.open_degrees
    seq = (a[0] + 1,) + a[1:-1] + (a[-1] + b[0],) + b[1:-1] + (b[-1] + 1,)
    return HarosGraph(seq, label, path if path is not None else "", len(a) - 1)


def build(path: str) -> HarosGraph:
    """Construct G_x for the node reached by ``path``, in lock-step with the Farey descent."""
    validate_path(path)
    g_left, g_node, g_right = atom(ZERO), atom(ONE), atom(ONE)
    for i, s in enumerate(path):
        if s == "L":
            g_right, g_node = g_node, concat(g_left, g_node, path[: i + 1])
        else:
            g_left, g_node = g_node, concat(g_node, g_right, path[: i + 1])
    return g_node


def collapse(g: HarosGraph) -> tuple[int, ...]:
    """Inner degrees in order, then the boundary degree k_1 + k_{q+1}."""
    seq = g.open_degrees
    return tuple(seq[1:-1]) + (seq[0] + seq[-1],)


# ------------------------------------------------------------------ distributions

@dataclass(frozen=True)
class DegreeDistribution:
    """Exact degree counts over the q collapsed nodes."""

    counts: Mapping[int, int]
    q: int

    def __post_init__(self):
        object.__setattr__(self, "counts", dict(sorted(self.counts.items())))

    def __getitem__(self, k: int) -> Fraction:
        return Fraction(self.counts.get(k, 0), self.q)

    def count(self, k: int) -> int:
        return self.counts.get(k, 0)

    @property
    def probabilities(self) -> dict[int, Fraction]:
        return {k: Fraction(c, self.q) for k, c in self.counts.items()}

    @property
    def support(self) -> list[int]:
        return [k for k, c in self.counts.items() if c]

    @property
    def max_degree(self) -> int:
        return max(self.counts)

    def float_probabilities(self) -> dict[int, float]:
        # int/int true division is correctly rounded even for huge counts
        return {k: c / self.q for k, c in self.counts.items()}


def degree_distribution(g) -> DegreeDistribution:
    """Distribution of a :class:`HarosGraph` or :class:`DegreeProfile`."""
    if isinstance(g, DegreeProfile):
        return g.distribution()
    return DegreeDistribution(Counter(collapse(g)), g.q)


def degree_count(g, k: int) -> int:
    return degree_distribution(g).count(k)


# --------------------------------------------------------------- compact profile

@dataclass(frozen=True)
class DegreeProfile:
    """Extreme degrees plus the multiset of inner degrees of an open Haros graph."""

    first: int
    last: int
    inner: Mapping[int, int] = field(default_factory=dict)
    label: Fraction = ZERO

    @property
    def q(self) -> int:
        return self.label.denominator

    def distribution(self) -> DegreeDistribution:
        counts = dict(self.inner)
        b = self.first + self.last
        counts[b] = counts.get(b, 0) + 1
        return DegreeDistribution(counts, self.q)

    @classmethod
    def of(cls, g: HarosGraph) -> "DegreeProfile":
        seq = g.open_degrees
        return cls(seq[0], seq[-1], dict(Counter(seq[1:-1])), g.label)


def atom_profile(label: Fraction = ZERO) -> DegreeProfile:
    return DegreeProfile(1, 1, {}, Fraction(label))


def concat_profiles(left: DegreeProfile, right: DegreeProfile) -> DegreeProfile:
    label = _concat_label(left, right)
    big, small = (left.inner, right.inner) if len(left.inner) >= len(right.inner) \
        else (right.inner, left.inner)
    inner = dict(big)
    for k, c in small.items():
        inner[k] = inner.get(k, 0) + c
    m = left.last + right.first
    inner[m] = inner.get(m, 0) + 1
    return DegreeProfile(left.first + 1, right.last + 1, inner, label)


def build_profile(path: str) -> DegreeProfile:
    validate_path(path)
    g_left, g_node, g_right = atom_profile(ZERO), atom_profile(ONE), atom_profile(ONE)
    for s in path:
        if s == "L":
            g_right, g_node = g_node, concat_profiles(g_left, g_node)
        else:
            g_left, g_node = g_node, concat_profiles(g_node, g_right)
    return g_node


def build_profile_from_terms(terms) -> DegreeProfile:
    """Profile of the rational with the given continued fraction terms.

    Walks the L/R blocks directly, so the path string is never materialized.
    """
    terms = canonical_cf(terms)
    g_left, g_node, g_right = atom_profile(ZERO), atom_profile(ONE), atom_profile(ONE)
    for i, a in enumerate(terms):
        reps = a - 1 if i == len(terms) - 1 else a
        for _ in range(reps):
            if i % 2 == 0:
                g_right, g_node = g_node, concat_profiles(g_left, g_node)
            else:
                g_left, g_node = g_node, concat_profiles(g_node, g_right)
    return g_node


# ----------------------------------------------------------------- enumeration

def farey_work(order: int) -> int:
    """Total collapsed nodes over F_order: sum of q * phi(q) for q <= order."""
    phi = totients(order)
    return sum(q * phi[q] for q in range(1, order + 1))


def check_budget(work: int, budget: int | None, what: str) -> None:
    if budget is not None and work > budget:
        raise BudgetExceeded(
            f"{what} needs {work:,} constructed nodes, over the budget of {budget:,}; "
            f"rerun with --budget {work} or larger")


def walk_tree(order: int, left, right, combine) -> Iterator:
    """In-order walk of the Farey subtree between neighbours ``left`` < ``right``.

    Only fractions with denominator <= order are visited; denominators grow
    downward, so pruning is exact. Yields ``combine`` results in ascending order.
    """
    # stack entries: (left, right) to visit, or a bare node to emit
    stack = [(left, right)]
    while stack:
        entry = stack.pop()
        if not isinstance(entry, tuple):
            yield entry
            continue
        left, right = entry
        if left.label.denominator + right.label.denominator > order:
            continue
        node = combine(left, right)
        stack.append((node, right))
        stack.append(node)
        stack.append((left, node))


def iter_graphs(order: int, budget: int | None = DEFAULT_BUDGET) -> Iterator[HarosGraph]:
    """Full Haros graphs for every interior fraction of F_order, ascending.

    Paths are not tracked here; use :func:`build` when the path is needed.
    """
    check_budget(farey_work(order), budget, f"enumerating F_{order}")
    return walk_tree(order, atom(ZERO), atom(ONE), concat)


def iter_profiles(order: int, budget: int | None = DEFAULT_BUDGET) -> Iterator[DegreeProfile]:
    check_budget(farey_work(order), budget, f"enumerating F_{order}")
    return walk_tree(order, atom_profile(ZERO), atom_profile(ONE), concat_profiles)


def iter_paths(max_len: int) -> Iterator[str]:
    """Every valid path of length <= max_len: the empty path, then L-prefixed ones."""
    yield ""
    frontier = ["L"]
    for length in range(1, max_len + 1):
        yield from frontier
        if length < max_len:
            frontier = [p + s for p in frontier for s in "LR"]


def graph_for(x: Fraction) -> HarosGraph:
    """Full Haros graph of a rational in [0, 1]; both endpoints give G_0."""
    x = Fraction(x)
    if x in (ZERO, ONE):
        return atom(x)
    return build(rational_to_path(x))


def profile_for(x: Fraction) -> DegreeProfile:
    x = Fraction(x)
    if x in (ZERO, ONE):
        return atom_profile(x)
    return build_profile_from_terms(rational_to_cf(x))


def distribution_for(x: Fraction) -> DegreeDistribution:
    return profile_for(x).distribution()


def mean_degree(g) -> Fraction:
    """Exact arithmetic mean degree over the collapsed nodes."""
    d = degree_distribution(g)
    return Fraction(sum(k * c for k, c in d.counts.items()), d.q)


def geometric_mean_degree(g) -> float:
    d = degree_distribution(g)
    return math.exp(math.fsum(c * math.log(k) for k, c in d.counts.items()) / d.q)
