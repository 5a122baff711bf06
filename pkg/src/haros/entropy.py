"""Graph entropy S(x), reduced entropy H(x), entropy curves and their geometry.

Logarithms are natural throughout, so entropies are in nats.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .farey import ONE, ZERO
from .graph import (DEFAULT_BUDGET, DegreeDistribution, DegreeProfile, atom_profile,
                    check_budget, concat_profiles, distribution_for, farey_work, profile_for,
                    walk_tree)

log = logging.getLogger(__name__)

HALF = Fraction(1, 2)


def entropy_S(dist: DegreeDistribution) -> float:
    """Shannon entropy -sum P ln P of a degree distribution, with 0 ln 0 = 0."""
    q = dist.q
    terms = []
    for c in dist.counts.values():
        if c:
            p = c / q
            terms.append(-p * math.log(p))
    return math.fsum(terms)


def _xlogx(x: float) -> float:
    return x * math.log(x) if x > 0 else 0.0


def reduced_H(x, S: float) -> float:
    """S minus the entropy floor 2x ln x + (1-2x) ln(1-2x) (mirrored above 1/2).

    ``x`` may be a Fraction or a float.
    """
    if x > HALF:
        x = 1 - x
    xf = float(x)
    return S + 2 * _xlogx(xf) + _xlogx(1 - 2 * xf)


def entropy_of(x: Fraction) -> float:
    return entropy_S(distribution_for(x))


def H_of(x: Fraction) -> float:
    return reduced_H(Fraction(x), entropy_of(x))


@dataclass(frozen=True)
class EntropySample:
    x: Fraction
    x_float: float
    S: float
    H: float
    k_mean: Fraction
    k_geo: float


def sample_from_profile(prof: DegreeProfile) -> EntropySample:
    dist = prof.distribution()
    x = prof.label
    S = entropy_S(dist)
    k_mean = Fraction(sum(k * c for k, c in dist.counts.items()), dist.q)
    k_geo = math.exp(math.fsum(c * math.log(k) for k, c in dist.counts.items()) / dist.q)
    return EntropySample(x, float(x), S, reduced_H(x, S), k_mean, k_geo)


def sample_for(x: Fraction) -> EntropySample:
    return sample_from_profile(profile_for(Fraction(x)))


def _subtree_samples(args) -> list[EntropySample]:
    order, left, right = args
    return [sample_from_profile(p) for p in walk_tree(order, left, right, concat_profiles)]


def _split_frontier(order: int, pieces: int) -> list[tuple]:
    """Partition the pruned tree into in-order pieces: subtree brackets and single nodes."""
    items = [(atom_profile(ZERO), atom_profile(ONE))]
    while len(items) < pieces:
        nxt = []
        grew = False
        for it in items:
            if isinstance(it, tuple):
                left, right = it
                if left.q + right.q <= order:
                    node = concat_profiles(left, right)
                    nxt.extend([(left, node), node, (node, right)])
                    grew = True
                    continue
            nxt.append(it)
        items = nxt
        if not grew:
            break
    return items


def entropy_curve(order: int, thin: int | None = None, workers: int = 1,
                  budget: int | None = DEFAULT_BUDGET) -> list[EntropySample]:
    """One sample per interior fraction of F_order, ascending in x.

    ``thin`` keeps every thin-th sample. With workers > 1 disjoint subtrees are
    evaluated in separate processes; the output is identical either way.
    """
    if order < 2:
        raise ValueError(f"F_{order} has no interior fractions; order must be >= 2")
    if thin is not None and thin < 1:
        raise ValueError(f"thin must be a positive stride, got {thin}")
    check_budget(farey_work(order), budget, f"entropy curve over F_{order}")
    if workers <= 1:
        samples = _subtree_samples((order, atom_profile(ZERO), atom_profile(ONE)))
    else:
        pieces = _split_frontier(order, 8 * workers)
        jobs = [(order,) + p for p in pieces if isinstance(p, tuple)]
        log.info("entropy curve over F_%d: %d subtrees on %d workers", order, len(jobs), workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            done = iter(pool.map(_subtree_samples, jobs, chunksize=1))
            samples = []
            for p in pieces:
                samples.extend(next(done) if isinstance(p, tuple) else [sample_from_profile(p)])
    if thin:
        samples = samples[::thin]
    return samples


def derham_check(z: Fraction) -> tuple[float, float]:
    """S(z) and (z + 2) H(1/(z + 2)), both from constructed graphs."""
    z = Fraction(z)
    if not HALF <= z <= 1:
        raise ValueError(f"z must lie in [1/2, 1], got {z}")
    lhs = entropy_of(z)
    w = 1 / (z + 2)
    rhs = float(z + 2) * H_of(w)
    return lhs, rhs


@dataclass(frozen=True)
class Extrema:
    argmax: Fraction
    max_S: float
    minima: list


def scan_extrema(samples: Sequence[EntropySample], window=(ZERO, ONE)) -> Extrema:
    """Argmax of S in the closed window, and the strict local minima of S there."""
    lo, hi = window
    inside = [s for s in samples if lo <= s.x <= hi]
    if not inside:
        raise ValueError(f"no samples in window [{lo}, {hi}]")
    best = max(inside, key=lambda s: (s.S, -s.x))
    minima = []
    for i, s in enumerate(inside):
        left = inside[i - 1].S if i > 0 else math.inf
        right = inside[i + 1].S if i + 1 < len(inside) else math.inf
        if s.S < left and s.S < right:
            minima.append(s.x)
    return Extrema(best.x, best.S, minima)


def box_counting_dimension(samples: Sequence[EntropySample], scales: Sequence[int]) -> float:
    """Box-counting dimension of the graph of S over [0, 1].

    ``scales`` are grid sizes n (box side 1/n, S rescaled to [0, 1]). In each
    column the curve is taken to cover [min, max] of its samples together with
    the nearest samples on either side, so the graph is treated as connected.
    """
    if len(samples) < 10_000:
        raise ValueError(f"need at least 10000 samples, got {len(samples)}")
    if len(scales) < 4:
        raise ValueError(f"need at least 4 scales, got {len(scales)}")
    xs = np.array([s.x_float for s in samples])
    ys = np.array([s.S for s in samples])
    span = ys.max() - ys.min()
    ys = (ys - ys.min()) / span if span > 0 else np.zeros_like(ys)
    counts = []
    for n in scales:
        col = np.minimum((xs * n).astype(int), n - 1)
        # segment i joins samples i and i+1; it spans columns col[i]..col[i+1]
        seg_lo = np.minimum(ys[:-1], ys[1:])
        seg_hi = np.maximum(ys[:-1], ys[1:])
        lo = np.full(n, np.inf)
        hi = np.full(n, -np.inf)
        np.minimum.at(lo, col[:-1], seg_lo)
        np.maximum.at(hi, col[:-1], seg_hi)
        np.minimum.at(lo, col[1:], seg_lo)
        np.maximum.at(hi, col[1:], seg_hi)
        used = np.isfinite(lo)
        first = np.floor(lo[used] * n)
        last = np.minimum(np.floor(hi[used] * n), n - 1)
        counts.append(int(np.sum(last - first + 1)))
    slope, _ = np.polyfit(np.log(np.asarray(scales, dtype=float)), np.log(counts), 1)
    return float(slope)
