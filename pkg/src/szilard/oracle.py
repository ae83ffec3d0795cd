"""Brute-force reference implementations for small instances.

Everything here recomputes results from first principles, sharing only the
probdist data types with the code it validates: subset enumeration instead
of the greedy tail cut, grid/rejection sampling instead of the exact cut
solve, full microstate enumeration instead of support arithmetic, and raw
search over every permutation/bet/guess instead of the compress-and-bet
construction. Slow by design, trustworthy by construction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, permutations, product

import numpy as np

from .errors import TooLarge
from .game import ExactResult, Strategy
from .probdist import ExplicitDistribution

_SUBSET_CHUNK = 1 << 16


def brute_hmax_smooth(dist: ExplicitDistribution, eps: float) -> float:
    """Minimal log2 support over all deletions of total mass <= eps.

    Enumerates every subset of the support as a removal candidate.
    """
    s = dist.support_size
    if s > 20:
        raise TooLarge(f"support {s} > 20")
    best_removed = 0
    for start in range(0, 1 << s, _SUBSET_CHUNK):
        masks = np.arange(start, min(start + _SUBSET_CHUNK, 1 << s), dtype=np.int64)
        removal = ((masks[:, None] >> np.arange(s)) & 1).astype(float)
        mass = removal @ dist.probs
        feasible = mass <= eps
        if feasible.any():
            best_removed = max(best_removed, int(removal[feasible].sum(axis=1).max()))
    return math.log2(s - best_removed)


def brute_hmin_smooth(
    dist: ExplicitDistribution,
    eps: float,
    rng: np.random.Generator | None = None,
    grid_points: int = 10_000,
    n_samples: int = 10_000,
) -> float:
    """Best -log2(peak) found by a cut-level grid plus random ball members.

    A lower bound on the true smooth min-entropy; the greedy solve must
    beat or tie every candidate produced here.
    """
    s = dist.support_size
    if s > 20:
        raise TooLarge(f"support {s} > 20")
    p = dist.probs
    pmax = float(p.max())
    best = -math.log2(pmax)

    levels = np.linspace(pmax / grid_points, pmax, grid_points)
    shaved = np.minimum(p[None, :], levels[:, None])
    feasible = (p[None, :] - shaved).sum(axis=1) <= eps
    if feasible.any():
        peaks = shaved[feasible].max(axis=1)
        best = max(best, float(-np.log2(peaks.min())))

    if rng is not None and eps > 0.0:
        raw = rng.random((n_samples, s))
        raw /= raw.sum(axis=1, keepdims=True)
        removals = np.minimum(raw * (eps * rng.random((n_samples, 1))), p[None, :])
        peaks = (p[None, :] - removals).max(axis=1)
        best = max(best, float(-np.log2(peaks.min())))
    return best


def exhaustive_game_eval(dist: ExplicitDistribution, strategy: Strategy) -> ExactResult:
    """Walk all 2^n microstates and add up the mass of full bet matches."""
    if dist.n > 20:
        raise TooLarge(f"n {dist.n} > 20")
    dense = np.zeros(1 << dist.n)
    dense[dist.indices] = dist.probs
    success = 0.0
    for state in range(1 << dist.n):
        if dense[state] == 0.0:
            continue
        relabeled = int(strategy.plan.permutation[state])
        if all((relabeled >> (dist.n - 1 - pos)) & 1 == val for pos, val in strategy.bets):
            success += dense[state]
    return ExactResult(success, success * strategy.committed_work)


@dataclass(frozen=True)
class SearchResult:
    work: float  # joules of the best committed work
    bet_count: int
    permutation: tuple[int, ...]
    bets: tuple[tuple[int, int], ...]


def exhaustive_strategy_search(
    dist: ExplicitDistribution, eps: float, c: float
) -> SearchResult:
    """Best committed work over every permutation, bet set and guess.

    Ground truth for the risk-free claim at toy scale: a strategy counts as
    admissible when its exact success probability is at least 1 - eps.
    """
    if dist.n > 3:
        raise TooLarge(f"n {dist.n} > 3")
    size = 1 << dist.n
    dense = np.zeros(size)
    dense[dist.indices] = dist.probs

    perms = np.array(list(permutations(range(size))), dtype=np.int64)
    relabeled = np.zeros((perms.shape[0], size))
    rows = np.repeat(np.arange(perms.shape[0]), size)
    relabeled[rows, perms.ravel()] = np.tile(dense, perms.shape[0])

    best = SearchResult(0.0, 0, tuple(range(size)), ())
    # admissibility tolerance absorbs float summation noise in tied cases
    for count in range(dist.n, 0, -1):
        for positions in combinations(range(dist.n), count):
            shifts = [dist.n - 1 - p for p in positions]
            for guesses in product((0, 1), repeat=count):
                cells = [
                    i
                    for i in range(size)
                    if all((i >> sh) & 1 == g for sh, g in zip(shifts, guesses))
                ]
                success = relabeled[:, cells].sum(axis=1)
                hit = int(np.argmax(success))
                if success[hit] >= 1.0 - eps - 1e-12:
                    return SearchResult(
                        count * c,
                        count,
                        tuple(int(x) for x in perms[hit]),
                        tuple(zip(positions, guesses)),
                    )
    return best
