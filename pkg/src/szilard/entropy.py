"""Exact and smoothed entropies of box distributions.

Three functionals: Shannon entropy, min-entropy (-log2 of the peak
probability) and max-entropy (log2 of the support size), plus their
epsilon-smoothed versions. Smoothing optimizes over the mass-removal ball

    { Q : 0 <= Q <= P pointwise,  sum(P - Q) <= eps },

i.e. epsilon is the total probability of events one agrees to ignore.
Over this ball both smooth values have closed-form greedy solutions:

* smooth max-entropy deletes outcomes in ascending probability order until
  the budget is exhausted (deleting cheapest strings maximizes the number
  removed, hence minimizes the retained support);
* smooth min-entropy shaves every probability above a cut level lambda,
  where lambda solves sum_i max(p_i - lambda, 0) = eps (no redistribution;
  lowering the peak any further would overdraw the budget).

Both have a fast path over type classes, so i.i.d. and mixture families are
exact at n = 1000 and beyond.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadEpsilon
from .numerics import log2_one_minus_exp2, log2_one_minus_exp2_vec, logsumexp2, xlog2x
from .probdist import (
    ExplicitDistribution,
    MixtureOfProducts,
    TypeClassView,
    _from_arrays,
    to_type_classes,
)

Distribution = ExplicitDistribution | MixtureOfProducts | TypeClassView

#: bisection stop width for the cut-level solve, in log2(lambda) units
#: (equivalent to relative 1e-12 on lambda)
_CUT_LOG_TOL = math.log2(1.0 + 1e-12)


@dataclass(frozen=True)
class EntropyReport:
    """All six entropy figures of one distribution at one epsilon."""

    n: int
    shannon: float
    h_min: float
    h_max: float
    epsilon: float
    h_min_smooth: float
    h_max_smooth: float


@dataclass(frozen=True)
class CutLevel:
    """Witness for the smooth min-entropy: the peak-shaving level.

    The level is carried in log2 form because it underflows linear floats
    for large n; ``removed_mass`` is the budget actually spent.
    """

    log2_level: float
    removed_mass: float

    @property
    def level(self) -> float:
        return 2.0**self.log2_level


@dataclass(frozen=True)
class ClassRetention:
    """Per-class retained string counts (log2) after tail deletion."""

    log2_retained_by_class: np.ndarray
    removed_mass: float


@dataclass(frozen=True)
class SmoothedMax:
    bits: float
    removed_mass: float
    retained_count: int | None            # exact on the explicit path
    witness: ExplicitDistribution | None  # subnormalized table, explicit path
    retention: ClassRetention | None      # type-class path


@dataclass(frozen=True)
class SmoothedMin:
    bits: float
    cut: CutLevel
    witness: ExplicitDistribution | None  # subnormalized table, explicit path


def binary_entropy(p: float) -> float:
    """-p log2 p - (1-p) log2(1-p) on [0, 1]."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"need p in [0, 1], got {p}")
    out = 0.0
    if p > 0.0:
        out -= p * math.log2(p)
    if p < 1.0:
        out -= (1.0 - p) * math.log2(1.0 - p)
    return out


def _view(dist: Distribution) -> TypeClassView | None:
    if isinstance(dist, TypeClassView):
        return dist
    if isinstance(dist, MixtureOfProducts):
        return to_type_classes(dist)
    return None


def shannon(dist: Distribution) -> float:
    """-sum p log2 p, with 0 log 0 = 0.

    Summation is exactly rounded (fsum), so the value is identical for any
    relabeling of the same probability multiset.
    """
    view = _view(dist)
    if view is None:
        return -math.fsum(xlog2x(dist.probs))
    sup = view.support_classes()
    mass = np.exp2(view.class_log_mass()[sup])
    return -math.fsum(mass * view.class_log_prob[sup])


def h_min(dist: Distribution) -> float:
    """-log2 of the largest outcome probability."""
    view = _view(dist)
    if view is None:
        return -math.log2(dist.p_max)
    return -view.log_p_max()


def h_max(dist: Distribution) -> float:
    """log2 of the support size."""
    view = _view(dist)
    if view is None:
        return math.log2(dist.support_size)
    return logsumexp2(view.class_log_count[view.support_classes()])


def _check_epsilon(eps: float):
    if not 0.0 <= eps < 1.0:
        raise BadEpsilon(f"need 0 <= epsilon < 1, got {eps}")


def h_max_smooth(dist: Distribution, eps: float) -> float:
    return h_max_smooth_detail(dist, eps).bits


def h_max_smooth_detail(dist: Distribution, eps: float) -> SmoothedMax:
    """Minimal support size reachable by deleting total mass <= eps.

    Explicit path: sort ascending (ties deleted in descending index order)
    and cut the longest affordable prefix. Type-class path: delete whole
    classes in ascending per-string probability, then as many strings of
    the boundary class as the leftover budget buys.
    """
    _check_epsilon(eps)
    view = _view(dist)
    if view is None:
        return _h_max_smooth_explicit(dist, eps)
    return _h_max_smooth_classes(view, eps)


def _h_max_smooth_explicit(dist: ExplicitDistribution, eps: float) -> SmoothedMax:
    order = np.lexsort((-dist.indices, dist.probs))
    cum = np.cumsum(dist.probs[order])
    deleted = int(np.searchsorted(cum, eps, side="right"))
    # eps < 1 = total mass, so the top outcome survives; the min() only
    # shields against float cum[-1] landing a hair below eps
    deleted = min(deleted, dist.support_size - 1)
    keep = np.ones(dist.support_size, dtype=bool)
    keep[order[:deleted]] = False
    removed = float(cum[deleted - 1]) if deleted else 0.0
    witness = _from_arrays(dist.n, dist.indices[keep], dist.probs[keep])
    k = dist.support_size - deleted
    return SmoothedMax(math.log2(k), removed, k, witness, None)


def _h_max_smooth_classes(view: TypeClassView, eps: float) -> SmoothedMax:
    lp, lc = view.class_log_prob, view.class_log_count
    retained = lc.copy()
    retained[~view.support_classes()] = -np.inf
    if eps == 0.0:
        bits = logsumexp2(retained[np.isfinite(retained)])
        return SmoothedMax(bits, 0.0, None, None, ClassRetention(retained, 0.0))

    sup = np.flatnonzero(view.support_classes())
    order = sup[np.argsort(lp[sup])]  # ascending per-string probability
    mass = np.exp2(lp[order] + lc[order])  # underflow to 0 only erases < float-resolution budget
    cum = 0.0
    for pos, k in enumerate(order):
        if cum + mass[pos] <= eps:
            cum += mass[pos]
            retained[k] = -np.inf
            continue
        budget = eps - cum
        if budget > 0.0:
            log_t = math.log2(budget) - lp[k]
            if log_t >= 0.0:
                if log_t < 52.0:
                    # counts this small are exact in float; honor the integer floor
                    t = math.floor(2.0**log_t)
                    log_t = math.log2(t) if t else -math.inf
                # budget < class mass, so t < count barring float rounding
                if math.isfinite(log_t) and log_t < lc[k]:
                    cum += 2.0 ** (log_t + lp[k])
                    retained[k] = lc[k] + log2_one_minus_exp2(log_t - lc[k])
        break
    if not np.isfinite(retained).any():
        retained[order[-1]] = 0.0  # eps < 1: one top-probability string survives
    bits = logsumexp2(retained[np.isfinite(retained)])
    return SmoothedMax(bits, cum, None, None, ClassRetention(retained, cum))


def h_min_smooth(dist: Distribution, eps: float) -> float:
    return h_min_smooth_detail(dist, eps).bits


def h_min_smooth_detail(dist: Distribution, eps: float) -> SmoothedMin:
    """Largest min-entropy reachable by removing mass <= eps (peak shaving).

    Explicit path: exact piecewise-linear solve over the sorted table.
    Type-class path: bisection on log2(lambda), at most 200 halvings, to
    relative 1e-12 on lambda.
    """
    _check_epsilon(eps)
    view = _view(dist)
    if view is None:
        return _h_min_smooth_explicit(dist, eps)
    return _h_min_smooth_classes(view, eps)


def _h_min_smooth_explicit(dist: ExplicitDistribution, eps: float) -> SmoothedMin:
    desc = np.sort(dist.probs)[::-1]
    if eps == 0.0:
        lam = float(desc[0])
    else:
        prefix = np.cumsum(desc)
        m = np.arange(1, desc.size + 1)
        levels = (prefix - eps) / m
        next_prob = np.append(desc[1:], 0.0)
        # smallest m whose level clears the next entry: only the top m get shaved
        feasible = levels >= next_prob
        lam = float(levels[np.argmax(feasible)])
        lam = min(lam, float(desc[0]))
    shaved = np.minimum(dist.probs, lam)
    removed = float((dist.probs - shaved).sum())
    witness = _from_arrays(dist.n, dist.indices, shaved)
    return SmoothedMin(-math.log2(lam), CutLevel(math.log2(lam), removed), witness)


def _h_min_smooth_classes(view: TypeClassView, eps: float) -> SmoothedMin:
    lp = view.class_log_prob
    lc = view.class_log_count
    sup = view.support_classes()
    log_pmax = view.log_p_max()
    if eps == 0.0:
        return SmoothedMin(-log_pmax, CutLevel(log_pmax, 0.0), None)

    def removed_mass(log_lam: float) -> float:
        above = sup & (lp > log_lam)
        if not above.any():
            return 0.0
        terms = lc[above] + lp[above] + log2_one_minus_exp2_vec(log_lam - lp[above])
        return 2.0 ** logsumexp2(terms)

    # removed mass is 1 - lam * N at the low end, so this bracket always straddles eps
    lo = math.log2(1.0 - eps) - logsumexp2(lc[sup])
    hi = log_pmax
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if removed_mass(mid) > eps:
            lo = mid
        else:
            hi = mid
        if hi - lo <= _CUT_LOG_TOL:
            break
    log_lam = 0.5 * (lo + hi)
    return SmoothedMin(-log_lam, CutLevel(log_lam, removed_mass(log_lam)), None)


def smooth_report(dist: Distribution, eps: float) -> EntropyReport:
    """All six entropy figures at once."""
    n = dist.n
    return EntropyReport(
        n=n,
        shannon=shannon(dist),
        h_min=h_min(dist),
        h_max=h_max(dist),
        epsilon=eps,
        h_min_smooth=h_min_smooth(dist, eps),
        h_max_smooth=h_max_smooth(dist, eps),
    )
