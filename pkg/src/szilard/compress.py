"""Information-compressing relabelings of the outcome space.

A reversible interaction between boxes is, for diagonal (classical) states,
just a permutation of outcome indices. The canonical compression sorts
outcomes by descending probability so all support mass lands on the lowest
indices; the leading boxes then read L with certainty and can be harvested
for work, while the randomness is squeezed into the trailing boxes.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BiasedBitsPresent, IndexOutOfRange, SamePosition
from .probdist import ExplicitDistribution, _from_arrays, apply_permutation

#: |marginal(bit=1) - 1/2| below this counts as uniform (explicit-path floats)
UNIFORMITY_TOL = 1e-12

KNOWN, BIASED, UNIFORM = "known", "biased", "uniform"


@dataclass(frozen=True)
class BitInfo:
    """Classification of one box after compression."""

    kind: str  # known | biased | uniform
    value: int | None = None  # fixed content for known bits (0=L, 1=R)


@dataclass(frozen=True, eq=False)
class CompressionPlan:
    """A permutation of outcome indices plus the resulting per-box profile."""

    n: int
    permutation: np.ndarray
    profile: tuple[BitInfo, ...]


def bit_profile(dist: ExplicitDistribution) -> tuple[BitInfo, ...]:
    """Label each box: known if its content is certain, uniform if its
    marginal is exactly 1/2 (within UNIFORMITY_TOL), else biased."""
    out = []
    for pos in range(dist.n):
        bits = (dist.indices >> (dist.n - 1 - pos)) & 1
        if np.all(bits == bits[0]):
            out.append(BitInfo(KNOWN, int(bits[0])))
            continue
        p_one = float(dist.probs[bits == 1].sum() / dist.probs.sum())
        if abs(p_one - 0.5) <= UNIFORMITY_TOL:
            out.append(BitInfo(UNIFORM))
        else:
            out.append(BitInfo(BIASED))
    return tuple(out)


def canonical_permutation(dist: ExplicitDistribution) -> CompressionPlan:
    """The probability-sorting relabeling.

    Support outcomes map to indices 0..k-1 in order of non-increasing
    probability; ties and the zero-probability remainder keep their original
    index order, which makes recompression the identity.
    """
    size = 1 << dist.n
    perm = np.empty(size, dtype=np.int64)
    order = np.lexsort((dist.indices, -dist.probs))
    perm[dist.indices[order]] = np.arange(dist.support_size)
    rest = np.ones(size, dtype=bool)
    rest[dist.indices] = False
    perm[rest] = np.arange(dist.support_size, size)
    compressed = apply_permutation(dist, perm)
    perm.setflags(write=False)
    return CompressionPlan(dist.n, perm, bit_profile(compressed))


def apply_plan(dist: ExplicitDistribution, plan: CompressionPlan) -> ExplicitDistribution:
    return apply_permutation(dist, plan.permutation)


def bennett_work(profile: tuple[BitInfo, ...], c: float) -> float:
    """(n - #uniform) * c for profiles with no biased boxes.

    Applies only when every box is fully known or fully unknown; a biased
    box means the risk-free / gambling bounds must be used instead.
    """
    if any(b.kind == BIASED for b in profile):
        raise BiasedBitsPresent("profile contains biased boxes")
    n_unknown = sum(1 for b in profile if b.kind == UNIFORM)
    return (len(profile) - n_unknown) * c


def apply_cnot(dist: ExplicitDistribution, control: int, target: int) -> ExplicitDistribution:
    """Flip the target box content wherever the control box reads R."""
    if control == target:
        raise SamePosition(f"control and target are both {control}")
    for pos in (control, target):
        if not 0 <= pos < dist.n:
            raise IndexOutOfRange(f"position {pos} outside [0, {dist.n})")
    control_bit = (dist.indices >> (dist.n - 1 - control)) & 1
    new_indices = dist.indices ^ (control_bit << (dist.n - 1 - target))
    return _from_arrays(dist.n, new_indices, dist.probs)
