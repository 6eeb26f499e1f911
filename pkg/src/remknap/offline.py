"""Exact offline optimum of a removable knapsack instance.

Two independent routes:

* :func:`optimal_gain` runs a meet-in-the-middle subset-sum search (numpy,
  up to 40 items);
* :func:`enumerate_optima` runs a depth-first branch and bound over all
  subsets (up to 24 items) and lists every optimal packing.

Two subset sums closer than ``TIE`` are considered equal.  Witnesses are
broken lexicographically on the sorted index tuple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Sequence

import numpy as np

from .core import Instance, normalize, tolerance, total_size
from .errors import TooLarge

TIE = 1e-12
MAX_MITM = 40
MAX_ENUM = 24


@dataclass(frozen=True)
class OptResult:
    gain: float
    witness: frozenset


def _subset_sums(sizes: Sequence[float]) -> np.ndarray:
    """All 2^k subset sums; entry ``mask`` holds the sum of bits of ``mask``."""
    sums = np.zeros(1)
    for s in sizes:
        sums = np.concatenate([sums, sums + s])
    return sums


def _best_sum(sizes: Sequence[float], budget: float) -> float:
    """Largest subset sum not above ``budget`` (or -inf if budget < 0)."""
    if budget < 0:
        return -math.inf
    half = len(sizes) // 2
    left = _subset_sums(sizes[:half])
    right = np.sort(_subset_sums(sizes[half:]))
    left = left[left <= budget]
    pos = np.searchsorted(right, budget - left, side="right") - 1
    return float(np.max(left + right[pos]))


def optimal_gain(instance: Instance) -> OptResult:
    inst = normalize(instance)
    n = inst.n
    if n > MAX_MITM:
        raise TooLarge(f"{inst.name}: {n} items exceed the limit of {MAX_MITM}")
    if n == 0:
        return OptResult(0.0, frozenset())
    sizes = inst.sizes
    cap = inst.capacity + tolerance()
    gain = _best_sum(sizes, cap)
    # Greedy lexicographic reconstruction: commit to the smallest next index
    # that still admits an optimal completion from the items after it.
    chosen: List[int] = []
    used = 0.0
    j = 0
    while used < gain - TIE:
        while True:
            assert j < n, "reconstruction ran past the last item"
            rest = _best_sum(sizes[j + 1:], cap - used - sizes[j])
            if used + sizes[j] + rest >= gain - TIE:
                break
            j += 1
        chosen.append(j)
        used += sizes[j]
        j += 1
    witness = frozenset(chosen)
    return OptResult(total_size(sizes, witness), witness)


def enumerate_optima(instance: Instance) -> List[frozenset]:
    """Every optimal packing, ordered lexicographically by sorted indices."""
    inst = normalize(instance)
    sizes = inst.sizes
    n = len(sizes)
    if n > MAX_ENUM:
        raise TooLarge(f"{inst.name}: {n} items exceed the limit of {MAX_ENUM}")
    cap = inst.capacity + tolerance()
    suffix = [0.0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + sizes[i]
    slack = 1e-9  # running sums are not fsum-exact; keep pruning conservative

    best = 0.0

    def search(i, acc):
        nonlocal best
        if acc > best:
            best = acc
        if i == n or acc + suffix[i] <= best:
            return
        if acc + sizes[i] <= cap:
            search(i + 1, acc + sizes[i])
        search(i + 1, acc)

    search(0, 0.0)

    found = []
    chosen: List[int] = []

    def collect(i, acc):
        if acc + suffix[i] < best - slack:
            return
        if i == n:
            s = total_size(sizes, chosen)
            if s <= cap:
                found.append((tuple(chosen), s))
            return
        if acc + sizes[i] <= cap + slack:
            chosen.append(i)
            collect(i + 1, acc + sizes[i])
            chosen.pop()
        collect(i + 1, acc)

    collect(0, 0.0)
    top = max(s for _, s in found)
    optima = sorted(t for t, s in found if s >= top - TIE)
    return [frozenset(t) for t in optima]


def exists_optimum_with(instance: Instance,
                        predicate: Callable[[frozenset], bool]) -> bool:
    return any(predicate(s) for s in enumerate_optima(instance))
