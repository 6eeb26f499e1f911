"""Two advice bits, 4/3-competitive.

Items in [1/4, 3/4] are *medium*.  The oracle picks the first applicable of
four strategies and writes its number minus one as two bits.
"""

from __future__ import annotations

from ..core import normalize
from ..offline import enumerate_optima
from .base import Policy

QUARTER = 0.25
HALF = 0.5
THREE_QUARTERS = 0.75


def _medium(s):
    return QUARTER <= s <= THREE_QUARTERS


def _low_medium(s):
    return QUARTER <= s <= HALF


def choose_strategy(instance, optima=None) -> int:
    inst = normalize(instance)
    sizes = inst.sizes
    if optima is None:
        optima = enumerate_optima(inst)
    counts = [sum(_medium(sizes[i]) for i in opt) for opt in optima]
    if any(s > THREE_QUARTERS for s in sizes) or min(counts) <= 1:
        return 1
    mediums = sorted(s for s in sizes if _medium(s))
    if max(counts) >= 3 or mediums[0] + mediums[1] >= THREE_QUARTERS:
        return 2
    if any(sum(_low_medium(sizes[i]) for i in opt) >= 2 for opt in optima):
        return 3
    return 4


def oracle_twobit(instance, optima=None) -> str:
    return format(choose_strategy(instance, optima) - 1, "02b")


class TwoBitPolicy(Policy):
    name = "twobit"

    def setup(self, tape):
        self.strategy = tape.read_uint(2) + 1
        self.held = []  # slot items (strategies 1-3)
        self.slot_a = None  # strategy 4: minimal item in [1/4, 1/2]
        self.slot_b = None  # strategy 4: minimal item in (1/2, 3/4]

    def decide(self, index, size):
        return getattr(self, f"_s{self.strategy}")(index, size)

    def _s1(self, index, size):
        """One maximal medium item, smaller items greedy; an item above 3/4
        is packed and kept."""
        if size > THREE_QUARTERS:
            self.frozen = True
            return set(self.packed), True
        if size < QUARTER:
            return (), self.fits(self.packed | {index})
        if self.held and size <= self.sizes[self.held[0]]:
            return (), False
        removals = set(self.held)
        removals |= set(self.shed((), self.packed - removals, index))
        self.held = [index]
        return removals, True

    def _s2(self, index, size):
        """Up to three minimal medium items, as many of them as fit."""
        if not _medium(size):
            return (), False
        ordered = sorted(self.held + [index], key=lambda j: (self.sizes[j], j))
        keep = []
        for j in ordered[:3]:
            if not self.fits(keep + [j]):
                break
            keep.append(j)
        if index not in keep:
            return (), False
        removals = set(self.held) - set(keep)
        self.held = keep
        return removals, True

    def _s3(self, index, size):
        """Two maximal items from [1/4, 1/2], smaller items greedy."""
        if size < QUARTER:
            return (), self.fits(self.packed | {index})
        if not _low_medium(size):
            return (), False
        removals = set()
        if len(self.held) == 2:
            low = self.smallest(self.held)
            if size <= self.sizes[low]:
                return (), False
            removals.add(low)
            self.held.remove(low)
        smalls = self.packed - set(self.held) - removals
        removals |= set(self.shed(self.held, smalls, index))
        self.held.append(index)
        return removals, True

    def _s4(self, index, size):
        """Slot B (minimal item in (1/2, 3/4]) has precedence over slot A
        (minimal item in [1/4, 1/2]); A is packed whenever it fits."""
        sizes = self.sizes
        if HALF < size <= THREE_QUARTERS:
            if self.slot_b is not None and size >= sizes[self.slot_b]:
                return (), False
            removals = {self.slot_b} if self.slot_b is not None else set()
            if self.slot_a is not None and not self.fits({self.slot_a, index}):
                removals.add(self.slot_a)
                self.slot_a = None
            self.slot_b = index
            return removals, True
        if _low_medium(size):
            if self.slot_a is not None and size >= sizes[self.slot_a]:
                return (), False
            if self.slot_b is not None and not self.fits({self.slot_b, index}):
                return (), False
            removals = {self.slot_a} if self.slot_a is not None else set()
            self.slot_a = index
            return removals, True
        return (), False
