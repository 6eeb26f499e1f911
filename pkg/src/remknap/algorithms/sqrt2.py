"""One advice bit, sqrt(2)-competitive.

Sizes fall into five half-open classes cut at

    a = 1 - 1/sqrt 2,  b = sqrt 2 - 1,  c = 1/2,  d = 1/sqrt 2

named tiny (0,a], small (a,b], medium (b,c], big (c,d] and huge (d,1].
Small and medium items are *little*, big and huge items are *large*.

The advice bit selects one of two slot strategies (``1`` = Strategy One,
``0`` = Strategy Two).  Tiny items are packed greedily by both; when a tiny
item does not fit, or a step discards tiny items, the knapsack freezes.
"""

from __future__ import annotations

import math
from enum import Enum

from ..core import normalize
from ..offline import enumerate_optima
from .base import Policy

A = 1.0 - 1.0 / math.sqrt(2.0)
B = math.sqrt(2.0) - 1.0
C = 0.5
D = 1.0 / math.sqrt(2.0)

STRATEGY_ONE = "1"
STRATEGY_TWO = "0"


class Sqrt2Class(Enum):
    TINY = "tiny"
    SMALL = "small"
    MEDIUM = "medium"
    BIG = "big"
    HUGE = "huge"

    @property
    def little(self) -> bool:
        return self in (Sqrt2Class.SMALL, Sqrt2Class.MEDIUM)

    @property
    def large(self) -> bool:
        return self in (Sqrt2Class.BIG, Sqrt2Class.HUGE)


def classify_sqrt2(size: float) -> Sqrt2Class:
    if size <= A:
        return Sqrt2Class.TINY
    if size <= B:
        return Sqrt2Class.SMALL
    if size <= C:
        return Sqrt2Class.MEDIUM
    if size <= D:
        return Sqrt2Class.BIG
    return Sqrt2Class.HUGE


def ratio_bounds() -> dict:
    """The six per-case performance bounds; their maximum is sqrt 2."""
    return {
        "1/d": 1.0 / D,
        "d/c": D / C,
        "1/(2b)": 1.0 / (2.0 * B),
        "1/(a+b)": 1.0 / (A + B),
        "1/(1-a)": 1.0 / (1.0 - A),
        "b/a": B / A,
    }


def _first_minimal(sizes, idx):
    return min(idx, key=lambda i: (sizes[i], i)) if idx else None


def oracle_sqrt2(instance, optima=None) -> str:
    inst = normalize(instance)
    sizes = inst.sizes
    if optima is None:
        optima = enumerate_optima(inst)
    chosen = optima[0]
    cls = [classify_sqrt2(s) for s in sizes]
    if not any(cls[i].large for i in chosen):
        return STRATEGY_TWO
    if any(c is Sqrt2Class.HUGE for c in cls):
        return STRATEGY_ONE
    little = [i for i, c in enumerate(cls) if c.little]
    big = [i for i, c in enumerate(cls) if c is Sqrt2Class.BIG]
    i_little = _first_minimal(sizes, little)
    j_big = _first_minimal(sizes, big)
    if i_little is not None and j_big is not None and \
            sizes[i_little] + sizes[j_big] <= inst.capacity:
        return STRATEGY_ONE if j_big < i_little else STRATEGY_TWO
    return STRATEGY_ONE


class Sqrt2Policy(Policy):
    name = "sqrt2"

    def setup(self, tape):
        self.strategy_one = tape.read()
        self.tiny = set()
        # Strategy One slots
        self.primary = None
        self.secondary = None
        # Strategy Two slots, in order of precedence
        self.mediums = []
        self.smalls = []
        self.bigs = []

    def decide(self, index, size):
        cls = classify_sqrt2(size)
        if cls is Sqrt2Class.TINY:
            if self.fits(self.packed | {index}):
                self.tiny.add(index)
                return (), True
            self.frozen = True
            return (), False
        if self.strategy_one:
            removals, take = self._one(index, size, cls)
        else:
            removals, take = self._two(index, size, cls)
        if take and not self.frozen:
            dropped = self.shed(self.packed - set(removals) - self.tiny,
                                self.tiny - set(removals), index)
            if dropped:
                if not removals:
                    self.frozen = True
                removals = set(removals) | set(dropped)
                self.tiny -= set(dropped)
        return removals, take

    # Strategy One: huge item wins outright; otherwise a primary slot with
    # the minimal big item and a secondary slot with the minimal little item.

    def _one(self, index, size, cls):
        sizes = self.sizes
        if cls is Sqrt2Class.HUGE:
            self.frozen = True
            return set(self.packed), True
        if cls is Sqrt2Class.BIG:
            if self.primary is not None and size >= sizes[self.primary]:
                return (), False
            removals = set()
            if self.primary is not None:
                removals.add(self.primary)
            if self.secondary is not None and not self.fits({self.secondary, index}):
                removals.add(self.secondary)
                self.secondary = None
            self.primary = index
            return removals, True
        # little
        if self.secondary is not None and size >= sizes[self.secondary]:
            return (), False
        if self.primary is not None and not self.fits({self.primary, index}):
            return (), False
        removals = {self.secondary} if self.secondary is not None else set()
        self.secondary = index
        return removals, True

    # Strategy Two: two minimal mediums > three minimal smalls > one minimal
    # big, plus the big-beside-small exception.

    def _two(self, index, size, cls):
        if cls is Sqrt2Class.HUGE:
            return (), False
        if cls is Sqrt2Class.BIG:
            partners = [j for j in self.smalls if self.fits({j, index})]
            if partners:
                keep = self.largest(partners)
                self.frozen = True
                return self.packed - {keep}, True
            slot, cap = self.bigs, 1
        elif cls is Sqrt2Class.MEDIUM:
            slot, cap = self.mediums, 2
        else:
            slot, cap = self.smalls, 3
        return self._insert(index, slot, cap)

    def _insert(self, index, slot, cap):
        slots = [self.mediums, self.smalls, self.bigs]
        trial = {id(s): list(s) for s in slots}
        mine = trial[id(slot)]
        mine.append(index)
        if len(mine) > cap:
            mine.remove(self.largest(mine))
        # resolve capacity conflicts from the lowest precedence upwards
        for s in reversed(slots):
            items = trial[id(s)]
            while items and not self.fits([j for t in trial.values() for j in t]):
                items.remove(self.largest(items))
        if index not in mine:
            return (), False
        removals = set()
        for s in slots:
            kept = trial[id(s)]
            removals |= set(s) - set(kept)
            s[:] = kept
        return removals, True
