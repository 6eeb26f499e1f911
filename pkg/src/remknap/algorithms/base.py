"""Shared machinery for the advice policies."""

from __future__ import annotations

from typing import Iterable, List, Optional

from ..core import KEEP, StepDecision, View, tolerance, total_size


class Policy:
    """Base class for deterministic online policies.

    Subclasses implement :meth:`setup` (read advice) and :meth:`decide`,
    which returns ``(removals, take)``.  The base class mirrors the packing,
    rejects items that can never fit, and turns every later step into a
    no-op once ``frozen`` is set.
    """

    name = "policy"

    def __init__(self):
        self.frozen = False
        self.sizes = {}
        self.packed = set()
        self.capacity = 1.0

    def init(self, tape) -> None:
        self.frozen = False
        self.sizes = {}
        self.packed = set()
        self.tape = tape
        self.setup(tape)

    def setup(self, tape) -> None:
        pass

    def on_item(self, index: int, size: float, view: View) -> StepDecision:
        self.sizes[index] = size
        self.capacity = view.capacity
        if self.frozen or size > view.capacity + tolerance():
            return KEEP
        removals, take = self.decide(index, size)
        removals = frozenset(removals)
        self.packed -= removals
        if take:
            self.packed.add(index)
        return StepDecision(removals, bool(take))

    def decide(self, index: int, size: float):
        raise NotImplementedError

    # helpers

    def load(self, members: Iterable[int]) -> float:
        return total_size(self.sizes, members)

    def fits(self, members: Iterable[int]) -> bool:
        return self.load(members) <= self.capacity + tolerance()

    def shed(self, keep: Iterable[int], pool: Iterable[int], new: Optional[int]) -> List[int]:
        """Drop items of ``pool`` one by one, largest first, until
        ``keep + remaining pool + new`` fits.  Returns the dropped items."""
        keep = set(keep)
        rest = sorted(pool, key=lambda j: (-self.sizes[j], j))
        extra = {new} if new is not None else set()
        dropped = []
        while rest and not self.fits(keep | set(rest) | extra):
            dropped.append(rest.pop(0))
        return dropped

    def smallest(self, items: Iterable[int]) -> Optional[int]:
        items = list(items)
        return min(items, key=lambda j: (self.sizes[j], j)) if items else None

    def largest(self, items: Iterable[int]) -> Optional[int]:
        items = list(items)
        return max(items, key=lambda j: (self.sizes[j], -j)) if items else None


class Greedy(Policy):
    """Zero-advice baseline: pack whatever fits, never remove."""

    name = "greedy"

    def decide(self, index, size):
        return (), self.fits(self.packed | {index})


def greedy_oracle(instance, optima=None) -> str:
    return ""
