"""Removable knapsack semantics: instances, packings and the online runner.

Items are identified by their 0-based arrival index.  At step ``i`` a policy
sees the size of item ``i`` and the current packing, may drop any packed
items, and may take item ``i``.  Dropped items are gone for good, and the
filling must never exceed the capacity (up to a small tolerance that absorbs
summation rounding).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Optional, Protocol, Sequence

from .errors import DomainError, RuleViolation

DEFAULT_TOLERANCE = 1e-9

_tolerance = float(os.environ.get("REMKNAP_TOLERANCE", DEFAULT_TOLERANCE))


def tolerance() -> float:
    """Current capacity tolerance (eta)."""
    return _tolerance


def set_tolerance(value: float) -> None:
    global _tolerance
    value = float(value)
    if not (math.isfinite(value) and value >= 0):
        raise DomainError(f"tolerance must be finite and >= 0, got {value!r}")
    _tolerance = value


def total_size(sizes: Sequence[float], members) -> float:
    """Sum of member sizes, always in ascending index order."""
    return math.fsum(sizes[i] for i in sorted(members))


@dataclass(frozen=True)
class Instance:
    name: str
    capacity: float
    sizes: tuple

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(float(s) for s in self.sizes))
        cap = float(self.capacity)
        object.__setattr__(self, "capacity", cap)
        if not (math.isfinite(cap) and cap > 0):
            raise DomainError(f"{self.name}: capacity must be positive and finite")
        for i, s in enumerate(self.sizes):
            if not (math.isfinite(s) and s > 0):
                raise DomainError(f"{self.name}: item {i} has invalid size {s!r}")

    def __len__(self):
        return len(self.sizes)

    @property
    def n(self) -> int:
        return len(self.sizes)


def normalize(instance: Instance) -> Instance:
    """Scale the instance so that the capacity becomes 1."""
    if instance.capacity == 1.0:
        return instance
    cap = instance.capacity
    return Instance(instance.name, 1.0, tuple(s / cap for s in instance.sizes))


@dataclass(frozen=True)
class Packing:
    members: frozenset = frozenset()
    filling: float = 0.0

    @classmethod
    def of(cls, members, sizes: Sequence[float]) -> "Packing":
        members = frozenset(members)
        return cls(members, total_size(sizes, members))


@dataclass(frozen=True)
class StepDecision:
    removals: frozenset = frozenset()
    take_new: bool = False

    @classmethod
    def make(cls, removals=(), take_new=False) -> "StepDecision":
        return cls(frozenset(removals), bool(take_new))


KEEP = StepDecision()


@dataclass(frozen=True)
class View:
    """What a policy may look at when item ``index`` arrives."""

    packing: Packing
    sizes: tuple  # sizes of items 0..index-1
    capacity: float = 1.0

    @property
    def members(self) -> frozenset:
        return self.packing.members

    @property
    def filling(self) -> float:
        return self.packing.filling


class OnlinePolicy(Protocol):
    def init(self, tape) -> None: ...

    def on_item(self, index: int, size: float, view: View) -> StepDecision: ...


@dataclass
class RunRecord:
    trace: list = field(default_factory=list)
    final_gain: float = 0.0
    advice_bits_read: int = 0
    frozen_at: Optional[int] = None

    @property
    def final_packing(self) -> Packing:
        return self.trace[-1] if self.trace else Packing()


def apply_step(packing: Packing, decision: StepDecision, item_index: int,
               sizes: Sequence[float], capacity: float = 1.0) -> Packing:
    """Apply one online step; ``sizes`` must cover items 0..item_index."""
    if item_index in packing.members:
        raise RuleViolation("unknown-removal",
                            f"item {item_index} presented twice", item_index)
    stray = decision.removals - packing.members
    if stray:
        raise RuleViolation("unknown-removal",
                            f"removals {sorted(stray)} are not packed", item_index)
    members = packing.members - decision.removals
    if decision.take_new:
        members = members | {item_index}
    new = Packing.of(members, sizes)
    if new.filling > capacity + tolerance():
        raise RuleViolation("capacity",
                            f"filling {new.filling!r} exceeds capacity {capacity!r}",
                            item_index)
    return new


def run(policy: OnlinePolicy, instance: Instance, tape) -> RunRecord:
    """Present the instance item by item to ``policy``."""
    inst = normalize(instance)
    sizes = inst.sizes
    policy.init(tape)
    packing = Packing()
    record = RunRecord()
    for i, s in enumerate(sizes):
        decision = policy.on_item(i, s, View(packing, sizes[:i], inst.capacity))
        packing = apply_step(packing, decision, i, sizes, inst.capacity)
        record.trace.append(packing)
        if record.frozen_at is None and getattr(policy, "frozen", False):
            record.frozen_at = i
    record.final_gain = packing.filling
    record.advice_bits_read = tape.cursor
    return record


def performance(opt_gain: float, alg_gain: float) -> float:
    """Competitive performance opt/alg (>= 1 for a correct optimum)."""
    if alg_gain > opt_gain + tolerance():
        raise DomainError(f"online gain {alg_gain!r} beats the optimum {opt_gain!r}")
    if alg_gain <= 0:
        return 1.0 if opt_gain <= 0 else math.inf
    return opt_gain / alg_gain
