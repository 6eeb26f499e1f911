"""Advice algorithms, each an oracle paired with an online policy."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from ..advice import BitTape
from ..core import RunRecord, normalize, run
from .base import Greedy, Policy, greedy_oracle
from .half32 import Half32Policy, oracle_half
from .proppack import (PropPackPolicy, calibrated_scheme, check_invariants,
                       class_scheme, classify_proppack, oracle_proppack)
from .sqrt2 import Sqrt2Class, Sqrt2Policy, classify_sqrt2, oracle_sqrt2
from .twobit import TwoBitPolicy, choose_strategy, oracle_twobit

NAMES = ("greedy", "half32", "sqrt2", "twobit", "proppack")


@dataclass
class Algorithm:
    name: str
    oracle: Callable  # (instance, optima=None) -> bit string
    make_policy: Callable[[], Policy]
    eps: Optional[float] = None

    def run(self, instance, optima=None, advice: Optional[str] = None):
        """Compute the advice (unless given) and run the policy.

        Returns ``(record, advice, policy)``.
        """
        inst = normalize(instance)
        if advice is None:
            advice = self.oracle(inst, optima=optima)
        policy = self.make_policy()
        record: RunRecord = run(policy, inst, BitTape(advice))
        return record, advice, policy


def get_algorithm(name: str, eps: Optional[float] = None) -> Algorithm:
    if name == "greedy":
        return Algorithm(name, greedy_oracle, Greedy)
    if name == "half32":
        return Algorithm(name, oracle_half, Half32Policy)
    if name == "sqrt2":
        return Algorithm(name, oracle_sqrt2, Sqrt2Policy)
    if name == "twobit":
        return Algorithm(name, oracle_twobit, TwoBitPolicy)
    if name == "proppack":
        if eps is None:
            raise ValueError("proppack needs eps")
        calibrated_scheme(eps)
        return Algorithm(
            name,
            lambda inst, optima=None: oracle_proppack(inst, eps, optima=optima),
            lambda: PropPackPolicy(eps),
            eps,
        )
    raise KeyError(f"unknown algorithm {name!r}; choose from {', '.join(NAMES)}")


__all__ = [
    "NAMES", "Algorithm", "get_algorithm", "Policy", "Greedy",
    "Half32Policy", "oracle_half", "Sqrt2Policy", "Sqrt2Class", "classify_sqrt2",
    "oracle_sqrt2", "TwoBitPolicy", "oracle_twobit", "choose_strategy",
    "PropPackPolicy", "oracle_proppack", "classify_proppack", "class_scheme",
    "calibrated_scheme", "check_invariants",
]
