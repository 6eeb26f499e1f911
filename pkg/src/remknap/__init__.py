"""Removable online knapsack with advice: algorithms, oracles and verifiers."""

from .core import Instance, Packing, StepDecision, normalize, performance, run
from .errors import (AdviceExhausted, DomainError, DuplicateInstance, MalformedCode,
                     RemKnapError, RuleViolation, TooLarge)

__version__ = "0.1.0"

__all__ = [
    "Instance", "Packing", "StepDecision", "normalize", "performance", "run",
    "RemKnapError", "RuleViolation", "AdviceExhausted", "MalformedCode",
    "DomainError", "TooLarge", "DuplicateInstance",
]
