"""Constant advice, (1+eps)-competitive: the class-slot algorithm PropPack.

Sizes above ``delta = r**K`` (with ``r = 1 - e/2``) are *big* and fall into
geometric classes ``k = 1..K`` covering ``(r**k, r**(k-1)]``; everything at
or below ``delta`` is class 0.  The advice is the sequence of classes of the
big items of a fixed optimal packing, in order of arrival.

The packing analysis only yields a ratio of ``1/(1-e)``, so
:class:`PropPackPolicy` built for a target ``eps`` runs the class scheme with
``e = eps/(1+eps)``, for which ``1/(1-e) = 1+eps``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional

from ..advice import ClassTuple, class_tuple_bound, encode_class_tuple, read_class_tuple
from ..core import normalize, tolerance
from ..errors import DomainError
from ..offline import enumerate_optima
from .base import Policy

MAX_EPS = 0.5


@dataclass(frozen=True)
class ClassScheme:
    eps: float
    K: int
    powers: tuple = field(repr=False)  # powers[k] = (1 - eps/2)**k, k = 0..K

    @property
    def ratio(self) -> float:
        return 1.0 - self.eps / 2.0

    @property
    def delta(self) -> float:
        return self.powers[self.K]

    @property
    def max_big(self) -> int:
        """Upper bound on the number of big items in any feasible packing."""
        return math.ceil(1.0 / self.delta)

    @property
    def advice_bound(self) -> int:
        return class_tuple_bound(self.max_big, self.K)

    def classify(self, size: float) -> int:
        if size <= self.delta:
            return 0
        k = 1
        while size <= self.powers[k]:
            k += 1
        return k


def class_scheme(eps: float) -> ClassScheme:
    """Classes for parameter ``eps`` in (0, 1/2], used as given."""
    if not 0 < eps <= MAX_EPS:
        raise DomainError(f"eps must lie in (0, {MAX_EPS}], got {eps!r}")
    r = 1.0 - eps / 2.0
    powers = [1.0]
    while powers[-1] > eps / 2.0:
        powers.append(r ** len(powers))
    return ClassScheme(eps, len(powers) - 1, tuple(powers))


def classify_proppack(size: float, eps: float) -> int:
    return class_scheme(eps).classify(size)


def calibrated_scheme(eps: float) -> ClassScheme:
    """Scheme behind the (1+eps) guarantee; eps above 1/2 is clamped."""
    if eps <= 0:
        raise DomainError(f"eps must be positive, got {eps!r}")
    eps = min(eps, MAX_EPS)
    return class_scheme(eps / (1.0 + eps))


def advice_classes(instance, eps: float, witness=None, optima=None) -> ClassTuple:
    inst = normalize(instance)
    scheme = calibrated_scheme(eps)
    if witness is None:
        if optima is None:
            optima = enumerate_optima(inst)
        witness = optima[0]
    classes = [scheme.classify(inst.sizes[i]) for i in sorted(witness)]
    return ClassTuple(tuple(c for c in classes if c > 0))


def oracle_proppack(instance, eps: float, witness=None, optima=None) -> str:
    """Encoded class tuple.  ``witness`` overrides the optimum the oracle
    would pick, for instances too large to enumerate."""
    scheme = calibrated_scheme(eps)
    return encode_class_tuple(advice_classes(instance, eps, witness, optima), scheme.K)


class PropPackPolicy(Policy):
    name = "proppack"

    def __init__(self, eps: float):
        super().__init__()
        self.eps = eps
        self.scheme = calibrated_scheme(eps)

    def setup(self, tape):
        self.advice = read_class_tuple(tape, self.scheme.K).classes
        self.phase = 0
        self.small: List[int] = []
        self.slots: List[int] = []  # slot j holds an item of class advice[j]

    @property
    def awaited(self) -> Optional[int]:
        return self.advice[self.phase] if self.phase < len(self.advice) else None

    def decide(self, index, size):
        cls = self.scheme.classify(size)
        if cls == 0:
            if self.fits(self.packed | {index}):
                self.small.append(index)
                return (), True
            return (), False
        if cls == self.awaited and self.fits(set(self.slots) | {index}):
            dropped = self.shed(self.slots, self.small, index)
            for j in dropped:
                self.small.remove(j)
            self.slots.append(index)
            self.phase += 1
            return dropped, True
        same = [j for j in self.slots if self.scheme.classify(self.sizes[j]) == cls]
        worst = self.largest(same)
        if worst is None or self.sizes[worst] <= size:
            return (), False
        self.slots[self.slots.index(worst)] = index
        return {worst}, True


def check_invariants(record, instance, eps: float, witness, policy: PropPackPolicy) -> List[str]:
    """Structural checks of one PropPack run against the advice witness.

    * every slot is filled and slot ``j`` holds an item of class ``b_j``;
    * once the ``j``-th big item of the witness has arrived, the ``j``
      smallest packed big items weigh no more than the first ``j`` witness
      big items together.
    """
    inst = normalize(instance)
    scheme = policy.scheme
    sizes = inst.sizes
    problems = []
    advice = advice_classes(inst, eps, witness).classes
    slot_classes = tuple(scheme.classify(sizes[j]) for j in policy.slots)
    if slot_classes != advice:
        problems.append(f"slot classes {slot_classes} != advice {advice}")
    big_witness = [i for i in sorted(witness) if scheme.classify(sizes[i]) > 0]
    prefix = [0.0]
    for i in big_witness:
        prefix.append(prefix[-1] + sizes[i])
    seen = 0
    for t, packing in enumerate(record.trace):
        while seen < len(big_witness) and big_witness[seen] <= t:
            seen += 1
        big = sorted(sizes[j] for j in packing.members if scheme.classify(sizes[j]) > 0)
        if len(big) < seen:
            problems.append(f"step {t}: {len(big)} big items packed, {seen} expected")
        elif math.fsum(big[:seen]) > prefix[seen] + tolerance():
            problems.append(f"step {t}: domination fails for j={seen}")
    return problems
