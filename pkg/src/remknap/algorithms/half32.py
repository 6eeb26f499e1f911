"""One advice bit, 3/2-competitive.

The bit says whether some optimal packing holds two items from [1/3, 2/3].
"""

from __future__ import annotations

from ..core import normalize
from ..offline import enumerate_optima
from .base import Policy

LOW = 1.0 / 3.0
HIGH = 2.0 / 3.0


def _in_window(s):
    return LOW <= s <= HIGH


def oracle_half(instance, optima=None) -> str:
    inst = normalize(instance)
    if optima is None:
        optima = enumerate_optima(inst)
    pair = any(sum(_in_window(inst.sizes[i]) for i in opt) >= 2 for opt in optima)
    return "1" if pair else "0"


class Half32Policy(Policy):
    name = "half32"

    def setup(self, tape):
        self.pairing = tape.read()
        self.anchor = None  # smallest window item (yes) / largest item >= 1/3 (no)

    def decide(self, index, size):
        if self.pairing:
            return self._pairing(index, size)
        return self._anchored(index, size)

    def _pairing(self, index, size):
        if not _in_window(size):
            return (), False
        if self.anchor is None:
            self.anchor = index
            return (), True
        if self.fits({self.anchor, index}):
            self.frozen = True
            return (), True
        if size < self.sizes[self.anchor]:
            old, self.anchor = self.anchor, index
            return {old}, True
        return (), False

    def _anchored(self, index, size):
        if size < LOW:
            return (), self.fits(self.packed | {index})
        if self.anchor is not None and size <= self.sizes[self.anchor]:
            return (), False
        removals = {self.anchor} if self.anchor is not None else set()
        smalls = self.packed - removals
        removals |= set(self.shed((), smalls, index))
        self.anchor = index
        return removals, True
