"""Advice tapes, Elias gamma integers and the class-tuple codec.

Bit strings are plain ``str`` objects over ``'0'``/``'1'``, most significant
bit first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Tuple

from .errors import AdviceExhausted, DomainError, MalformedCode


class BitTape:
    """Read-once advice tape with a cursor."""

    def __init__(self, bits: Iterable = ""):
        self.bits = tuple(_as_bool(b) for b in bits)
        self.cursor = 0

    @property
    def written(self) -> int:
        return len(self.bits)

    @property
    def remaining(self) -> int:
        return len(self.bits) - self.cursor

    def read(self) -> bool:
        if self.cursor >= len(self.bits):
            raise AdviceExhausted(f"read past end of {len(self.bits)}-bit tape")
        bit = self.bits[self.cursor]
        self.cursor += 1
        return bit

    def read_uint(self, width: int) -> int:
        value = 0
        for _ in range(width):
            value = (value << 1) | self.read()
        return value

    def rewind(self) -> "BitTape":
        self.cursor = 0
        return self

    def __str__(self):
        return "".join("1" if b else "0" for b in self.bits)

    def __repr__(self):
        return f"BitTape('{self}', cursor={self.cursor})"


def _as_bool(b) -> bool:
    if b in ("0", 0, False):
        return False
    if b in ("1", 1, True):
        return True
    raise MalformedCode(f"not a bit: {b!r}")


def gamma_encode(n: int) -> str:
    if n < 1:
        raise DomainError(f"gamma code needs n >= 1, got {n}")
    body = bin(n)[2:]
    return "0" * (len(body) - 1) + body


def gamma_length(n: int) -> int:
    return 2 * n.bit_length() - 1


def gamma_decode(bits: str, pos: int = 0) -> Tuple[int, int]:
    """Decode one gamma integer at ``pos``; returns ``(value, next_pos)``."""
    zeros = 0
    while pos + zeros < len(bits) and bits[pos + zeros] == "0":
        zeros += 1
    end = pos + 2 * zeros + 1
    if end > len(bits):
        raise MalformedCode("truncated gamma code")
    return int(bits[pos + zeros:end], 2), end


def read_gamma(tape: BitTape) -> int:
    zeros = 0
    try:
        while not tape.read():
            zeros += 1
        return (1 << zeros) | tape.read_uint(zeros)
    except AdviceExhausted as exc:
        raise MalformedCode("truncated gamma code") from exc


@dataclass(frozen=True)
class ClassTuple:
    classes: tuple = ()

    @property
    def m(self) -> int:
        return len(self.classes)


def field_width(K: int) -> int:
    """Bits per class field, ceil(log2 K)."""
    return (K - 1).bit_length()


def encode_class_tuple(t: ClassTuple, K: int) -> str:
    w = field_width(K)
    out = [gamma_encode(t.m + 1)]
    for b in t.classes:
        if not 1 <= b <= K:
            raise DomainError(f"class {b} outside 1..{K}")
        if w:
            out.append(format(b - 1, f"0{w}b"))
    return "".join(out)


def decode_class_tuple(bits: str, K: int, pos: int = 0) -> Tuple[ClassTuple, int]:
    """Decode a class tuple at ``pos``; returns ``(tuple, next_pos)``."""
    m1, pos = gamma_decode(bits, pos)
    w = field_width(K)
    classes = []
    for _ in range(m1 - 1):
        if pos + w > len(bits):
            raise MalformedCode("truncated class field")
        v = int(bits[pos:pos + w], 2) if w else 0
        if v >= K:
            raise MalformedCode(f"class field {v + 1} exceeds K={K}")
        classes.append(v + 1)
        pos += w
    return ClassTuple(tuple(classes)), pos


def read_class_tuple(tape: BitTape, K: int) -> ClassTuple:
    m = read_gamma(tape) - 1
    w = field_width(K)
    classes = []
    try:
        for _ in range(m):
            v = tape.read_uint(w)
            if v >= K:
                raise MalformedCode(f"class field {v + 1} exceeds K={K}")
            classes.append(v + 1)
    except AdviceExhausted as exc:
        raise MalformedCode("truncated class field") from exc
    return ClassTuple(tuple(classes))


def class_tuple_bound(max_m: int, K: int) -> int:
    """Longest encoding of any tuple with at most ``max_m`` entries."""
    return gamma_length(max_m + 1) + max_m * field_width(K)
