"""Instance generators: the lower-bound families and a seeded random family.

All families except :func:`gen_optimality` are emitted at capacity 1.  Items
shared by several instances of one family are computed once, so the shared
prefixes are bit-identical (the advice-game verifier relies on this).
"""

from __future__ import annotations

import math
from typing import Iterable, List

import numpy as np

from .core import Instance
from .errors import DomainError

MARGIN = 1e-6


def psi() -> float:
    """Positive root of 2x^2 + x - 2, i.e. 4/(1+sqrt 17)."""
    return (math.sqrt(17.0) - 1.0) / 4.0


def zeta(k: int) -> float:
    """Positive root of 2x^2 + (2k-3)x - 2(k-1); zeta(2) == psi()."""
    if int(k) != k or k < 2:
        raise DomainError(f"zeta needs an integer k >= 2, got {k!r}")
    return (3 - 2 * k + math.sqrt(4 * k * (k + 1) - 7)) / 4.0


def _check_sizes(name, sizes):
    for s in sizes:
        if not (MARGIN <= s <= 1.0):
            raise DomainError(f"{name}: generated size {s!r} outside [{MARGIN}, 1]")


def gen_one_bit(eps: float) -> List[Instance]:
    """Three instances that one advice bit cannot tell apart in time."""
    p = psi()
    if not (MARGIN <= eps <= p - MARGIN):
        raise DomainError(f"one-bit family needs 0 < eps < psi={p:.6f}, got {eps!r}")
    p2 = p * p
    prefix = (p, p2, 1.0 - p2 + eps)
    tails = [(), (1.0 - p2,), (p2 - eps,)]
    out = []
    for i, tail in enumerate(tails, 1):
        sizes = prefix + tail
        name = f"one-bit[eps={eps:g}]/I{i}"
        _check_sizes(name, sizes)
        out.append(Instance(name, 1.0, sizes))
    return out


def gen_log_k(k: int, eps: float) -> List[Instance]:
    """``k+1`` instances sharing ``k+1`` decreasing items; defeats log k bits."""
    z = zeta(k)
    if not (MARGIN <= eps <= 1.0 - z - MARGIN):
        raise DomainError(f"log-k family needs 0 < eps < 1-zeta={1 - z:.6f}, got {eps!r}")
    z2 = z * z
    prefix = [z] + [z2 - (i - 2) * (1.0 - z) for i in range(2, k + 1)]
    prefix.append(z2 - (k - 1) * (1.0 - z) + eps)
    prefix = tuple(prefix)
    out = [Instance(f"log-k[k={k},eps={eps:g}]/I1", 1.0, prefix)]
    _check_sizes(out[0].name, prefix)
    for i in range(2, k + 2):
        sizes = prefix + (1.0 - prefix[i - 1],)
        name = f"log-k[k={k},eps={eps:g}]/I{i}"
        _check_sizes(name, sizes)
        out.append(Instance(name, 1.0, sizes))
    return out


def gen_optimality(m: int, k: int, subset: Iterable[int],
                   variant: str = "repaired") -> Instance:
    """One member of the family that forces one advice bit per item.

    ``subset`` holds exponents ``j`` in 1..m, each naming the item 1 + 2^-j.
    The ``literal`` variant ends with an item of size 1 - sum 2^-j; the
    ``repaired`` variant ends with m + 1 - |S| - sum 2^-j, which makes
    {4m} + S + {last} the only packing that fills capacity 5m + 1.
    """
    S = sorted(set(subset))
    if m < 1 or k < 0:
        raise DomainError(f"need m >= 1 and k >= 0, got m={m}, k={k}")
    if any(j < 1 or j > m for j in S):
        raise DomainError(f"subset {S} is not inside 1..{m}")
    if not k <= len(S) <= m - k:
        raise DomainError(f"need {k} <= |S| <= {m - k}, got |S|={len(S)}")
    frac = math.fsum(2.0 ** -j for j in S)
    if variant == "literal":
        last = 1.0 - frac
    elif variant == "repaired":
        last = m + 1 - len(S) - frac
    else:
        raise DomainError(f"unknown variant {variant!r}")
    sizes = [float(4 * m + i) for i in range(-k, k + 1)]
    sizes += [1.0 + 2.0 ** -j for j in range(1, m + 1)]
    sizes.append(last)
    tag = "".join("1" if j in S else "0" for j in range(1, m + 1))
    return Instance(f"optimality[m={m},k={k},S={tag},{variant}]", 5 * m + 1, sizes)


def family_size(m: int, k: int) -> int:
    return sum(math.comb(m, i) for i in range(k, m - k + 1))


def advice_requirement(m: int, k: int) -> float:
    """log2 of the number of instances in the optimality family."""
    if k < 0 or 2 * k > m:
        raise DomainError(f"need 0 <= k <= m/2, got m={m}, k={k}")
    return math.log2(family_size(m, k))


def gen_uniform(n: int, seed: int, name: str = None) -> Instance:
    """``n`` i.i.d. sizes uniform on (0, 1] from numpy's PCG64 stream."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    rng = np.random.Generator(np.random.PCG64(seed))
    sizes = 1.0 - rng.random(n)
    return Instance(name or f"uniform[n={n},seed={seed}]", 1.0, tuple(sizes.tolist()))
