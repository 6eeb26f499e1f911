"""Exact maximin solver for small instance families under bounded advice.

A deterministic algorithm with ``beta`` advice bits is a map from advice
strings to online strategies, so it splits the family into at most
``2**beta`` groups that each face a single strategy.  Inside a group the
strategy only sees item sizes, which means instances sharing a prefix must
be treated identically along it; the prefix tree captures exactly that.

The value of a group is computed by a game search: the strategy picks the
next packing, the adversary picks which instance continues (or ends).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .core import KEEP, Instance, StepDecision, normalize, tolerance, total_size
from .errors import DomainError, DuplicateInstance, TooLarge
from .offline import optimal_gain

MAX_ITEMS = 8
MAX_FAMILY = 8
MAX_BITS = 3


@dataclass
class Node:
    prefix: tuple  # item sizes from the root to here
    children: Dict[float, "Node"] = field(default_factory=dict)
    ends: List[int] = field(default_factory=list)  # instances ending here
    below: frozenset = frozenset()  # instances whose path passes through here

    @property
    def depth(self) -> int:
        return len(self.prefix)


@dataclass
class PrefixTree:
    root: Node
    instances: Tuple[Instance, ...]

    def nodes(self) -> Iterator[Node]:
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(list(node.children.values())))

    def find(self, prefix: Sequence[float]) -> Optional[Node]:
        node = self.root
        for s in prefix:
            node = node.children.get(s)
            if node is None:
                return None
        return node


def build_prefix_tree(family: Sequence[Instance]) -> PrefixTree:
    """Merge the (normalized) item sequences; sizes are compared exactly."""
    if not family:
        raise DomainError("family must be nonempty")
    insts = tuple(normalize(inst) for inst in family)
    root = Node(())
    seen = {}
    for k, inst in enumerate(insts):
        if inst.sizes in seen:
            raise DuplicateInstance(
                f"{inst.name!r} repeats {insts[seen[inst.sizes]].name!r}")
        seen[inst.sizes] = k
        node = root
        node.below |= {k}
        for s in inst.sizes:
            node = node.children.setdefault(s, Node(node.prefix + (s,)))
            node.below |= {k}
        node.ends.append(k)
    return PrefixTree(root, insts)


def set_partitions(n: int, max_blocks: int) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """Partitions of ``range(n)`` into at most ``max_blocks`` blocks, as
    restricted growth strings turned into block tuples."""
    if n == 0:
        yield ()
        return

    def grow(labels, used):
        if len(labels) == n:
            blocks = [[] for _ in range(used)]
            for i, b in enumerate(labels):
                blocks[b].append(i)
            yield tuple(tuple(b) for b in blocks)
            return
        for b in range(min(used + 1, max_blocks)):
            yield from grow(labels + [b], max(used, b + 1))

    yield from grow([0], 1)


# A strategy maps (prefix, packed positions) -> packing chosen after the
# next item arrives, keyed additionally by that item's size.
Strategy = Dict[Tuple[tuple, frozenset, float], frozenset]


class _GroupGame:
    def __init__(self, tree: PrefixTree, opts: Sequence[float], group: frozenset):
        self.tree = tree
        self.opts = opts
        self.group = group
        self.memo: Dict[Tuple[int, frozenset], float] = {}
        self.choice: Strategy = {}

    def perf(self, k: int, packed: frozenset, sizes) -> float:
        opt = self.opts[k]
        if opt <= 0:
            return 1.0
        return total_size(sizes, packed) / opt

    def value(self, node: Node, packed: frozenset) -> float:
        key = (id(node), packed)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        sizes = node.prefix
        best = 1.0
        for k in node.ends:
            if k in self.group:
                best = min(best, self.perf(k, packed, sizes))
        i = node.depth
        for s, child in node.children.items():
            if not (child.below & self.group):
                continue
            csizes = child.prefix
            top, top_move = -math.inf, None
            for move in _moves(packed, i, csizes):
                v = self.value(child, move)
                if v > top:
                    top, top_move = v, move
            self.choice[(sizes, packed, s)] = top_move
            best = min(best, top)
        self.memo[key] = best
        return best


def _moves(packed: frozenset, i: int, sizes) -> Iterator[frozenset]:
    """Every feasible S' within packed + {i}, larger sets first."""
    pool = sorted(packed | {i})
    cap = 1.0 + tolerance()
    for r in range(len(pool), -1, -1):
        for combo in itertools.combinations(pool, r):
            if total_size(sizes, combo) <= cap:
                yield frozenset(combo)


@dataclass
class GameValue:
    value: float
    bits: int
    partition: Tuple[Tuple[int, ...], ...]
    strategies: Tuple[Strategy, ...]  # one per block of the partition
    gains: Tuple[float, ...]  # claimed final filling per instance
    opts: Tuple[float, ...]
    tree: PrefixTree = field(repr=False)

    def block_of(self, k: int) -> int:
        for b, block in enumerate(self.partition):
            if k in block:
                return b
        raise KeyError(k)

    def policy_for(self, k: int) -> "StrategyPolicy":
        return StrategyPolicy(self.strategies[self.block_of(k)])

    def render(self) -> str:
        return render_strategies(self)


def _check_limits(family: Sequence[Instance], bits: int) -> None:
    if not 0 <= bits <= MAX_BITS:
        raise TooLarge(f"advice budget {bits} outside 0..{MAX_BITS}")
    if len(family) > MAX_FAMILY:
        raise TooLarge(f"family of {len(family)} instances exceeds {MAX_FAMILY}")
    for inst in family:
        if inst.n > MAX_ITEMS:
            raise TooLarge(f"{inst.name!r} has {inst.n} items, limit {MAX_ITEMS}")


def best_min_performance(family: Sequence[Instance], bits: int) -> GameValue:
    """Best worst-case alg/opt over the family that any deterministic
    algorithm reading ``bits`` advice bits can guarantee."""
    _check_limits(family, bits)
    tree = build_prefix_tree(family)
    insts = tree.instances
    opts = tuple(optimal_gain(inst).gain for inst in insts)
    games: Dict[frozenset, _GroupGame] = {}
    values: Dict[frozenset, float] = {}

    def group_value(block) -> float:
        g = frozenset(block)
        if g not in values:
            game = _GroupGame(tree, opts, g)
            values[g] = game.value(tree.root, frozenset())
            games[g] = game
        return values[g]

    best, best_part = -math.inf, None
    for part in set_partitions(len(insts), 2 ** bits):
        v = min(group_value(block) for block in part)
        if v > best:
            best, best_part = v, part
            if best >= 1.0:
                break
    strategies = tuple(games[frozenset(b)].choice for b in best_part)
    gains = [0.0] * len(insts)
    for block, strat in zip(best_part, strategies):
        for k in block:
            gains[k] = _follow(strat, insts[k].sizes)
    return GameValue(best, bits, best_part, strategies, tuple(gains), opts, tree)


def _follow(strategy: Strategy, sizes: Sequence[float]) -> float:
    packed = frozenset()
    for i, s in enumerate(sizes):
        packed = strategy[(tuple(sizes[:i]), packed, s)]
    return total_size(sizes, packed)


def implied_ratio(value) -> float:
    """Lower bound on the competitive ratio implied by a game value."""
    v = value.value if isinstance(value, GameValue) else float(value)
    if v <= 0:
        raise DomainError("game value must be positive")
    return 1.0 / v


class StrategyPolicy:
    """Replays a solver strategy through the online runner."""

    frozen = False

    def __init__(self, strategy: Strategy):
        self.strategy = strategy

    def init(self, tape) -> None:
        self.prefix = ()

    def on_item(self, index, size, view):
        move = self.strategy.get((self.prefix, view.members, size))
        self.prefix += (size,)
        if move is None:
            return KEEP
        return StepDecision.make(view.members - move, index in move)


def render_strategies(game: GameValue) -> str:
    """Indented text tree of the chosen moves, one section per block."""
    lines = []
    insts = game.tree.instances
    for b, (block, strat) in enumerate(zip(game.partition, game.strategies)):
        names = ", ".join(insts[k].name for k in block)
        lines.append(f"advice {b}: {names}")
        group = frozenset(block)

        def walk(node, packed, indent):
            for k in node.ends:
                if k in group:
                    lines.append(f"{indent}end {insts[k].name}: gain "
                                 f"{game.gains[k]:.9f} / opt {game.opts[k]:.9f}")
            for s, child in node.children.items():
                if not (child.below & group):
                    continue
                move = strat[(node.prefix, packed, s)]
                kept = ", ".join(f"{child.prefix[j]:.6g}" for j in sorted(move))
                lines.append(f"{indent}item {s:.6g} -> keep [{kept}]")
                walk(child, move, indent + "  ")

        walk(game.tree.root, frozenset(), "  ")
    return "\n".join(lines)
