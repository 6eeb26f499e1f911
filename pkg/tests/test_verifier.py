import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from remknap.advice import BitTape
from remknap.core import Instance, run
from remknap.errors import DomainError, DuplicateInstance, TooLarge
from remknap.families import gen_log_k, gen_one_bit, psi, zeta
from remknap.verifier import (best_min_performance, build_prefix_tree, implied_ratio,
                              set_partitions)


def fam(*seqs):
    return [Instance(f"f{i}", 1, s) for i, s in enumerate(seqs)]


def test_single_item_tree():
    tree = build_prefix_tree(fam((0.5,)))
    assert list(tree.root.children) == [0.5]
    assert tree.root.children[0.5].ends == [0]
    assert tree.root.ends == []


def test_one_bit_tree():
    tree = build_prefix_tree(gen_one_bit(0.01))
    node, depth = tree.root, 0
    while len(node.children) == 1:
        node = next(iter(node.children.values()))
        depth += 1
    assert depth == 3 and node.ends == [0]
    leaves = list(node.children.values())
    assert len(leaves) == 2 and all(l.depth == 4 and not l.children for l in leaves)
    assert sorted(k for l in leaves for k in l.ends) == [1, 2]


def test_two_children():
    tree = build_prefix_tree(fam((0.3,), (0.4,)))
    assert sorted(tree.root.children) == [0.3, 0.4]
    assert tree.find((0.4,)).ends == [1] and tree.find((0.5,)) is None


def test_duplicates_and_empty():
    with pytest.raises(DuplicateInstance):
        build_prefix_tree(fam((0.3, 0.2), (0.3, 0.2)))
    with pytest.raises(DomainError):
        build_prefix_tree([])


def test_partition_counts():
    bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140]
    for n in range(9):
        assert sum(1 for _ in set_partitions(n, 8)) == bell[n]
    assert sum(1 for _ in set_partitions(4, 2)) == 8
    assert list(set_partitions(2, 1)) == [((0, 1),)]


def test_trivial_value():
    assert best_min_performance(fam((0.5,)), 0).value == 1.0


def test_one_bit_values():
    eps = 0.01
    g1 = best_min_performance(gen_one_bit(eps), 1)
    # second best on I2 once I3 is served optimally: 2(1 - psi^2) + eps = psi + eps
    assert abs(g1.value - (2 * (1 - psi() ** 2) + eps)) <= 1e-9
    assert abs(g1.value - 0.790776406) <= 1e-9
    assert sorted(map(sorted, g1.partition)) == [[0], [1, 2]]
    assert best_min_performance(gen_one_bit(eps), 2).value == pytest.approx(1.0, abs=1e-12)
    assert best_min_performance(gen_one_bit(eps), 0).value == pytest.approx(psi(), abs=1e-12)


def test_log_k_four_two_bits_value():
    eps = 0.01
    g = best_min_performance(gen_log_k(4, eps), 2)
    # I_k and I_{k+1} share advice: keep x_{k+1}, then y_k joins it for
    # 1 - x_k + x_{k+1} = zeta + eps; every other pairing caps at zeta
    assert abs(g.value - (zeta(4) + eps)) <= 1e-9
    assert sorted(map(sorted, g.partition))[-1] == [3, 4]


@pytest.mark.parametrize("eps", [0.05, 0.01, 0.001])
def test_lower_bound_concordance(eps):
    g = best_min_performance(gen_one_bit(eps), 1)
    assert abs(implied_ratio(g) - 1 / (psi() + eps)) <= 1e-9


def test_implied_ratio():
    assert implied_ratio(1.0) == 1.0
    assert implied_ratio(0.7907764) == pytest.approx(1.26458, abs=1e-5)
    assert implied_ratio(psi() + 1e-9) == pytest.approx((1 + math.sqrt(17)) / 4, abs=1e-8)
    with pytest.raises(DomainError):
        implied_ratio(0.0)


def test_limits():
    with pytest.raises(TooLarge):
        best_min_performance(fam((0.1,) * 9), 0)
    with pytest.raises(TooLarge):
        best_min_performance(fam(*[(0.1 * i,) for i in range(1, 10)]), 0)
    with pytest.raises(TooLarge):
        best_min_performance(fam((0.5,)), 4)


def test_render_mentions_every_instance():
    g = best_min_performance(gen_one_bit(0.01), 1)
    text = g.render()
    assert all(x.name in text for x in gen_one_bit(0.01))


def replay_matches(game, family):
    assert len(game.tree.instances) == len(family)
    for k, x in enumerate(game.tree.instances):
        rec = run(game.policy_for(k), x, BitTape(""))
        assert rec.final_gain == game.gains[k]
        assert rec.final_gain >= game.value * game.opts[k] - 1e-12


@pytest.mark.parametrize("family,bits", [(gen_one_bit(0.01), 1), (gen_log_k(4, 0.01), 2),
                                         (gen_log_k(3, 0.01), 1), (gen_one_bit(0.05), 0)])
def test_replay_generated(family, bits):
    replay_matches(best_min_performance(family, bits), family)


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_enough_bits_reach_one(k):
    family = gen_log_k(k, 0.01)
    bits = math.ceil(math.log2(len(family)))
    assert best_min_performance(family, bits).value == pytest.approx(1.0, abs=1e-12)


grid = st.sampled_from([0.15, 0.3, 0.35, 0.45, 0.55, 0.6, 0.7, 0.85])
families = st.lists(st.lists(grid, min_size=1, max_size=5).map(tuple), min_size=1,
                    max_size=5, unique=True)


@settings(max_examples=60, deadline=None)
@given(families)
def test_monotone_in_advice_and_replayable(seqs):
    family = fam(*seqs)
    values = []
    for bits in range(3):
        g = best_min_performance(family, bits)
        replay_matches(g, family)
        values.append(g.value)
    assert values[0] <= values[1] <= values[2]
    if len(family) <= 4:
        assert values[2] == pytest.approx(1.0)


@settings(max_examples=40, deadline=None)
@given(families)
def test_distinct_first_items_need_no_advice(seqs):
    firsts = [s[0] for s in seqs]
    if len(set(firsts)) != len(firsts):
        return
    assert best_min_performance(fam(*seqs), 0).value == pytest.approx(1.0, abs=1e-12)
