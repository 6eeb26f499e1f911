import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from remknap.advice import BitTape, ClassTuple, encode_class_tuple
from remknap.algorithms import (NAMES, Sqrt2Class, calibrated_scheme, check_invariants,
                                choose_strategy, class_scheme, classify_proppack,
                                classify_sqrt2, get_algorithm, oracle_half,
                                oracle_proppack, oracle_sqrt2, oracle_twobit)
from remknap.algorithms.proppack import advice_classes
from remknap.algorithms.sqrt2 import A, B, C, D, ratio_bounds
from remknap.core import Instance, performance, run
from remknap.errors import DomainError
from remknap.families import gen_one_bit
from remknap.offline import enumerate_optima, optimal_gain
from remknap.verifier import best_min_performance


def inst(*sizes):
    return Instance("t", 1, sizes)


def play(name, sizes, advice=None, eps=None):
    rec, adv, policy = get_algorithm(name, eps).run(inst(*sizes), advice=advice)
    return rec, adv, policy


def ratio(name, sizes, eps=None):
    rec, _, _ = play(name, sizes, eps=eps)
    return performance(optimal_gain(inst(*sizes)).gain, rec.final_gain)


# thresholds

def test_threshold_identities():
    assert A < B < C < D
    assert abs(A + D - 1) <= 1e-12
    assert abs(A + B - 1 / math.sqrt(2)) <= 1e-12
    assert B + C <= 1
    bounds = ratio_bounds()
    assert abs(max(bounds.values()) - math.sqrt(2)) <= 1e-12


def test_classify_sqrt2():
    assert classify_sqrt2(0.2) is Sqrt2Class.TINY
    assert classify_sqrt2(0.5) is Sqrt2Class.MEDIUM
    assert classify_sqrt2(0.75) is Sqrt2Class.HUGE
    assert classify_sqrt2(A) is Sqrt2Class.TINY
    assert classify_sqrt2(D) is Sqrt2Class.BIG
    assert Sqrt2Class.SMALL.little and Sqrt2Class.HUGE.large


# sqrt2

def test_oracle_sqrt2_examples():
    assert oracle_sqrt2(inst(0.8)) == "1"
    assert oracle_sqrt2(inst(0.45, 0.45)) == "0"
    assert oracle_sqrt2(gen_one_bit(0.01)[2]) == "1"


def test_oracle_sqrt2_order_exception():
    # no huge item; minimal little 0.3 and minimal big 0.6 fit together
    assert oracle_sqrt2(inst(0.6, 0.3, 0.7)) == "1"
    assert oracle_sqrt2(inst(0.3, 0.6, 0.7)) == "0"


def test_sqrt2_strategy_one():
    rec, _, policy = play("sqrt2", (0.8, 0.6), advice="1")
    assert rec.final_gain == 0.8 and policy.frozen
    rec, _, _ = play("sqrt2", (0.6, 0.55), advice="1")
    assert rec.final_gain == 0.55
    rec, _, _ = play("sqrt2", (0.3, 0.65), advice="1")
    assert rec.final_gain == 0.95


def test_sqrt2_strategy_two():
    rec, _, _ = play("sqrt2", (0.45, 0.45, 0.45), advice="0")
    assert rec.final_gain == 0.9
    rec, _, policy = play("sqrt2", (0.3, 0.6), advice="0")
    assert rec.final_gain == pytest.approx(0.9) and policy.frozen
    rec, _, _ = play("sqrt2", (0.35, 0.35, 0.35), advice="0")
    assert rec.final_gain == 0.7


def test_sqrt2_tiny_overflow_freezes():
    rec, _, policy = play("sqrt2", (0.28, 0.28, 0.28, 0.28, 0.2), advice="0")
    assert policy.frozen and rec.final_gain == pytest.approx(0.84)


# half32

def test_half32_examples():
    rec, adv, _ = play("half32", (0.5, 0.5))
    assert adv == "1" and rec.final_gain == 1.0
    rec, adv, _ = play("half32", (0.5, 0.6))
    assert adv == "0" and rec.final_gain == 0.6
    sizes = (0.34, 0.2, 0.2, 0.2, 0.2, 0.2)
    rec, adv, _ = play("half32", sizes)
    assert adv == "0" and rec.final_gain >= 2 / 3


def test_oracle_half():
    assert oracle_half(inst(0.4, 0.4)) == "1"
    assert oracle_half(inst(0.9, 0.4)) == "0"


# twobit

def test_twobit_examples():
    sizes = (0.8, 0.3)
    assert choose_strategy(inst(*sizes)) == 1
    assert play("twobit", sizes)[0].final_gain == 0.8
    sizes = (0.3, 0.3, 0.3, 0.3)
    assert choose_strategy(inst(*sizes)) == 2
    assert play("twobit", sizes)[0].final_gain == pytest.approx(0.9)
    # conditions are tested in order, so the second one claims this instance;
    # the fourth strategy packs it completely as well
    sizes = (0.45, 0.55)
    assert choose_strategy(inst(*sizes)) == 2
    assert play("twobit", sizes)[0].final_gain == 1.0
    assert play("twobit", sizes, advice="11")[0].final_gain == 1.0
    sizes = (0.3, 0.4, 0.55)
    assert choose_strategy(inst(*sizes)) == 4
    assert play("twobit", sizes)[0].final_gain == pytest.approx(0.85)


def test_twobit_encoding():
    assert oracle_twobit(inst(0.8)) == "00"
    assert oracle_twobit(inst(0.3, 0.3, 0.3, 0.3)) == "01"
    assert oracle_twobit(inst(0.3, 0.4, 0.55)) == "11"


def test_twobit_three_mediums_fall_back_to_fitting_prefix():
    sizes = (0.45, 0.45, 0.3, 0.25, 0.25, 0.25, 0.25)
    assert choose_strategy(inst(*sizes)) == 2
    assert ratio("twobit", sizes) <= 4 / 3 + 1e-9


ADVERSARY = [(0.3, 0.72, 0.27), (0.3, 0.4, 0.45, 0.6), (0.3, 0.72, 0.4, 0.6),
             (0.3, 0.4, 0.72, 0.27), (0.3, 0.4, 0.45, 0.55), (0.3, 0.4, 0.72, 0.6),
             (0.3, 0.72, 0.4, 0.27)]


def test_no_strategy_four_policy_reaches_three_quarters():
    family = [Instance(f"a{i}", 1, s) for i, s in enumerate(ADVERSARY)]
    assert all(choose_strategy(x) == 4 for x in family)
    game = best_min_performance(family, 0)
    assert game.value == pytest.approx(0.72, abs=1e-12)
    assert 1 / game.value > 4 / 3


# proppack

def test_class_scheme_half():
    powers = [0.75 ** k for k in range(6)]
    s = class_scheme(0.5)
    assert s.K == 5 and s.delta == 0.2373046875 == powers[5]
    assert classify_proppack(0.5, 0.5) == 3
    assert powers[3] < 0.5 <= powers[2]
    assert classify_proppack(0.2, 0.5) == 0
    assert classify_proppack(1.0, 0.5) == 1


@pytest.mark.parametrize("eps", [0.5, 0.3, 0.25, 0.1, 0.01])
def test_class_scheme_minimal_K(eps):
    s = class_scheme(eps)
    assert s.delta <= eps / 2 < (1 - eps / 2) ** (s.K - 1)
    assert s.max_big == math.ceil(1 / s.delta)


def test_scheme_domain():
    with pytest.raises(DomainError):
        class_scheme(0.6)
    with pytest.raises(DomainError):
        calibrated_scheme(0)
    assert calibrated_scheme(3.0) == calibrated_scheme(0.5)
    assert calibrated_scheme(0.5).eps == pytest.approx(1 / 3)


def test_proppack_examples():
    raw = class_scheme(0.5)
    for sizes, gain in [((0.5, 0.5), 1.0), ((0.6, 0.5, 0.5), 1.0)]:
        x = inst(*sizes)
        witness = enumerate_optima(x)[0]
        assert tuple(raw.classify(x.sizes[i]) for i in sorted(witness)) == (3, 3)
        rec, adv, _ = play("proppack", sizes, eps=0.5)
        assert rec.final_gain == gain
    # every item at or below delta: empty tuple, all packed greedily
    small = calibrated_scheme(0.5).delta
    rec, adv, _ = play("proppack", (small,) * 5, eps=0.5)
    assert adv == "1" and rec.final_gain == pytest.approx(5 * small)


def test_proppack_replacement_keeps_smaller_same_class():
    eps = 0.25
    s = calibrated_scheme(eps)
    x = inst(0.61, 0.6, 0.39)
    k = s.classify(0.61)
    assert s.classify(0.6) == k
    advice = encode_class_tuple(ClassTuple((k,)), s.K)
    rec, _, _ = play("proppack", x.sizes, advice=advice, eps=eps)
    assert 1 in rec.final_packing.members and 0 not in rec.final_packing.members


def test_proppack_requires_eps():
    with pytest.raises(ValueError):
        get_algorithm("proppack")


# greedy

@pytest.mark.parametrize("sizes,gain", [((0.6, 0.5), 0.6), ((0.5, 0.5), 1.0),
                                        ((0.1, 0.95), 0.1)])
def test_greedy(sizes, gain):
    assert play("greedy", sizes)[0].final_gain == gain


def test_unknown_algorithm():
    with pytest.raises(KeyError):
        get_algorithm("nope")
    assert set(NAMES) == {"greedy", "half32", "sqrt2", "twobit", "proppack"}


# guarantees on random instances

sizes_st = st.lists(st.floats(0.01, 1.0), min_size=1, max_size=12)


@settings(max_examples=300, deadline=None)
@given(sizes_st)
def test_guarantees(sizes):
    x = inst(*sizes)
    opt = optimal_gain(x).gain
    optima = enumerate_optima(x)
    for name, eps, bound in [("sqrt2", None, math.sqrt(2)), ("half32", None, 1.5),
                             ("proppack", 0.5, 1.5), ("proppack", 0.1, 1.1)]:
        rec, _, policy = get_algorithm(name, eps).run(x, optima=optima)
        assert performance(opt, rec.final_gain) <= bound + 1e-9, name
        if name == "proppack":
            assert check_invariants(rec, x, eps, optima[0], policy) == []
    if choose_strategy(x, optima) != 4:
        rec, _, _ = get_algorithm("twobit").run(x, optima=optima)
        assert performance(opt, rec.final_gain) <= 4 / 3 + 1e-9


@settings(max_examples=100, deadline=None)
@given(sizes_st, st.sampled_from([0.5, 0.25, 0.1]))
def test_proppack_advice_within_bound(sizes, eps):
    x = inst(*sizes)
    adv = oracle_proppack(x, eps)
    assert len(adv) <= calibrated_scheme(eps).advice_bound
    assert advice_classes(x, eps).m <= calibrated_scheme(eps).max_big
