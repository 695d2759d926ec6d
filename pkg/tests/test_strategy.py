"""전략 표현, 전략 파일, 곱 아레나, 약점/리셋, 투영, 트리거 전략 테스트"""

import json
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

from src.arena.model import FinitePlay, LassoPlay, Player
from src.arena.sampler import draw
from src.core.exceptions import (
    MemoryAutomatonError,
    PreconditionError,
    StrategyError,
    StrategyFormatError,
)
from src.payoff import Mean, shuffle
from src.strategy import (
    FiniteMemoryStrategy,
    PartitionAtState,
    PureStationaryStrategy,
    UpdateRule,
    action_law,
    all_memory_strategies,
    count_memory_strategies,
    factors,
    load_strategy,
    memory_after,
    parse_strategy,
    play_word,
    print_strategy,
    project,
    projection_pattern,
    random_memory_strategy,
    stationary_strategy,
    trigger_strategy,
    trivial_strategy,
)
from src.strategy.product import product_arena, product_values, reachable_pairs
from src.strategy.reset import reset_strategy, weakness_set
from src.verify import fixtures

SPLIT = PartitionAtState("sq", ("1",), ("2",))


def toggle_arena():
    """P2만 있는 세 상태 아레나와 피벗 p의 분할, 메모리 두 개짜리 τ₀, τ₁

    τ₀은 매 스텝 메모리를 뒤집고, τ₁은 x를 지날 때만 뒤집는다.
    """
    arena = fixtures.build_arena(
        "toggle",
        {"p": "P2", "x": "P2", "y": "P2"},
        [
            ("p", "a", 0, {"x": "1/2", "y": "1/2"}),
            ("p", "b", 1, {"y": 1}),
            ("x", "l", 0, {"p": 1}),
            ("x", "r", 1, {"y": 1}),
            ("y", "u", 0, {"p": 1}),
            ("y", "v", 1, {"x": "1/2", "p": "1/2"}),
        ],
    )
    split = PartitionAtState("p", ("a",), ("b",))
    one = Fraction(1)
    half = Fraction(1, 2)
    tau0 = FiniteMemoryStrategy(
        player=Player.P2,
        memory_states=("k0", "k1"),
        initial="k0",
        rules=(UpdateRule("k0", "*", "*", "*", "k1"), UpdateRule("k1", "*", "*", "*", "k0")),
        choices={
            ("k0", "p"): {"a": one}, ("k1", "p"): {"a": one},
            ("k0", "x"): {"l": one}, ("k1", "x"): {"r": one},
            ("k0", "y"): {"u": one}, ("k1", "y"): {"v": one},
        },
    )
    tau1 = FiniteMemoryStrategy(
        player=Player.P2,
        memory_states=("k0", "k1"),
        initial="k0",
        rules=(UpdateRule("k0", "x", "*", "*", "k1"), UpdateRule("k1", "x", "*", "*", "k0")),
        choices={
            ("k0", "p"): {"b": one}, ("k1", "p"): {"b": one},
            ("k0", "x"): {"r": one}, ("k1", "x"): {"l": one},
            ("k0", "y"): {"u": half, "v": half}, ("k1", "y"): {"u": one},
        },
    )
    return arena, split, tau0, tau1


def fig1_lasso() -> LassoPlay:
    """sq 1 b1 1 sq 2 a back sq 를 반복하는 플레이"""
    return LassoPlay(
        FinitePlay(("sq",)),
        FinitePlay(("sq", "b1", "sq", "a", "sq"), ("1", "1", "2", "back")),
    )


class TestStrategyModel:
    def test_pure_stationary(self, e2):
        sigma = PureStationaryStrategy(Player.P1, {"s": "go", "t": "loop"})
        sigma.validate(e2)
        assert sigma.choice("m0", "s") == {"go": 1}
        assert sigma.as_finite_memory().choice("m0", "t") == {"loop": 1}

    def test_pure_stationary_validation(self, e2):
        with pytest.raises(StrategyError):
            PureStationaryStrategy(Player.P1, {"s": "go"}).validate(e2)
        with pytest.raises(StrategyError):
            PureStationaryStrategy(Player.P1, {"s": "fly", "t": "loop"}).validate(e2)

    def test_update_rules_first_match_wins(self):
        sigma = FiniteMemoryStrategy(
            player=Player.P1,
            memory_states=("a", "b", "c"),
            initial="a",
            rules=(UpdateRule("a", "s", "*", "t", "b"), UpdateRule("*", "s", "*", "*", "c")),
        )
        assert sigma.update("a", "s", "go", "t") == "b"
        assert sigma.update("a", "s", "go", "s") == "c"
        assert sigma.update("b", "t", "loop", "t") == "b"

    def test_memory_automaton_errors(self, e2):
        with pytest.raises(MemoryAutomatonError):
            FiniteMemoryStrategy(Player.P1, ("m0",), "m9")
        with pytest.raises(MemoryAutomatonError):
            FiniteMemoryStrategy(Player.P1, ("m0",), "m0", rules=(UpdateRule("m0", "*", "*", "*", "m5"),))
        half = stationary_strategy(Player.P1, {"s": {"go": "1/2"}, "t": {"loop": 1}})
        with pytest.raises(MemoryAutomatonError):
            half.validate(e2)

    def test_stationary_randomized(self, e2):
        sigma = stationary_strategy(Player.P1, {"s": {"go": "1/2", "stay": "1/2"}, "t": {"loop": 1}})
        sigma.validate(e2)
        assert not sigma.is_pure()
        assert sigma.choice("m0", "s") == {"go": Fraction(1, 2), "stay": Fraction(1, 2)}

    def test_trivial_strategy(self, e2, e4):
        assert trivial_strategy(e2, Player.P1) is None
        assert trivial_strategy(e2, Player.P2).choices == {}
        assert trivial_strategy(e4, Player.P1) is None

    def test_memory_strategy_count(self, e2):
        assert count_memory_strategies(e2, Player.P1, 2) == 64
        strategies = list(all_memory_strategies(e2, Player.P1, 2))
        assert len(strategies) == 64
        assert strategies[0].memory_states == ("k0", "k1")
        assert strategies[5].name == "P1-k2-5"

    def test_one_memory_is_stationary(self, e2):
        assert count_memory_strategies(e2, Player.P1, 1) == 2

    def test_random_memory_strategy(self, e4):
        sigma = random_memory_strategy(e4, Player.P1, 3, np.random.default_rng(0))
        sigma.validate(e4)
        assert len(sigma.memory_states) == 3


class TestStrategyFile:
    def test_bare_map(self, corpus, e2):
        sigma = load_strategy(corpus / "e2_optimal.json", Player.P1)
        assert sigma == PureStationaryStrategy(Player.P1, {"s": "go", "t": "loop"})

    def test_corpus_matches_fixture(self, corpus):
        assert load_strategy(corpus / "e4_weak_sigma.json", Player.P1) == fixtures.e4_weak_sigma()
        assert load_strategy(corpus / "e2_weak_sigma.json", Player.P1) == fixtures.e2_weak_sigma()

    def test_print_then_parse(self):
        sigma = fixtures.fig1_alternating()
        again = parse_strategy(print_strategy(sigma), Player.P1)
        assert again == sigma
        assert again.name == "alternating"

    def test_player_mismatch(self, corpus):
        with pytest.raises(StrategyFormatError):
            load_strategy(corpus / "e4_weak_sigma.json", Player.P2)

    def test_bad_json(self):
        with pytest.raises(StrategyFormatError) as info:
            parse_strategy("{oops", Player.P1, source="x.json")
        assert "x.json" in str(info.value)

    def test_duplicate_choice(self):
        document = {
            "memory_states": ["m0"],
            "initial": "m0",
            "choice": [
                {"memory": "m0", "state": "s", "dist": "go"},
                {"memory": "m0", "state": "s", "dist": "stay"},
            ],
        }
        with pytest.raises(StrategyFormatError):
            parse_strategy(json.dumps(document), Player.P1)

    def test_unknown_initial(self):
        document = {"memory_states": ["m0"], "initial": "m1", "choice": []}
        with pytest.raises(StrategyFormatError):
            parse_strategy(json.dumps(document), Player.P1)

    def test_missing_file(self, tmp_path):
        with pytest.raises(StrategyFormatError):
            load_strategy(tmp_path / "none.json", Player.P1)


class TestProduct:
    def test_product_arena(self, e4):
        product, frozen = product_arena(e4, fixtures.e4_weak_sigma())
        assert len(product.states) == 8
        assert product.available["s@m1"] == ("stay",)
        assert product.transition[("r@m0", "flip")] == {"s@m1": Fraction(1, 8), "g@m0": Fraction(7, 8)}
        assert frozen.choice("m0", "s@m0") == {"go": 1}

    def test_memory_values(self, e4):
        guaranteed = product_values(e4, Mean(), fixtures.e4_weak_sigma())
        assert guaranteed[("m0", "s")] == 1
        assert guaranteed[("m0", "d")] == Fraction(7, 8)
        assert guaranteed[("m0", "r")] == Fraction(7, 8)
        assert guaranteed[("m1", "s")] == 0
        assert guaranteed[("m1", "d")] == 0
        assert guaranteed[("m1", "r")] == Fraction(7, 8)
        assert guaranteed[("m1", "g")] == 1

    def test_reachable_pairs(self, e4):
        reached = reachable_pairs(e4, fixtures.e4_weak_sigma())
        assert reached == {("m0", "d"), ("m0", "r"), ("m0", "s"), ("m0", "g"), ("m1", "s")}


class TestReset:
    def test_weakness_set(self, e4):
        weak = weakness_set(e4, Mean(), fixtures.e4_weak_sigma(), Fraction(1, 8))
        assert weak.pairs == frozenset({("m1", "d"), ("m1", "s")})
        assert weak.to_dict()["weak"][1] == {
            "memory": "m1",
            "state": "s",
            "guaranteed": "0",
            "threshold": "3/4",
        }

    def test_negative_epsilon(self, e4):
        with pytest.raises(PreconditionError):
            weakness_set(e4, Mean(), fixtures.e4_weak_sigma(), Fraction(-1, 8))

    def test_reset_repairs_weakness(self, e4):
        sigma = fixtures.e4_weak_sigma()
        weak = weakness_set(e4, Mean(), sigma, Fraction(1, 8))
        reset = reset_strategy(sigma, weak)
        assert reset.update("m0", "r", "flip", "s") == "m0"
        assert reset.update("m1", "s", "stay", "s") == "m0"
        guaranteed = product_values(e4, Mean(), reset)
        assert all(guaranteed[("m0", s)] == 1 for s in e4.states)

    def test_reset_follows_base_update_off_support(self, e4):
        # go는 g로만 가므로 (s, go, r)는 확률 0 플레이
        base = fixtures.e4_weak_sigma()
        sigma = replace(base, rules=base.rules + (UpdateRule("m0", "s", "go", "r", "m1"),))
        weak = weakness_set(e4, Mean(), sigma, Fraction(1, 8))
        assert ("m1", "r") not in weak
        reset = reset_strategy(sigma, weak)
        assert reset.update("m0", "s", "go", "r") == "m1"
        for m in sigma.memory_states:
            for s, a in e4.pairs():
                for t in e4.states:
                    nxt = sigma.update(m, s, a, t)
                    assert reset.update(m, s, a, t) == ("m0" if (nxt, t) in weak else nxt)

    def test_reset_of_stationary_strategy(self, e2):
        sigma = PureStationaryStrategy(Player.P1, {"s": "go", "t": "loop"})
        weak = weakness_set(e2, Mean(), sigma, Fraction(0))
        assert len(weak) == 0
        reset = reset_strategy(sigma, weak)
        assert reset.memory_states == ("m0",)
        assert reset.rules == ()


class TestProjection:
    def test_partition_checks(self, fig1):
        with pytest.raises(StrategyError):
            PartitionAtState("sq", (), ("2",))
        with pytest.raises(StrategyError):
            PartitionAtState("sq", ("1",), ("1", "2"))
        with pytest.raises(StrategyError):
            PartitionAtState("sq", ("1",), ("3",)).validate(fig1)
        SPLIT.validate(fig1)
        assert SPLIT.sub_arena(fig1, 0).available["sq"] == ("1",)
        assert SPLIT.sub_arena(fig1, 1).available["sq"] == ("2",)

    def test_factors(self):
        play = FinitePlay(("sq", "b1", "sq", "a"), ("1", "1", "2"))
        pieces = factors(play, "sq")
        assert [str(p) for p in pieces] == ["sq 1 b1 1 sq", "sq 2 a"]

    def test_factors_need_pivot_start(self):
        with pytest.raises(StrategyError):
            factors(FinitePlay(("b1", "sq"), ("1",)), "sq")

    def test_finite_projection_keeps_open_factor(self):
        play = FinitePlay(("sq", "b1", "sq", "a"), ("1", "1", "2"))
        assert project(play, SPLIT, 0) == FinitePlay(("sq", "b1", "sq"), ("1", "1"))
        assert project(play, SPLIT, 1) == FinitePlay(("sq", "a"), ("2",))

    def test_lasso_projection_and_pattern(self):
        play = fig1_lasso()
        left, right = project(play, SPLIT, 0), project(play, SPLIT, 1)
        assert str(left.cycle) == "sq 1 b1 1 sq"
        assert str(right.cycle) == "sq 2 a back sq"
        pattern = projection_pattern(play, SPLIT)
        assert pattern.prefix_blocks == ()
        assert pattern.cycle_blocks == ((2, 0), (0, 2))

    def test_shuffle_of_projections_is_the_play(self):
        play = fig1_lasso()
        rebuilt = shuffle(
            play_word(project(play, SPLIT, 0)),
            play_word(project(play, SPLIT, 1)),
            projection_pattern(play, SPLIT),
        )
        assert rebuilt.same_word(play_word(play))

    def test_projection_side(self):
        with pytest.raises(ValueError):
            project(fig1_lasso(), SPLIT, 2)


class TestTrigger:
    def _trigger(self, fig1):
        tau0 = PureStationaryStrategy(Player.P2, {"sq": "1"})
        tau1 = PureStationaryStrategy(Player.P2, {"sq": "2"})
        return trigger_strategy(fig1, tau0, tau1, SPLIT)

    def test_memory_layout(self, fig1):
        trigger = self._trigger(fig1)
        assert trigger.initial == "0|m0|m0"
        assert set(trigger.memory_states) == {"0|m0|m0", "1|m0|m0"}
        trigger.validate(fig1)

    def test_follows_last_pivot_action(self, fig1):
        trigger = self._trigger(fig1)
        after_a = FinitePlay(("sq", "a", "sq"), ("2", "back"))
        after_b = FinitePlay(("sq", "b1", "sq"), ("1", "1"))
        assert memory_after(trigger, after_a) == "1|m0|m0"
        assert action_law(trigger, after_a) == {"2": 1}
        assert action_law(trigger, after_b) == {"1": 1}
        assert action_law(trigger, FinitePlay(("sq",))) == {"1": 1}

    def test_rejects_removed_action(self, fig1):
        tau0 = PureStationaryStrategy(Player.P2, {"sq": "2"})
        tau1 = PureStationaryStrategy(Player.P2, {"sq": "2"})
        with pytest.raises(StrategyError):
            trigger_strategy(fig1, tau0, tau1, SPLIT)

    def test_requires_minimizer_strategies(self, fig1):
        sigma = fixtures.fig1_stationary("1")
        with pytest.raises(StrategyError):
            trigger_strategy(fig1, sigma, sigma, SPLIT)

    def test_memoryful_sides_match_projected_histories(self):
        arena, split, tau0, tau1 = toggle_arena()
        trigger = trigger_strategy(arena, tau0, tau1, split)
        trigger.validate(arena)
        assert len(trigger.memory_states) == 8

        rng = np.random.default_rng(13)
        checked = 0
        for _ in range(200):
            play = FinitePlay(("p",))
            for _ in range(12):
                s = play.target
                a = arena.available[s][int(rng.integers(len(arena.available[s])))]
                play = play.extend(a, draw(arena.successors(s, a), rng))
                pivot_actions = [x for state, x in play.steps() if state == split.state]
                side = split.side_of(pivot_actions[-1]) if pivot_actions else 0
                # π_side(h)는 매번 처음부터 다시 계산
                expected = action_law((tau0, tau1)[side], project(play, split, side))
                assert action_law(trigger, play) == expected
                checked += 1
        assert checked == 2400
