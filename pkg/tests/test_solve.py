"""기대 페이오프, 브루트포스 값, 액션 분류, martingale 검사 테스트"""

from fractions import Fraction

import numpy as np
import pytest

from src.arena.model import Player
from src.core.exceptions import BudgetExceededError, PreconditionError, UnsupportedPayoffError
from src.payoff import Mean, Parity, PositiveAverage, parse_payoff
from src.payoff.colours import ColourKind
from src.solve import (
    MartingaleKind,
    StoppingRule,
    brute_force_value,
    careless_tau,
    check_supported,
    classify_actions,
    expected_payoff,
    expected_values,
    hoeffding_half_width,
    martingale_check,
    node_values,
    response_min,
    sample_locally_optimal,
    stopped_value_mc,
    value_grid,
)
from src.solve.evaluation import cache_info, clear_cache
from src.strategy.model import PureStationaryStrategy, all_pure_stationary, trivial_strategy
from src.verify import fixtures


def fork(owner: str):
    """x에서 hi(보상 1 루프)나 lo(보상 0 루프)로 가는 한 번의 선택"""
    return fixtures.build_arena(
        f"fork-{owner}",
        {"x": owner, "hi": "P1", "lo": "P1"},
        [
            ("x", "up", 0, {"hi": 1}),
            ("x", "down", 0, {"lo": 1}),
            ("hi", "loop", 1, {"hi": 1}),
            ("lo", "loop", 0, {"lo": 1}),
        ],
    )


class TestExpectedValues:
    def test_memory_strategy(self, e2):
        values = expected_values(e2, Mean(), fixtures.e2_weak_sigma(), trivial_strategy(e2, Player.P2))
        assert values == {"s": 1, "t": 1}

    def test_parity_variant(self):
        arena = fixtures.e3(ColourKind.PRIORITY)
        sigma = trivial_strategy(arena, Player.P1)
        tau = trivial_strategy(arena, Player.P2)
        assert expected_payoff(arena, Parity(), sigma, tau, "s") == Fraction(1, 2)

    def test_counter_drift(self):
        arena = fixtures.one_counter()
        sigma = PureStationaryStrategy(Player.P1, {"x": "up"})
        balanced = PureStationaryStrategy(Player.P2, {"y": "down"})
        coin = PureStationaryStrategy(Player.P2, {"y": "coin"})
        for text in ("counter+inf", "counter-inf"):
            assert expected_values(arena, parse_payoff(text), sigma, balanced) == {"x": 0, "y": 0}
        assert expected_payoff(arena, parse_payoff("counter+inf"), sigma, coin, "x") == 1

    def test_unknown_source(self, e2):
        sigma = PureStationaryStrategy(Player.P1, {"s": "go", "t": "loop"})
        with pytest.raises(KeyError):
            expected_payoff(e2, Mean(), sigma, trivial_strategy(e2, Player.P2), "zz")

    def test_reachable_part_matches_full_chain(self, e4):
        sigma = fixtures.e4_weak_sigma()
        tau = trivial_strategy(e4, Player.P2)
        chain, full = node_values(e4, Mean(), sigma, tau)
        restricted = expected_values(e4, Mean(), sigma, tau)
        assert restricted == {s: full[chain.initial_node(s)] for s in e4.states}

    def test_same_structure_is_solved_once(self, e2):
        clear_cache()
        weak = expected_values(e2, Mean(), fixtures.e2_weak_sigma(), trivial_strategy(e2, Player.P2))
        sigma = PureStationaryStrategy(Player.P1, {"s": "go", "t": "loop"})
        plain = expected_values(e2, Mean(), sigma, trivial_strategy(e2, Player.P2))
        assert weak == plain == {"s": 1, "t": 1}
        assert (cache_info().hits, cache_info().misses) == (1, 1)

    @pytest.mark.parametrize("text", ["geomfirstone", "suffixtarget:a"])
    def test_unsupported(self, e2, text):
        with pytest.raises(UnsupportedPayoffError):
            check_supported(e2, parse_payoff(text))


class TestBruteForce:
    def test_e2(self, e2):
        value = brute_force_value(e2, Mean())
        assert value.values == {"s": 1, "t": 1}
        assert value.sigma.choices == {"s": "go", "t": "loop"}
        assert value.pairs == 2
        assert value.to_dict()["values"] == {"s": "1", "t": "1"}

    def test_e3(self, e3):
        value = brute_force_value(e3, Mean())
        assert value.values == {"s": 1, "t": 0, "u": 2}
        assert value.certificates["s"].value == 1

    def test_e4(self, e4):
        value = brute_force_value(e4, Mean())
        assert set(value.values.values()) == {1}
        assert value.pairs == 4
        assert value.uniform_tau

    def test_minimizer_owns_the_fork(self):
        value = brute_force_value(fork("P2"), Mean())
        assert value["x"] == 0
        assert value.certificates["x"].tau.choices == {"x": "down"}

    def test_budget(self, e4):
        with pytest.raises(BudgetExceededError):
            brute_force_value(e4, Mean(), budget=1)

    def test_requires_both_positional(self, e4):
        with pytest.raises(UnsupportedPayoffError):
            brute_force_value(e4, PositiveAverage())

    def test_response_min_needs_candidates(self, e2):
        sigma = PureStationaryStrategy(Player.P1, {"s": "go", "t": "loop"})
        with pytest.raises(ValueError):
            response_min(e2, Mean(), sigma, [])

    @pytest.mark.slow
    def test_parallel_grid_matches_serial(self, e4):
        sigmas = list(all_pure_stationary(e4, Player.P1))
        taus = list(all_pure_stationary(e4, Player.P2))
        serial = value_grid(e4, Mean(), sigmas, taus, max_workers=1)
        assert value_grid(e4, Mean(), sigmas, taus, max_workers=2) == serial


class TestActionClassification:
    def test_e3_split_is_preserving_but_not_stable(self, e3):
        flags = classify_actions(e3, brute_force_value(e3, Mean())).flags
        assert flags[("s", "a")].value_preserving
        assert not flags[("s", "a")].stable
        assert flags[("s", "a")].successor_values == frozenset({0, 2})

    def test_e4_all_stable(self, e4):
        classification = classify_actions(e4, brute_force_value(e4, Mean()))
        assert all(f.stable for f in classification.flags.values())
        assert all(classification.all_preserving.values())

    def test_fork(self):
        arena = fork("P1")
        classification = classify_actions(arena, brute_force_value(arena, Mean()))
        assert classification.preserving_actions("x") == ("up",)
        assert not classification.all_preserving["x"]
        assert classification.to_dict()["values"]["x"] == "1"

    def test_missing_value(self, e2):
        with pytest.raises(KeyError):
            classify_actions(e2, {"s": Fraction(1)})

    def test_sample_locally_optimal(self):
        arena = fork("P1")
        classification = classify_actions(arena, brute_force_value(arena, Mean()))
        sigma = sample_locally_optimal(arena, classification, Player.P1, np.random.default_rng(5))
        assert sigma.choices["x"] == "up"


class TestMartingale:
    def test_careless_opponent_gives_submartingale(self):
        arena = fork("P2")
        values = brute_force_value(arena, Mean())
        classification = classify_actions(arena, values)
        tau = careless_tau(arena, classification)
        assert tau.choices == {"x": "up"}
        report = martingale_check(arena, values, trivial_strategy(arena, Player.P1), tau, "x")
        assert report.kind is MartingaleKind.SUBMARTINGALE
        assert [n.relation for n in report.strict_nodes] == [">"]

    def test_optimal_opponent_gives_martingale(self):
        arena = fork("P2")
        values = brute_force_value(arena, Mean())
        tau = values.certificates["x"].tau
        report = martingale_check(arena, values, trivial_strategy(arena, Player.P1), tau, "x")
        assert report.kind is MartingaleKind.MARTINGALE
        assert report.to_dict()["checked_nodes"] == 2

    def test_requires_local_optimality(self):
        arena = fork("P1")
        values = brute_force_value(arena, Mean())
        sigma = PureStationaryStrategy(Player.P1, {"x": "down", "hi": "loop", "lo": "loop"})
        with pytest.raises(PreconditionError):
            martingale_check(arena, values, sigma, trivial_strategy(arena, Player.P2), "x")


class TestStoppedValue:
    def _run(self, e3, rule, runs=400):
        values = brute_force_value(e3, Mean())
        sigma = trivial_strategy(e3, Player.P1)
        tau = trivial_strategy(e3, Player.P2)
        return stopped_value_mc(e3, values, sigma, tau, "s", rule, runs=runs, seed=3)

    def test_horizon_zero_is_exact(self, e3):
        estimate = self._run(e3, StoppingRule.at_horizon(0), runs=10)
        assert estimate.mean == 1
        assert estimate.unstopped == 0

    def test_horizon_covers_value(self, e3):
        estimate = self._run(e3, StoppingRule.at_horizon(3))
        assert estimate.covers(Fraction(1))
        assert estimate.to_dict()["rule"] == "horizon-3"

    def test_first_hit_uses_limit_when_unstopped(self, e3):
        estimate = self._run(e3, StoppingRule.first_hit({"t"}))
        assert 0 < estimate.unstopped < estimate.runs
        assert estimate.covers(Fraction(1))

    def test_requires_local_optimality(self):
        arena = fork("P1")
        values = brute_force_value(arena, Mean())
        sigma = PureStationaryStrategy(Player.P1, {"x": "down", "hi": "loop", "lo": "loop"})
        with pytest.raises(PreconditionError):
            stopped_value_mc(
                arena, values, sigma, trivial_strategy(arena, Player.P2), "x",
                StoppingRule.first_hit({"hi"}), runs=10, seed=1,
            )

    def test_first_weakness_stops_on_weak_memory(self, e4):
        # e4_weak_sigma: r에서 s로 넘어가면 메모리 m1, (m1, s)는 약점
        values = brute_force_value(e4, Mean())
        tau = PureStationaryStrategy(Player.P2, {"d": "left"})
        rule = StoppingRule.first_weakness({("m1", "d"), ("m1", "s")})
        estimate = stopped_value_mc(e4, values, fixtures.e4_weak_sigma(), tau, "d", rule, runs=800, seed=7)
        assert str(rule) == "first-weakness(2)"
        assert 0 < estimate.unstopped < estimate.runs
        assert estimate.mean == 1

    def test_runs_must_be_positive(self, e3):
        with pytest.raises(ValueError):
            self._run(e3, StoppingRule.at_horizon(1), runs=0)

    def test_hoeffding(self):
        assert hoeffding_half_width(0, 10, 0.01) == 0
        assert hoeffding_half_width(1, 100, 0.05) > hoeffding_half_width(1, 400, 0.05)
