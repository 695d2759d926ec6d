"""랜덤 아레나 스윕과 교차 검증 (느린 테스트: -m 'not slow'로 제외)

정확한 계산을 샘플링이나 독립적인 정의식 계산과 맞춰 본다.
"""

import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.arena.generator import random_arena
from src.arena.model import Player
from src.arena.sampler import draw, sample_play
from src.chain import ChainNode, absorption, bottom_sccs, class_of_node, induce_chain
from src.graphs.sweep import SweepRunner
from src.payoff import Limsup, Liminf, Mean, Parity, colour_word, evaluate_lasso, evaluate_prefix, parse_payoff
from src.payoff.colours import ColourKind
from src.solve import best_response_min, brute_force_value, classify_actions, expected_values, is_locally_optimal
from src.strategy.model import all_pure_stationary
from src.verify import Verdict, fixtures

pytestmark = pytest.mark.slow

SMALL = {"num_states": 3, "max_actions": 2}

# 자유도별 카이제곱 0.999 분위수
CHI_SQUARE_999 = {1: 10.828, 2: 13.816, 3: 16.266, 4: 18.467, 5: 20.515}


def _stationary_pair(arena, rng):
    sigmas = list(all_pure_stationary(arena, Player.P1))
    taus = list(all_pure_stationary(arena, Player.P2))
    return sigmas[int(rng.integers(len(sigmas)))], taus[int(rng.integers(len(taus)))]


def _transient_mass(chain, source, membership, steps):
    """steps 스텝 뒤에도 재귀 클래스 밖에 있을 정확한 확률"""
    dist = {source: Fraction(1)}
    for _ in range(steps):
        nxt: dict[int, Fraction] = {}
        for i, p in dist.items():
            for j, q in chain.rows[i].items():
                nxt[j] = nxt.get(j, Fraction(0)) + p * q
        dist = nxt
    return sum((p for i, p in dist.items() if i not in membership), Fraction(0))


class TestSampling:
    @pytest.mark.parametrize("seed", range(5))
    def test_sampled_absorption_matches_exact(self, seed):
        arena = random_arena(4, 2, seed=seed)
        rng = np.random.default_rng(seed)
        sigma, tau = _stationary_pair(arena, rng)
        chain = induce_chain(arena, sigma, tau)
        classes = bottom_sccs(chain)
        membership = class_of_node(classes)
        source = arena.states[0]
        start = chain.initial_node(source)
        exact = absorption(chain, start, classes)

        horizon, runs = 100, 4000
        transient = float(_transient_mass(chain, start, membership, horizon))
        counts: Counter = Counter()
        for _ in range(runs):
            play = sample_play(arena, sigma, tau, source, horizon, rng)
            counts[membership.get(chain.index[ChainNode(play.states[-1], sigma.initial, tau.initial)])] += 1

        for k, p in exact.items():
            sd = math.sqrt(float(p * (1 - p)) / runs)
            assert abs(counts[k] / runs - float(p)) <= 3 * sd + transient + 1 / runs

    def test_e3_split_frequency(self):
        law = fixtures.e3().successors("s", "a")
        rng = np.random.default_rng(2024)
        n = 100_000
        hits = sum(draw(law, rng) == "t" for _ in range(n))
        assert 0.495 <= hits / n <= 0.505

    @pytest.mark.parametrize("seed", range(3))
    def test_successor_draws_pass_chi_square(self, seed):
        arena = random_arena(5, 2, density="3/4", seed=seed)
        rng = np.random.default_rng(seed)
        n = 5000
        tested = 0
        for s, a in arena.pairs():
            law = arena.successors(s, a)
            if len(law) < 2:
                continue
            targets = list(law)
            counts = Counter(draw(law, rng) for _ in range(n))
            observed = np.array([counts[t] for t in targets], dtype=float)
            expected = np.array([float(law[t]) * n for t in targets])
            statistic = float(((observed - expected) ** 2 / expected).sum())
            assert statistic < CHI_SQUARE_999[len(targets) - 1]
            tested += 1
        assert tested > 0


prefix_letters = st.lists(st.integers(min_value=0, max_value=4), min_size=0, max_size=3)
cycle_letters = st.lists(st.integers(min_value=0, max_value=4), min_size=1, max_size=4)
prefix_specs = st.sampled_from(
    [(Mean(), ColourKind.REWARD), (Limsup(), ColourKind.REWARD), (Liminf(), ColourKind.REWARD),
     (Parity(), ColourKind.PRIORITY)]
)


@settings(max_examples=1000, deadline=None)
@given(prefix=prefix_letters, cycle=cycle_letters, case=prefix_specs)
def test_lasso_value_matches_unrolled_prefix(prefix, cycle, case):
    spec, kind = case
    w = colour_word(kind, prefix, cycle)
    estimate = evaluate_prefix(spec, w.unroll(2000))
    assert estimate == pytest.approx(float(evaluate_lasso(spec, w)), abs=0.02)


class TestSaddlePoints:
    @pytest.mark.parametrize("text", ["mean", "parity", "limsup", "liminf", "discounted"])
    def test_random_arenas(self, text):
        spec = parse_payoff(text)
        for seed in range(40):
            arena = random_arena(2 + seed % 3, 2, seed=seed, kind=spec.colour_kind)
            value = brute_force_value(arena, spec, max_workers=1)
            assert best_response_min(arena, spec, value.sigma).values == value.values

            # minmax 쪽: 값을 넘지 못하게 막는 τ가 상태마다 있다
            sigmas = list(all_pure_stationary(arena, Player.P1))
            for s in arena.states:
                blocking = min(
                    max(expected_values(arena, spec, sigma, tau)[s] for sigma in sigmas)
                    for tau in all_pure_stationary(arena, Player.P2)
                )
                assert blocking == value[s]

            if text != "discounted":
                classification = classify_actions(arena, value)
                assert is_locally_optimal(arena, classification, value.sigma)
                for s in arena.states:
                    expectations = [classification.flags[(s, a)].expectation for a in arena.available[s]]
                    extreme = max(expectations) if arena.owner(s) is Player.P1 else min(expectations)
                    assert extreme == value[s]


class TestSweeps:
    def test_reset_sweep(self):
        runner = SweepRunner(
            "subgame", "mean", num_arenas=50, seed=0, shape=SMALL,
            options={"epsilons": ["1/8", "1/4"]}, max_workers=1,
        )
        outcome = runner.run()
        assert outcome["success"]
        assert outcome["result"].verdict is Verdict.CONFIRMED
        assert outcome["result"].quantities["instances"] == 100

    @pytest.mark.parametrize("text", ["posavg", "optgenmean:2", "meancobuchi:100"])
    def test_half_positional_sweep(self, text):
        runner = SweepRunner(
            "halfpos", text, num_arenas=10, seed=0, shape=SMALL,
            options={"memory_bound": 2}, max_workers=1,
        )
        outcome = runner.run()
        assert outcome["success"]
        assert outcome["result"].verdict is Verdict.CONFIRMED
        assert outcome["result"].quantities["instances"] == 10
