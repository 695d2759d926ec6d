"""아레나 모델, 게임 파일 형식, 생성기, 샘플러 테스트"""

import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.arena import (
    FinitePlay,
    LassoPlay,
    Player,
    draw,
    load_arena,
    parse_arena,
    print_arena,
    random_arena,
    sample_play,
)
from src.core.exceptions import ArenaSyntaxError, ArenaValidationError
from src.payoff.colours import ColourKind, Letter, Reward
from src.strategy.model import PureStationaryStrategy, trivial_strategy
from src.verify.fixtures import FIXTURES


def _document(**overrides) -> str:
    document = {
        "name": "tiny",
        "states": [{"name": "x", "owner": "P1"}],
        "actions": [
            {"state": "x", "action": "a", "colour": 1, "successors": [{"state": "x", "prob": 1}]},
        ],
    }
    document.update(overrides)
    return json.dumps(document)


class TestGameFile:
    @pytest.mark.parametrize("name", sorted(FIXTURES))
    def test_corpus_matches_fixture(self, corpus, name):
        loaded = load_arena(corpus / f"{name}.json")
        built = FIXTURES[name]()
        assert loaded == built
        assert loaded.fingerprint() == built.fingerprint()

    @pytest.mark.parametrize("name", sorted(FIXTURES))
    def test_print_then_parse(self, name):
        arena = FIXTURES[name]()
        assert parse_arena(print_arena(arena)) == arena

    def test_minimal_document(self):
        arena = parse_arena(_document())
        assert arena.states == ("x",)
        assert arena.owner("x") is Player.P1
        assert arena.colour("x", "a") == Reward(Fraction(1))
        assert arena.colour_kind is ColourKind.REWARD

    def test_letter_colours(self, corpus):
        arena = load_arena(corpus / "fig1.json")
        assert arena.colour("sq", "1") == Letter("")
        assert arena.colour_kind is ColourKind.LETTER

    def test_probabilities_must_sum_to_one(self):
        text = _document(actions=[
            {"state": "x", "action": "a", "colour": 0, "successors": [{"state": "x", "prob": "1/2"}]},
        ])
        with pytest.raises(ArenaValidationError):
            parse_arena(text)

    def test_syntax_error_has_location(self):
        with pytest.raises(ArenaSyntaxError) as info:
            parse_arena('{"states": [\n  {"name": "x",,}\n]}', source="broken.json")
        assert info.value.line == 2
        assert "broken.json" in str(info.value)

    def test_unknown_owner(self):
        with pytest.raises(ArenaSyntaxError):
            parse_arena(_document(states=[{"name": "x", "owner": "P3"}]))

    def test_missing_field(self):
        with pytest.raises(ArenaSyntaxError):
            parse_arena(json.dumps({"states": []}))

    def test_state_without_actions(self):
        text = _document(states=[{"name": "x", "owner": "P1"}, {"name": "y", "owner": "P2"}])
        with pytest.raises(ArenaValidationError):
            parse_arena(text)

    def test_float_probability_rejected(self):
        text = _document(actions=[
            {"state": "x", "action": "a", "colour": 0, "successors": [{"state": "x", "prob": 1.0}]},
        ])
        with pytest.raises(ArenaSyntaxError):
            parse_arena(text)

    def test_wrong_colour_kind(self):
        with pytest.raises(ArenaValidationError):
            parse_arena(_document(colours="priority", actions=[
                {"state": "x", "action": "a", "colour": "high", "successors": [{"state": "x", "prob": 1}]},
            ]))


class TestArena:
    def test_restrict(self, e4):
        sub = e4.restrict("s", ("go",))
        assert sub.available["s"] == ("go",)
        assert ("s", "stay") not in sub.transition
        assert sub.available["d"] == e4.available["d"]

    def test_restrict_rejects_foreign_action(self, e4):
        with pytest.raises(ArenaValidationError):
            e4.restrict("s", ("jump",))

    def test_states_of(self, e4):
        assert e4.states_of(Player.P2) == ("d",)
        assert e4.states_of(Player.P1) == ("r", "s", "g")
        assert Player.P1.opponent is Player.P2

    def test_successors_drop_zero(self, e3):
        assert e3.successors("s", "a") == {"t": Fraction(1, 2), "u": Fraction(1, 2)}


class TestPlays:
    def test_concat_and_prefix(self):
        play = FinitePlay(("s", "s"), ("stay",)).concat(FinitePlay(("s", "t"), ("go",)))
        assert play.states == ("s", "s", "t")
        assert len(play) == 2
        assert play.prefix(1) == FinitePlay(("s", "s"), ("stay",))
        assert str(play) == "s stay s go t"

    def test_concat_mismatch(self):
        with pytest.raises(ArenaValidationError):
            FinitePlay(("s",)).concat(FinitePlay(("t",)))

    def test_length_mismatch(self):
        with pytest.raises(ArenaValidationError):
            FinitePlay(("s", "t"), ())

    def test_lasso_must_close(self):
        with pytest.raises(ArenaValidationError):
            LassoPlay(FinitePlay(("s",)), FinitePlay(("s", "t"), ("go",)))

    def test_lasso_unroll(self, e2):
        lasso = LassoPlay(FinitePlay(("s", "t"), ("go",)), FinitePlay(("t", "t"), ("loop",)))
        lasso.check(e2)
        assert lasso.unroll(2).states == ("s", "t", "t", "t")

    def test_check_availability(self, e2):
        with pytest.raises(ArenaValidationError):
            FinitePlay(("t", "t"), ("go",)).check(e2)


class TestGenerator:
    def test_deterministic(self):
        a = random_arena(5, 3, seed=42)
        b = random_arena(5, 3, seed=42)
        assert a == b
        assert a.fingerprint() == b.fingerprint()
        assert a.name == "random-42-5x3"

    def test_structure_independent_of_colour_kind(self):
        reward = random_arena(4, 3, seed=7)
        priority = random_arena(4, 3, (0, 4), seed=7, kind=ColourKind.PRIORITY)
        assert dict(reward.transition) == dict(priority.transition)
        assert dict(reward.controller) == dict(priority.controller)

    def test_clamps_arguments(self):
        arena = random_arena(0, 0, (2, -2), density="3/2", seed=1)
        assert arena.states == ("s0",)
        assert arena.available["s0"] == ("a0",)

    @given(
        seed=st.integers(min_value=0, max_value=2**32),
        num_states=st.integers(min_value=1, max_value=5),
        max_actions=st.integers(min_value=1, max_value=3),
    )
    def test_always_valid(self, seed, num_states, max_actions):
        arena = random_arena(num_states, max_actions, seed=seed)
        assert len(arena.states) == num_states
        for s, a in arena.pairs():
            assert sum(arena.transition[(s, a)].values()) == 1
        assert parse_arena(print_arena(arena)) == arena


class TestSampler:
    def test_draw_single_support(self):
        rng = np.random.default_rng(0)
        assert draw({"x": Fraction(1), "y": Fraction(0)}, rng) == "x"

    def test_draw_frequencies(self):
        rng = np.random.default_rng(3)
        hits = sum(draw({"x": Fraction(1, 4), "y": Fraction(3, 4)}, rng) == "x" for _ in range(4000))
        assert 800 < hits < 1200

    def test_sample_play(self, e2):
        sigma = PureStationaryStrategy(Player.P1, {"s": "go", "t": "loop"})
        tau = trivial_strategy(e2, Player.P2)
        play = sample_play(e2, sigma, tau, "s", 5, np.random.default_rng(0))
        assert len(play) == 5
        assert play.states == ("s", "t", "t", "t", "t", "t")

    def test_sample_play_reproducible(self, e3):
        sigma = trivial_strategy(e3, Player.P1)
        tau = trivial_strategy(e3, Player.P2)
        first = sample_play(e3, sigma, tau, "s", 4, np.random.default_rng(11))
        second = sample_play(e3, sigma, tau, "s", 4, np.random.default_rng(11))
        assert first == second

    def test_unknown_source(self, e2):
        sigma = PureStationaryStrategy(Player.P1, {"s": "go", "t": "loop"})
        with pytest.raises(ArenaValidationError):
            sample_play(e2, sigma, trivial_strategy(e2, Player.P2), "zz", 3, np.random.default_rng(0))
