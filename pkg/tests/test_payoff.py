"""페이오프 카탈로그, lasso 평가, 셔플, 성질 검사 테스트"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.core.exceptions import ColourKindError, PayoffError, ShuffleError
from src.payoff import (
    ColourKind,
    CounterLimsupPosInf,
    CounterLiminfNegInf,
    Discounted,
    GeneralizedMean,
    GeometricFirstOne,
    Limsup,
    Liminf,
    Mean,
    MeanCoBuchi,
    OptimisticGeneralizedMean,
    Parity,
    PositiveAverage,
    ShufflePattern,
    SuffixTarget,
    check_shift_invariance,
    check_submixing,
    colour_word,
    evaluate_lasso,
    evaluate_prefix,
    format_payoff,
    parse_colour,
    parse_payoff,
    shuffle,
    word,
)

REWARD = ColourKind.REWARD


def rewards(prefix, cycle):
    return colour_word(REWARD, prefix, cycle)


class TestCatalog:
    @pytest.mark.parametrize(
        "text",
        ["mean", "discounted", "parity", "limsup", "liminf", "posavg", "counter+inf",
         "counter-inf", "genmean:3", "optgenmean:2", "meancobuchi:100", "suffixtarget:a,b",
         "geomfirstone"],
    )
    def test_format_inverts_parse(self, text):
        assert format_payoff(parse_payoff(text)) == text

    @pytest.mark.parametrize(
        "text", ["foo", "genmean", "genmean:x", "genmean:0", "mean:3", "meancobuchi", "meancobuchi:-1"]
    )
    def test_parse_errors(self, text):
        with pytest.raises(PayoffError):
            parse_payoff(text)

    def test_case_insensitive_keyword(self):
        assert parse_payoff("MEAN") == Mean()

    def test_flags(self):
        assert Mean().both_positional
        assert PositiveAverage().half_positional_only
        assert not GeneralizedMean(2).is_submixing
        assert OptimisticGeneralizedMean(2).is_submixing
        assert not GeometricFirstOne().is_shift_invariant


class TestEvaluateLasso:
    def test_mean_ignores_prefix(self):
        assert evaluate_lasso(Mean(), rewards([5, 5], [1, 2])) == Fraction(3, 2)

    def test_discounted(self):
        w = colour_word(ColourKind.DISCOUNTED, [], [{"reward": 1, "discount": "1/2"}])
        assert evaluate_lasso(Discounted(), w) == 2

    def test_discounted_with_prefix(self):
        w = colour_word(
            ColourKind.DISCOUNTED,
            [{"reward": 3, "discount": "1/2"}],
            [{"reward": 0, "discount": "1/2"}],
        )
        assert evaluate_lasso(Discounted(), w) == 3

    def test_parity(self):
        assert evaluate_lasso(Parity(), colour_word(ColourKind.PRIORITY, [5], [1, 2])) == 0
        assert evaluate_lasso(Parity(), colour_word(ColourKind.PRIORITY, [], [3, 2])) == 1

    def test_limsup_liminf(self):
        w = rewards([9], [-1, 2, 0])
        assert evaluate_lasso(Limsup(), w) == 2
        assert evaluate_lasso(Liminf(), w) == -1

    def test_positive_average(self):
        assert evaluate_lasso(PositiveAverage(), rewards([], [1, -1])) == 0
        assert evaluate_lasso(PositiveAverage(), rewards([], [1, 0])) == 1

    def test_counters(self):
        zero = colour_word(ColourKind.COUNTER, [], [1, -1])
        up = colour_word(ColourKind.COUNTER, [-5], [1])
        assert evaluate_lasso(CounterLimsupPosInf(), zero) == 0
        assert evaluate_lasso(CounterLiminfNegInf(), zero) == 0
        assert evaluate_lasso(CounterLimsupPosInf(), up) == 1
        assert evaluate_lasso(CounterLiminfNegInf(), up) == 0

    def test_generalized_means(self):
        vectors = colour_word(ColourKind.VECTOR, [], [[1, 1]])
        negative = colour_word(ColourKind.VECTOR, [], [[-1, 0]])
        assert evaluate_lasso(GeneralizedMean(2), vectors) == 1
        assert evaluate_lasso(GeneralizedMean(2), negative) == 0
        assert evaluate_lasso(OptimisticGeneralizedMean(2), negative) == 1

    def test_mean_cobuchi(self):
        spec = MeanCoBuchi(Fraction(100))
        hit = colour_word(ColourKind.BUCHI, [], [{"reward": 3, "buchi": True}])
        avoid = colour_word(ColourKind.BUCHI, [{"reward": 0, "buchi": True}], [{"reward": 3, "buchi": False}])
        assert evaluate_lasso(spec, hit) == -100
        assert evaluate_lasso(spec, avoid) == 3

    def test_geometric_first_one(self):
        assert evaluate_lasso(GeometricFirstOne(), rewards([0, 0, 1], [0])) == Fraction(3, 4)
        assert evaluate_lasso(GeometricFirstOne(), rewards([0, 0], [1])) == Fraction(3, 4)
        assert evaluate_lasso(GeometricFirstOne(), rewards([], [0])) == 0

    def test_suffix_target_on_lassos(self):
        w = colour_word(ColourKind.LETTER, ["a"], ["b", "b"])
        assert evaluate_lasso(SuffixTarget(), w) == 1

    def test_colour_kind_mismatch(self):
        with pytest.raises(ColourKindError):
            evaluate_lasso(Parity(), rewards([], [1]))

    def test_vector_dimension_mismatch(self):
        with pytest.raises(ColourKindError):
            evaluate_lasso(GeneralizedMean(3), colour_word(ColourKind.VECTOR, [], [[1, 1]]))

    def test_prefix_estimate_agrees(self):
        w = rewards([], [1, 2])
        assert evaluate_prefix(Mean(), w.unroll(1000)) == pytest.approx(1.5)
        assert evaluate_prefix(Limsup(), w.unroll(10)) == 2.0

    def test_prefix_estimate_unsupported(self):
        with pytest.raises(PayoffError):
            evaluate_prefix(GeometricFirstOne(), rewards([], [1]).unroll(4))


class TestLassoWord:
    def test_letter_and_suffix(self):
        w = word("xy", "ab")
        assert w.unroll(6) == list("xyabab")
        assert w.suffix(1) == word("y", "ab")
        assert w.suffix(3) == word("", "ba")
        assert w.suffix(3).same_word(word("b", "ab"))

    def test_rotate_and_pump(self):
        w = word("", "abc")
        assert w.rotate(1).cycle == tuple("bca")
        assert w.pump(3).same_word(w)
        assert not w.rotate(1).same_word(w)

    def test_empty_cycle(self):
        with pytest.raises(PayoffError):
            word("a", "")

    def test_pump_requires_positive(self):
        with pytest.raises(PayoffError):
            word("", "a").pump(0)


class TestShuffle:
    def test_alternating(self):
        w = shuffle(word("", "a"), word("", "b"), ShufflePattern.alternating())
        assert w.same_word(word("", "ab"))

    def test_prefix_is_consumed(self):
        w = shuffle(word("x", "a"), word("", "b"), ShufflePattern.alternating())
        assert w == word("xb", "ab")

    def test_blocks(self):
        w = shuffle(word("", "a"), word("", "b"), ShufflePattern(((0, 2),), ((2, 1),)))
        assert w.unroll(8) == list("bbaabaab")

    def test_side_never_scheduled(self):
        with pytest.raises(ShuffleError):
            shuffle(word("", "a"), word("", "b"), ShufflePattern((), ((1, 0),)))

    def test_negative_block(self):
        with pytest.raises(ShuffleError):
            ShufflePattern((), ((-1, 1),))

    def test_empty_cycle_blocks(self):
        with pytest.raises(ShuffleError):
            ShufflePattern(((1, 1),), ())


class TestProperties:
    def test_generalized_mean_is_not_submixing(self):
        u = colour_word(ColourKind.VECTOR, [], [[2, -1]])
        v = colour_word(ColourKind.VECTOR, [], [[-1, 2]])
        witness = check_submixing(GeneralizedMean(2), u, v, ShufflePattern.alternating())
        assert witness is not None
        assert (witness.fu, witness.fv, witness.fw) == (0, 0, 1)
        assert witness.replay(GeneralizedMean(2))
        assert witness.to_dict()["f_w"] == "1"

    def test_geometric_first_one_is_not_shift_invariant(self):
        witness = check_shift_invariance(GeometricFirstOne(), rewards([0, 0, 1], [0]), shifts=3)
        assert witness is not None
        assert witness.shift == 1
        assert witness.value == Fraction(3, 4)
        assert witness.shifted_value == Fraction(1, 2)
        assert witness.replay(GeometricFirstOne())

    def test_geometric_first_one_counts_from_zero(self):
        # 1 0^ω와 0^ω는 둘 다 0이라 shift 1은 반례가 아니다
        assert evaluate_lasso(GeometricFirstOne(), rewards([1], [0])) == 0
        assert check_shift_invariance(GeometricFirstOne(), rewards([1], [0]), shifts=1) is None
        witness = check_shift_invariance(GeometricFirstOne(), rewards([0, 1], [0]), shifts=1)
        assert witness is not None
        assert (witness.value, witness.shifted_value) == (Fraction(1, 2), 0)

    def test_shifts_must_be_positive(self):
        with pytest.raises(ValueError):
            check_shift_invariance(Mean(), rewards([], [1]), shifts=0)


reward_letters = st.lists(st.integers(min_value=-3, max_value=3), min_size=0, max_size=3)
reward_cycles = st.lists(st.integers(min_value=-3, max_value=3), min_size=1, max_size=4)
blocks = st.tuples(st.integers(min_value=1, max_value=3), st.integers(min_value=1, max_value=3))


@given(prefix=reward_letters, cycle=reward_cycles, k=st.integers(min_value=0, max_value=8))
def test_mean_is_shift_invariant(prefix, cycle, k):
    w = rewards(prefix, cycle)
    assert evaluate_lasso(Mean(), w.suffix(k)) == evaluate_lasso(Mean(), w)


@given(u_cycle=reward_cycles, v_cycle=reward_cycles, block=blocks)
def test_mean_is_submixing(u_cycle, v_cycle, block):
    u, v = rewards([], u_cycle), rewards([], v_cycle)
    assert check_submixing(Mean(), u, v, ShufflePattern.alternating(*block)) is None


@given(u_cycle=reward_cycles, v_cycle=reward_cycles, block=blocks)
def test_shuffle_uses_only_input_letters(u_cycle, v_cycle, block):
    u, v = word([], u_cycle), word([], v_cycle)
    w = shuffle(u, v, ShufflePattern.alternating(*block))
    assert w.letters() <= u.letters() | v.letters()
    assert len(w.cycle) % (block[0] + block[1]) == 0


def test_parse_colour_rejects_bool_priority():
    with pytest.raises(ValueError):
        parse_colour(ColourKind.PRIORITY, True)
