"""정리 검증 하네스: 보고서, 고정 게임, 검증 루틴"""

from src.verify.report import VerificationReport, Verdict, combine, to_plain
from src.verify.fixtures import FIXTURES, build_arena, e2, e3, e4, fig1, one_counter
from src.verify.halfpos import guaranteed_values, require_halfpos_claim, stationary_bound, verify_halfpos
from src.verify.submixing import (
    SearchBounds,
    default_alphabet,
    necklaces,
    search_shift_invariance_violation,
    search_submixing_violation,
)
from src.verify.subgame import failing_pairs, verify_subgame_perfect, weakened_base
from src.verify.counterexample import (
    Fig1Outcome,
    analyse_fig1_strategy,
    randomized_hit_probability,
    replay_schedule,
    reproduce_counterexample,
)
from src.verify.doob import LastChangeSummary, doob_suite, last_change_dates

__all__ = [
    "VerificationReport",
    "Verdict",
    "combine",
    "to_plain",
    "FIXTURES",
    "build_arena",
    "e2",
    "e3",
    "e4",
    "fig1",
    "one_counter",
    "guaranteed_values",
    "require_halfpos_claim",
    "stationary_bound",
    "verify_halfpos",
    "SearchBounds",
    "default_alphabet",
    "necklaces",
    "search_shift_invariance_violation",
    "search_submixing_violation",
    "failing_pairs",
    "verify_subgame_perfect",
    "weakened_base",
    "Fig1Outcome",
    "analyse_fig1_strategy",
    "randomized_hit_probability",
    "replay_schedule",
    "reproduce_counterexample",
    "LastChangeSummary",
    "doob_suite",
    "last_change_dates",
]
