"""리셋 전략의 2ε-subgame-perfect 검증

σ와 ε이 주어지면 약점 집합을 구하고 리셋 전략 σ̂를 만든 다음, σ̂의 초기
메모리에서 도달 가능한 모든 (메모리, 상태)의 보장값이 val − 2ε 이상인지
정확히 비교한다. 같은 검사를 σ에도 적용해 함께 보고한다.
"""

import time
from fractions import Fraction
from typing import Any, Optional, Union

import numpy as np

from src.arena.model import Arena, Player
from src.core.exceptions import PreconditionError
from src.core.logger import get_logger
from src.core.rational import format_rational
from src.payoff.specs import PayoffSpec, format_payoff
from src.solve.actions import classify_actions, non_preserving_choice, sample_locally_optimal
from src.solve.enumeration import ValueVector, brute_force_value, require_both_positional
from src.strategy.io import strategy_document
from src.strategy.model import FiniteMemoryStrategy, PureStationaryStrategy, UpdateRule
from src.strategy.product import ProductValues, product_values, reachable_pairs
from src.strategy.reset import reset_strategy, weakness_set
from src.verify.report import VerificationReport, Verdict

logger = get_logger(__name__)

AnyStrategy = Union[PureStationaryStrategy, FiniteMemoryStrategy]

CLAIM = "subgame"


def failing_pairs(
    guaranteed: ProductValues,
    reachable: set[tuple[str, str]],
    values: dict[str, Fraction],
    epsilon: Fraction,
) -> list[tuple[str, str]]:
    """도달 가능하면서 보장값 < val − 2ε 인 (메모리, 상태) (정렬)"""
    return sorted(
        (m, s) for m, s in reachable if guaranteed[(m, s)] < values[s] - 2 * epsilon
    )


def _preconditions(
    arena: Arena,
    values: ValueVector,
    sigma: AnyStrategy,
    guaranteed: ProductValues,
    epsilon: Fraction,
) -> dict[str, Any]:
    """σ가 초기 메모리에서 ε-최적인지, 국소 최적인지"""
    short = [
        s for s in arena.states
        if guaranteed[(sigma.initial, s)] < values[s] - epsilon
    ]
    offending = non_preserving_choice(arena, classify_actions(arena, values), sigma)
    return {
        "epsilon_optimal": not short,
        "not_epsilon_optimal_at": short,
        "locally_optimal": offending is None,
        "non_preserving_choice": list(offending) if offending else None,
    }


def verify_subgame_perfect(
    arena: Arena,
    spec: PayoffSpec,
    sigma: AnyStrategy,
    epsilon: Union[Fraction, str, int],
    values: Optional[ValueVector] = None,
    budget: Optional[int] = None,
) -> VerificationReport:
    """σ̂ (σ의 리셋 전략)가 도달 가능한 모든 곳에서 val − 2ε를 보장하는지

    정리는 σ가 ε-최적이고 국소 최적일 것을 요구한다. 전제가 깨져도 검사는
    그대로 수행하고, 전제 결과를 보고서에 함께 싣는다.

    Args:
        arena: 아레나
        spec: 두 플레이어 위치적 페이오프
        sigma: P1 유한 메모리 전략
        epsilon: ε >= 0
        values: 게임 값 (None이면 brute_force_value)
        budget: 열거 예산

    Raises:
        UnsupportedPayoffError: 두 플레이어 위치적이 아닌 페이오프
        PreconditionError: ε < 0
    """
    started = time.perf_counter()
    epsilon = Fraction(epsilon)
    if epsilon < 0:
        raise PreconditionError(f"ε는 0 이상이어야 합니다: {format_rational(epsilon)}")
    require_both_positional(spec)
    if values is None:
        values = brute_force_value(arena, spec, budget)
    name = getattr(sigma, "name", "sigma")
    logger.info(f"리셋 전략 검증 시작: {arena.name} / {format_payoff(spec)} / {name}, ε={format_rational(epsilon)}")

    base_guaranteed = product_values(arena, spec, sigma, budget)
    preconditions = _preconditions(arena, values, sigma, base_guaranteed, epsilon)

    weak = weakness_set(arena, spec, sigma, epsilon, values, budget)
    sigma_hat = reset_strategy(sigma, weak)
    guaranteed = product_values(arena, spec, sigma_hat, budget)
    failing = failing_pairs(guaranteed, reachable_pairs(arena, sigma_hat), values.values, epsilon)
    base_failing = failing_pairs(base_guaranteed, reachable_pairs(arena, sigma), values.values, epsilon)

    quantities = {
        "values": values.values,
        "epsilon": epsilon,
        "weak": weak.to_dict()["weak"],
        "reset_guaranteed": {f"{m}|{s}": v for (m, s), v in guaranteed.values.items()},
        "reset_failing": [f"{m}|{s}" for m, s in failing],
        "base_failing": [f"{m}|{s}" for m, s in base_failing],
        "preconditions": preconditions,
    }
    notes = []
    if base_failing:
        notes.append(f"σ 자체는 도달 가능한 {len(base_failing)}개 (메모리, 상태)에서 val − 2ε 미만입니다")
    if not (preconditions["epsilon_optimal"] and preconditions["locally_optimal"]):
        notes.append("σ가 ε-최적 + 국소 최적 전제를 만족하지 않아 정리의 보장 밖입니다")

    witness = None
    verdict = Verdict.CONFIRMED
    if failing:
        m, s = failing[0]
        verdict = Verdict.REFUTED
        witness = {
            "memory": m,
            "state": s,
            "guaranteed": guaranteed[(m, s)],
            "threshold": values[s] - 2 * epsilon,
            "reset_strategy": strategy_document(sigma_hat),
        }

    report = VerificationReport(
        claim=CLAIM,
        instance={
            "arena": arena.fingerprint(),
            "name": arena.name,
            "payoff": format_payoff(spec),
            "sigma": name,
            "epsilon": epsilon,
        },
        verdict=verdict,
        quantities=quantities,
        witness=witness,
        notes=notes,
    )
    report.elapsed = time.perf_counter() - started
    logger.info(f"리셋 전략 검증 완료: {arena.name} → {verdict.value}")
    return report


def weakened_base(
    arena: Arena,
    spec: PayoffSpec,
    values: ValueVector,
    epsilon: Fraction,
    rng: np.random.Generator,
    attempts: int = 20,
    budget: Optional[int] = None,
) -> FiniteMemoryStrategy:
    """초기 메모리에서는 ε-최적이지만 약점을 가질 수 있는 2-메모리 전략

    m0은 σ*를 따르고, 무작위로 고른 (상태, 액션, 다음 상태)에서 m1로 넘어간다.
    m1은 무작위 값 보존 액션을 고르는 정상 전략이다. ε-최적이 되는 전환
    규칙을 attempts번 안에 찾지 못하면 전환 없는 σ*를 돌려준다.
    """
    classification = classify_actions(arena, values)
    optimal = values.sigma
    steps = [(s, a, t) for s, a in arena.pairs() for t in arena.successors(s, a)]

    def build(rule: tuple[UpdateRule, ...], lazy: dict[str, str], name: str) -> FiniteMemoryStrategy:
        choices = {}
        for s in arena.states_of(Player.P1):
            choices[("m0", s)] = {optimal.action(s): Fraction(1)}
            choices[("m1", s)] = {lazy[s]: Fraction(1)}
        return FiniteMemoryStrategy(
            player=Player.P1,
            memory_states=("m0", "m1"),
            initial="m0",
            rules=rule,
            choices=choices,
            name=name,
        )

    for n in range(min(attempts, len(steps))):
        lazy = sample_locally_optimal(arena, classification, Player.P1, rng).choices
        s, a, t = steps[int(rng.integers(len(steps)))]
        candidate = build((UpdateRule("m0", s, a, t, "m1"),), lazy, f"weakened-{n}")
        guaranteed = product_values(arena, spec, candidate, budget)
        if all(guaranteed[("m0", x)] >= values[x] - epsilon for x in arena.states):
            return candidate

    logger.debug(f"{arena.name}: ε-최적 약화 규칙을 찾지 못해 σ*를 그대로 씁니다")
    return build((), dict(optimal.choices), "weakened-none")
