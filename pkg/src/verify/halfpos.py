"""반위치성(half-positionality) 경험적 검증

두 플레이어 위치적 페이오프는 브루트포스 값과 σ*의 최선 응답 검사로 확인한다.
P1만 위치적인 페이오프는 정확한 값을 구할 수 없으므로, 메모리 M 이하의
τ 집합을 기준으로 최선의 순수 정상 σ가 보장하는 값 V⁺를 구한 다음
메모리 M 이하의 σ가 V⁺를 넘는지 찾는다. confirmed는 항상 M과 예산에 한정된다.
"""

import time
from fractions import Fraction
from typing import Any, Optional

import numpy as np

from src.arena.model import Arena, Player
from src.core.config import get_config
from src.core.exceptions import BudgetExceededError, SaddlePointError, UnsupportedPayoffError
from src.core.logger import get_logger
from src.payoff.specs import PayoffSpec, format_payoff
from src.solve.enumeration import (
    best_response_min,
    brute_force_value,
    check_budget,
    response_min,
)
from src.solve.evaluation import check_supported
from src.strategy.io import strategy_document
from src.strategy.product import product_arena, product_state
from src.strategy.model import (
    FiniteMemoryStrategy,
    Strategy,
    all_memory_strategies,
    all_pure_stationary,
    count_memory_strategies,
    count_pure_stationary,
    random_memory_strategy,
)
from src.verify.report import VerificationReport, Verdict

logger = get_logger(__name__)

CLAIM = "halfpos"


def require_halfpos_claim(spec: PayoffSpec) -> None:
    """반위치성 정리가 적용되는 페이오프인지 (플래그 기준)

    Raises:
        UnsupportedPayoffError: shift-invariant + submixing 으로 분류되지 않은 페이오프
    """
    if spec.both_positional or (spec.is_shift_invariant and spec.is_submixing):
        return
    raise UnsupportedPayoffError(
        f"{format_payoff(spec)}는 shift-invariant + submixing 으로 분류되지 않아 반위치성을 주장할 수 없습니다 "
        f"('check submixing --payoff {format_payoff(spec)}'로 반례를 확인하세요)"
    )


def _instance(arena: Arena, spec: PayoffSpec, **extra: Any) -> dict[str, Any]:
    return {"arena": arena.fingerprint(), "name": arena.name, "payoff": format_payoff(spec), **extra}


def _verify_both_positional(arena: Arena, spec: PayoffSpec, budget: Optional[int]) -> VerificationReport:
    instance = _instance(arena, spec, mode="both-positional")
    try:
        vv = brute_force_value(arena, spec, budget)
    except SaddlePointError as e:
        return VerificationReport(
            claim=CLAIM,
            instance=instance,
            verdict=Verdict.REFUTED,
            witness={"saddle_point": str(e)},
            notes=["순수 정상 전략 격자에 안장점이 없습니다"],
        )

    response = best_response_min(arena, spec, vv.sigma, budget)
    quantities = {
        "values": vv.values,
        "sigma": dict(vv.sigma.choices),
        "guaranteed": response.values,
        "pairs": vv.pairs,
    }
    failing = [s for s in arena.states if response.values[s] < vv[s]]
    if failing:
        s = failing[0]
        return VerificationReport(
            claim=CLAIM,
            instance=instance,
            verdict=Verdict.REFUTED,
            quantities=quantities,
            witness={
                "state": s,
                "sigma": strategy_document(vv.sigma),
                "tau": strategy_document(response.minimizers[s]),
                "value": vv[s],
                "guaranteed": response.values[s],
            },
        )
    return VerificationReport(claim=CLAIM, instance=instance, verdict=Verdict.CONFIRMED, quantities=quantities)


def guaranteed_values(
    arena: Arena,
    spec: PayoffSpec,
    sigma: Strategy,
    taus: list[FiniteMemoryStrategy],
) -> dict[str, Fraction]:
    """σ가 τ 후보 전체에 대해 보장하는 상태별 값

    τ 후보는 메모리 M 이하의 자기 차례 갱신 전략과, σ의 메모리를 관찰하는
    곱 아레나 위의 순수 정상 전략을 합친 것이다.
    """
    direct = response_min(arena, spec, sigma, taus).values
    product, frozen = product_arena(arena, sigma)
    observing = response_min(product, spec, frozen, all_pure_stationary(product, Player.P2)).values
    return {s: min(direct[s], observing[product_state(s, sigma.initial)]) for s in arena.states}


def stationary_bound(
    arena: Arena,
    spec: PayoffSpec,
    taus: list[FiniteMemoryStrategy],
) -> tuple[dict[str, Fraction], dict[str, Any]]:
    """V⁺(s) = max_σ min_τ E_s (σ 순수 정상, τ는 guaranteed_values의 후보)

    Returns:
        (상태별 V⁺, 상태별 V⁺를 달성하는 σ)
    """
    bound: dict[str, Fraction] = {}
    best: dict[str, Any] = {}
    for sigma in all_pure_stationary(arena, Player.P1):
        guaranteed = guaranteed_values(arena, spec, sigma, taus)
        for s in arena.states:
            if s not in bound or guaranteed[s] > bound[s]:
                bound[s] = guaranteed[s]
                best[s] = sigma
    return bound, best


def _verify_half_positional(
    arena: Arena,
    spec: PayoffSpec,
    budget: int,
    memory_bound: int,
    seed: int,
    sigma_samples: int,
) -> VerificationReport:
    tau_count = count_memory_strategies(arena, Player.P2, memory_bound)
    observing = count_pure_stationary(arena, Player.P2)
    stationary_count = count_pure_stationary(arena, Player.P1)
    sigma_count = count_memory_strategies(arena, Player.P1, memory_bound)
    # σ 하나당 평가: 자기 차례 갱신 τ + σ 메모리를 관찰하는 곱 아레나 τ
    per_sigma = tau_count + observing ** memory_bound
    exhaustive = sigma_count <= sigma_samples
    instance = _instance(
        arena, spec, mode="half-positional", memory_bound=memory_bound, seed=seed, budget=budget
    )
    quantities: dict[str, Any] = {
        "tau_candidates": tau_count,
        "sigma_candidates": sigma_count if exhaustive else sigma_samples,
        "sigma_mode": "exhaustive" if exhaustive else "sampled",
    }

    try:
        check_budget(stationary_count * (tau_count + observing), budget, "V⁺ 계산 전략 쌍")
        check_budget(min(sigma_count, sigma_samples) * per_sigma, budget, "σ 후보 × τ 쌍")
    except BudgetExceededError as e:
        return VerificationReport(
            claim=CLAIM, instance=instance, verdict=Verdict.INCONCLUSIVE, quantities=quantities, notes=[str(e)]
        )

    taus = list(all_memory_strategies(arena, Player.P2, memory_bound))
    bound, best = stationary_bound(arena, spec, taus)
    quantities["stationary_values"] = bound
    quantities["best_stationary"] = {s: dict(sigma.choices) for s, sigma in best.items()}
    logger.debug(f"{arena.name} / {format_payoff(spec)}: V⁺ 계산 완료 (τ {len(taus)}개)")

    if exhaustive:
        sigmas = all_memory_strategies(arena, Player.P1, memory_bound)
    else:
        rng = np.random.default_rng(seed)
        sigmas = (
            random_memory_strategy(arena, Player.P1, memory_bound, rng, name=f"sampled-{n}")
            for n in range(sigma_samples)
        )

    checked = 0
    for sigma in sigmas:
        checked += 1
        guaranteed = guaranteed_values(arena, spec, sigma, taus)
        for s in arena.states:
            if guaranteed[s] > bound[s]:
                logger.info(f"{arena.name}: 메모리 σ가 상태 {s}에서 V⁺를 넘었습니다")
                quantities["sigma_checked"] = checked
                return VerificationReport(
                    claim=CLAIM,
                    instance=instance,
                    verdict=Verdict.REFUTED,
                    quantities=quantities,
                    witness={
                        "state": s,
                        "sigma": strategy_document(sigma),
                        "guaranteed": guaranteed[s],
                        "stationary_bound": bound[s],
                        "best_stationary": strategy_document(best[s]),
                    },
                )

    quantities["sigma_checked"] = checked
    return VerificationReport(
        claim=CLAIM,
        instance=instance,
        verdict=Verdict.CONFIRMED,
        quantities=quantities,
        notes=[f"σ, τ 메모리 {memory_bound} 이하 (σ 메모리를 관찰하는 τ 포함) 범위에서의 판정입니다"],
    )


def verify_halfpos(
    arena: Arena,
    spec: PayoffSpec,
    budget: Optional[int] = None,
    memory_bound: Optional[int] = None,
    seed: Optional[int] = None,
    sigma_samples: Optional[int] = None,
) -> VerificationReport:
    """아레나 하나에서 P1 순수 정상 최적 전략의 존재를 검증

    Args:
        arena: 아레나
        spec: shift-invariant + submixing 페이오프 (또는 두 플레이어 위치적)
        budget: 평가할 전략 쌍 수 상한 (None이면 설정값)
        memory_bound: σ, τ 메모리 상한 M (None이면 설정값)
        seed: σ 표본 시드 (σ 집합이 sigma_samples보다 클 때만 사용)
        sigma_samples: 전수 조사 대신 표본을 쓸 때의 σ 개수

    Returns:
        VerificationReport

    Raises:
        UnsupportedPayoffError: 반위치성 주장이 없는 페이오프
    """
    started = time.perf_counter()
    require_halfpos_claim(spec)
    check_supported(arena, spec)

    config = get_config()
    budget = config.solver.enumeration_budget if budget is None else budget
    memory_bound = config.harness.memory_bound if memory_bound is None else memory_bound
    seed = config.harness.seed if seed is None else seed
    sigma_samples = config.harness.sigma_samples if sigma_samples is None else sigma_samples
    if memory_bound < 1:
        raise ValueError(f"memory_bound는 1 이상이어야 합니다: {memory_bound}")

    logger.info(f"반위치성 검증 시작: {arena.name} / {format_payoff(spec)}")
    try:
        if spec.both_positional:
            report = _verify_both_positional(arena, spec, budget)
        else:
            report = _verify_half_positional(arena, spec, budget, memory_bound, seed, sigma_samples)
    except BudgetExceededError as e:
        report = VerificationReport(
            claim=CLAIM,
            instance=_instance(arena, spec, budget=budget),
            verdict=Verdict.INCONCLUSIVE,
            notes=[str(e)],
        )

    report.elapsed = time.perf_counter() - started
    logger.info(f"반위치성 검증 완료: {arena.name} → {report.verdict.value}")
    return report
