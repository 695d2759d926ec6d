"""Doob 정지 정리와 값 martingale 검증 묶음

국소 최적 전략 쌍에서 val(S_n)은 정확한 martingale이고, 유계이므로 어떤
정지 시각 T에서도 E[val(S_T)] = val(source)이다. P2가 값 보존이 아닌 액션을
고르면 submartingale이 된다. 값은 유한 개이므로 val(S_n)은 결국 상수가
되고, 마지막으로 값이 바뀌는 시각은 거의 확실히 유한하다.
"""

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

import numpy as np

from src.arena.model import Arena, Player
from src.arena.sampler import draw
from src.chain.induced import InducedChain, induce_chain
from src.chain.recurrence import bottom_sccs, class_of_node
from src.core.config import get_config
from src.core.exceptions import ArenaValidationError
from src.core.logger import get_logger
from src.payoff.specs import PayoffSpec, format_payoff
from src.solve.actions import careless_tau, classify_actions, sample_locally_optimal
from src.solve.enumeration import brute_force_value
from src.solve.martingale import (
    MartingaleKind,
    StoppingRule,
    martingale_check,
    stopped_value_mc,
)
from src.strategy.io import strategy_document
from src.strategy.model import Strategy
from src.strategy.reset import weakness_set
from src.verify.report import VerificationReport, Verdict

logger = get_logger(__name__)

CLAIM = "doob"


@dataclass
class LastChangeSummary:
    """마지막 값 변화 시각의 표본 요약

    Attributes:
        runs: 궤적 수
        horizon: 궤적당 스텝 수
        max_date: 관측된 가장 늦은 변화 시각 (변화가 없으면 0)
        mean_date: 평균 변화 시각
        settled: horizon 안에 흡수 클래스에 들어간 궤적 수
        constant_on_classes: 모든 흡수 클래스에서 val이 상수인지 (정확한 검사)
    """
    runs: int
    horizon: int
    max_date: int
    mean_date: float
    settled: int
    constant_on_classes: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "runs": self.runs,
            "horizon": self.horizon,
            "max_date": self.max_date,
            "mean_date": self.mean_date,
            "settled": self.settled,
            "constant_on_classes": self.constant_on_classes,
        }


def last_change_dates(
    chain: InducedChain,
    values: dict[str, Fraction],
    source: str,
    runs: int,
    horizon: int,
    rng: np.random.Generator,
) -> LastChangeSummary:
    """val(S_{n+1}) != val(S_n) 인 마지막 n+1 을 궤적마다 기록"""
    classes = bottom_sccs(chain)
    membership = class_of_node(classes)
    constant = all(
        len({values[chain.state_of(i)] for i in summary.nodes}) == 1 for summary in classes
    )

    dates = []
    settled = 0
    start = chain.initial_node(source)
    for _ in range(runs):
        node = start
        last = 0
        for step in range(horizon):
            if node in membership and constant:
                break
            nxt = draw(chain.rows[node], rng)
            if values[chain.state_of(nxt)] != values[chain.state_of(node)]:
                last = step + 1
            node = nxt
        if node in membership:
            settled += 1
        dates.append(last)

    return LastChangeSummary(
        runs=runs,
        horizon=horizon,
        max_date=max(dates),
        mean_date=sum(dates) / runs,
        settled=settled,
        constant_on_classes=constant,
    )


def _first_hit_targets(arena: Arena, values: dict[str, Fraction], source: str) -> frozenset:
    different = frozenset(s for s in arena.states if values[s] != values[source])
    return different or frozenset(s for s in arena.states if s != source)


def _pair_document(sigma: Strategy, tau: Strategy) -> dict[str, Any]:
    return {"sigma": strategy_document(sigma), "tau": strategy_document(tau)}


def doob_suite(
    arena: Arena,
    spec: PayoffSpec,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    source: Optional[str] = None,
    pairs: int = 3,
    horizon: int = 10,
    sigma: Optional[Strategy] = None,
    epsilon: Optional[Fraction] = None,
) -> VerificationReport:
    """국소 최적 전략 쌍 표본에서 정지값과 martingale 성질 검증

    쌍마다 σ의 약점 집합을 구하고, 비어 있지 않으면 first-weakness 정지
    규칙도 돌린다.

    Args:
        arena: 아레나
        spec: 두 플레이어 위치적 페이오프 (값은 brute_force_value)
        trials: 몬테카를로 궤적 수 (None이면 설정값)
        seed: 시드 (None이면 설정값)
        source: 정지값 추정의 시작 상태 (None이면 첫 상태)
        pairs: 표본 전략 쌍 수
        horizon: 고정 시각 정지 규칙의 N
        sigma: 첫 쌍에 쓸 국소 최적 σ (None이면 표본)
        epsilon: 약점 집합의 ε (None이면 harness.epsilons[0])

    Returns:
        VerificationReport. 정확한 검사 실패는 refuted, 신뢰구간이 값을
        덮지 못한 경우는 inconclusive.
    """
    started = time.perf_counter()
    config = get_config().harness
    trials = config.trials if trials is None else trials
    seed = config.seed if seed is None else seed
    source = arena.states[0] if source is None else source
    epsilon = Fraction(config.epsilons[0] if epsilon is None else epsilon)
    if source not in arena.controller:
        raise ArenaValidationError(f"상태 {source}가 아레나에 없습니다")
    logger.info(f"Doob 검증 시작: {arena.name} / {format_payoff(spec)}, 궤적 {trials}개")

    vv = brute_force_value(arena, spec)
    val = dict(vv.values)
    classification = classify_actions(arena, vv)
    rng = np.random.default_rng(seed)
    rules = [
        StoppingRule.at_horizon(0),
        StoppingRule.at_horizon(horizon),
        StoppingRule.first_hit(_first_hit_targets(arena, val, source)),
    ]

    estimates = []
    failures: list[dict[str, Any]] = []
    misses: list[str] = []
    sampled = []
    weakness = []
    given = sigma
    mc_seed = seed
    for p in range(pairs):
        sigma = sample_locally_optimal(arena, classification, Player.P1, rng)
        tau = sample_locally_optimal(arena, classification, Player.P2, rng)
        if p == 0 and given is not None:
            sigma = given
        sampled.append((sigma, tau))

        weak = weakness_set(arena, spec, sigma, epsilon, vv)
        weakness.append(len(weak))
        pair_rules = rules + [StoppingRule.first_weakness(weak.pairs)] if len(weak) else rules

        for s in arena.states:
            check = martingale_check(arena, val, sigma, tau, s)
            if check.kind is not MartingaleKind.MARTINGALE:
                bad = next(n for n in check.nodes if n.relation != "=")
                failures.append({"pair": p, "check": "martingale", "source": s, "node": bad.to_dict(),
                                 **_pair_document(sigma, tau)})

        for rule in pair_rules:
            mc_seed += 1
            estimate = stopped_value_mc(arena, val, sigma, tau, source, rule, trials, mc_seed)
            estimates.append({"pair": p, **estimate.to_dict()})
            if rule.kind == "horizon" and rule.horizon == 0 and estimate.mean != val[source]:
                failures.append({"pair": p, "check": "horizon-0", "mean": estimate.mean,
                                 **_pair_document(sigma, tau)})
            elif not estimate.covers(val[source]):
                misses.append(f"쌍 {p}, {rule}: 평균 {float(estimate.mean):.6f} ± {estimate.half_width:.6f}")

    # P2가 값을 지키지 않는 방향: submartingale
    sigma, _ = sampled[0]
    careless = careless_tau(arena, classification)
    sub = martingale_check(arena, val, sigma, careless, source)
    if sub.kind is MartingaleKind.VIOLATED:
        bad = next(n for n in sub.nodes if n.relation == "<")
        failures.append({"check": "submartingale", "node": bad.to_dict(), **_pair_document(sigma, careless)})
    mc_seed += 1
    sub_estimate = stopped_value_mc(arena, val, sigma, careless, source, rules[1], trials, mc_seed)
    if float(sub_estimate.mean) < float(val[source]) - sub_estimate.half_width:
        misses.append(f"submartingale 방향 평균 {float(sub_estimate.mean):.6f}이 val − CI 아래입니다")

    # 적대적 τ (source의 최소화 증명서)에서 마지막 값 변화 시각
    adversary = vv.certificates[source].tau
    last_change = last_change_dates(
        induce_chain(arena, sigma, adversary),
        val,
        source,
        runs=min(trials, 1000),
        horizon=config.max_steps,
        rng=np.random.default_rng(mc_seed + 1),
    )
    if not last_change.constant_on_classes:
        failures.append({"check": "last-change", **_pair_document(sigma, adversary)})

    if failures:
        verdict = Verdict.REFUTED
    elif misses:
        verdict = Verdict.INCONCLUSIVE
    else:
        verdict = Verdict.CONFIRMED

    report = VerificationReport(
        claim=CLAIM,
        instance={
            "arena": arena.fingerprint(),
            "name": arena.name,
            "payoff": format_payoff(spec),
            "source": source,
            "seed": seed,
            "trials": trials,
        },
        verdict=verdict,
        quantities={
            "value": val[source],
            "pairs": pairs,
            "epsilon": epsilon,
            "weakness": weakness,
            "estimates": estimates,
            "submartingale": {"kind": sub.kind.value, "estimate": sub_estimate.to_dict()},
            "last_change": last_change.to_dict(),
        },
        witness=failures[0] if failures else None,
        notes=misses,
    )
    report.elapsed = time.perf_counter() - started
    logger.info(f"Doob 검증 완료: {arena.name} → {verdict.value}")
    return report
