"""순수 정상 전략 열거: 최선 응답과 브루트포스 값

값은 열거 격자의 안장점으로 정의한다. 두 플레이어 모두 위치적인
페이오프에서는 max_σ min_τ = min_τ max_σ 가 정확히 성립해야 하며,
실패는 버그나 위치적이지 않은 페이오프를 뜻한다.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Optional

from src.arena.model import Arena, Player
from src.core.config import get_config
from src.core.exceptions import BudgetExceededError, SaddlePointError, UnsupportedPayoffError
from src.core.logger import get_logger
from src.core.rational import format_rational
from src.payoff.specs import PayoffSpec, format_payoff
from src.solve.evaluation import check_supported, expected_values
from src.strategy.model import (
    PureStationaryStrategy,
    Strategy,
    all_pure_stationary,
    count_pure_stationary,
)

logger = get_logger(__name__)

Grid = list[list[dict[str, Fraction]]]


@dataclass
class BestResponse:
    """σ 고정 시 P2의 최선 응답

    Attributes:
        values: 상태별 min_τ E^{σ,τ}_s
        minimizers: 상태별 최소를 달성하는 τ (열거 순서상 첫 번째)
        tau: 모든 상태를 동시에 최소화하는 τ (없으면 None)
    """
    values: dict[str, Fraction]
    minimizers: dict[str, Strategy]
    tau: Optional[Strategy] = None

    @property
    def uniform(self) -> bool:
        return self.tau is not None


@dataclass(frozen=True)
class Certificate:
    """상태 하나의 최선 응답 증명서"""
    tau: PureStationaryStrategy
    value: Fraction


@dataclass
class ValueVector:
    """상태별 게임 값과 증명서

    Attributes:
        values: 상태 → 값
        sigma: 값을 모든 상태에서 보장하는 P1 순수 정상 전략
        certificates: 상태 → (최소화 τ, 달성 기댓값)
        spec: 계산에 쓴 페이오프
        fingerprint: 아레나 지문
    """
    values: dict[str, Fraction]
    sigma: PureStationaryStrategy
    certificates: dict[str, Certificate]
    spec: PayoffSpec
    fingerprint: str
    uniform_tau: bool = True
    pairs: int = 0

    def __getitem__(self, state: str) -> Fraction:
        return self.values[state]

    def to_dict(self) -> dict[str, Any]:
        return {
            "payoff": format_payoff(self.spec),
            "arena": self.fingerprint,
            "values": {s: format_rational(v) for s, v in self.values.items()},
            "sigma": dict(self.sigma.choices),
            "certificates": {
                s: {"tau": dict(c.tau.choices), "value": format_rational(c.value)}
                for s, c in self.certificates.items()
            },
            "uniform_tau": self.uniform_tau,
            "pairs": self.pairs,
        }


def require_both_positional(spec: PayoffSpec) -> None:
    if not spec.both_positional:
        raise UnsupportedPayoffError(
            f"{format_payoff(spec)}는 P2 위치성이 보장되지 않아 순수 정상 τ 열거를 쓸 수 없습니다 "
            "(verify halfpos의 유한 메모리 스윕 사용)"
        )


def check_budget(count: int, budget: Optional[int], what: str) -> int:
    if budget is None:
        budget = get_config().solver.enumeration_budget
    if count > budget:
        raise BudgetExceededError(
            f"{what} {count}개가 예산 {budget}을 넘습니다 (아레나를 나누거나 solver.enumeration_budget을 늘리세요)"
        )
    return budget


def best_response_min(
    arena: Arena,
    spec: PayoffSpec,
    sigma: Strategy,
    budget: Optional[int] = None,
) -> BestResponse:
    """P2 순수 정상 전략을 모두 열거해 상태별 최소 기댓값을 구한다

    Args:
        arena: 아레나
        spec: 두 플레이어 위치적 페이오프
        sigma: P1 전략 (순수 정상, 또는 곱 아레나 위의 정상 분포)
        budget: τ 개수 상한 (None이면 설정값)

    Returns:
        BestResponse
    """
    require_both_positional(spec)
    check_supported(arena, spec)
    check_budget(count_pure_stationary(arena, Player.P2), budget, "P2 전략")
    return response_min(arena, spec, sigma, all_pure_stationary(arena, Player.P2))


def response_min(
    arena: Arena,
    spec: PayoffSpec,
    sigma: Strategy,
    taus: Iterable[Strategy],
) -> BestResponse:
    """주어진 τ 후보 중 상태별 최소 기댓값 (위치성 요구 없음, 예산은 호출자가 검사)"""
    rows = [(tau, expected_values(arena, spec, sigma, tau)) for tau in taus]
    if not rows:
        raise ValueError("τ 후보가 비어 있습니다")
    return _pointwise_min(arena, rows)


def _pointwise_min(
    arena: Arena,
    rows: list[tuple[Strategy, dict[str, Fraction]]],
) -> BestResponse:
    values: dict[str, Fraction] = {}
    minimizers: dict[str, Strategy] = {}
    for s in arena.states:
        tau, _ = min(rows, key=lambda row: row[1][s])
        minimizers[s] = tau
        values[s] = min(row[1][s] for row in rows)

    uniform = next(
        (tau for tau, vals in rows if all(vals[s] == values[s] for s in arena.states)),
        None,
    )
    if uniform is None:
        logger.debug(f"{arena.name}: 모든 상태를 동시에 최소화하는 τ가 없습니다 (상태별 최소값 사용)")
    return BestResponse(values, minimizers, uniform)


def _grid_row(args: tuple[Arena, PayoffSpec, PureStationaryStrategy, list[PureStationaryStrategy]]):
    arena, spec, sigma, taus = args
    return [expected_values(arena, spec, sigma, tau) for tau in taus]


def value_grid(
    arena: Arena,
    spec: PayoffSpec,
    sigmas: list[PureStationaryStrategy],
    taus: list[PureStationaryStrategy],
    max_workers: int = 1,
) -> Grid:
    """grid[i][j] = 상태별 E^{σ_i, τ_j}

    max_workers > 1 이면 σ 후보별로 프로세스 풀에 나눈다 (결과 순서는 열거 순서).
    """
    jobs = [(arena, spec, sigma, taus) for sigma in sigmas]
    if max_workers > 1 and len(sigmas) > 1:
        with ProcessPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(_grid_row, jobs))
    return [_grid_row(job) for job in jobs]


def brute_force_value(
    arena: Arena,
    spec: PayoffSpec,
    budget: Optional[int] = None,
    max_workers: Optional[int] = None,
) -> ValueVector:
    """순수 정상 전략 격자의 안장점 값

    Returns:
        ValueVector (σ*는 모든 상태에서 값을 보장하는 첫 번째 σ)

    Raises:
        UnsupportedPayoffError: 두 플레이어 위치적이 아닌 페이오프
        BudgetExceededError: 전략 쌍 수가 예산 초과
        SaddlePointError: maxmin != minmax 또는 균일 최적 σ 없음
    """
    require_both_positional(spec)
    check_supported(arena, spec)

    pairs = count_pure_stationary(arena, Player.P1) * count_pure_stationary(arena, Player.P2)
    check_budget(pairs, budget, "전략 쌍")
    if max_workers is None:
        max_workers = get_config().solver.max_workers

    sigmas = list(all_pure_stationary(arena, Player.P1))
    taus = list(all_pure_stationary(arena, Player.P2))
    logger.debug(f"{arena.name} / {format_payoff(spec)}: σ {len(sigmas)}개 × τ {len(taus)}개 열거")
    grid = value_grid(arena, spec, sigmas, taus, max_workers)

    values: dict[str, Fraction] = {}
    for s in arena.states:
        maxmin = max(min(row[j][s] for j in range(len(taus))) for row in grid)
        minmax = min(max(row[j][s] for row in grid) for j in range(len(taus)))
        if maxmin != minmax:
            raise SaddlePointError(
                f"{arena.name}의 상태 {s}에서 안장점 실패: maxmin={format_rational(maxmin)}, "
                f"minmax={format_rational(minmax)} ({format_payoff(spec)})"
            )
        values[s] = maxmin

    for i, sigma in enumerate(sigmas):
        response = _pointwise_min(arena, list(zip(taus, grid[i])))
        if all(response.values[s] == values[s] for s in arena.states):
            certificates = {
                s: Certificate(response.minimizers[s], response.values[s]) for s in arena.states
            }
            return ValueVector(
                values=values,
                sigma=sigma,
                certificates=certificates,
                spec=spec,
                fingerprint=arena.fingerprint(),
                uniform_tau=response.uniform,
                pairs=pairs,
            )

    raise SaddlePointError(f"{arena.name}: 모든 상태에서 값을 보장하는 순수 정상 σ가 없습니다")
