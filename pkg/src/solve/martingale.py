"""val(S_n)의 (sub)martingale 검사와 정지값 몬테카를로

유한 메모리 전략 쌍에서 조건부 기댓값은 체인 노드에만 의존하므로
도달 가능한 노드 전부를 확인하면 모든 히스토리를 확인한 것이다.
"""

import math
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Mapping, Optional, Union

import numpy as np

from src.arena.model import Arena
from src.arena.sampler import draw
from src.chain.absorption import hitting_values
from src.chain.induced import InducedChain, induce_chain
from src.chain.recurrence import bottom_sccs, class_of_node
from src.core.config import get_config
from src.core.exceptions import PreconditionError
from src.core.logger import get_logger
from src.core.rational import format_rational
from src.solve.actions import classify_actions, non_preserving_choice
from src.solve.enumeration import ValueVector
from src.strategy.model import Strategy

logger = get_logger(__name__)


class MartingaleKind(str, Enum):
    MARTINGALE = "martingale"
    SUBMARTINGALE = "submartingale"
    VIOLATED = "violated"


@dataclass
class NodeCheck:
    """노드 하나의 한 스텝 비교"""
    node: str
    value: Fraction
    expectation: Fraction

    @property
    def relation(self) -> str:
        if self.expectation == self.value:
            return "="
        return ">" if self.expectation > self.value else "<"

    def to_dict(self) -> dict[str, Any]:
        return {
            "node": self.node,
            "value": format_rational(self.value),
            "expectation": format_rational(self.expectation),
            "relation": self.relation,
        }


@dataclass
class MartingaleReport:
    """martingale_check 결과"""
    source: str
    horizon: Optional[int]
    kind: MartingaleKind
    nodes: list[NodeCheck] = field(default_factory=list)

    @property
    def strict_nodes(self) -> list[NodeCheck]:
        return [n for n in self.nodes if n.relation == ">"]

    def to_dict(self) -> dict[str, Any]:
        return {
            "source": self.source,
            "horizon": self.horizon,
            "kind": self.kind.value,
            "checked_nodes": len(self.nodes),
            "nodes": [n.to_dict() for n in self.nodes],
        }


def _value_map(values: Union[ValueVector, Mapping[str, Fraction]]) -> dict[str, Fraction]:
    return dict(values.values) if isinstance(values, ValueVector) else dict(values)


def _require_locally_optimal(arena: Arena, val: dict[str, Fraction], sigma: Strategy) -> None:
    offending = non_preserving_choice(arena, classify_actions(arena, val), sigma)
    if offending is not None:
        m, s, a = offending
        raise PreconditionError(
            f"σ가 국소 최적이 아닙니다: 상태 {s} (메모리 {m})에서 값 보존이 아닌 액션 {a}를 고릅니다"
        )


def reachable_nodes(chain: InducedChain, start: int, horizon: Optional[int] = None) -> list[int]:
    """start에서 horizon 스텝 안에 도달 가능한 노드 (BFS 순서)"""
    depth = {start: 0}
    order = [start]
    queue = deque([start])
    while queue:
        i = queue.popleft()
        if horizon is not None and depth[i] >= horizon:
            continue
        for j in chain.rows[i]:
            if j not in depth:
                depth[j] = depth[i] + 1
                order.append(j)
                queue.append(j)
    return order


def martingale_check(
    arena: Arena,
    values: Union[ValueVector, Mapping[str, Fraction]],
    sigma: Strategy,
    tau: Strategy,
    source: str,
    horizon: Optional[int] = None,
) -> MartingaleReport:
    """E[val(S_{n+1}) | 노드] 와 val(S_n) 의 정확한 비교

    Args:
        horizon: None이면 도달 가능한 노드 전체, 아니면 horizon 스텝 이내

    Raises:
        PreconditionError: σ가 값 보존이 아닌 액션을 고름
    """
    val = _value_map(values)
    _require_locally_optimal(arena, val, sigma)

    chain = induce_chain(arena, sigma, tau)
    checks = []
    for i in reachable_nodes(chain, chain.initial_node(source), horizon):
        expectation = sum(
            (p * val[chain.state_of(j)] for j, p in chain.rows[i].items()), Fraction(0)
        )
        checks.append(NodeCheck(chain.nodes[i].label(), val[chain.state_of(i)], expectation))

    relations = {c.relation for c in checks}
    if "<" in relations:
        kind = MartingaleKind.VIOLATED
    elif ">" in relations:
        kind = MartingaleKind.SUBMARTINGALE
    else:
        kind = MartingaleKind.MARTINGALE
    logger.debug(f"martingale 검사 {source}: 노드 {len(checks)}개, {kind.value}")
    return MartingaleReport(source, horizon, kind, checks)


@dataclass(frozen=True)
class StoppingRule:
    """정지 규칙

    kind:
        "horizon": N 스텝 후 정지
        "first-hit": states 중 하나에 처음 도달하면 정지
        "first-weakness": (σ 메모리, 상태)가 weak에 처음 들어가면 정지
    """
    kind: str
    horizon: int = 0
    states: frozenset = frozenset()
    weak: frozenset = frozenset()

    @classmethod
    def at_horizon(cls, n: int) -> "StoppingRule":
        return cls("horizon", horizon=n)

    @classmethod
    def first_hit(cls, states) -> "StoppingRule":
        return cls("first-hit", states=frozenset(states))

    @classmethod
    def first_weakness(cls, weak) -> "StoppingRule":
        return cls("first-weakness", weak=frozenset(weak))

    def stops(self, chain: InducedChain, node: int, step: int) -> bool:
        n = chain.nodes[node]
        if self.kind == "horizon":
            return step >= self.horizon
        if self.kind == "first-hit":
            return n.state in self.states
        if self.kind == "first-weakness":
            return (n.sigma_memory, n.state) in self.weak
        raise ValueError(f"알 수 없는 정지 규칙: {self.kind}")

    def __str__(self) -> str:
        if self.kind == "horizon":
            return f"horizon-{self.horizon}"
        if self.kind == "first-hit":
            return f"first-hit{{{','.join(sorted(self.states))}}}"
        return f"first-weakness({len(self.weak)})"


@dataclass
class MonteCarloEstimate:
    """E[val(S_T)]의 추정과 Hoeffding 신뢰구간"""
    mean: Fraction
    half_width: float
    runs: int
    unstopped: int
    rule: str
    seed: int

    @property
    def low(self) -> float:
        return float(self.mean) - self.half_width

    @property
    def high(self) -> float:
        return float(self.mean) + self.half_width

    def covers(self, value: Fraction) -> bool:
        return self.low <= float(value) <= self.high

    def to_dict(self) -> dict[str, Any]:
        return {
            "mean": format_rational(self.mean),
            "mean_float": float(self.mean),
            "half_width": self.half_width,
            "runs": self.runs,
            "unstopped": self.unstopped,
            "rule": self.rule,
            "seed": self.seed,
        }


def hoeffding_half_width(spread: float, runs: int, alpha: float) -> float:
    """[a, b] 유계 표본 평균의 양측 Hoeffding 반폭 (spread = b − a)"""
    if spread == 0:
        return 0.0
    return spread * math.sqrt(math.log(2 / alpha) / (2 * runs))


def stopped_value_mc(
    arena: Arena,
    values: Union[ValueVector, Mapping[str, Fraction]],
    sigma: Strategy,
    tau: Strategy,
    source: str,
    rule: StoppingRule,
    runs: int,
    seed: int,
    max_steps: Optional[int] = None,
    alpha: Optional[Fraction] = None,
) -> MonteCarloEstimate:
    """val(S_T)의 몬테카를로 추정

    정지하지 않는 궤적(T = ∞)은 a.s. 극한 lim val(S_n)을 쓴다. 극한의 조건부
    기댓값은 흡수 클래스 값으로 체인에서 정확히 계산한다.

    Args:
        runs: 궤적 수 (>= 1)
        seed: 난수 시드
        max_steps: 궤적당 최대 스텝 (None이면 설정값)
        alpha: 신뢰구간의 허용 실패 확률 (None이면 설정값)

    Raises:
        PreconditionError: σ가 값 보존이 아닌 액션을 고름
    """
    if runs < 1:
        raise ValueError(f"runs는 1 이상이어야 합니다: {runs}")
    config = get_config().harness
    max_steps = config.max_steps if max_steps is None else max_steps
    alpha = config.alpha if alpha is None else alpha
    val = _value_map(values)
    _require_locally_optimal(arena, val, sigma)

    chain = induce_chain(arena, sigma, tau)
    classes = bottom_sccs(chain)
    membership = class_of_node(classes)
    # 국소 최적 σ 아래에서 val은 흡수 클래스마다 상수
    limits = hitting_values(
        chain,
        {k: val[chain.state_of(summary.nodes[0])] for k, summary in enumerate(classes)},
        classes,
    )
    # 정지 조건이 절대 만족되지 않는 클래스: 들어가면 T = ∞
    silent = {
        k for k, summary in enumerate(classes)
        if rule.kind != "horizon" and not any(rule.stops(chain, i, 0) for i in summary.nodes)
    }

    rng = np.random.default_rng(seed)
    start = chain.initial_node(source)
    total = Fraction(0)
    unstopped = 0
    for _ in range(runs):
        node = start
        step = 0
        while True:
            if rule.stops(chain, node, step):
                total += val[chain.state_of(node)]
                break
            if membership.get(node) in silent or step >= max_steps:
                unstopped += 1
                total += limits[node]
                break
            node = draw(chain.rows[node], rng)
            step += 1

    spread = float(max(val.values()) - min(val.values()))
    estimate = MonteCarloEstimate(
        mean=total / runs,
        half_width=hoeffding_half_width(spread, runs, float(alpha)),
        runs=runs,
        unstopped=unstopped,
        rule=str(rule),
        seed=seed,
    )
    logger.debug(
        f"정지값 MC {source} ({rule}): 평균 {float(estimate.mean):.6f} ± {estimate.half_width:.6f}"
    )
    return estimate
