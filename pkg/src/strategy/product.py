"""곱 아레나와 메모리별 보장값

σ를 고정하면 (상태, σ 메모리) 쌍 위의 아레나에서 P1의 선택은 σ의 정상
분포로 얼어붙는다. 이 아레나에서 P2의 순수 정상 전략은 σ의 메모리를
관찰하는 최선 응답 전부를 실현한다.

페이오프가 시프트 불변이면 f[h] = f 이므로 σ[h]의 보장값은 h의 끝 상태와
그때의 σ 메모리에만 의존한다. product_values가 계산하는 것이 바로 그 값이다.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Union

import networkx as nx

from src.arena.model import Arena, Player
from src.core.logger import get_logger
from src.core.rational import format_rational
from src.payoff.specs import PayoffSpec, format_payoff
from src.solve.enumeration import BestResponse, best_response_min, require_both_positional
from src.strategy.model import FiniteMemoryStrategy, PureStationaryStrategy, stationary_strategy

logger = get_logger(__name__)

AnyStrategy = Union[PureStationaryStrategy, FiniteMemoryStrategy]


def product_state(state: str, memory: str) -> str:
    return f"{state}@{memory}"


def product_arena(arena: Arena, sigma: AnyStrategy) -> tuple[Arena, FiniteMemoryStrategy]:
    """(상태, σ 메모리) 곱 아레나와 그 위의 P1 정상 전략

    P1 상태에서는 σ(m, s)의 support에 있는 액션만 남긴다. 전이는
    (t, σ.update(m, s, a, t))로, 색상은 원래 (s, a)의 색상을 쓴다.
    """
    if sigma.player is not Player.P1:
        raise ValueError("곱 아레나는 P1 전략으로 만듭니다")

    states = []
    controller = {}
    available = {}
    transition = {}
    colouring = {}
    frozen = {}
    for m in sigma.memory_states:
        for s in arena.states:
            ps = product_state(s, m)
            states.append(ps)
            controller[ps] = arena.owner(s)
            if arena.owner(s) is Player.P1:
                law = sigma.choice(m, s)
                acts = tuple(a for a in arena.available[s] if a in law)
                frozen[ps] = {a: law[a] for a in acts}
            else:
                acts = arena.available[s]
            available[ps] = acts
            for a in acts:
                dist: dict[str, Fraction] = {}
                for t, p in arena.successors(s, a).items():
                    target = product_state(t, sigma.update(m, s, a, t))
                    dist[target] = dist.get(target, Fraction(0)) + p
                transition[(ps, a)] = dist
                colouring[(ps, a)] = arena.colour(s, a)

    product = Arena(
        states=tuple(states),
        controller=controller,
        actions=arena.actions,
        available=available,
        transition=transition,
        colouring=colouring,
        name=f"{arena.name}×{getattr(sigma, 'name', 'sigma')}",
    )
    return product, stationary_strategy(Player.P1, frozen, name="frozen-sigma")


@dataclass
class ProductValues:
    """(메모리, 상태) → inf_τ 기댓값"""
    values: dict[tuple[str, str], Fraction]
    spec: PayoffSpec
    response: BestResponse

    def __getitem__(self, key: tuple[str, str]) -> Fraction:
        return self.values[key]

    def to_dict(self) -> dict[str, Any]:
        return {
            "payoff": format_payoff(self.spec),
            "values": {f"{m}|{s}": format_rational(v) for (m, s), v in self.values.items()},
        }


def product_values(
    arena: Arena,
    spec: PayoffSpec,
    sigma: AnyStrategy,
    budget: Optional[int] = None,
) -> ProductValues:
    """σ의 메모리별 보장값

    Args:
        arena: 아레나
        spec: 두 플레이어 위치적 페이오프
        sigma: P1 유한 메모리 전략
        budget: 곱 아레나 위 P2 전략 수 상한

    Raises:
        UnsupportedPayoffError: 두 플레이어 위치적이 아닌 페이오프
        BudgetExceededError: 예산 초과
    """
    require_both_positional(spec)
    product, frozen = product_arena(arena, sigma)
    response = best_response_min(product, spec, frozen, budget)
    values = {
        (m, s): response.values[product_state(s, m)]
        for m in sigma.memory_states
        for s in arena.states
    }
    logger.debug(f"{arena.name} / {format_payoff(spec)}: (메모리, 상태) 보장값 {len(values)}개 계산")
    return ProductValues(values, spec, response)


def reachable_pairs(arena: Arena, sigma: AnyStrategy) -> set[tuple[str, str]]:
    """초기 메모리에서 시작해 어떤 τ로든 도달 가능한 (메모리, 상태) 쌍"""
    product, _ = product_arena(arena, sigma)
    graph = nx.DiGraph()
    graph.add_nodes_from(product.states)
    for (ps, a), dist in product.transition.items():
        graph.add_edges_from((ps, t) for t, p in dist.items() if p > 0)

    reached: set[str] = set()
    for s in arena.states:
        start = product_state(s, sigma.initial)
        reached.add(start)
        reached |= nx.descendants(graph, start)

    return {
        (m, s)
        for m in sigma.memory_states
        for s in arena.states
        if product_state(s, m) in reached
    }
