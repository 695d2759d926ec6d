"""전략 쌍의 정확한 기대 페이오프

클래스 결정형 페이오프는 Σ 흡수확률 · 클래스 값, 할인 페이오프는 선형 시스템.
평가는 초기 노드에서 도달 가능한 부분 체인에서만 하고, 간선 구조가 같은
부분 체인의 값은 한 번만 계산한다.
"""

from fractions import Fraction
from functools import lru_cache

from src.arena.model import Arena
from src.chain.absorption import hitting_values
from src.chain.discounted import discounted_node_values
from src.chain.induced import InducedChain, induce_chain
from src.chain.recurrence import bottom_sccs
from src.core.exceptions import UnsupportedPayoffError
from src.payoff.classes import class_value
from src.payoff.evaluation import check_colour_kind
from src.payoff.specs import Discounted, PayoffSpec
from src.strategy.model import Strategy


def check_supported(arena: Arena, spec: PayoffSpec) -> None:
    """체인 평가가 가능한 (아레나, 페이오프)인지 검사

    Raises:
        UnsupportedPayoffError: SuffixTarget, GeometricFirstOne
        ColourKindError: 색상 종류 불일치
    """
    if not (spec.class_determined or isinstance(spec, Discounted)):
        raise UnsupportedPayoffError(
            f"{spec}는 체인으로 평가할 수 없습니다 "
            "(SuffixTarget은 'reproduce fig1', GeometricFirstOne은 'check shift-invariance' 사용)"
        )
    check_colour_kind(spec, arena.colouring.values())


def chain_values(chain: InducedChain, spec: PayoffSpec) -> list[Fraction]:
    """체인의 모든 노드에서 기대 페이오프"""
    if isinstance(spec, Discounted):
        return discounted_node_values(chain)
    classes = bottom_sccs(chain)
    values = {k: class_value(spec, summary) for k, summary in enumerate(classes)}
    return hitting_values(chain, values, classes)


class _StructureKey:
    """체인을 간선 구조로 비교하는 캐시 키"""

    __slots__ = ("chain", "signature")

    def __init__(self, chain: InducedChain):
        self.chain = chain
        self.signature = (chain.arena.colour_kind, chain.structure())

    def __hash__(self) -> int:
        return hash(self.signature)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, _StructureKey) and self.signature == other.signature


@lru_cache(maxsize=8192)
def _cached_chain_values(key: _StructureKey, spec: PayoffSpec) -> tuple[Fraction, ...]:
    return tuple(chain_values(key.chain, spec))


def cache_info():
    """구조 캐시 통계 (functools.lru_cache 형식)"""
    return _cached_chain_values.cache_info()


def clear_cache() -> None:
    _cached_chain_values.cache_clear()


def node_values(
    arena: Arena,
    spec: PayoffSpec,
    sigma: Strategy,
    tau: Strategy,
) -> tuple[InducedChain, list[Fraction]]:
    """유도 체인과 노드별 기대 페이오프"""
    check_supported(arena, spec)
    chain = induce_chain(arena, sigma, tau)
    return chain, chain_values(chain, spec)


def expected_values(
    arena: Arena,
    spec: PayoffSpec,
    sigma: Strategy,
    tau: Strategy,
) -> dict[str, Fraction]:
    """상태별 E^{σ,τ}_s[f] (두 전략 모두 초기 메모리에서 시작)"""
    check_supported(arena, spec)
    chain = induce_chain(arena, sigma, tau)
    sub, position = chain.reachable_subchain(chain.initial_node(s) for s in arena.states)
    values = _cached_chain_values(_StructureKey(sub), spec)
    return {s: values[position[chain.initial_node(s)]] for s in arena.states}


def expected_payoff(
    arena: Arena,
    spec: PayoffSpec,
    sigma: Strategy,
    tau: Strategy,
    source: str,
) -> Fraction:
    """E^{σ,τ}_source[f]

    Args:
        arena: 아레나
        spec: 클래스 결정형 또는 Discounted 페이오프
        sigma: P1 유한 메모리 전략
        tau: P2 유한 메모리 전략
        source: 시작 상태

    Returns:
        정확한 기댓값
    """
    if source not in arena.controller:
        raise KeyError(f"상태 {source}가 아레나에 없습니다")
    return expected_values(arena, spec, sigma, tau)[source]
