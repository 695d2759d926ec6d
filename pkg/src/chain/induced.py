"""전략 쌍이 유도하는 마르코프 체인

노드는 (아레나 상태, P1 메모리, P2 메모리)의 곱 전체.
노드 i에서 컨트롤러의 전략이 액션 분포를 정하고, 다음 상태가 뽑히면
두 메모리가 함께 갱신된다.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, NamedTuple, Optional

from src.arena.model import Arena, Player
from src.core.exceptions import MemoryAutomatonError
from src.core.logger import get_logger
from src.core.rational import format_rational
from src.payoff.colours import Colour, colour_to_json
from src.strategy.model import Strategy

logger = get_logger(__name__)


class ChainNode(NamedTuple):
    state: str
    sigma_memory: str
    tau_memory: str

    def label(self) -> str:
        return f"{self.state}|{self.sigma_memory}|{self.tau_memory}"


class Edge(NamedTuple):
    """노드에서 한 스텝: 액션 가중치 × 전이 확률"""
    action: str
    weight: Fraction
    target: int
    prob: Fraction


@dataclass(frozen=True)
class InducedChain:
    """유도 체인

    Attributes:
        arena: 원래 아레나
        nodes: 노드 목록 (상태 선언 순서 × σ 메모리 × τ 메모리)
        edges: 노드별 양의 확률 스텝
        rows: 노드별 다음 노드 분포 (합 1)
    """
    arena: Arena
    nodes: tuple[ChainNode, ...]
    edges: tuple[tuple[Edge, ...], ...]
    rows: tuple[dict[int, Fraction], ...]
    index: dict[ChainNode, int]
    initial_memory: tuple[str, str]

    def __len__(self) -> int:
        return len(self.nodes)

    def initial_node(self, state: str) -> int:
        """두 전략의 초기 메모리로 state에서 시작하는 노드"""
        return self.index[ChainNode(state, *self.initial_memory)]

    def node(self, state: str, sigma_memory: Optional[str] = None, tau_memory: Optional[str] = None) -> int:
        """조건에 맞는 첫 노드 번호"""
        for i, n in enumerate(self.nodes):
            if n.state != state:
                continue
            if sigma_memory is not None and n.sigma_memory != sigma_memory:
                continue
            if tau_memory is not None and n.tau_memory != tau_memory:
                continue
            return i
        raise KeyError(f"노드 ({state}, {sigma_memory}, {tau_memory})가 체인에 없습니다")

    def state_of(self, i: int) -> str:
        return self.nodes[i].state

    def action_law(self, i: int) -> dict[str, Fraction]:
        law: dict[str, Fraction] = {}
        for e in self.edges[i]:
            law.setdefault(e.action, e.weight)
        return law

    def reachable_subchain(self, sources: Iterable[int]) -> tuple["InducedChain", dict[int, int]]:
        """sources에서 도달 가능한 노드만 남긴 체인과 (원래 번호 → 새 번호)

        남는 노드 집합은 다음 노드에 대해 닫혀 있으므로 값은 원래 체인과 같다.
        """
        seen = set(sources)
        stack = list(seen)
        while stack:
            i = stack.pop()
            for j in self.rows[i]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)

        keep = sorted(seen)
        position = {i: k for k, i in enumerate(keep)}
        nodes = tuple(self.nodes[i] for i in keep)
        sub = InducedChain(
            arena=self.arena,
            nodes=nodes,
            edges=tuple(tuple(e._replace(target=position[e.target]) for e in self.edges[i]) for i in keep),
            rows=tuple({position[j]: p for j, p in self.rows[i].items()} for i in keep),
            index={n: k for k, n in enumerate(nodes)},
            initial_memory=self.initial_memory,
        )
        return sub, position

    def structure(self) -> tuple:
        """노드 번호와 색상만으로 된 간선 구조 (라벨 무관, 해시 가능)

        구조가 같은 두 체인은 같은 번호의 노드에서 값이 같다.
        """
        return tuple(
            tuple(
                (self.arena.colour(node.state, e.action), e.weight, e.target, e.prob)
                for e in edges
            )
            for node, edges in zip(self.nodes, self.edges)
        )

    def colour_weights(self, i: int) -> dict[Colour, Fraction]:
        """노드 i에서 나가는 (상태, 액션) 색상의 가중치"""
        weights: dict[Colour, Fraction] = {}
        state = self.nodes[i].state
        for a, w in self.action_law(i).items():
            c = self.arena.colour(state, a)
            weights[c] = weights.get(c, Fraction(0)) + w
        return weights


def induce_chain(arena: Arena, sigma: Strategy, tau: Strategy) -> InducedChain:
    """σ (P1), τ (P2) 고정 시의 곱 체인

    Raises:
        MemoryAutomatonError: 전략이 어떤 노드에서 정의되지 않음
    """
    if sigma.player is not Player.P1 or tau.player is not Player.P2:
        raise MemoryAutomatonError("sigma는 P1, tau는 P2의 전략이어야 합니다")

    nodes = tuple(
        ChainNode(s, m1, m2)
        for s in arena.states
        for m1 in sigma.memory_states
        for m2 in tau.memory_states
    )
    index = {n: i for i, n in enumerate(nodes)}
    strategies = {Player.P1: sigma, Player.P2: tau}

    all_edges = []
    rows = []
    for node in nodes:
        owner = arena.owner(node.state)
        memory = node.sigma_memory if owner is Player.P1 else node.tau_memory
        law = strategies[owner].choice(memory, node.state)
        if sum(law.values(), Fraction(0)) != 1:
            raise MemoryAutomatonError(
                f"{node.label()}의 액션 분포 합이 {format_rational(sum(law.values(), Fraction(0)))}입니다"
            )
        edges = []
        row: dict[int, Fraction] = {}
        for a, w in law.items():
            if a not in arena.available[node.state]:
                raise MemoryAutomatonError(f"전략이 {node.state}에서 사용 불가능한 액션 {a}를 고릅니다")
            for t, p in arena.successors(node.state, a).items():
                nxt = ChainNode(
                    t,
                    sigma.update(node.sigma_memory, node.state, a, t),
                    tau.update(node.tau_memory, node.state, a, t),
                )
                if nxt not in index:
                    raise MemoryAutomatonError(f"메모리 갱신 결과 {nxt.label()}가 메모리 집합 밖입니다")
                j = index[nxt]
                edges.append(Edge(a, w, j, p))
                row[j] = row.get(j, Fraction(0)) + w * p
        all_edges.append(tuple(edges))
        rows.append(row)

    chain = InducedChain(
        arena, nodes, tuple(all_edges), tuple(rows), index, (sigma.initial, tau.initial)
    )
    logger.debug(f"유도 체인 생성: {arena.name}, 노드 {len(nodes)}개")
    return chain


def chain_document(chain: InducedChain) -> dict[str, Any]:
    """디버그용 구조 문서 (아레나 형식과 비슷한 모양)"""
    return {
        "arena": chain.arena.name,
        "nodes": [
            {
                "node": node.label(),
                "state": node.state,
                "choice": {a: format_rational(w) for a, w in chain.action_law(i).items()},
                "colours": [colour_to_json(c) for c in chain.colour_weights(i)],
                "successors": [
                    {"node": chain.nodes[j].label(), "prob": format_rational(p)}
                    for j, p in chain.rows[i].items()
                ],
            }
            for i, node in enumerate(chain.nodes)
        ],
    }


def print_chain(chain: InducedChain) -> str:
    return json.dumps(chain_document(chain), indent=2, ensure_ascii=False) + "\n"
