"""bottom SCC (재귀 클래스)와 정상 분포"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import networkx as nx

from src.chain.induced import InducedChain
from src.chain.linalg import solve_vector
from src.core.exceptions import ChainError
from src.core.logger import get_logger
from src.payoff.colours import BuchiReward, Colour, ColourKind, Increment, Reward, RewardVector

logger = get_logger(__name__)


@dataclass(frozen=True)
class RecurrentClassSummary:
    """닫힌 강연결 성분 하나의 요약

    Attributes:
        nodes: 체인 노드 번호 (오름차순)
        stationary: 정확한 정상 분포
        colour_weights: 정상 분포로 가중한 (상태, 액션) 색상 빈도 (합 1)
        potential: 카운터 증분이 φ(다음) − φ(현재)로 쓰이는 포텐셜 (없으면 None)
    """
    nodes: tuple[int, ...]
    stationary: dict[int, Fraction]
    colour_weights: dict[Colour, Fraction]
    potential: Optional[dict[int, Fraction]] = None

    @property
    def support(self) -> tuple[Colour, ...]:
        """클래스 안에서 양의 빈도로 나오는 색상"""
        return tuple(c for c, w in self.colour_weights.items() if w > 0)

    @property
    def has_potential(self) -> bool:
        return self.potential is not None

    def mean_reward(self) -> Fraction:
        """정상 분포 가중 평균 (보상, Büchi 보상, 카운터 증분)"""
        total = Fraction(0)
        for c, w in self.colour_weights.items():
            if isinstance(c, (Reward, Increment)):
                total += w * c.value
            elif isinstance(c, BuchiReward):
                total += w * c.reward
            else:
                raise ChainError(f"스칼라 평균을 낼 수 없는 색상: {c!r}")
        return total

    def mean_vector(self) -> tuple[Fraction, ...]:
        """차원별 정상 분포 가중 평균"""
        vectors = [(c, w) for c, w in self.colour_weights.items()]
        if not all(isinstance(c, RewardVector) for c, _ in vectors):
            raise ChainError("벡터 평균은 보상 벡터 색상에서만 정의됩니다")
        dimension = vectors[0][0].dimension
        return tuple(
            sum((w * c.values[i] for c, w in vectors), Fraction(0)) for i in range(dimension)
        )


def transition_graph(chain: InducedChain) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(chain)))
    for i, row in enumerate(chain.rows):
        graph.add_edges_from((i, j) for j, p in row.items() if p > 0)
    return graph


@lru_cache(maxsize=4096)
def _stationary_from_rows(local_rows: tuple[tuple[tuple[int, Fraction], ...], ...]) -> tuple[Fraction, ...]:
    """클래스 내부 번호로 쓴 전이 행들의 정상 분포 (모양이 같은 클래스끼리 공유)"""
    size = len(local_rows)
    matrix = [[Fraction(0)] * size for _ in range(size)]
    for k, row in enumerate(local_rows):
        for j, p in row:
            matrix[j][k] += p
    for k in range(size):
        matrix[k][k] -= 1
    matrix[-1] = [Fraction(1)] * size
    rhs = [Fraction(0)] * (size - 1) + [Fraction(1)]
    return tuple(solve_vector(matrix, rhs))


def stationary_distribution(chain: InducedChain, nodes: tuple[int, ...]) -> dict[int, Fraction]:
    """닫힌 클래스 위에서 πP = π, Σπ = 1 의 유일해"""
    position = {n: k for k, n in enumerate(nodes)}
    local_rows = []
    for i in nodes:
        row = []
        for j, p in chain.rows[i].items():
            if j not in position:
                raise ChainError(f"노드 {i}에서 클래스 밖 {j}로 나갑니다 (닫힌 클래스가 아님)")
            if p:
                row.append((position[j], p))
        local_rows.append(tuple(sorted(row)))
    return dict(zip(nodes, _stationary_from_rows(tuple(local_rows))))


def find_potential(chain: InducedChain, nodes: tuple[int, ...]) -> Optional[dict[int, Fraction]]:
    """모든 클래스 간선에서 증분 = φ(j) − φ(i)가 되는 φ (없으면 None)"""
    phi = {nodes[0]: Fraction(0)}
    queue = [nodes[0]]
    constraints = []
    for i in nodes:
        state = chain.state_of(i)
        for e in chain.edges[i]:
            increment = chain.arena.colour(state, e.action)
            if not isinstance(increment, Increment):
                return None
            constraints.append((i, e.target, Fraction(increment.value)))

    adjacency: dict[int, list[tuple[int, Fraction]]] = {n: [] for n in nodes}
    for i, j, inc in constraints:
        adjacency[i].append((j, inc))
        adjacency[j].append((i, -inc))
    while queue:
        i = queue.pop()
        for j, inc in adjacency[i]:
            if j not in phi:
                phi[j] = phi[i] + inc
                queue.append(j)

    if all(phi[j] - phi[i] == inc for i, j, inc in constraints):
        return phi
    return None


def bottom_sccs(chain: InducedChain) -> list[RecurrentClassSummary]:
    """닫힌 강연결 성분 전체 (가장 작은 노드 번호 순)

    Returns:
        RecurrentClassSummary 목록 (비어 있지 않음)
    """
    graph = transition_graph(chain)
    condensed = nx.condensation(graph)
    members = [
        tuple(sorted(condensed.nodes[c]["members"]))
        for c, out_degree in condensed.out_degree()
        if out_degree == 0
    ]
    if not members:
        raise ChainError("bottom SCC가 없습니다 (유한 체인에서는 불가능)")
    members.sort(key=lambda nodes: nodes[0])

    summaries = []
    for nodes in members:
        pi = stationary_distribution(chain, nodes)
        weights: dict[Colour, Fraction] = {}
        for i in nodes:
            for c, w in chain.colour_weights(i).items():
                weights[c] = weights.get(c, Fraction(0)) + pi[i] * w
        potential = None
        if chain.arena.colour_kind is ColourKind.COUNTER:
            potential = find_potential(chain, nodes)
        summaries.append(RecurrentClassSummary(nodes, pi, weights, potential))

    logger.debug(f"bottom SCC {len(summaries)}개 (노드 {len(chain)}개)")
    return summaries


def class_of_node(classes: list[RecurrentClassSummary]) -> dict[int, int]:
    """노드 → 속한 클래스 번호 (재귀 노드만)"""
    return {n: k for k, summary in enumerate(classes) for n in summary.nodes}
