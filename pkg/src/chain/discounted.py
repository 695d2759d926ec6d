"""할인 페이오프의 정확한 값

노드 i에서 v_i = Σ_a w_a [ r(s,a) + λ(s,a) Σ_t p(s,a)(t) v_next ].
모든 λ < 1 이므로 (I − M)는 가역.
"""

from fractions import Fraction

from src.arena.model import Arena
from src.chain.induced import ChainNode, InducedChain, induce_chain
from src.chain.linalg import solve_vector
from src.core.exceptions import ColourKindError
from src.payoff.colours import ColourKind
from src.strategy.model import Strategy


def discounted_node_values(chain: InducedChain) -> list[Fraction]:
    """체인 노드별 할인 페이오프

    Raises:
        ColourKindError: 할인 색상이 아닌 아레나
    """
    arena = chain.arena
    if arena.colour_kind is not ColourKind.DISCOUNTED:
        raise ColourKindError(f"할인 값은 discounted 색상을 요구합니다 (실제 {arena.colour_kind.value})")

    size = len(chain)
    matrix = [[Fraction(0)] * size for _ in range(size)]
    rhs = [Fraction(0)] * size
    for i in range(size):
        matrix[i][i] += 1
        state = chain.state_of(i)
        for a, w in chain.action_law(i).items():
            rhs[i] += w * arena.colour(state, a).reward
        for e in chain.edges[i]:
            discount = arena.colour(state, e.action).discount
            matrix[i][e.target] -= e.weight * discount * e.prob
    return solve_vector(matrix, rhs)


def discounted_values(arena: Arena, sigma: Strategy, tau: Strategy) -> dict[ChainNode, Fraction]:
    """곱 체인 노드 → 할인 페이오프"""
    chain = induce_chain(arena, sigma, tau)
    return dict(zip(chain.nodes, discounted_node_values(chain)))
