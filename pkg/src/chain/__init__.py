"""마르코프 체인: 유도 체인, 재귀 클래스, 흡수, 할인 시스템"""

from src.chain.linalg import solve, solve_vector
from src.chain.induced import ChainNode, Edge, InducedChain, chain_document, induce_chain, print_chain
from src.chain.recurrence import (
    RecurrentClassSummary,
    bottom_sccs,
    class_of_node,
    find_potential,
    stationary_distribution,
    transition_graph,
)
from src.chain.absorption import absorption, hitting_values
from src.chain.discounted import discounted_node_values, discounted_values

__all__ = [
    "solve",
    "solve_vector",
    "ChainNode",
    "Edge",
    "InducedChain",
    "chain_document",
    "induce_chain",
    "print_chain",
    "RecurrentClassSummary",
    "bottom_sccs",
    "class_of_node",
    "find_potential",
    "stationary_distribution",
    "transition_graph",
    "absorption",
    "hitting_values",
    "discounted_node_values",
    "discounted_values",
]
