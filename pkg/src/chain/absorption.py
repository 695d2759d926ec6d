"""재귀 클래스로의 흡수 확률과 종단값

일시 노드 T에서 (I − P_TT) x = P_TC b 를 푼다.
"""

from fractions import Fraction
from typing import Mapping, Optional

from src.chain.induced import InducedChain
from src.chain.linalg import solve
from src.chain.recurrence import RecurrentClassSummary, bottom_sccs, class_of_node


def _transient_system(
    chain: InducedChain,
    classes: list[RecurrentClassSummary],
    targets: list[list[Fraction]],
    width: int,
) -> dict[int, list[Fraction]]:
    """클래스 노드의 값 targets[node]가 주어졌을 때 모든 노드의 흡수 기댓값"""
    membership = class_of_node(classes)
    transient = [i for i in range(len(chain)) if i not in membership]
    position = {n: k for k, n in enumerate(transient)}

    values = {i: targets[i] for i in membership}
    if not transient:
        return values

    size = len(transient)
    matrix = [[Fraction(0)] * size for _ in range(size)]
    rhs = [[Fraction(0)] * width for _ in range(size)]
    for k, i in enumerate(transient):
        matrix[k][k] += 1
        for j, p in chain.rows[i].items():
            if j in position:
                matrix[k][position[j]] -= p
            else:
                for col in range(width):
                    rhs[k][col] += p * targets[j][col]

    solution = solve(matrix, rhs)
    for k, i in enumerate(transient):
        values[i] = solution[k]
    return values


def absorption(
    chain: InducedChain,
    source: int,
    classes: Optional[list[RecurrentClassSummary]] = None,
) -> dict[int, Fraction]:
    """source에서 각 클래스(번호)로 흡수될 확률 (합 1)"""
    if classes is None:
        classes = bottom_sccs(chain)
    if not 0 <= source < len(chain):
        raise KeyError(f"노드 {source}가 체인에 없습니다")
    membership = class_of_node(classes)
    targets = [
        [Fraction(1) if membership.get(i) == k else Fraction(0) for k in range(len(classes))]
        if i in membership else []
        for i in range(len(chain))
    ]
    if source in membership:
        return {k: Fraction(1) if k == membership[source] else Fraction(0) for k in range(len(classes))}
    values = _transient_system(chain, classes, targets, len(classes))
    return dict(enumerate(values[source]))


def hitting_values(
    chain: InducedChain,
    class_values: Mapping[int, Fraction],
    classes: Optional[list[RecurrentClassSummary]] = None,
) -> list[Fraction]:
    """클래스마다 값이 주어졌을 때 각 노드의 기대 종단값 (한 번의 풀이)"""
    if classes is None:
        classes = bottom_sccs(chain)
    membership = class_of_node(classes)
    targets = [
        [Fraction(class_values[membership[i]])] if i in membership else []
        for i in range(len(chain))
    ]
    values = _transient_system(chain, classes, targets, 1)
    return [values[i][0] for i in range(len(chain))]
