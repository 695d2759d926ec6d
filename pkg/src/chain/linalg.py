"""유리수 가우스 소거

피벗은 열에서 크기(bit_size)가 가장 작은 0 아닌 원소. 계수 팽창을 줄인다.
"""

from fractions import Fraction
from typing import Sequence

from src.core.exceptions import SingularSystemError
from src.core.rational import bit_size


def solve(
    matrix: Sequence[Sequence[Fraction]],
    rhs: Sequence[Sequence[Fraction]],
) -> list[list[Fraction]]:
    """A X = B 풀이 (B는 여러 우변 열)

    Args:
        matrix: n×n 계수 행렬
        rhs: n×k 우변

    Returns:
        n×k 해

    Raises:
        SingularSystemError: 특이 행렬
    """
    n = len(matrix)
    if len(rhs) != n:
        raise ValueError(f"우변 행 수 불일치: {len(rhs)} != {n}")
    width = len(rhs[0]) if n else 0
    rows = [list(map(Fraction, matrix[i])) + list(map(Fraction, rhs[i])) for i in range(n)]

    for col in range(n):
        candidates = [r for r in range(col, n) if rows[r][col] != 0]
        if not candidates:
            raise SingularSystemError(f"열 {col}에서 피벗을 찾을 수 없습니다 (특이 행렬, n={n})")
        pivot = min(candidates, key=lambda r: bit_size(rows[r][col]))
        rows[col], rows[pivot] = rows[pivot], rows[col]

        head = rows[col][col]
        if head != 1:
            rows[col] = [x / head for x in rows[col]]
        for r in range(n):
            if r == col:
                continue
            factor = rows[r][col]
            if factor != 0:
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]

    return [row[n:n + width] for row in rows]


def solve_vector(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """A x = b"""
    return [row[0] for row in solve(matrix, [[b] for b in rhs])]
