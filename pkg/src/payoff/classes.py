"""재귀 클래스 위의 거의 확실한(a.s.) 페이오프

유도 체인의 bottom SCC에 흡수된 궤적은 shift-invariant 페이오프에 대해
클래스가 정하는 값을 거의 확실하게 갖는다.
"""

from fractions import Fraction
from typing import TYPE_CHECKING

from src.core.exceptions import ClassSummaryError, UnsupportedPayoffError
from src.payoff.evaluation import check_colour_kind
from src.payoff.specs import (
    CounterLiminfNegInf,
    CounterLimsupPosInf,
    GeneralizedMean,
    Limsup,
    Liminf,
    Mean,
    MeanCoBuchi,
    OptimisticGeneralizedMean,
    Parity,
    PayoffSpec,
    PositiveAverage,
)

if TYPE_CHECKING:
    from src.chain.recurrence import RecurrentClassSummary

ONE = Fraction(1)
ZERO = Fraction(0)


def class_value(spec: PayoffSpec, summary: "RecurrentClassSummary") -> Fraction:
    """클래스에 흡수된 궤적의 a.s. 페이오프

    Args:
        spec: 클래스 결정형 페이오프
        summary: 정상 분포와 색상 통계를 가진 클래스 요약

    Returns:
        Fraction 값

    Raises:
        UnsupportedPayoffError: Discounted, GeometricFirstOne, SuffixTarget
        ClassSummaryError: 정상 분포 합이 1이 아님
    """
    if not spec.class_determined:
        raise UnsupportedPayoffError(
            f"{spec}는 재귀 클래스로 값이 정해지지 않습니다 (전역 평가 또는 verify 루틴 사용)"
        )

    total = sum(summary.stationary.values(), ZERO)
    if total != 1 or any(p <= 0 for p in summary.stationary.values()):
        raise ClassSummaryError(f"정상 분포 가중치가 양수이고 합이 1이어야 합니다 (합 {total})")

    check_colour_kind(spec, summary.support)

    if isinstance(spec, Mean):
        return summary.mean_reward()
    if isinstance(spec, PositiveAverage):
        return ONE if summary.mean_reward() > 0 else ZERO
    if isinstance(spec, Limsup):
        return max(c.value for c in summary.support)
    if isinstance(spec, Liminf):
        return min(c.value for c in summary.support)
    if isinstance(spec, Parity):
        return ONE if max(c.value for c in summary.support) % 2 == 1 else ZERO
    if isinstance(spec, GeneralizedMean):
        return ONE if all(m > 0 for m in summary.mean_vector()) else ZERO
    if isinstance(spec, OptimisticGeneralizedMean):
        return ONE if any(m >= 0 for m in summary.mean_vector()) else ZERO
    if isinstance(spec, MeanCoBuchi):
        if any(c.buchi for c in summary.support):
            return -spec.penalty
        return summary.mean_reward()
    if isinstance(spec, (CounterLimsupPosInf, CounterLiminfNegInf)):
        drift = summary.mean_reward()
        if drift == 0:
            # 포텐셜이 있으면 부분합 유계 (두 조건 모두 실패), 없으면 진동 (모두 성립)
            holds = not summary.has_potential
        elif isinstance(spec, CounterLimsupPosInf):
            holds = drift > 0
        else:
            holds = drift < 0
        return ONE if holds else ZERO

    raise UnsupportedPayoffError(f"클래스 값을 계산할 수 없는 페이오프: {spec}")
