"""유리수 유틸리티

확률과 값은 전부 `Fraction`으로 다룬다. 부동소수는 몬테카를로 요약에서만 쓴다.
"""

import math
from fractions import Fraction
from typing import Iterable, Union

RationalLike = Union[int, str, Fraction]


def parse_rational(value: RationalLike) -> Fraction:
    """정수 또는 "num/den" 문자열을 Fraction으로 변환

    float는 거부한다 (이진 표현 오차가 정확 산술로 새어 들어오지 않도록).
    """
    if isinstance(value, bool):
        raise ValueError(f"유리수가 아닌 값: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("빈 문자열은 유리수가 아닙니다")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"유리수 파싱 실패 {value!r}: {e}")
    raise ValueError(f"유리수가 아닌 값: {value!r}")


def format_rational(value: Fraction) -> str:
    """Fraction을 "num/den" (정수면 "num") 문자열로"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def common_denominator(values: Iterable[Fraction]) -> int:
    """분모들의 최소공배수"""
    result = 1
    for v in values:
        result = math.lcm(result, Fraction(v).denominator)
    return result


def bit_size(value: Fraction) -> int:
    """피벗 선택용 크기 (분자·분모 비트 수)"""
    return abs(value.numerator).bit_length() + value.denominator.bit_length()
