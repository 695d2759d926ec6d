"""페이오프 함수 카탈로그

각 변형은 요구하는 색상 종류와 분류 플래그(shift-invariant, submixing)를
클래스 속성으로 가진다. 카탈로그는 닫혀 있다.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar

from src.core.exceptions import PayoffError
from src.core.rational import format_rational, parse_rational
from src.payoff.colours import ColourKind


@dataclass(frozen=True)
class PayoffSpec:
    """페이오프 함수 기본 클래스"""
    keyword: ClassVar[str] = ""
    colour_kind: ClassVar[ColourKind] = ColourKind.REWARD
    is_shift_invariant: ClassVar[bool] = False
    is_submixing: ClassVar[bool] = False
    # 두 플레이어 모두 순수 정상 최적 전략을 갖는 변형
    both_positional: ClassVar[bool] = False
    # 재귀 클래스 단위로 값이 결정되는 변형
    class_determined: ClassVar[bool] = False

    @property
    def half_positional_only(self) -> bool:
        """shift-invariant + submixing 이지만 P2 위치성은 보장되지 않는 변형"""
        return self.is_shift_invariant and self.is_submixing and not self.both_positional

    def __str__(self) -> str:
        return format_payoff(self)


@dataclass(frozen=True)
class Mean(PayoffSpec):
    keyword: ClassVar[str] = "mean"
    is_shift_invariant: ClassVar[bool] = True
    is_submixing: ClassVar[bool] = True
    both_positional: ClassVar[bool] = True
    class_determined: ClassVar[bool] = True


@dataclass(frozen=True)
class Discounted(PayoffSpec):
    keyword: ClassVar[str] = "discounted"
    colour_kind: ClassVar[ColourKind] = ColourKind.DISCOUNTED
    both_positional: ClassVar[bool] = True


@dataclass(frozen=True)
class Parity(PayoffSpec):
    keyword: ClassVar[str] = "parity"
    colour_kind: ClassVar[ColourKind] = ColourKind.PRIORITY
    is_shift_invariant: ClassVar[bool] = True
    is_submixing: ClassVar[bool] = True
    both_positional: ClassVar[bool] = True
    class_determined: ClassVar[bool] = True


@dataclass(frozen=True)
class Limsup(PayoffSpec):
    keyword: ClassVar[str] = "limsup"
    is_shift_invariant: ClassVar[bool] = True
    is_submixing: ClassVar[bool] = True
    both_positional: ClassVar[bool] = True
    class_determined: ClassVar[bool] = True


@dataclass(frozen=True)
class Liminf(PayoffSpec):
    keyword: ClassVar[str] = "liminf"
    is_shift_invariant: ClassVar[bool] = True
    is_submixing: ClassVar[bool] = True
    both_positional: ClassVar[bool] = True
    class_determined: ClassVar[bool] = True


@dataclass(frozen=True)
class PositiveAverage(PayoffSpec):
    keyword: ClassVar[str] = "posavg"
    is_shift_invariant: ClassVar[bool] = True
    is_submixing: ClassVar[bool] = True
    class_determined: ClassVar[bool] = True


@dataclass(frozen=True)
class CounterLimsupPosInf(PayoffSpec):
    """limsup Σ c_i = +∞"""
    keyword: ClassVar[str] = "counter+inf"
    colour_kind: ClassVar[ColourKind] = ColourKind.COUNTER
    is_shift_invariant: ClassVar[bool] = True
    is_submixing: ClassVar[bool] = True
    class_determined: ClassVar[bool] = True


@dataclass(frozen=True)
class CounterLiminfNegInf(PayoffSpec):
    """liminf Σ c_i = −∞ (위치성 주장 없음)"""
    keyword: ClassVar[str] = "counter-inf"
    colour_kind: ClassVar[ColourKind] = ColourKind.COUNTER
    is_shift_invariant: ClassVar[bool] = True
    class_determined: ClassVar[bool] = True


@dataclass(frozen=True)
class GeneralizedMean(PayoffSpec):
    """∀i mean_i > 0"""
    k: int = 2
    keyword: ClassVar[str] = "genmean"
    colour_kind: ClassVar[ColourKind] = ColourKind.VECTOR
    is_shift_invariant: ClassVar[bool] = True
    class_determined: ClassVar[bool] = True

    def __post_init__(self):
        if self.k < 1:
            raise PayoffError(f"차원 k는 1 이상이어야 합니다: {self.k}")


@dataclass(frozen=True)
class OptimisticGeneralizedMean(PayoffSpec):
    """∃i mean_i ≥ 0"""
    k: int = 2
    keyword: ClassVar[str] = "optgenmean"
    colour_kind: ClassVar[ColourKind] = ColourKind.VECTOR
    is_shift_invariant: ClassVar[bool] = True
    is_submixing: ClassVar[bool] = True
    class_determined: ClassVar[bool] = True

    def __post_init__(self):
        if self.k < 1:
            raise PayoffError(f"차원 k는 1 이상이어야 합니다: {self.k}")


@dataclass(frozen=True)
class MeanCoBuchi(PayoffSpec):
    """Büchi 색상을 무한히 보면 −penalty, 아니면 평균 보상"""
    penalty: Fraction = Fraction(100)
    keyword: ClassVar[str] = "meancobuchi"
    colour_kind: ClassVar[ColourKind] = ColourKind.BUCHI
    is_shift_invariant: ClassVar[bool] = True
    is_submixing: ClassVar[bool] = True
    class_determined: ClassVar[bool] = True

    def __post_init__(self):
        object.__setattr__(self, "penalty", Fraction(self.penalty))


@dataclass(frozen=True)
class SuffixTarget(PayoffSpec):
    """p·a b² a b⁴ ··· 와 공통 suffix를 가지면 0, 아니면 1"""
    prefix: tuple[str, ...] = ()
    keyword: ClassVar[str] = "suffixtarget"
    colour_kind: ClassVar[ColourKind] = ColourKind.LETTER
    is_shift_invariant: ClassVar[bool] = True

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))


@dataclass(frozen=True)
class GeometricFirstOne(PayoffSpec):
    """1 − 2^{−n}, n은 처음으로 색상 1이 나오는 위치 (0부터)

    위치를 0부터 세므로 0 0 1 0^ω ↦ 3/4 이고 1 0^ω ↦ 0 = f(0^ω) 이다.
    시프트 불변성의 최소 반례는 0 1 0^ω (1/2) 와 그 suffix 1 0^ω (0).
    """
    keyword: ClassVar[str] = "geomfirstone"


CATALOG: dict[str, type[PayoffSpec]] = {
    cls.keyword: cls
    for cls in (
        Mean,
        Discounted,
        Parity,
        Limsup,
        Liminf,
        PositiveAverage,
        CounterLimsupPosInf,
        CounterLiminfNegInf,
        GeneralizedMean,
        OptimisticGeneralizedMean,
        MeanCoBuchi,
        SuffixTarget,
        GeometricFirstOne,
    )
}

BOTH_POSITIONAL = tuple(k for k, cls in CATALOG.items() if cls.both_positional)


def parse_payoff(text: str) -> PayoffSpec:
    """CLI 텍스트 형식 파싱

    예: "mean", "genmean:2", "meancobuchi:100", "suffixtarget:a,b"

    Raises:
        PayoffError: 알 수 없는 키워드 또는 잘못된 파라미터
    """
    keyword, sep, param = text.strip().partition(":")
    keyword = keyword.lower()
    cls = CATALOG.get(keyword)
    if cls is None:
        raise PayoffError(
            f"알 수 없는 페이오프 '{text}' (가능: {', '.join(CATALOG)})"
        )

    if cls in (GeneralizedMean, OptimisticGeneralizedMean):
        if not sep:
            raise PayoffError(f"{keyword}는 차원이 필요합니다 (예: {keyword}:2)")
        try:
            return cls(int(param))
        except ValueError:
            raise PayoffError(f"{keyword}의 차원은 정수여야 합니다: {param!r}")
    if cls is MeanCoBuchi:
        if not sep:
            raise PayoffError("meancobuchi는 페널티가 필요합니다 (예: meancobuchi:100)")
        try:
            penalty = parse_rational(param)
        except ValueError as e:
            raise PayoffError(f"meancobuchi 페널티 오류: {e}")
        if penalty < 0:
            raise PayoffError("meancobuchi 페널티는 0 이상이어야 합니다")
        return MeanCoBuchi(penalty)
    if cls is SuffixTarget:
        letters = tuple(x for x in param.split(",") if x) if sep else ()
        return SuffixTarget(letters)
    if sep:
        raise PayoffError(f"{keyword}는 파라미터를 받지 않습니다")
    return cls()


def format_payoff(spec: PayoffSpec) -> str:
    """parse_payoff의 역"""
    if isinstance(spec, (GeneralizedMean, OptimisticGeneralizedMean)):
        return f"{spec.keyword}:{spec.k}"
    if isinstance(spec, MeanCoBuchi):
        return f"{spec.keyword}:{format_rational(spec.penalty)}"
    if isinstance(spec, SuffixTarget):
        return f"{spec.keyword}:{','.join(spec.prefix)}"
    return spec.keyword
