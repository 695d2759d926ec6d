"""커스텀 예외 클래스"""

from typing import Optional


class WorkbenchError(Exception):
    """워크벤치 기본 예외"""
    pass


class ConfigError(WorkbenchError):
    """설정 관련 오류"""
    pass


class ArenaError(WorkbenchError):
    """아레나 관련 오류"""
    pass


class ArenaSyntaxError(ArenaError):
    """게임 파일 구문 오류 (위치 포함)"""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        source: Optional[str] = None
    ):
        self.line = line
        self.column = column
        self.source = source

        location = []
        if source:
            location.append(source)
        if line is not None:
            location.append(f"line {line}")
        if column is not None:
            location.append(f"column {column}")

        prefix = f"[{', '.join(location)}] " if location else ""
        super().__init__(f"{prefix}{message}")


class ArenaValidationError(ArenaError):
    """아레나 불변식 위반"""
    pass


class PayoffError(WorkbenchError):
    """페이오프 관련 오류"""
    pass


class ColourKindError(PayoffError):
    """색상 종류 불일치"""
    pass


class UnsupportedPayoffError(PayoffError):
    """해당 연산에서 지원하지 않는 페이오프"""
    pass


class ShuffleError(PayoffError):
    """셔플 패턴 오류"""
    pass


class ClassSummaryError(PayoffError):
    """재귀 클래스 요약 불일치"""
    pass


class ChainError(WorkbenchError):
    """마르코프 체인 관련 오류"""
    pass


class MemoryAutomatonError(ChainError):
    """메모리 오토마톤이 total이 아님"""
    pass


class SingularSystemError(ChainError):
    """선형 시스템이 특이(singular)함"""
    pass


class SolveError(WorkbenchError):
    """풀이 관련 오류"""
    pass


class BudgetExceededError(SolveError):
    """열거 예산 초과"""
    pass


class SaddlePointError(SolveError):
    """안장점 등식 실패"""
    pass


class PreconditionError(SolveError):
    """전제 조건 위반"""
    pass


class StrategyError(WorkbenchError):
    """전략 관련 오류"""
    pass


class StrategyFormatError(StrategyError):
    """전략 파일 형식 오류"""
    pass


class VerificationError(WorkbenchError):
    """검증 하네스 오류"""
    pass
