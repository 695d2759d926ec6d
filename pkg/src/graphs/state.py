"""스윕 워크플로우 상태 정의"""

from typing import Any, Optional, TypedDict


class SweepState(TypedDict, total=False):
    """LangGraph 스윕 워크플로우 전역 상태

    generate → check → aggregate 순서로 각 노드가 일부를 채운다.
    """

    # === 입력 ===
    claim: str              # "halfpos" 또는 "subgame"
    payoff: str             # 페이오프 텍스트 (parse_payoff 형식)
    num_arenas: int
    seed: int
    shape: dict             # num_states, max_actions, reward_low, reward_high, density
    options: dict           # budget, memory_bound, epsilon 등 검사별 인자

    # === generate 출력 ===
    arenas: list            # 생성된 Arena 목록 (시드 순)

    # === check 출력 ===
    reports: list           # 인스턴스별 VerificationReport

    # === aggregate 출력 ===
    result: Any             # 합쳐진 VerificationReport

    # === 공통 ===
    errors: list[str]
    current_step: str


def create_initial_state(
    claim: str,
    payoff: str,
    num_arenas: int,
    seed: int,
    shape: Optional[dict] = None,
    options: Optional[dict] = None,
) -> SweepState:
    """초기 상태 생성

    Args:
        claim: 검사 종류
        payoff: 페이오프 텍스트
        num_arenas: 아레나 수
        seed: 기준 시드 (아레나 i는 seed + i)
        shape: 아레나 모양 (None이면 설정값)
        options: 검사 인자

    Returns:
        초기 SweepState
    """
    return SweepState(
        claim=claim,
        payoff=payoff,
        num_arenas=num_arenas,
        seed=seed,
        shape=dict(shape or {}),
        options=dict(options or {}),
        arenas=[],
        reports=[],
        result=None,
        errors=[],
        current_step="initialized",
    )
