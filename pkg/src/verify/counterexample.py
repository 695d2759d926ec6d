"""공통 suffix 반례 게임의 기호적 분석

페이오프는 꼬리 성질이라 유한 샘플로는 보이지 않는다. 그래서 시뮬레이션
대신 b-런 길이의 산술로 판정한다.

P1이 결정적 유한 메모리 전략이면 게임은 P2만 선택하는 결정적 게임이 된다.
sq에서 b1을 한 번 방문하는 것은 메모리 m을 (m', b 개수)로 보내는 함수이고,
a를 한 번 방문하는 것은 메모리 함수 하나다. 어떤 메모리에서 시작한 b-런의
길이 수열은 궁극적으로 주기 P, 증가량 D를 갖는다. 요구되는 런 길이 2k가
충분히 크면 성공 여부와 끝 메모리는 (시작 메모리, k mod Q)에만 의존하므로
(Q = D들의 최소공배수), P2가 목표 suffix를 강제할 수 있는지는 유한
함수 그래프에서 실패 노드를 피하는 사이클의 존재와 같다.
"""

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Union

from src.arena.model import Arena
from src.core.exceptions import PreconditionError, VerificationError
from src.core.logger import get_logger
from src.strategy.model import FiniteMemoryStrategy, PureStationaryStrategy
from src.verify.fixtures import fig1, fig1_alternating, fig1_stationary
from src.verify.report import VerificationReport, Verdict

logger = get_logger(__name__)

AnyStrategy = Union[PureStationaryStrategy, FiniteMemoryStrategy]

SQUARE, BRANCH, SECOND, LETTER_A = "sq", "b1", "b2", "a"
TABLE_LIMIT = 60


def _deterministic(sigma: AnyStrategy, memory: str, state: str) -> str:
    law = sigma.choice(memory, state)
    if len(law) != 1:
        raise PreconditionError(
            f"기호적 분석은 결정적 전략에만 적용됩니다: (메모리 {memory}, 상태 {state})에서 {sorted(law)}"
        )
    return next(iter(law))


def b_visit(sigma: AnyStrategy, memory: str) -> tuple[str, int]:
    """sq에서 b1을 거쳐 sq로 돌아올 때의 (메모리, b 개수)"""
    m = sigma.update(memory, SQUARE, "1", BRANCH)
    choice = _deterministic(sigma, m, BRANCH)
    if choice == "1":
        return sigma.update(m, BRANCH, "1", SQUARE), 1
    m = sigma.update(m, BRANCH, "2", SECOND)
    _deterministic(sigma, m, SECOND)
    return sigma.update(m, SECOND, "back", SQUARE), 2


def a_visit(sigma: AnyStrategy, memory: str) -> str:
    """sq에서 a를 거쳐 sq로 돌아올 때의 메모리"""
    m = sigma.update(memory, SQUARE, "2", LETTER_A)
    _deterministic(sigma, m, LETTER_A)
    return sigma.update(m, LETTER_A, "back", SQUARE)


@dataclass
class RunProfile:
    """한 시작 메모리에서 b-런 길이의 궁극적 주기 구조

    lengths[i], memories[i]: b1을 i번 방문한 뒤의 누적 길이와 메모리.
    i >= start 에서 lengths[i + period] = lengths[i] + increment.
    """
    memories: list[str]
    lengths: list[int]
    start: int
    period: int
    increment: int

    @property
    def threshold(self) -> int:
        """이 길이 이상에서는 주기 규칙으로 판정한다"""
        return self.lengths[self.start + self.period]

    def end_memory(self, length: int) -> Optional[str]:
        """정확히 length개의 b로 끝나는 런의 끝 메모리 (불가능하면 None)"""
        if length <= self.threshold:
            for L, m in zip(self.lengths, self.memories):
                if L == length:
                    return m
            return None
        for t in range(self.period):
            base = self.lengths[self.start + t]
            if (length - base) % self.increment == 0:
                return self.memories[self.start + t]
        return None

    def residues(self) -> list[int]:
        return sorted({L % self.increment for L in self.lengths[self.start : self.start + self.period]})


def run_profile(sigma: AnyStrategy, memory: str) -> RunProfile:
    memories = [memory]
    lengths = [0]
    seen = {memory: 0}
    while True:
        m, b = b_visit(sigma, memories[-1])
        memories.append(m)
        lengths.append(lengths[-1] + b)
        if m in seen:
            start = seen[m]
            period = len(memories) - 1 - start
            return RunProfile(memories, lengths, start, period, lengths[-1] - lengths[start])
        seen[m] = len(memories) - 1


def _reachable_memories(sigma: AnyStrategy) -> set[str]:
    """sq에 있을 때 P2의 어떤 선택으로든 도달 가능한 메모리"""
    reached = {sigma.initial}
    frontier = [sigma.initial]
    while frontier:
        m = frontier.pop()
        for nxt in (b_visit(sigma, m)[0], a_visit(sigma, m)):
            if nxt not in reached:
                reached.add(nxt)
                frontier.append(nxt)
    return reached


@dataclass
class Fig1Outcome:
    """결정적 P1 전략 하나에 대한 판정

    payoff 0: P2가 목표 suffix를 강제하는 스케줄(schedule)이 있다.
    payoff 1: 어떤 스케줄도 통하지 않는다 (실패하는 런 길이 목록이 증거).
    """
    strategy: str
    payoff: int
    start_memory: Optional[str] = None
    first_run: Optional[int] = None
    schedule: Optional[list[int]] = None
    cycle_runs: Optional[int] = None
    residues: Optional[dict[str, dict[str, Any]]] = None
    blocked: Optional[dict[str, list[int]]] = None

    def to_dict(self) -> dict[str, Any]:
        document: dict[str, Any] = {"strategy": self.strategy, "payoff": self.payoff}
        if self.schedule is not None:
            document.update(
                start_memory=self.start_memory,
                first_run_length=2 * self.first_run,
                b_visits_per_run=self.schedule,
                cycle_runs=self.cycle_runs,
            )
        if self.residues is not None:
            document["residues"] = self.residues
        if self.blocked is not None:
            document["unachievable_required_lengths"] = self.blocked
        return document


def _run_schedule(sigma: AnyStrategy, memory: str, length: int) -> Optional[tuple[str, int]]:
    """정확히 length개의 b를 만드는 방문 횟수와 끝 메모리"""
    visits, total, m = 0, 0, memory
    while total < length:
        m, b = b_visit(sigma, m)
        total += b
        visits += 1
    return (m, visits) if total == length else None


def replay_schedule(sigma: AnyStrategy, memory: str, first_run: int, schedule: list[int]) -> bool:
    """스케줄이 실제로 a b^{2k} a b^{2k+2} ... 를 만드는지 재생"""
    m = memory
    for offset, visits in enumerate(schedule):
        m = a_visit(sigma, m)
        total = 0
        for _ in range(visits):
            m, b = b_visit(sigma, m)
            total += b
        if total != 2 * (first_run + offset):
            return False
    return True


def analyse_fig1_strategy(sigma: AnyStrategy, name: Optional[str] = None) -> Fig1Outcome:
    """결정적 유한 메모리 P1 전략의 페이오프 (0 또는 1)

    Raises:
        PreconditionError: 무작위 선택이 있는 전략
    """
    name = name or getattr(sigma, "name", str(sigma))
    run_starts = sorted({a_visit(sigma, m) for m in _reachable_memories(sigma)})
    profiles = {m: run_profile(sigma, m) for m in sorted(set(sigma.memory_states))}

    modulus = math.lcm(*(p.increment for p in profiles.values()))
    threshold = max(p.threshold for p in profiles.values())
    base = modulus * (threshold // (2 * modulus) + 1)

    # (런 시작 메모리, k mod Q) 위의 함수 그래프
    for m0 in run_starts:
        for r in range(modulus):
            k0 = base + r
            m, k = m0, k0
            seen: dict[tuple[str, int], int] = {}
            schedule: list[int] = []
            while (m, k % modulus) not in seen:
                seen[(m, k % modulus)] = len(schedule)
                step = _run_schedule(sigma, m, 2 * k)
                if step is None:
                    break
                end, visits = step
                schedule.append(visits)
                m, k = a_visit(sigma, end), k + 1
            else:
                # 재생은 a 방문부터 하므로 a 방문 뒤 m0이 되는 메모리에서 출발
                origin = next(x for x in sorted(_reachable_memories(sigma)) if a_visit(sigma, x) == m0)
                if not replay_schedule(sigma, origin, k0, schedule):
                    raise VerificationError(f"{name}: 강제 스케줄 재생 실패")
                cycle_runs = len(schedule) - seen[(m, k % modulus)]
                logger.debug(f"{name}: P2 강제 스케줄 발견 (시작 {m0}, 첫 런 {2 * k0})")
                return Fig1Outcome(name, 0, origin, k0, schedule, cycle_runs)

    residues = {
        m: {"increment": profiles[m].increment, "classes": profiles[m].residues()}
        for m in run_starts
    }
    blocked = {
        m: [L for L in range(2, TABLE_LIMIT + 1, 2) if profiles[m].end_memory(L) is None]
        for m in run_starts
    }
    logger.debug(f"{name}: 어떤 P2 스케줄도 목표 suffix를 만들지 못함")
    return Fig1Outcome(name, 1, residues=residues, blocked=blocked)


def randomized_hit_probability(length: int) -> Fraction:
    """b1에서 1, 2를 반반으로 고를 때 b-런이 정확히 length에 도달할 확률

    u_0 = 1, u_1 = 1/2, u_L = (u_{L-1} + u_{L-2}) / 2 이고 2/3으로 수렴한다.
    """
    if length < 0:
        raise ValueError(f"length는 0 이상이어야 합니다: {length}")
    previous, current = Fraction(1), Fraction(1, 2)
    if length == 0:
        return previous
    for _ in range(length - 1):
        previous, current = current, (current + previous) / 2
    return current


def reproduce_counterexample() -> VerificationReport:
    """세 전략 판정 (lose, lose, win)을 재현

    부가적으로 a에서 위상을 되돌리지 않는 교대 전략이 지는 것과, 무작위
    전략에서 런 길이 적중 확률이 2/3으로 수렴해 모든 런을 맞출 확률이 0이
    되는 것을 보고한다.
    """
    started = time.perf_counter()
    arena: Arena = fig1()
    strategies = [
        ("stationary-1", fig1_stationary("1")),
        ("stationary-2", fig1_stationary("2")),
        ("alternating", fig1_alternating(reset_on_a=True)),
    ]
    outcomes = [analyse_fig1_strategy(sigma, name) for name, sigma in strategies]
    no_reset = analyse_fig1_strategy(fig1_alternating(reset_on_a=False), "alternating-no-reset")

    hits = {L: randomized_hit_probability(L) for L in (2, 4, 6, 8, 10, 20, 40, 60)}
    gap = abs(randomized_hit_probability(TABLE_LIMIT) - Fraction(2, 3))

    triple = tuple(o.payoff for o in outcomes)
    verdict = Verdict.CONFIRMED if triple == (0, 0, 1) else Verdict.REFUTED
    report = VerificationReport(
        claim="fig1",
        instance={"arena": arena.fingerprint(), "payoff": "suffixtarget"},
        verdict=verdict,
        quantities={
            "payoffs": list(triple),
            "outcomes": [o.to_dict() for o in outcomes],
            "alternating_without_reset": no_reset.to_dict(),
            "randomized_hit_probability": hits,
            "randomized_limit": Fraction(2, 3),
            "randomized_gap_at_limit": gap,
        },
        witness=None if verdict is Verdict.CONFIRMED else {"payoffs": list(triple)},
        notes=[
            "순수 정상 전략 두 개는 모두 P2 강제 스케줄에 진다 (lose, lose)",
            "a에서 위상을 되돌리는 교대 전략은 런 길이 잉여류 때문에 이긴다 (win)",
            "런 길이 적중 확률이 2/3으로 수렴하므로 무작위 전략도 거의 확실히 이긴다",
        ],
    )
    report.elapsed = time.perf_counter() - started
    return report
