"""랜덤 아레나 스윕 워크플로우

LangGraph로 generate → check → aggregate 를 순서대로 실행한다.
check는 solver.max_workers > 1 이면 인스턴스별로 프로세스 풀에 나누고,
aggregate는 인스턴스 지문 순으로 보고서를 합친다.
"""

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Optional

import numpy as np
from langgraph.graph import END, StateGraph

from src.arena.generator import random_arena
from src.arena.model import Arena
from src.core.config import get_config
from src.core.exceptions import WorkbenchError
from src.core.logger import get_logger
from src.payoff.specs import GeneralizedMean, OptimisticGeneralizedMean, PayoffSpec, parse_payoff
from src.solve.enumeration import brute_force_value
from src.verify.halfpos import verify_halfpos
from src.verify.report import VerificationReport, combine
from src.verify.subgame import verify_subgame_perfect, weakened_base
from src.graphs.state import SweepState, create_initial_state

logger = get_logger(__name__)

CLAIMS = ("halfpos", "subgame")


def default_shape() -> dict[str, Any]:
    sweep = get_config().sweep
    return {
        "num_states": sweep.num_states,
        "max_actions": sweep.max_actions,
        "reward_low": sweep.reward_low,
        "reward_high": sweep.reward_high,
        "density": sweep.density,
    }


def generate_arenas(spec: PayoffSpec, num_arenas: int, seed: int, shape: dict[str, Any]) -> list[Arena]:
    """seed, seed+1, ... 로 페이오프 색상 종류에 맞는 랜덤 아레나"""
    dimension = spec.k if isinstance(spec, (GeneralizedMean, OptimisticGeneralizedMean)) else 2
    arenas = []
    for i in range(num_arenas):
        arena = random_arena(
            shape["num_states"],
            shape["max_actions"],
            (shape["reward_low"], shape["reward_high"]),
            shape["density"],
            seed + i,
            kind=spec.colour_kind,
            dimension=dimension,
        )
        arenas.append(arena)
    return arenas


def check_instance(job: tuple[str, Arena, PayoffSpec, dict[str, Any], int]) -> tuple[list[VerificationReport], list[str]]:
    """아레나 하나 검사 (프로세스 풀에서 호출되므로 최상위 함수)"""
    claim, arena, spec, options, seed = job
    try:
        if claim == "halfpos":
            report = verify_halfpos(
                arena,
                spec,
                budget=options.get("budget"),
                memory_bound=options.get("memory_bound"),
                seed=seed,
            )
            return [report], []

        values = brute_force_value(arena, spec, options.get("budget"))
        rng = np.random.default_rng(seed)
        reports = []
        for eps in options.get("epsilons") or get_config().harness.epsilons:
            eps = Fraction(eps)
            base = weakened_base(arena, spec, values, eps, rng, budget=options.get("budget"))
            reports.append(verify_subgame_perfect(arena, spec, base, eps, values, options.get("budget")))
        return reports, []
    except WorkbenchError as e:
        return [], [f"{arena.name} (seed {seed}): {e}"]


def create_workflow(max_workers: Optional[int] = None):
    """스윕 워크플로우 생성

    Args:
        max_workers: check 단계 프로세스 수 (None이면 solver.max_workers)

    Returns:
        컴파일된 StateGraph
    """
    workers = get_config().solver.max_workers if max_workers is None else max_workers

    def generate_node(state: SweepState) -> dict:
        """아레나 생성 노드"""
        logger.info(f"[스윕] 아레나 {state['num_arenas']}개 생성")
        try:
            spec = parse_payoff(state["payoff"])
            shape = {**default_shape(), **state.get("shape", {})}
            arenas = generate_arenas(spec, state["num_arenas"], state["seed"], shape)
            return {"arenas": arenas, "shape": shape, "current_step": "generate_completed"}
        except WorkbenchError as e:
            logger.error(f"아레나 생성 오류: {e}")
            return {
                "errors": state.get("errors", []) + [str(e)],
                "current_step": "generate_failed",
            }

    def check_node(state: SweepState) -> dict:
        """인스턴스별 검사 노드"""
        arenas = state.get("arenas", [])
        if not arenas:
            return {"current_step": "check_skipped"}
        logger.info(f"[스윕] {state['claim']} 검사 {len(arenas)}개 (프로세스 {workers})")
        spec = parse_payoff(state["payoff"])
        jobs = [
            (state["claim"], arena, spec, state.get("options", {}), state["seed"] + i)
            for i, arena in enumerate(arenas)
        ]
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                outcomes = list(pool.map(check_instance, jobs))
        else:
            outcomes = [check_instance(job) for job in jobs]

        reports = [r for found, _ in outcomes for r in found]
        errors = [e for _, failed in outcomes for e in failed]
        for error in errors:
            logger.warning(f"검사 오류: {error}")
        return {
            "reports": reports,
            "errors": state.get("errors", []) + errors,
            "current_step": "check_completed",
        }

    def aggregate_node(state: SweepState) -> dict:
        """보고서 합치기 노드"""
        reports = state.get("reports", [])
        logger.info(f"[스윕] 보고서 {len(reports)}개 합치기")
        result = combine(
            f"{state['claim']}-sweep",
            reports,
            instance={
                "payoff": state["payoff"],
                "num_arenas": state["num_arenas"],
                "seed": state["seed"],
                "shape": state.get("shape", {}),
                "options": state.get("options", {}),
            },
        )
        if state.get("errors"):
            result.notes.extend(state["errors"])
        return {"result": result, "current_step": "aggregate_completed"}

    workflow = StateGraph(SweepState)

    workflow.add_node("generate", generate_node)
    workflow.add_node("check", check_node)
    workflow.add_node("aggregate", aggregate_node)

    workflow.set_entry_point("generate")
    workflow.add_edge("generate", "check")
    workflow.add_edge("check", "aggregate")
    workflow.add_edge("aggregate", END)

    return workflow.compile()


class SweepRunner:
    """랜덤 아레나 코퍼스 위에서 검사를 돌리는 실행기

    사용법:
        runner = SweepRunner("halfpos", "posavg", num_arenas=100)
        outcome = runner.run()

        if outcome["success"]:
            print(outcome["result"].render())
        else:
            print(f"실패: {outcome['errors']}")
    """

    def __init__(
        self,
        claim: str,
        payoff: str,
        num_arenas: Optional[int] = None,
        seed: Optional[int] = None,
        shape: Optional[dict] = None,
        options: Optional[dict] = None,
        max_workers: Optional[int] = None,
    ):
        """초기화

        Args:
            claim: "halfpos" 또는 "subgame"
            payoff: 페이오프 텍스트
            num_arenas: 아레나 수 (None이면 sweep.num_arenas)
            seed: 기준 시드 (None이면 harness.seed)
            shape: 아레나 모양 덮어쓰기
            options: 검사 인자 (budget, memory_bound, epsilons)
            max_workers: check 단계 프로세스 수
        """
        if claim not in CLAIMS:
            raise ValueError(f"알 수 없는 스윕 검사: {claim} (가능: {', '.join(CLAIMS)})")
        config = get_config()
        self.claim = claim
        self.payoff = payoff
        self.num_arenas = config.sweep.num_arenas if num_arenas is None else num_arenas
        self.seed = config.harness.seed if seed is None else seed
        self.shape = shape
        self.options = options
        self.workflow = create_workflow(max_workers)
        self.logger = get_logger("sweep_runner")

    def run(self) -> dict:
        """워크플로우 실행

        Returns:
            {success, result, errors, final_state}
        """
        self.logger.info(f"스윕 시작: {self.claim} / {self.payoff} / 아레나 {self.num_arenas}개 / 시드 {self.seed}")
        initial_state = create_initial_state(
            claim=self.claim,
            payoff=self.payoff,
            num_arenas=self.num_arenas,
            seed=self.seed,
            shape=self.shape,
            options=self.options,
        )

        try:
            final_state = self.workflow.invoke(initial_state)
        except WorkbenchError as e:
            self.logger.error(f"스윕 실패: {e}")
            return {"success": False, "result": None, "errors": [str(e)], "final_state": None}

        errors = final_state.get("errors", [])
        result = final_state.get("result")
        if errors:
            self.logger.warning(f"완료 (오류 {len(errors)}개)")
        else:
            self.logger.info(f"스윕 완료: {result.verdict.value}")

        return {
            "success": not errors,
            "result": result,
            "errors": errors,
            "final_state": final_state,
        }
