"""서브커맨드 처리기

각 처리기는 RunConfig를 받아 VerificationReport(판정이 있는 명령) 또는
CommandOutput(계산 결과만 있는 명령)을 돌려준다. 출력과 종료 코드는
app.run이 정한다.
"""

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Optional, Union

import numpy as np

from src.arena.model import Arena, Player
from src.arena.parser import load_arena
from src.arena.sampler import sample_play
from src.core.config import get_config
from src.core.exceptions import (
    ArenaError,
    ConfigError,
    PayoffError,
    StrategyError,
    UnsupportedPayoffError,
    VerificationError,
)
from src.core.logger import get_logger
from src.core.rational import format_rational, parse_rational
from src.graphs.sweep import SweepRunner
from src.payoff.evaluation import evaluate_prefix
from src.payoff.specs import PayoffSpec, format_payoff, parse_payoff
from src.solve.actions import classify_actions
from src.solve.enumeration import brute_force_value
from src.solve.evaluation import expected_values
from src.solve.martingale import MartingaleKind, martingale_check
from src.strategy.io import load_strategy
from src.strategy.model import Strategy, trivial_strategy
from src.strategy.product import product_values
from src.verify.counterexample import reproduce_counterexample
from src.verify.doob import doob_suite
from src.verify.fixtures import FIXTURES
from src.verify.halfpos import verify_halfpos
from src.verify.report import VerificationReport, to_plain
from src.verify.subgame import verify_subgame_perfect
from src.verify.submixing import SearchBounds, search_shift_invariance_violation, search_submixing_violation
from src.cli.run_config import RunConfig

logger = get_logger(__name__)

RANDOM_PREFIX = "random:"

# random:<key>=<value> → 스윕 설정 이름
RANDOM_KEYS = {
    "n": "num_arenas",
    "states": "num_states",
    "actions": "max_actions",
    "low": "reward_low",
    "high": "reward_high",
    "density": "density",
}


@dataclass
class CommandOutput:
    """판정이 없는 명령의 결과"""
    document: dict[str, Any]
    text: str
    exit_code: int = 0

    def to_json(self) -> str:
        return json.dumps(to_plain(self.document), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def render(self) -> str:
        return self.text


Outcome = Union[VerificationReport, CommandOutput]


# ===== 입력 해석 =====

def resolve_game(reference: Optional[str]) -> Arena:
    """게임 참조 해석: 파일 경로 → 고정 게임 이름 → 코퍼스의 <이름>.json

    Raises:
        ArenaError: 어느 쪽으로도 찾을 수 없음
    """
    if not reference:
        raise ArenaError("게임이 필요합니다 (파일 경로 또는 고정 게임 이름)")
    path = Path(reference)
    if path.is_file():
        return load_arena(path)
    if reference in FIXTURES:
        return FIXTURES[reference]()
    corpus = Path(get_config().paths.corpus_dir) / f"{reference}.json"
    if corpus.is_file():
        return load_arena(corpus)
    raise ArenaError(
        f"게임을 찾을 수 없습니다: {reference} (고정 게임: {', '.join(FIXTURES)})"
    )


def require_payoff(run: RunConfig) -> PayoffSpec:
    if not run.payoff:
        raise PayoffError(f"{run.subcommand}에는 --payoff가 필요합니다")
    return parse_payoff(run.payoff)


def resolve_strategy(run: RunConfig, key: str, arena: Arena, player: Player) -> Strategy:
    """--sigma/--tau 파일, 없으면 선택지가 없는 플레이어의 유일한 전략"""
    path = run.inputs.get(key)
    if path:
        strategy = load_strategy(path, player)
        strategy.validate(arena)
        return strategy
    strategy = trivial_strategy(arena, player)
    if strategy is None:
        raise StrategyError(f"{player.value}에게 선택지가 있으므로 --{key}가 필요합니다")
    return strategy


def parse_random_reference(reference: str) -> tuple[int, dict[str, Any]]:
    """"random:n=20,states=4,actions=3" → (아레나 수, 모양 덮어쓰기)"""
    sweep = get_config().sweep
    num_arenas = sweep.num_arenas
    shape: dict[str, Any] = {}
    body = reference[len(RANDOM_PREFIX):]
    for item in filter(None, body.split(",")):
        key, sep, raw = item.partition("=")
        if not sep or key not in RANDOM_KEYS:
            raise ConfigError(f"알 수 없는 random 인자 '{item}' (가능: {', '.join(RANDOM_KEYS)})")
        target = RANDOM_KEYS[key]
        try:
            value = raw if target == "density" else int(raw)
        except ValueError:
            raise ConfigError(f"random 인자 {key}는 정수여야 합니다: {raw!r}")
        if target == "num_arenas":
            num_arenas = value
        else:
            shape[target] = value
    if num_arenas <= 0:
        raise ConfigError(f"random 인자 n은 양수여야 합니다: {num_arenas}")
    return num_arenas, shape


def run_sweep(run: RunConfig, claim: str, options: dict[str, Any]) -> VerificationReport:
    num_arenas, shape = parse_random_reference(run.inputs["game"])
    runner = SweepRunner(
        claim,
        run.payoff,
        num_arenas=num_arenas,
        seed=run.seed,
        shape=shape,
        options=options,
    )
    outcome = runner.run()
    if outcome["result"] is None:
        raise VerificationError(f"스윕 실패: {'; '.join(outcome['errors'])}")
    return outcome["result"]


def _is_random(run: RunConfig) -> bool:
    return bool(run.inputs.get("game")) and run.inputs["game"].startswith(RANDOM_PREFIX)


def _value_lines(values: dict[str, Fraction]) -> list[str]:
    return [f"  {s}: {format_rational(v)}" for s, v in values.items()]


# ===== 서브커맨드 =====

def cmd_solve(run: RunConfig) -> CommandOutput:
    arena = resolve_game(run.inputs.get("game"))
    spec = require_payoff(run)
    values = brute_force_value(arena, spec, run.budget)

    document = {"command": "solve", "game": arena.name, "seed": run.seed, **values.to_dict()}
    lines = [f"{arena.name} / {format_payoff(spec)} (전략 쌍 {values.pairs}개)", "값:"]
    lines += _value_lines(values.values)
    lines.append("σ*: " + ", ".join(f"{s}→{a}" for s, a in values.sigma.choices.items()))
    lines.append("인증서:")
    for s, certificate in values.certificates.items():
        tau = ", ".join(f"{t}→{a}" for t, a in certificate.tau.choices.items()) or "-"
        lines.append(f"  {s}: τ {{{tau}}} = {format_rational(certificate.value)}")
    if not values.uniform_tau:
        lines.append("  (모든 상태를 동시에 최소화하는 τ는 없습니다)")
    return CommandOutput(document, "\n".join(lines) + "\n")


def cmd_best_response(run: RunConfig) -> CommandOutput:
    arena = resolve_game(run.inputs.get("game"))
    spec = require_payoff(run)
    sigma = resolve_strategy(run, "sigma", arena, Player.P1)
    guaranteed = product_values(arena, spec, sigma, run.budget)

    initial = {s: guaranteed[(sigma.initial, s)] for s in arena.states}
    document = {
        "command": "best-response",
        "game": arena.name,
        "seed": run.seed,
        "sigma": getattr(sigma, "name", "sigma"),
        "initial_memory": sigma.initial,
        "initial": initial,
        **guaranteed.to_dict(),
    }
    lines = [f"{arena.name} / {format_payoff(spec)} / σ={document['sigma']}", f"초기 메모리 {sigma.initial}의 보장값:"]
    lines += _value_lines(initial)
    lines.append("(메모리, 상태) 보장값:")
    lines += [f"  ({m}, {s}): {format_rational(v)}" for (m, s), v in guaranteed.values.items()]
    return CommandOutput(document, "\n".join(lines) + "\n")


def cmd_classify(run: RunConfig) -> CommandOutput:
    arena = resolve_game(run.inputs.get("game"))
    spec = require_payoff(run)
    values = brute_force_value(arena, spec, run.budget)
    classification = classify_actions(arena, values)

    document = {"command": "classify", "game": arena.name, "seed": run.seed, **classification.to_dict()}
    lines = [f"{arena.name} / {format_payoff(spec)}", f"{'state':<10} {'action':<10} {'E[val]':<10} preserving stable"]
    for flags in classification.flags.values():
        lines.append(
            f"{flags.state:<10} {flags.action:<10} {format_rational(flags.expectation):<10} "
            f"{'yes' if flags.value_preserving else 'no':<10} {'yes' if flags.stable else 'no'}"
        )
    return CommandOutput(document, "\n".join(lines) + "\n")


def cmd_martingale(run: RunConfig) -> CommandOutput:
    arena = resolve_game(run.inputs.get("game"))
    spec = require_payoff(run)
    sigma = resolve_strategy(run, "sigma", arena, Player.P1)
    tau = resolve_strategy(run, "tau", arena, Player.P2)
    values = brute_force_value(arena, spec, run.budget)

    source = run.extra.get("source")
    sources = [source] if source else list(arena.states)
    if source and source not in arena.controller:
        raise ArenaError(f"시작 상태 {source}가 아레나에 없습니다")
    horizon = run.extra.get("horizon")
    reports = [martingale_check(arena, values, sigma, tau, s, horizon) for s in sources]

    violated = any(r.kind is MartingaleKind.VIOLATED for r in reports)
    document = {
        "command": "martingale",
        "game": arena.name,
        "payoff": format_payoff(spec),
        "seed": run.seed,
        "values": values.values,
        "checks": [r.to_dict() for r in reports],
    }
    lines = [f"{arena.name} / {format_payoff(spec)}"]
    for report in reports:
        lines.append(f"  {report.source}: {report.kind.value} (노드 {len(report.nodes)}개, 엄격 {len(report.strict_nodes)}개)")
        lines += [
            f"    {n.node}: val={format_rational(n.value)} E={format_rational(n.expectation)}"
            for n in report.nodes if n.relation == "<"
        ]
    return CommandOutput(document, "\n".join(lines) + "\n", exit_code=2 if violated else 0)


def cmd_simulate(run: RunConfig) -> CommandOutput:
    arena = resolve_game(run.inputs.get("game"))
    sigma = resolve_strategy(run, "sigma", arena, Player.P1)
    tau = resolve_strategy(run, "tau", arena, Player.P2)
    horizon = run.extra.get("horizon", 20)
    if horizon <= 0:
        raise ConfigError(f"horizon은 양수여야 합니다: {horizon}")
    source = run.extra.get("source") or arena.states[0]

    rng = np.random.default_rng(run.seed)
    spec = parse_payoff(run.payoff) if run.payoff else None
    finals: Counter = Counter()
    estimates = []
    first = None
    for _ in range(run.trials):
        play = sample_play(arena, sigma, tau, source, horizon, rng)
        if first is None:
            first = play
        finals[play.target] += 1
        if spec is not None:
            estimates.append(evaluate_prefix(spec, play.colours(arena)))

    document: dict[str, Any] = {
        "command": "simulate",
        "game": arena.name,
        "seed": run.seed,
        "source": source,
        "horizon": horizon,
        "trials": run.trials,
        "first_play": str(first),
        "final_state": {s: Fraction(finals[s], run.trials) for s in arena.states},
    }
    lines = [
        f"{arena.name}: {source}에서 {horizon} 스텝 × {run.trials}회 (시드 {run.seed})",
        f"첫 플레이: {first}",
        "마지막 상태 빈도:",
    ]
    lines += [f"  {s}: {finals[s]}/{run.trials}" for s in arena.states]

    if spec is not None:
        mean = float(np.mean(estimates))
        document["payoff"] = format_payoff(spec)
        document["prefix_estimate"] = round(mean, 6)
        lines.append(f"접두어 추정 {format_payoff(spec)}: {mean:.4f}")
        try:
            exact = expected_values(arena, spec, sigma, tau)[source]
        except UnsupportedPayoffError as e:
            logger.debug(f"정확한 기댓값 생략: {e}")
        else:
            document["expected"] = exact
            lines.append(f"정확한 기댓값: {format_rational(exact)}")
    return CommandOutput(document, "\n".join(lines) + "\n")


def cmd_check(run: RunConfig) -> VerificationReport:
    spec = require_payoff(run)
    bounds = SearchBounds.from_config(
        max_cycle=run.extra.get("max_cycle"),
        max_prefix=run.extra.get("max_prefix"),
        max_block=run.extra.get("max_block"),
        case_budget=run.extra.get("case_budget"),
        random_cases=run.extra.get("random_cases"),
    )
    if run.subcommand == "check submixing":
        return search_submixing_violation(spec, bounds, run.seed)
    return search_shift_invariance_violation(spec, bounds, run.seed)


def cmd_verify_halfpos(run: RunConfig) -> VerificationReport:
    if _is_random(run):
        require_payoff(run)
        return run_sweep(run, "halfpos", {"budget": run.budget, "memory_bound": run.memory_bound})
    arena = resolve_game(run.inputs.get("game"))
    spec = require_payoff(run)
    return verify_halfpos(arena, spec, run.budget, run.memory_bound, run.seed)


def _epsilon(run: RunConfig) -> Fraction:
    raw = run.extra.get("epsilon")
    if raw is None:
        raw = get_config().harness.epsilons[0]
    try:
        return parse_rational(raw)
    except ValueError as e:
        raise ConfigError(f"--epsilon 오류: {e}")


def cmd_verify_subgame(run: RunConfig) -> VerificationReport:
    epsilon = _epsilon(run)
    if _is_random(run):
        require_payoff(run)
        return run_sweep(run, "subgame", {"budget": run.budget, "epsilons": [format_rational(epsilon)]})
    arena = resolve_game(run.inputs.get("game"))
    spec = require_payoff(run)
    sigma = resolve_strategy(run, "sigma", arena, Player.P1)
    return verify_subgame_perfect(arena, spec, sigma, epsilon, budget=run.budget)


def cmd_reproduce(run: RunConfig) -> VerificationReport:
    return reproduce_counterexample()


def cmd_doob(run: RunConfig) -> VerificationReport:
    arena = resolve_game(run.inputs.get("game"))
    spec = require_payoff(run)
    return doob_suite(
        arena,
        spec,
        trials=run.trials,
        seed=run.seed,
        source=run.extra.get("source"),
        pairs=run.extra.get("pairs", 3),
        horizon=run.extra.get("horizon", 10),
        sigma=resolve_strategy(run, "sigma", arena, Player.P1) if run.inputs.get("sigma") else None,
        epsilon=_epsilon(run),
    )


HANDLERS: dict[str, Callable[[RunConfig], Outcome]] = {
    "solve": cmd_solve,
    "best-response": cmd_best_response,
    "classify": cmd_classify,
    "martingale": cmd_martingale,
    "simulate": cmd_simulate,
    "check submixing": cmd_check,
    "check shift-invariance": cmd_check,
    "verify halfpos": cmd_verify_halfpos,
    "verify subgame": cmd_verify_subgame,
    "reproduce fig1": cmd_reproduce,
    "doob": cmd_doob,
}


def dispatch(run: RunConfig) -> Outcome:
    handler = HANDLERS.get(run.subcommand)
    if handler is None:
        raise ConfigError(f"알 수 없는 명령: {run.subcommand}")
    logger.debug(f"명령 실행: {run.to_dict()}")
    outcome = handler(run)
    if isinstance(outcome, VerificationReport):
        outcome.instance.setdefault("seed", run.seed)
    return outcome
