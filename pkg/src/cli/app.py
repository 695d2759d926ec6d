"""명령행 파서와 실행

종료 코드: 0 = confirmed/성공, 2 = refuted, 3 = inconclusive, 1 = 사용법/검증 오류
"""

import argparse
import re
import sys
from pathlib import Path
from typing import Optional, Sequence

from src.core.config import get_config, reload_config
from src.core.exceptions import BudgetExceededError, WorkbenchError
from src.core.logger import configure_logging, get_logger
from src.cli.commands import dispatch
from src.cli.run_config import OUTPUT_FORMATS, RunConfig

logger = get_logger(__name__)

EXIT_ERROR = 1

EPILOG = """
예시:
  python main.py solve e2 --payoff mean
  python main.py classify data/corpus/v1/e4.json --payoff mean
  python main.py check submixing --payoff genmean:2
  python main.py verify halfpos random:n=50,states=4,actions=3 --payoff posavg
  python main.py verify subgame e4 --payoff mean --sigma data/corpus/v1/e4_weak_sigma.json --epsilon 1/8
  python main.py reproduce fig1 --format structured

종료 코드:
  0 확인/성공, 2 반박 (witness 출력), 3 판정 불가, 1 사용법/입력 오류
"""


class WorkbenchArgumentParser(argparse.ArgumentParser):
    """사용법 오류를 종료 코드 1로"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: 오류: {message}\n")


def _common_flags() -> argparse.ArgumentParser:
    # 하위 명령 앞뒤 어디에 와도 되도록 기본값은 SUPPRESS
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", "-c", default=argparse.SUPPRESS, help="설정 파일 경로 (기본: configs/settings.yaml)")
    common.add_argument("--verbose", "-v", action="store_true", default=argparse.SUPPRESS, help="디버그 로깅 활성화")
    common.add_argument("--format", choices=OUTPUT_FORMATS, default=argparse.SUPPRESS, help="출력 형식 (기본: human)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="난수 시드 (기본: harness.seed)")
    common.add_argument("--save", action="store_true", default=argparse.SUPPRESS, help="구조 출력을 paths.output_dir에 저장")
    return common


def build_parser() -> WorkbenchArgumentParser:
    common = _common_flags()
    parser = WorkbenchArgumentParser(
        prog="main.py",
        description="확률 게임의 위치적 최적성 정리를 정확 산술로 검증합니다.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EPILOG,
        parents=[common],
    )
    commands = parser.add_subparsers(dest="command", metavar="command", required=True)

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        return commands.add_parser(name, help=help_text, parents=[common])

    def game(sub: argparse.ArgumentParser, help_text: str = "게임 파일, 고정 게임 이름 또는 코퍼스 이름"):
        sub.add_argument("game", help=help_text)

    def payoff(sub: argparse.ArgumentParser, required: bool = True):
        sub.add_argument("--payoff", "-p", required=required, help="페이오프 (예: mean, parity, genmean:2)")

    def budget(sub: argparse.ArgumentParser):
        sub.add_argument("--budget", type=int, help="열거 전략 쌍 상한 (기본: solver.enumeration_budget)")

    sub = command("solve", "게임 값과 최적 전략 인증서")
    game(sub)
    payoff(sub)
    budget(sub)

    sub = command("best-response", "유한 메모리 σ에 대한 (메모리, 상태)별 보장값")
    game(sub)
    payoff(sub)
    sub.add_argument("--sigma", required=True, help="P1 전략 파일")
    budget(sub)

    sub = command("classify", "값 보존/안정 액션 표")
    game(sub)
    payoff(sub)
    budget(sub)

    sub = command("martingale", "val(S_n)의 martingale 성질 정확 검사")
    game(sub)
    payoff(sub)
    sub.add_argument("--sigma", help="P1 전략 파일 (선택지가 없으면 생략)")
    sub.add_argument("--tau", help="P2 전략 파일 (선택지가 없으면 생략)")
    sub.add_argument("--source", help="시작 상태 (기본: 모든 상태)")
    sub.add_argument("--horizon", type=int, help="검사할 스텝 수 (기본: 도달 가능한 전체)")
    budget(sub)

    sub = command("simulate", "전략 쌍으로 플레이 샘플링")
    game(sub)
    payoff(sub, required=False)
    sub.add_argument("--sigma", help="P1 전략 파일")
    sub.add_argument("--tau", help="P2 전략 파일")
    sub.add_argument("--source", help="시작 상태 (기본: 첫 상태)")
    sub.add_argument("--horizon", type=int, help="플레이 길이 (기본: 20)")
    sub.add_argument("--trials", type=int, help="플레이 수 (기본: harness.trials)")

    sub = command("check", "페이오프 성질 반례 탐색")
    sub.add_argument("target", choices=("submixing", "shift-invariance"))
    payoff(sub)
    sub.add_argument("--max-cycle", type=int, help="cycle 길이 상한")
    sub.add_argument("--max-prefix", type=int, help="prefix 길이 상한")
    sub.add_argument("--max-block", type=int, help="교대 셔플 패턴의 블록 길이 상한")
    sub.add_argument("--case-budget", type=int, help="전수 단계 사례 상한")
    sub.add_argument("--random-cases", type=int, help="난수 단계 사례 수")

    sub = command("verify", "정리 검증 (halfpos, subgame)")
    sub.add_argument("target", choices=("halfpos", "subgame"))
    game(sub, "게임 또는 random:n=..,states=..,actions=..")
    payoff(sub)
    budget(sub)
    sub.add_argument("--memory-bound", type=int, help="스윕 메모리 상한 M (기본: harness.memory_bound)")
    sub.add_argument("--sigma", help="subgame: P1 전략 파일")
    sub.add_argument("--epsilon", help="subgame: ε (예: 1/8)")

    sub = command("reproduce", "고정 반례 재현")
    sub.add_argument("target", choices=("fig1",))

    sub = command("doob", "정지값과 마지막 변경 시점 검사")
    game(sub)
    payoff(sub)
    sub.add_argument("--trials", type=int, help="몬테카를로 궤적 수 (기본: harness.trials)")
    sub.add_argument("--source", help="시작 상태 (기본: 첫 상태)")
    sub.add_argument("--pairs", type=int, help="표본 전략 쌍 수 (기본: 3)")
    sub.add_argument("--horizon", type=int, help="고정 시각 정지 규칙 N (기본: 10)")
    sub.add_argument("--sigma", help="첫 쌍에 쓸 국소 최적 P1 전략 파일 (기본: 표본)")
    sub.add_argument("--epsilon", help="first-weakness 정지 규칙의 약점 ε (기본: harness.epsilons의 첫 값)")

    return parser


def _save(run: RunConfig, text: str) -> Path:
    output_dir = Path(get_config().paths.output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    path = output_dir / f"{re.sub(r'[^A-Za-z0-9_-]+', '-', run.subcommand)}-{run.seed}.json"
    path.write_text(text, encoding="utf-8")
    return path


def run(argv: Optional[Sequence[str]] = None) -> int:
    """명령 하나 실행

    Returns:
        종료 코드
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_ERROR

    verbose = getattr(args, "verbose", False)
    try:
        config = reload_config(args.config) if getattr(args, "config", None) else get_config()
        configure_logging(config.logging, verbose)

        run_config = RunConfig.from_args(args, config)
        outcome = dispatch(run_config)
    except BudgetExceededError as e:
        print(f"오류: {e}", file=sys.stderr)
        print("  --budget을 늘리거나 게임을 더 작은 부분 게임으로 나누어 검사하세요", file=sys.stderr)
        return EXIT_ERROR
    except WorkbenchError as e:
        print(f"오류: {e}", file=sys.stderr)
        return EXIT_ERROR

    structured = outcome.to_json()
    sys.stdout.write(structured if run_config.structured else outcome.render())
    if getattr(args, "save", False):
        path = _save(run_config, structured)
        logger.info(f"결과 저장: {path}")
    return outcome.exit_code
