"""명령행 인터페이스"""

from src.cli.app import build_parser, run
from src.cli.commands import CommandOutput, dispatch, resolve_game
from src.cli.run_config import RunConfig

__all__ = [
    "build_parser",
    "run",
    "CommandOutput",
    "dispatch",
    "resolve_game",
    "RunConfig",
]
