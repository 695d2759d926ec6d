"""명령행 실행 설정

argparse 결과를 설정 파일(Config) 위에 덮어써서 만든다. 지정하지 않은
시드와 예산은 설정값을 따르므로 기본 실행은 항상 재현 가능하다.
"""

import argparse
from dataclasses import dataclass, field
from typing import Any, Optional

from src.core.config import Config
from src.core.exceptions import ConfigError

OUTPUT_FORMATS = ("human", "structured")


@dataclass
class RunConfig:
    """서브커맨드 하나의 실행 설정

    Attributes:
        subcommand: "solve", "verify halfpos" 처럼 공백으로 이은 명령
        inputs: 게임/전략 입력 경로 (game, sigma, tau)
        payoff: 페이오프 텍스트 (없으면 None)
        seed: 난수 시드
        budget: 열거 전략 쌍 상한
        memory_bound: 유한 메모리 스윕의 메모리 상한 M
        trials: 몬테카를로 궤적 수
        output_format: human 또는 structured
        extra: 서브커맨드 고유 인자 (epsilon, horizon, source, 탐색 범위 등)
    """
    subcommand: str
    inputs: dict[str, Optional[str]] = field(default_factory=dict)
    payoff: Optional[str] = None
    seed: int = 0
    budget: int = 1
    memory_bound: int = 1
    trials: int = 1
    output_format: str = "human"
    extra: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"알 수 없는 출력 형식: {self.output_format} (가능: {', '.join(OUTPUT_FORMATS)})")
        for name in ("budget", "memory_bound", "trials"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name}는 양수여야 합니다: {getattr(self, name)}")

    @property
    def structured(self) -> bool:
        return self.output_format == "structured"

    @classmethod
    def from_args(cls, args: argparse.Namespace, config: Config) -> "RunConfig":
        """argparse 결과와 설정 파일을 합친 실행 설정"""
        subcommand = args.command
        if getattr(args, "target", None):
            subcommand = f"{subcommand} {args.target}"

        def pick(name: str, default: Any) -> Any:
            value = getattr(args, name, None)
            return default if value is None else value

        inputs = {key: getattr(args, key, None) for key in ("game", "sigma", "tau")}
        known = {
            "command", "target", "game", "sigma", "tau", "payoff", "seed", "budget",
            "memory_bound", "trials", "format", "config", "verbose", "save",
        }
        extra = {k: v for k, v in vars(args).items() if k not in known and v is not None}

        return cls(
            subcommand=subcommand,
            inputs=inputs,
            payoff=getattr(args, "payoff", None),
            seed=pick("seed", config.harness.seed),
            budget=pick("budget", config.solver.enumeration_budget),
            memory_bound=pick("memory_bound", config.harness.memory_bound),
            trials=pick("trials", config.harness.trials),
            output_format=pick("format", "human"),
            extra=extra,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "subcommand": self.subcommand,
            "inputs": {k: v for k, v in self.inputs.items() if v is not None},
            "payoff": self.payoff,
            "seed": self.seed,
            "budget": self.budget,
            "memory_bound": self.memory_bound,
            "trials": self.trials,
            "format": self.output_format,
            "extra": dict(self.extra),
        }
