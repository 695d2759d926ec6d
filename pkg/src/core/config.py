"""설정 관리"""

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

import yaml

from src.core.exceptions import ConfigError


DEFAULT_SEED = 20240917


@dataclass
class SolverConfig:
    """풀이 설정"""
    enumeration_budget: int = 2_000_000
    max_workers: int = 1


@dataclass
class HarnessConfig:
    """검증 하네스 설정"""
    seed: int = DEFAULT_SEED
    memory_bound: int = 2
    sigma_samples: int = 200
    trials: int = 10_000
    miss_probability: str = "1/100"
    max_steps: int = 10_000
    epsilons: list[str] = field(default_factory=lambda: ["1/8", "1/4"])

    @property
    def alpha(self) -> Fraction:
        """Hoeffding 신뢰구간의 허용 실패 확률"""
        return Fraction(self.miss_probability)


@dataclass
class SweepConfig:
    """랜덤 아레나 스윕 설정"""
    num_arenas: int = 200
    num_states: int = 4
    max_actions: int = 3
    reward_low: int = -2
    reward_high: int = 2
    density: str = "1/2"


@dataclass
class SearchConfig:
    """서브믹싱/시프트 불변성 탐색 설정"""
    max_cycle: int = 4
    max_prefix: int = 1
    max_block: int = 2
    case_budget: int = 200_000
    random_cases: int = 2_000
    reward_alphabet: list[int] = field(default_factory=lambda: [-2, -1, 0, 1, 2])
    vector_alphabet: list[list[int]] = field(
        default_factory=lambda: [[2, -1], [-1, 2], [0, 0], [-2, 1], [1, -2]]
    )
    priority_alphabet: list[int] = field(default_factory=lambda: [0, 1, 2, 3, 4])


@dataclass
class PathsConfig:
    """경로 설정"""
    corpus_dir: str = "data/corpus/v1"
    output_dir: str = "data/output"


@dataclass
class LoggingConfig:
    """로깅 설정"""
    level: str = "INFO"
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    file: Optional[str] = None


@dataclass
class Config:
    """전체 설정"""
    solver: SolverConfig = field(default_factory=SolverConfig)
    harness: HarnessConfig = field(default_factory=HarnessConfig)
    sweep: SweepConfig = field(default_factory=SweepConfig)
    search: SearchConfig = field(default_factory=SearchConfig)
    paths: PathsConfig = field(default_factory=PathsConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)


def _dict_to_dataclass(data: Optional[dict], cls: type) -> Any:
    """딕셔너리를 dataclass로 변환"""
    if data is None:
        return cls()

    if not isinstance(data, dict):
        raise ConfigError(f"{cls.__name__} 섹션은 매핑이어야 합니다: {data!r}")

    field_names = {f.name for f in cls.__dataclass_fields__.values()}
    filtered_data = {k: v for k, v in data.items() if k in field_names}

    return cls(**filtered_data)


def _validate(config: Config) -> Config:
    """값 범위 검사"""
    if config.solver.enumeration_budget <= 0:
        raise ConfigError("solver.enumeration_budget는 양수여야 합니다")
    if config.solver.max_workers <= 0:
        raise ConfigError("solver.max_workers는 양수여야 합니다")
    if config.harness.memory_bound <= 0 or config.harness.trials <= 0:
        raise ConfigError("harness.memory_bound / harness.trials는 양수여야 합니다")

    try:
        alpha = config.harness.alpha
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"harness.miss_probability 파싱 오류: {e}")
    if not 0 < alpha < 1:
        raise ConfigError("harness.miss_probability는 (0, 1) 범위여야 합니다")

    return config


def load_config(config_path: Optional[str] = None) -> Config:
    """설정 파일 로드"""
    if config_path is None:
        config_path = "configs/settings.yaml"

    path = Path(config_path)

    if not path.exists():
        return Config()

    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"YAML 파싱 오류: {e}")
    except Exception as e:
        raise ConfigError(f"설정 파일 로드 오류: {e}")

    try:
        config = Config(
            solver=_dict_to_dataclass(data.get('solver'), SolverConfig),
            harness=_dict_to_dataclass(data.get('harness'), HarnessConfig),
            sweep=_dict_to_dataclass(data.get('sweep'), SweepConfig),
            search=_dict_to_dataclass(data.get('search'), SearchConfig),
            paths=_dict_to_dataclass(data.get('paths'), PathsConfig),
            logging=_dict_to_dataclass(data.get('logging'), LoggingConfig),
        )
    except TypeError as e:
        raise ConfigError(f"설정 값 오류: {e}")

    return _validate(config)


_config: Optional[Config] = None


def get_config() -> Config:
    """전역 설정 가져오기"""
    global _config
    if _config is None:
        _config = load_config()
    return _config


def reload_config(config_path: Optional[str] = None) -> Config:
    """설정 다시 로드"""
    global _config
    _config = load_config(config_path)
    return _config
