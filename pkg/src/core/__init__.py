"""Core 모듈 - 공유 핵심 컴포넌트"""

from src.core.exceptions import (
    WorkbenchError,
    ConfigError,
    ArenaError,
    ArenaSyntaxError,
    ArenaValidationError,
    PayoffError,
    ColourKindError,
    UnsupportedPayoffError,
    ShuffleError,
    ClassSummaryError,
    ChainError,
    MemoryAutomatonError,
    SingularSystemError,
    SolveError,
    BudgetExceededError,
    SaddlePointError,
    PreconditionError,
    StrategyError,
    StrategyFormatError,
    VerificationError,
)
from src.core.logger import configure_logging, get_logger, setup_logger, set_log_level
from src.core.config import (
    Config,
    SolverConfig,
    HarnessConfig,
    SweepConfig,
    SearchConfig,
    PathsConfig,
    LoggingConfig,
    DEFAULT_SEED,
    load_config,
    get_config,
    reload_config,
)
from src.core.rational import common_denominator, format_rational, parse_rational


__all__ = [
    # Exceptions
    "WorkbenchError",
    "ConfigError",
    "ArenaError",
    "ArenaSyntaxError",
    "ArenaValidationError",
    "PayoffError",
    "ColourKindError",
    "UnsupportedPayoffError",
    "ShuffleError",
    "ClassSummaryError",
    "ChainError",
    "MemoryAutomatonError",
    "SingularSystemError",
    "SolveError",
    "BudgetExceededError",
    "SaddlePointError",
    "PreconditionError",
    "StrategyError",
    "StrategyFormatError",
    "VerificationError",
    # Logger
    "get_logger",
    "configure_logging",
    "setup_logger",
    "set_log_level",
    # Config
    "Config",
    "SolverConfig",
    "HarnessConfig",
    "SweepConfig",
    "SearchConfig",
    "PathsConfig",
    "LoggingConfig",
    "DEFAULT_SEED",
    "load_config",
    "get_config",
    "reload_config",
    # Rational
    "common_denominator",
    "format_rational",
    "parse_rational",
]
