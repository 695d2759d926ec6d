"""로깅 설정

모든 로거는 `src` 루트 아래 계층에 둔다. 보고서와 구조 출력이 stdout을
쓰므로 로그 핸들러는 stderr와 (선택) 파일에만 붙는다.
"""

import logging
import sys
from pathlib import Path
from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from src.core.config import LoggingConfig

ROOT_LOGGER_NAME = "src"
DEFAULT_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def _level(level: str) -> int:
    return getattr(logging, level.upper(), logging.INFO)


def setup_logger(
    level: str = "INFO",
    log_file: Optional[str] = None,
    format_string: Optional[str] = None,
) -> logging.Logger:
    """루트 로거 설정 (이미 핸들러가 있으면 그대로 반환)

    Args:
        level: 로깅 레벨 (DEBUG, INFO, WARNING, ERROR)
        log_file: 로그 파일 경로 (None이면 stderr만)
        format_string: 로그 포맷

    Returns:
        `src` 루트 Logger
    """
    logger = logging.getLogger(ROOT_LOGGER_NAME)

    if logger.handlers:
        return logger

    logger.setLevel(_level(level))
    formatter = logging.Formatter(format_string or DEFAULT_FORMAT)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)

        file_handler = logging.FileHandler(log_path, encoding="utf-8")
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    return logger


def configure_logging(settings: "LoggingConfig", verbose: bool = False) -> logging.Logger:
    """설정 파일의 logging 섹션 적용, --verbose면 DEBUG"""
    logger = setup_logger(settings.level, settings.file, settings.format)
    set_log_level("DEBUG" if verbose else settings.level)
    return logger


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """`src` 계층의 로거 (`__name__` 또는 짧은 이름)"""
    if not name or name == ROOT_LOGGER_NAME:
        return logging.getLogger(ROOT_LOGGER_NAME)
    if name.startswith(f"{ROOT_LOGGER_NAME}."):
        return logging.getLogger(name)
    return logging.getLogger(f"{ROOT_LOGGER_NAME}.{name}")


def set_log_level(level: str, name: Optional[str] = None):
    """로그 레벨 변경 (핸들러는 루트 레벨을 따른다)"""
    get_logger(name).setLevel(_level(level))
