"""공용 픽스처

설정은 테스트마다 새로 로드하고, 로거는 세션 시작 시 한 번만 붙인다.
"""

import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

import src.core.config as config_module
from src.core.logger import setup_logger
from src.verify import fixtures

ROOT = Path(__file__).resolve().parents[1]
CORPUS = ROOT / "data" / "corpus" / "v1"

settings.register_profile(
    "ci",
    max_examples=30,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.register_profile(
    "dev",
    max_examples=10,
    deadline=None,
    suppress_health_check=[HealthCheck.function_scoped_fixture],
)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture(scope="session", autouse=True)
def _logger():
    setup_logger(level="WARNING")


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch):
    """저장소 루트에서 기본 설정 파일을 읽도록"""
    monkeypatch.chdir(ROOT)
    monkeypatch.setattr(config_module, "_config", None)


@pytest.fixture
def corpus() -> Path:
    return CORPUS


@pytest.fixture
def e2():
    return fixtures.e2()


@pytest.fixture
def e3():
    return fixtures.e3()


@pytest.fixture
def e4():
    return fixtures.e4()


@pytest.fixture
def fig1():
    return fixtures.fig1()
