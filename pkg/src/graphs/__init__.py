"""LangGraph 스윕 워크플로우 모듈"""

from src.graphs.state import SweepState, create_initial_state
from src.graphs.sweep import (
    SweepRunner,
    check_instance,
    create_workflow,
    generate_arenas,
)

__all__ = [
    "SweepState",
    "create_initial_state",
    "SweepRunner",
    "check_instance",
    "create_workflow",
    "generate_arenas",
]
