"""전략 파일 파서/프린터

유한 메모리 전략:

    {
      "player": "P1",
      "memory_states": ["m0", "m1"],
      "initial": "m0",
      "update": [{"memory": "m0", "state": "s", "action": "*", "target": "*", "next": "m1"}],
      "choice": [{"memory": "m0", "state": "s", "dist": {"go": "1/2", "stay": "1/2"}}]
    }

순수 정상 전략은 {"s": "go", ...} 형태의 맵으로 쓸 수 있다.
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Union

from src.arena.model import Player
from src.core.exceptions import MemoryAutomatonError, StrategyFormatError
from src.core.rational import format_rational, parse_rational
from src.strategy.model import FiniteMemoryStrategy, PureStationaryStrategy, UpdateRule

AnyStrategy = Union[PureStationaryStrategy, FiniteMemoryStrategy]

_FULL_KEYS = {"memory_states", "initial", "choice"}


def _fail(message: str, source: Optional[str]) -> StrategyFormatError:
    prefix = f"[{source}] " if source else ""
    return StrategyFormatError(f"{prefix}{message}")


def _string(value: Any, where: str, source: Optional[str]) -> str:
    if not isinstance(value, str):
        raise _fail(f"{where}: 문자열이어야 합니다 (실제: {type(value).__name__})", source)
    return value


def _field(entry: dict, key: str, where: str, source: Optional[str]) -> Any:
    if key not in entry:
        raise _fail(f"{where}: 필드 '{key}'가 없습니다", source)
    return entry[key]


def parse_strategy(
    text: str,
    player: Player,
    source: Optional[str] = None,
    name: Optional[str] = None,
) -> AnyStrategy:
    """전략 문서를 전략 객체로 변환

    Args:
        text: 전략 문서 텍스트
        player: 전략의 주인 (문서에 player가 있으면 일치해야 함)
        source: 오류 메시지에 붙일 출처
        name: 전략 이름 (없으면 문서의 name, 그것도 없으면 파일 이름)

    Raises:
        StrategyFormatError: 구문/구조 오류
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise _fail(f"line {e.lineno}, column {e.colno}: {e.msg}", source)
    if not isinstance(document, dict):
        raise _fail("문서 최상위는 객체여야 합니다", source)

    if not _FULL_KEYS & set(document):
        choices = {}
        for state, action in document.items():
            choices[state] = _string(action, f"'{state}'의 액션", source)
        return PureStationaryStrategy(player, choices)

    declared = document.get("player", player.value)
    if declared != player.value:
        raise _fail(f"{player.value} 전략 자리에 {declared} 전략이 주어졌습니다", source)

    if name is None:
        name = document.get("name", Path(source).stem if source else player.value.lower())

    memory_states = _field(document, "memory_states", "문서", source)
    if not isinstance(memory_states, list) or not memory_states:
        raise _fail("memory_states는 비어 있지 않은 리스트여야 합니다", source)
    memory_states = tuple(_string(m, "memory_states", source) for m in memory_states)
    initial = _string(_field(document, "initial", "문서", source), "initial", source)

    rules = []
    for i, entry in enumerate(document.get("update", [])):
        where = f"update[{i}]"
        if not isinstance(entry, dict):
            raise _fail(f"{where}: 객체여야 합니다", source)
        rules.append(
            UpdateRule(
                memory=_string(_field(entry, "memory", where, source), f"{where}.memory", source),
                state=_string(entry.get("state", "*"), f"{where}.state", source),
                action=_string(entry.get("action", "*"), f"{where}.action", source),
                target=_string(entry.get("target", "*"), f"{where}.target", source),
                next_memory=_string(_field(entry, "next", where, source), f"{where}.next", source),
            )
        )

    choices: dict[tuple[str, str], dict[str, Fraction]] = {}
    for i, entry in enumerate(_field(document, "choice", "문서", source)):
        where = f"choice[{i}]"
        if not isinstance(entry, dict):
            raise _fail(f"{where}: 객체여야 합니다", source)
        memory = _string(_field(entry, "memory", where, source), f"{where}.memory", source)
        state = _string(_field(entry, "state", where, source), f"{where}.state", source)
        raw = _field(entry, "dist", where, source)
        if isinstance(raw, str):
            raw = {raw: 1}
        if not isinstance(raw, dict) or not raw:
            raise _fail(f"{where}.dist: 액션 → 가중치 맵 또는 액션 이름이어야 합니다", source)
        if (memory, state) in choices:
            raise _fail(f"{where}: (메모리 {memory}, 상태 {state})가 중복되었습니다", source)
        try:
            choices[(memory, state)] = {a: parse_rational(w) for a, w in raw.items()}
        except ValueError as e:
            raise _fail(f"{where}.dist: {e}", source)

    try:
        return FiniteMemoryStrategy(
            player=player,
            memory_states=memory_states,
            initial=initial,
            rules=tuple(rules),
            choices=choices,
            name=name,
        )
    except MemoryAutomatonError as e:
        raise _fail(str(e), source) from e


def strategy_document(strategy: AnyStrategy) -> dict:
    """전략을 문서 구조로"""
    if isinstance(strategy, PureStationaryStrategy):
        return dict(strategy.choices)
    return {
        "name": strategy.name,
        "player": strategy.player.value,
        "memory_states": list(strategy.memory_states),
        "initial": strategy.initial,
        "update": [
            {
                "memory": r.memory,
                "state": r.state,
                "action": r.action,
                "target": r.target,
                "next": r.next_memory,
            }
            for r in strategy.rules
        ],
        "choice": [
            {
                "memory": m,
                "state": s,
                "dist": {a: format_rational(w) for a, w in dist.items()},
            }
            for (m, s), dist in strategy.choices.items()
        ],
    }


def print_strategy(strategy: AnyStrategy) -> str:
    return json.dumps(strategy_document(strategy), indent=2, ensure_ascii=False) + "\n"


def load_strategy(path: Union[str, Path], player: Player) -> AnyStrategy:
    """전략 파일 로드

    Raises:
        StrategyFormatError: 파일을 읽을 수 없거나 형식 오류
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise StrategyFormatError(f"전략 파일을 읽을 수 없습니다 {path}: {e}")
    return parse_strategy(text, player, source=str(path))
