"""게임 파일 파서/프린터

JSON 호환 텍스트 형식:

    {
      "name": "e3",
      "colours": "reward",
      "states": [{"name": "s", "owner": "P1"}, ...],
      "actions": [
        {"state": "s", "action": "a", "colour": "0",
         "successors": [{"state": "t", "prob": "1/2"}, ...]},
        ...
      ]
    }

`colours`가 없으면 reward로 본다. 확률은 "num/den" 문자열.
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Union

from src.arena.model import Arena, Player
from src.core.exceptions import ArenaError, ArenaSyntaxError, ArenaValidationError
from src.core.logger import get_logger
from src.core.rational import format_rational, parse_rational
from src.payoff.colours import ColourKind, colour_to_json, parse_colour

logger = get_logger(__name__)


def _expect(value: Any, kind: type, where: str, source: Optional[str]) -> Any:
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise ArenaSyntaxError(
            f"{where}: {kind.__name__} 타입이어야 합니다 (실제: {type(value).__name__})",
            source=source,
        )
    return value


def _field(entry: dict, key: str, where: str, source: Optional[str]) -> Any:
    if key not in entry:
        raise ArenaSyntaxError(f"{where}: 필드 '{key}'가 없습니다", source=source)
    return entry[key]


def parse_arena(text: str, source: Optional[str] = None) -> Arena:
    """게임 문서를 Arena로 변환

    Args:
        text: 게임 문서 텍스트
        source: 오류 메시지에 붙일 출처 (파일 경로 등)

    Returns:
        검증된 Arena

    Raises:
        ArenaSyntaxError: JSON 구문/구조 오류 (위치 포함)
        ArenaValidationError: 불변식 위반
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ArenaSyntaxError(e.msg, line=e.lineno, column=e.colno, source=source)

    _expect(document, dict, "문서 최상위", source)

    kind_raw = document.get("colours", ColourKind.REWARD.value)
    try:
        kind = ColourKind(kind_raw)
    except ValueError:
        raise ArenaSyntaxError(f"알 수 없는 colours 종류: {kind_raw!r}", source=source)

    name = document.get("name", Path(source).stem if source else "arena")
    _expect(name, str, "name", source)

    states: list[str] = []
    controller: dict[str, Player] = {}
    for i, entry in enumerate(_expect(_field(document, "states", "문서", source), list, "states", source)):
        where = f"states[{i}]"
        _expect(entry, dict, where, source)
        state = _expect(_field(entry, "name", where, source), str, f"{where}.name", source)
        owner = _field(entry, "owner", where, source)
        if owner not in ("P1", "P2"):
            raise ArenaSyntaxError(f"{where}.owner는 \"P1\" 또는 \"P2\"여야 합니다: {owner!r}", source=source)
        if state in controller:
            raise ArenaValidationError(f"{where}: 상태 {state}가 중복 선언되었습니다")
        states.append(state)
        controller[state] = Player(owner)

    actions: list[str] = []
    available: dict[str, list[str]] = {s: [] for s in states}
    transition: dict[tuple[str, str], dict[str, Fraction]] = {}
    colouring = {}

    for i, entry in enumerate(_expect(_field(document, "actions", "문서", source), list, "actions", source)):
        where = f"actions[{i}]"
        _expect(entry, dict, where, source)
        state = _expect(_field(entry, "state", where, source), str, f"{where}.state", source)
        action = _expect(_field(entry, "action", where, source), str, f"{where}.action", source)
        if state not in available:
            raise ArenaValidationError(f"{where}: 선언되지 않은 상태 {state}")
        if (state, action) in transition:
            raise ArenaValidationError(f"{where}: ({state}, {action})가 중복 선언되었습니다")

        try:
            colour = parse_colour(kind, _field(entry, "colour", where, source))
        except ValueError as e:
            raise ArenaValidationError(f"{where}.colour ({kind.value}): {e}")

        dist: dict[str, Fraction] = {}
        successors = _expect(_field(entry, "successors", where, source), list, f"{where}.successors", source)
        for j, succ in enumerate(successors):
            swhere = f"{where}.successors[{j}]"
            _expect(succ, dict, swhere, source)
            target = _expect(_field(succ, "state", swhere, source), str, f"{swhere}.state", source)
            if target in dist:
                raise ArenaValidationError(f"{swhere}: 후속 상태 {target}가 중복되었습니다")
            try:
                dist[target] = parse_rational(_field(succ, "prob", swhere, source))
            except ValueError as e:
                raise ArenaSyntaxError(f"{swhere}.prob: {e}", source=source)

        if action not in actions:
            actions.append(action)
        available[state].append(action)
        transition[(state, action)] = dist
        colouring[(state, action)] = colour

    arena = Arena(
        states=tuple(states),
        controller=controller,
        actions=tuple(actions),
        available={s: tuple(acts) for s, acts in available.items()},
        transition=transition,
        colouring=colouring,
        name=name,
    )
    logger.debug(f"아레나 파싱 완료: {arena.name} (상태 {len(arena.states)}개)")
    return arena


def arena_document(arena: Arena) -> dict:
    """Arena를 게임 문서 구조로 (선언 순서 유지)"""
    return {
        "name": arena.name,
        "colours": arena.colour_kind.value,
        "states": [
            {"name": s, "owner": arena.controller[s].value} for s in arena.states
        ],
        "actions": [
            {
                "state": s,
                "action": a,
                "colour": colour_to_json(arena.colour(s, a)),
                "successors": [
                    {"state": t, "prob": format_rational(p)}
                    for t, p in arena.transition[(s, a)].items()
                ],
            }
            for s, a in arena.pairs()
        ],
    }


def print_arena(arena: Arena) -> str:
    """Arena를 게임 문서 텍스트로 (parse_arena의 역)"""
    return json.dumps(arena_document(arena), indent=2, ensure_ascii=False) + "\n"


def load_arena(path: Union[str, Path]) -> Arena:
    """게임 파일 로드

    Raises:
        ArenaError: 파일을 읽을 수 없음
        ArenaSyntaxError / ArenaValidationError: parse_arena 참고
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ArenaError(f"게임 파일을 읽을 수 없습니다 {path}: {e}")

    try:
        return parse_arena(text, source=str(path))
    except ArenaValidationError as e:
        raise ArenaValidationError(f"[{path}] {e}") from e
