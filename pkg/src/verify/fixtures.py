"""고정 아레나와 전략

골든 코퍼스(data/corpus/v1)의 파일과 같은 게임을 코드로 만든다.
"""

from fractions import Fraction
from typing import Any, Iterable

from src.arena.model import Arena, Player
from src.payoff.colours import ColourKind, parse_colour
from src.strategy.model import FiniteMemoryStrategy, PureStationaryStrategy, UpdateRule

# (상태, 액션, 색상, {다음 상태: 확률})
Row = tuple[str, str, Any, dict[str, Any]]


def build_arena(
    name: str,
    owners: dict[str, str],
    rows: Iterable[Row],
    kind: ColourKind = ColourKind.REWARD,
) -> Arena:
    """표 형식으로 아레나 만들기"""
    available: dict[str, list[str]] = {s: [] for s in owners}
    actions: list[str] = []
    transition = {}
    colouring = {}
    for state, action, colour, successors in rows:
        available[state].append(action)
        if action not in actions:
            actions.append(action)
        transition[(state, action)] = {t: Fraction(p) for t, p in successors.items()}
        colouring[(state, action)] = parse_colour(kind, colour)
    return Arena(
        states=tuple(owners),
        controller={s: Player(o) for s, o in owners.items()},
        actions=tuple(actions),
        available={s: tuple(a) for s, a in available.items()},
        transition=transition,
        colouring=colouring,
        name=name,
    )


def e2() -> Arena:
    """s에서 보상 0 루프(stay)와 보상 1 흡수 상태로 가기(go) 중 선택"""
    return build_arena(
        "e2",
        {"s": "P1", "t": "P1"},
        [
            ("s", "stay", 0, {"s": 1}),
            ("s", "go", 0, {"t": 1}),
            ("t", "loop", 1, {"t": 1}),
        ],
    )


def e3(kind: ColourKind = ColourKind.REWARD) -> Arena:
    """s에서 반반 확률로 흡수 상태 t, u

    reward: t 루프 0, u 루프 2. priority: t 루프 2, u 루프 1.
    """
    if kind is ColourKind.PRIORITY:
        colours = {"s": 0, "t": 2, "u": 1}
    else:
        colours = {"s": 0, "t": 0, "u": 2}
    return build_arena(
        "e3" if kind is ColourKind.REWARD else f"e3-{kind.value}",
        {"s": "P1", "t": "P1", "u": "P1"},
        [
            ("s", "a", colours["s"], {"t": "1/2", "u": "1/2"}),
            ("t", "loop", colours["t"], {"t": 1}),
            ("u", "loop", colours["u"], {"u": 1}),
        ],
        kind,
    )


def e4() -> Arena:
    """약점 메모리 고정 아레나

    P2가 d에서 r(우연 분기)이나 s로 보낸다. r에서 1/8 확률로 s에 떨어진다.
    s의 두 액션은 모두 값 보존이지만 stay를 영원히 고르면 평균 0.
    """
    return build_arena(
        "e4",
        {"d": "P2", "r": "P1", "s": "P1", "g": "P1"},
        [
            ("d", "left", 0, {"r": 1}),
            ("d", "right", 0, {"s": 1}),
            ("r", "flip", 0, {"s": "1/8", "g": "7/8"}),
            ("s", "stay", 0, {"s": 1}),
            ("s", "go", 0, {"g": 1}),
            ("g", "loop", 1, {"g": 1}),
        ],
    )


def e2_weak_sigma() -> FiniteMemoryStrategy:
    """m0에서는 go, m1에서는 stay를 고르는 e2의 2-메모리 전략 (갱신 없음)"""
    return FiniteMemoryStrategy(
        player=Player.P1,
        memory_states=("m0", "m1"),
        initial="m0",
        choices={
            ("m0", "s"): {"go": Fraction(1)},
            ("m1", "s"): {"stay": Fraction(1)},
            ("m0", "t"): {"loop": Fraction(1)},
            ("m1", "t"): {"loop": Fraction(1)},
        },
        name="e2-weak",
    )


def e4_weak_sigma() -> FiniteMemoryStrategy:
    """r에서 우연히 s로 떨어지면 m1로 바뀌어 s에 영원히 머무는 전략

    초기 메모리에서는 모든 상태에서 1/8-최적이고 국소 최적이지만
    도달 가능한 (m1, s)에서 보장값이 0이다.
    """
    choices = {}
    for m in ("m0", "m1"):
        choices[(m, "r")] = {"flip": Fraction(1)}
        choices[(m, "g")] = {"loop": Fraction(1)}
    choices[("m0", "s")] = {"go": Fraction(1)}
    choices[("m1", "s")] = {"stay": Fraction(1)}
    return FiniteMemoryStrategy(
        player=Player.P1,
        memory_states=("m0", "m1"),
        initial="m0",
        rules=(UpdateRule("m0", "r", "flip", "s", "m1"),),
        choices=choices,
        name="e4-weak",
    )


FIG1_TARGET = "suffixtarget"


def fig1() -> Arena:
    """공통 suffix 반례 게임

    사각형 상태 sq(P2, 색상 ε)에서 1이면 b1, 2면 a로 간다. b1(P1)에서 1이면
    바로 sq로 (b 하나), 2면 b2를 거쳐 sq로 (b 둘). a는 글자 a를 내고 sq로.
    """
    return build_arena(
        "fig1",
        {"sq": "P2", "b1": "P1", "b2": "P1", "a": "P1"},
        [
            ("sq", "1", "", {"b1": 1}),
            ("sq", "2", "", {"a": 1}),
            ("b1", "1", "b", {"sq": 1}),
            ("b1", "2", "b", {"b2": 1}),
            ("b2", "back", "b", {"sq": 1}),
            ("a", "back", "a", {"sq": 1}),
        ],
        ColourKind.LETTER,
    )


def fig1_stationary(action: str) -> PureStationaryStrategy:
    """b1에서 항상 action을 고르는 P1 전략"""
    return PureStationaryStrategy(Player.P1, {"b1": action, "b2": "back", "a": "back"})


def fig1_alternating(reset_on_a: bool = True) -> FiniteMemoryStrategy:
    """b1에서 1, 2를 번갈아 고르는 2-메모리 전략

    reset_on_a이면 a 상태에 들어갈 때마다 위상을 p1로 되돌린다.
    """
    rules = [
        UpdateRule("p1", "b1", "*", "*", "p2"),
        UpdateRule("p2", "b1", "*", "*", "p1"),
    ]
    if reset_on_a:
        rules.insert(0, UpdateRule("*", "sq", "2", "a", "p1"))
    choices = {}
    for m in ("p1", "p2"):
        choices[(m, "b2")] = {"back": Fraction(1)}
        choices[(m, "a")] = {"back": Fraction(1)}
    choices[("p1", "b1")] = {"1": Fraction(1)}
    choices[("p2", "b1")] = {"2": Fraction(1)}
    return FiniteMemoryStrategy(
        player=Player.P1,
        memory_states=("p1", "p2"),
        initial="p1",
        rules=tuple(rules),
        choices=choices,
        name="alternating" if reset_on_a else "alternating-no-reset",
    )


def one_counter() -> Arena:
    """카운터 liminf = −∞ 조건의 1-카운터 게임 (주장 없이 제공)"""
    return build_arena(
        "one_counter",
        {"x": "P1", "y": "P2"},
        [
            ("x", "down", -1, {"y": 1}),
            ("x", "up", 1, {"y": 1}),
            ("y", "down", -1, {"x": 1}),
            ("y", "up", 1, {"x": 1}),
            ("y", "coin", 0, {"x": "1/2", "y": "1/2"}),
        ],
        ColourKind.COUNTER,
    )


FIXTURES = {
    "e2": e2,
    "e3": e3,
    "e4": e4,
    "fig1": fig1,
    "one_counter": one_counter,
}
