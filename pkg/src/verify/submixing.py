"""submixing / shift-invariance 반례 탐색

두 단계로 찾는다. 먼저 짧은 단어부터 범위 안을 전수 조사한다. 전수 조사에서
반례가 없으면 시드 고정 난수로 prefix가 있는 단어와 prefix 블록이 있는 셔플 패턴을 더 시험한다.
"""

import itertools
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Iterator, Optional

import numpy as np

from src.core.config import get_config
from src.core.exceptions import ConfigError
from src.core.logger import get_logger
from src.payoff.colours import Colour, ColourKind, parse_colour
from src.payoff.properties import check_shift_invariance, check_submixing
from src.payoff.shuffle import ShufflePattern
from src.payoff.specs import GeneralizedMean, OptimisticGeneralizedMean, PayoffSpec, format_payoff
from src.payoff.words import LassoWord
from src.verify.report import VerificationReport, Verdict

logger = get_logger(__name__)


@dataclass(frozen=True)
class SearchBounds:
    """탐색 범위"""
    max_cycle: int = 4
    max_prefix: int = 1
    max_block: int = 2
    case_budget: int = 200_000
    random_cases: int = 2_000
    alphabet: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        if self.max_block < 1:
            raise ConfigError(f"max_block은 1 이상이어야 합니다: {self.max_block}")

    @classmethod
    def from_config(cls, **overrides: Any) -> "SearchBounds":
        search = get_config().search
        values = {
            "max_cycle": search.max_cycle,
            "max_prefix": search.max_prefix,
            "max_block": search.max_block,
            "case_budget": search.case_budget,
            "random_cases": search.random_cases,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def to_dict(self) -> dict[str, Any]:
        document = asdict(self)
        document.pop("alphabet")
        return document


def default_alphabet(spec: PayoffSpec) -> list[Colour]:
    """페이오프 색상 종류에 맞는 탐색 알파벳"""
    search = get_config().search
    kind = spec.colour_kind
    if kind is ColourKind.REWARD or kind is ColourKind.COUNTER:
        raw = search.reward_alphabet
    elif kind is ColourKind.DISCOUNTED:
        raw = [{"reward": r, "discount": "1/2"} for r in search.reward_alphabet]
    elif kind is ColourKind.PRIORITY:
        raw = search.priority_alphabet
    elif kind is ColourKind.BUCHI:
        raw = [{"reward": r, "buchi": flag} for r in search.reward_alphabet for flag in (False, True)]
    elif kind is ColourKind.LETTER:
        raw = ["a", "b"]
    elif kind is ColourKind.VECTOR:
        k = spec.k if isinstance(spec, (GeneralizedMean, OptimisticGeneralizedMean)) else 2
        if k == 2:
            raw = search.vector_alphabet
        else:
            raw = [[2 if j == i else -1 for j in range(k)] for i in range(k)] + [[0] * k]
    else:
        raise ValueError(f"알파벳을 정할 수 없는 색상 종류: {kind}")
    return [parse_colour(kind, x) for x in raw]


def necklaces(alphabet: list, length: int) -> Iterator[tuple]:
    """회전 대표이면서 원시적인 길이 length의 단어 (사전식)"""
    for word in itertools.product(range(len(alphabet)), repeat=length):
        rotations = [word[i:] + word[:i] for i in range(length)]
        if word != min(rotations) or rotations.count(word) > 1:
            continue
        yield tuple(alphabet[i] for i in word)


def _lasso_words(alphabet: list, max_prefix: int, max_cycle: int) -> Iterator[LassoWord]:
    """전체 길이 순으로 모든 lasso 단어"""
    for total in range(1, max_prefix + max_cycle + 1):
        for p in range(0, min(max_prefix, total - 1) + 1):
            c = total - p
            if c > max_cycle:
                continue
            for prefix in itertools.product(alphabet, repeat=p):
                for cycle in itertools.product(alphabet, repeat=c):
                    yield LassoWord(prefix, cycle)


def alternating_patterns(max_block: int) -> list[ShufflePattern]:
    """블록 길이 (a, b), 1 <= a, b <= max_block 인 모든 교대 패턴"""
    blocks = range(1, max_block + 1)
    return [ShufflePattern.alternating(a, b) for a in blocks for b in blocks]


def _random_word(alphabet: list, rng: np.random.Generator, max_prefix: int, max_cycle: int) -> LassoWord:
    prefix = [alphabet[int(rng.integers(len(alphabet)))] for _ in range(int(rng.integers(max_prefix + 1)))]
    cycle = [alphabet[int(rng.integers(len(alphabet)))] for _ in range(int(rng.integers(1, max_cycle + 1)))]
    return LassoWord(tuple(prefix), tuple(cycle))


def _random_pattern(rng: np.random.Generator) -> ShufflePattern:
    head = tuple((int(rng.integers(3)), int(rng.integers(3))) for _ in range(int(rng.integers(3))))
    loop = [(int(rng.integers(4)), int(rng.integers(4))) for _ in range(int(rng.integers(1, 3)))]
    if not sum(a for a, _ in loop):
        loop[0] = (1, loop[0][1])
    if not sum(b for _, b in loop):
        loop[-1] = (loop[-1][0], 1)
    return ShufflePattern(head, tuple(loop))


def _report(
    claim: str,
    spec: PayoffSpec,
    seed: int,
    bounds: SearchBounds,
    flagged: bool,
    checked: int,
    complete: bool,
    witness: Any,
    started: float,
) -> VerificationReport:
    if witness is not None:
        verdict = Verdict.REFUTED
    elif complete:
        verdict = Verdict.CONFIRMED
    else:
        verdict = Verdict.INCONCLUSIVE

    notes = []
    if witness is not None and flagged:
        notes.append(f"{format_payoff(spec)}는 {claim} 성질로 분류되어 있으나 반례가 나왔습니다 (분류 오류)")
    if witness is None and not flagged:
        notes.append(f"{format_payoff(spec)}는 {claim} 성질로 분류되지 않았지만 범위 안에서는 반례가 없습니다")
    if not complete and witness is None:
        notes.append(f"케이스 예산 {bounds.case_budget}을 모두 써서 전수 조사를 끝내지 못했습니다")

    report = VerificationReport(
        claim=claim,
        instance={"payoff": format_payoff(spec), "seed": seed, "bounds": bounds.to_dict()},
        verdict=verdict,
        quantities={"cases_checked": checked, "exhaustive_complete": complete, "flagged": flagged},
        witness=witness.to_dict() if witness is not None else None,
        notes=notes,
    )
    report.elapsed = time.perf_counter() - started
    return report


def search_submixing_violation(
    spec: PayoffSpec,
    bounds: Optional[SearchBounds] = None,
    seed: Optional[int] = None,
) -> VerificationReport:
    """f(shuffle(u, v)) > max(f(u), f(v)) 인 (u, v, 패턴) 탐색

    전수 단계: cycle 길이 max_cycle 이하의 회전 대표 단어의 순서쌍 (u, v) ×
    블록 길이 max_block 이하의 모든 교대 패턴. 순서쌍이므로 v가 먼저 오는
    셔플도 (v, u) 쌍으로 시험된다.
    시프트 불변 페이오프에서는 prefix와 회전이 값을 바꾸지 않는다.
    난수 단계: prefix가 있는 단어와 prefix 블록이 있는 패턴 random_cases개.
    """
    started = time.perf_counter()
    bounds = bounds or SearchBounds.from_config()
    seed = get_config().harness.seed if seed is None else seed
    alphabet = list(bounds.alphabet) if bounds.alphabet else default_alphabet(spec)

    words = [
        LassoWord((), cycle)
        for n in range(1, bounds.max_cycle + 1)
        for cycle in necklaces(alphabet, n)
    ]
    patterns = alternating_patterns(bounds.max_block)
    logger.info(f"submixing 탐색 {format_payoff(spec)}: 단어 {len(words)}개, 패턴 {len(patterns)}개")

    checked = 0
    complete = True
    for u in words:
        if checked >= bounds.case_budget:
            complete = False
            break
        for v in words:
            for pattern in patterns:
                checked += 1
                witness = check_submixing(spec, u, v, pattern)
                if witness is not None:
                    logger.info(f"submixing 반례: {u} / {v} / {pattern}")
                    return _report("submixing", spec, seed, bounds, spec.is_submixing, checked, complete, witness, started)

    rng = np.random.default_rng(seed)
    for _ in range(bounds.random_cases):
        u = _random_word(alphabet, rng, bounds.max_prefix, bounds.max_cycle)
        v = _random_word(alphabet, rng, bounds.max_prefix, bounds.max_cycle)
        checked += 1
        witness = check_submixing(spec, u, v, _random_pattern(rng))
        if witness is not None:
            return _report("submixing", spec, seed, bounds, spec.is_submixing, checked, complete, witness, started)

    return _report("submixing", spec, seed, bounds, spec.is_submixing, checked, complete, None, started)


def search_shift_invariance_violation(
    spec: PayoffSpec,
    bounds: Optional[SearchBounds] = None,
    seed: Optional[int] = None,
) -> VerificationReport:
    """f(w) != f(w의 suffix) 인 lasso 단어 탐색

    전수 단계: prefix 길이 max_prefix 이하, cycle 길이 max_cycle 이하의 모든
    단어에서 prefix와 cycle 한 바퀴까지의 모든 shift.
    """
    started = time.perf_counter()
    bounds = bounds or SearchBounds.from_config()
    seed = get_config().harness.seed if seed is None else seed
    alphabet = list(bounds.alphabet) if bounds.alphabet else default_alphabet(spec)

    checked = 0
    complete = True
    for w in _lasso_words(alphabet, bounds.max_prefix, bounds.max_cycle):
        if checked >= bounds.case_budget:
            complete = False
            break
        checked += 1
        witness = check_shift_invariance(spec, w, shifts=len(w.prefix) + len(w.cycle))
        if witness is not None:
            logger.info(f"shift-invariance 반례: {w} (shift {witness.shift})")
            return _report(
                "shift-invariance", spec, seed, bounds, spec.is_shift_invariant,
                checked, complete, witness, started,
            )

    rng = np.random.default_rng(seed)
    for _ in range(bounds.random_cases):
        w = _random_word(alphabet, rng, bounds.max_prefix + 2, bounds.max_cycle + 2)
        checked += 1
        witness = check_shift_invariance(spec, w, shifts=len(w.prefix) + len(w.cycle))
        if witness is not None:
            return _report(
                "shift-invariance", spec, seed, bounds, spec.is_shift_invariant,
                checked, complete, witness, started,
            )

    return _report(
        "shift-invariance", spec, seed, bounds, spec.is_shift_invariant, checked, complete, None, started
    )

