"""검증 보고서

구조 출력은 결정적이다: 키 정렬 JSON, 유리수는 "num/den" 문자열,
실행 시간은 사람용 출력에만 나온다.
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, Optional

from src.core.rational import format_rational


class Verdict(str, Enum):
    CONFIRMED = "confirmed"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"

    @property
    def exit_code(self) -> int:
        return {Verdict.CONFIRMED: 0, Verdict.REFUTED: 2, Verdict.INCONCLUSIVE: 3}[self]


def to_plain(value: Any) -> Any:
    """보고서 값을 JSON 호환 구조로 (Fraction → "num/den")"""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [to_plain(v) for v in value]
        return sorted(items, key=str) if isinstance(value, (set, frozenset)) else items
    if hasattr(value, "to_dict"):
        return to_plain(value.to_dict())
    return value


@dataclass
class VerificationReport:
    """주장 하나에 대한 판정

    Attributes:
        claim: 주장 식별자 (예: "halfpos", "submixing")
        instance: 인스턴스 식별 정보 (아레나 지문, 페이오프, 시드 등)
        verdict: confirmed / refuted / inconclusive
        quantities: 정확한 수치들
        witness: refuted일 때 재현 가능한 반례
        notes: 사람용 설명
        elapsed: 실행 시간 (초, 구조 출력에서 제외)
    """
    claim: str
    instance: dict[str, Any]
    verdict: Verdict
    quantities: dict[str, Any] = field(default_factory=dict)
    witness: Optional[dict[str, Any]] = None
    notes: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def exit_code(self) -> int:
        return self.verdict.exit_code

    def to_dict(self) -> dict[str, Any]:
        document = {
            "claim": self.claim,
            "instance": to_plain(self.instance),
            "verdict": self.verdict.value,
            "quantities": to_plain(self.quantities),
            "notes": list(self.notes),
        }
        if self.witness is not None:
            document["witness"] = to_plain(self.witness)
        return document

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def render(self) -> str:
        """사람용 요약"""
        lines = [f"[{self.verdict.value.upper()}] {self.claim}"]
        for key, value in sorted(to_plain(self.instance).items()):
            lines.append(f"  {key}: {value}")
        for key, value in sorted(to_plain(self.quantities).items()):
            lines.append(f"  {key} = {_short(value)}")
        if self.witness is not None:
            lines.append("  witness:")
            for key, value in sorted(to_plain(self.witness).items()):
                lines.append(f"    {key}: {_short(value)}")
        lines.extend(f"  - {note}" for note in self.notes)
        lines.append(f"  ({self.elapsed:.2f}s)")
        return "\n".join(lines) + "\n"


def _short(value: Any, limit: int = 160) -> str:
    text = value if isinstance(value, str) else json.dumps(value, ensure_ascii=False, sort_keys=True)
    return text if len(text) <= limit else text[: limit - 3] + "..."


def combine(
    claim: str,
    reports: Iterable[VerificationReport],
    instance: Optional[dict[str, Any]] = None,
) -> VerificationReport:
    """인스턴스별 보고서를 지문 순으로 합친 보고서

    하나라도 refuted면 refuted (첫 반례를 witness로), 아니면 inconclusive가
    하나라도 있으면 inconclusive.
    """
    ordered = sorted(reports, key=lambda r: json.dumps(to_plain(r.instance), sort_keys=True))
    counts = {v.value: sum(1 for r in ordered if r.verdict is v) for v in Verdict}

    verdict = Verdict.CONFIRMED
    witness = None
    refuted = [r for r in ordered if r.verdict is Verdict.REFUTED]
    if refuted:
        verdict = Verdict.REFUTED
        witness = {"instance": refuted[0].instance, **(refuted[0].witness or {})}
    elif counts[Verdict.INCONCLUSIVE.value]:
        verdict = Verdict.INCONCLUSIVE

    return VerificationReport(
        claim=claim,
        instance=dict(instance or {}),
        verdict=verdict,
        quantities={"instances": len(ordered), "verdicts": counts},
        witness=witness,
        notes=[n for r in ordered for n in r.notes if r.verdict is not Verdict.CONFIRMED][:20],
        elapsed=sum(r.elapsed for r in ordered),
    )
