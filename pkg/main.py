#!/usr/bin/env python3
"""Stochastic Game Workbench CLI

확률 게임의 값과 최적 전략을 정확 산술로 계산하고, 위치적 최적성 관련
정리를 유한 인스턴스 위에서 검증합니다.

사용법:
    python main.py solve e2 --payoff mean               # 값 + 최적 전략
    python main.py classify e4 --payoff mean            # 값 보존/안정 액션 표
    python main.py check submixing --payoff genmean:2   # 서브믹싱 반례 탐색
    python main.py verify halfpos random:n=50 --payoff posavg
    python main.py reproduce fig1                       # 고정 반례 재현
    python main.py doob e3 --payoff mean --trials 2000  # 정지값 검사
    python main.py --verbose ...                        # 디버그 로깅

종료 코드:
    0 확인/성공, 2 반박, 3 판정 불가, 1 사용법/입력 오류
"""

import sys

from src.cli import run


def main():
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
