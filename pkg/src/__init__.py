"""src 패키지

모듈 구조:
- src.core/     : 공유 핵심 모듈 (설정, 로깅, 예외, 유리수)
- src.arena/    : 게임 아레나 모델, 파서, 생성기, 샘플러
- src.payoff/   : 색상, 페이오프 카탈로그, lasso 평가, 셔플
- src.chain/    : 유도 마르코프 체인, 재귀 클래스, 흡수 확률
- src.solve/    : 기대 페이오프, 브루트포스 값, 액션 분류, martingale
- src.strategy/ : 전략 표현, 곱 아레나, 리셋/트리거 전략
- src.verify/   : 정리 검증 하네스
- src.graphs/   : LangGraph 스윕 워크플로우
- src.cli/      : 명령행 서브커맨드
"""
