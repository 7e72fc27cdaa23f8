"""라이브러리 예외 계층

공리 위반은 예외가 아니라 Verdict(fail) 로 표현한다.
여기의 예외는 입력 오류(종료 코드 2)와 미지원 데이터(종료 코드 3) 전용.
"""
from typing import Optional


class SpheromoError(ValueError):
    """spheromo 공통 루트 예외"""


class InputError(SpheromoError):
    """입력 문서 오류 — 잘못된 유리수, 알 수 없는 키, 구문 오류 등"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column or 0})"
        super().__init__(message)


class RootSystemError(SpheromoError):
    """허용되지 않는 Dynkin 타입/랭크, 또는 일관성 없는 custom pairing"""


class LatticeError(SpheromoError):
    """랭크 불일치, σ ∉ Ξ_Q, (Q1) 위반, 잘못된 확장 격자"""


class UnsupportedError(SpheromoError):
    """데이터 테이블에 항목이 없는 경우 (LunaSTable 행, socle 키) — pass/fail 로 위장 금지"""
