"""판정(Verdict) 과 실패 증명서(Certificate)"""
import logging
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from spheromo.core.constants import AXIOM_IDS, STATUS_FAIL, STATUS_PASS, STATUS_UNSUPPORTED

logger = logging.getLogger(__name__)


class Certificate(BaseModel):
    """위반된 공리 식별자 + 재검증 가능한 구체적 witness (문자열 직렬화)"""
    model_config = ConfigDict(frozen=True)

    axiom: str
    message: str = ""
    witness: Dict[str, str] = Field(default_factory=dict)


class Verdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    status: Literal["pass", "fail", "unsupported"]
    certificate: Optional[Certificate] = None
    trace: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == STATUS_PASS

    @property
    def failed(self) -> bool:
        return self.status == STATUS_FAIL

    @property
    def axiom(self) -> Optional[str]:
        return self.certificate.axiom if self.certificate else None

    def with_trace(self, *lines: str) -> "Verdict":
        return self.model_copy(update={"trace": list(lines) + list(self.trace)})


def passed(*trace: str) -> Verdict:
    return Verdict(status=STATUS_PASS, trace=list(trace))


def _certificate(axiom: str, message: str, witness: Dict[str, object]) -> Certificate:
    if axiom not in AXIOM_IDS:
        # constants 의 검사 순서 목록에 없는 식별자
        raise ValueError(f"unregistered axiom id '{axiom}'")
    return Certificate(axiom=axiom, message=message, witness={k: str(v) for k, v in witness.items()})


def failed(axiom: str, message: str, trace: Optional[List[str]] = None, **witness) -> Verdict:
    """첫 번째 실패 공리로 fail 판정 생성. witness 값은 str() 로 고정."""
    cert = _certificate(axiom, message, witness)
    logger.debug(f"fail {axiom}: {message}")
    return Verdict(status=STATUS_FAIL, certificate=cert, trace=list(trace or []))


def unsupported(axiom: str, message: str, **witness) -> Verdict:
    cert = _certificate(axiom, message, witness)
    logger.warning(f"unsupported {axiom}: {message}")
    return Verdict(status=STATUS_UNSUPPORTED, certificate=cert)
