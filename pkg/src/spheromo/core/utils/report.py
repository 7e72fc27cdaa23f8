"""리포트 렌더링 (text / json)

같은 입력 + 같은 데이터 버전이면 바이트 단위로 같은 출력이어야 한다.
시각·경로·실행 환경 정보는 넣지 않는다.
"""
import json
from typing import Dict, List, Optional, Sequence

from pydantic import BaseModel, Field

from spheromo.core.constants import EXIT_CODES, STATUS_FAIL, STATUS_PASS, STATUS_UNSUPPORTED
from spheromo.core.data.registry import load_luna_table, load_socle_registry
from spheromo.core.engine.momentum import MomentumPair
from spheromo.core.engine.rootsys import SphericalRoot
from spheromo.core.utils.verdict import Verdict


class ReportEntry(BaseModel):
    """Σ 하나에 대한 판정"""

    sigma: List[str]
    level: str
    verdict: Verdict
    extra: Dict[str, str] = Field(default_factory=dict)


class Section(BaseModel):
    """inspect 등의 조합론적 데이터 덤프"""

    title: str
    lines: List[str] = Field(default_factory=list)


class Report(BaseModel):
    command: str
    input: str
    data_versions: Dict[str, str]
    entries: List[ReportEntry] = Field(default_factory=list)
    sections: List[Section] = Field(default_factory=list)
    summary: str = ""
    status: str = STATUS_PASS
    exit_code: int = 0


def data_versions(data_dir: Optional[str] = None) -> Dict[str, str]:
    return {
        "luna_s": load_luna_table(data_dir).version,
        "socles": load_socle_registry(data_dir).version,
    }


def sigma_names(pair: MomentumPair, sigmas: Sequence[SphericalRoot]) -> List[str]:
    return [pair.name(s) for s in sigmas]


def overall_status(verdicts: Sequence[Verdict], any_pass: bool = False) -> str:
    """단일 판정: 그대로. any_pass=True (열거·Kähler): 하나라도 pass 면 pass.

    unsupported 가 섞이면 pass/fail 로 바꾸지 않는다.
    """
    statuses = [v.status for v in verdicts]
    if any_pass:
        if STATUS_PASS in statuses:
            return STATUS_PASS
        return STATUS_UNSUPPORTED if STATUS_UNSUPPORTED in statuses else STATUS_FAIL
    if STATUS_UNSUPPORTED in statuses:
        return STATUS_UNSUPPORTED
    if STATUS_FAIL in statuses:
        return STATUS_FAIL
    return STATUS_PASS


def finish(report: Report, status: str) -> Report:
    return report.model_copy(update={"status": status, "exit_code": EXIT_CODES[status]})


# ── 렌더링 ───────────────────────────────────────────────────────────────────

def _sigma_text(names: List[str]) -> str:
    return "{" + ", ".join(names) + "}"


def render_text(report: Report, certificate: bool = False) -> str:
    out = [
        f"spheromo {report.command} {report.input}",
        "data: " + ", ".join(f"{k} {v}" for k, v in sorted(report.data_versions.items())),
    ]
    for entry in report.entries:
        line = f"Sigma = {_sigma_text(entry.sigma)} [{entry.level}] {entry.verdict.status}"
        if entry.extra:
            line += " (" + ", ".join(f"{k}={v}" for k, v in sorted(entry.extra.items())) + ")"
        out.append(line)
        cert = entry.verdict.certificate
        if cert is not None:
            out.append(f"  {cert.axiom}: {cert.message}")
            if certificate:
                for key in sorted(cert.witness):
                    out.append(f"    {key} = {cert.witness[key]}")
        if certificate:
            for t in entry.verdict.trace:
                out.append(f"  . {t}")
    for section in report.sections:
        out.append(f"[{section.title}]")
        out.extend(f"  {line}" for line in section.lines)
    if report.summary:
        out.append(report.summary)
    out.append(f"status: {report.status} (exit {report.exit_code})")
    return "\n".join(out) + "\n"


def render_json(report: Report, certificate: bool = False) -> str:
    data = report.model_dump(mode="json")
    if not certificate:
        for entry in data["entries"]:
            entry["verdict"]["trace"] = []
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def render(report: Report, fmt: str = "text", certificate: bool = False) -> str:
    if fmt == "json":
        return render_json(report, certificate)
    return render_text(report, certificate)
