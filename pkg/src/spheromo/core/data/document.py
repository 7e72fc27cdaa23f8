"""입력 문서 (JSON / TOML) 파싱 · 검증 · 직렬화

유리수는 "p/q" 또는 정수(문자열/정수)만 허용 — 부동소수점은 어디서도 받지 않는다.
알 수 없는 키는 pydantic(extra="forbid") 이 거부하고, 구문 오류는 줄/열과 함께 InputError.
"""
import json
import logging
import os
import re
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from typing import Annotated, Any, Dict, List, Optional, Tuple, Union

from pydantic import AfterValidator, BaseModel, ConfigDict, StrictInt, StrictStr, ValidationError
from sympy import Integer, Rational

from spheromo.core.data.registry import LunaSTable
from spheromo.core.engine.momentum import MomentumPair, MomentumTripleInput
from spheromo.core.engine.polykernel import RationalPolytope, Sublattice
from spheromo.core.engine.rootsys import RootSystem, RootSystemSpec, SphericalRoot, build_root_system
from spheromo.core.errors import InputError
from spheromo.core.utils.exact import format_rational, parse_rational

logger = logging.getLogger(__name__)


def _canonical(value: Union[int, str]) -> str:
    return format_rational(parse_rational(value))


# 정규화된 유리수 문자열 ("3", "-1/2")
Exact = Annotated[Union[StrictInt, StrictStr], AfterValidator(_canonical)]
SigmaItem = Union[StrictStr, Dict[str, Exact]]


# ── 문서 모델 ────────────────────────────────────────────────────────────────

class QuadrupleBlock(BaseModel):
    """확장 격자 Ξ̃ ⊆ Λ×Z 의 생성원 + V* 의 최고 가중치들"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    lattice: List[List[Exact]]
    highest_weights: List[List[Exact]]


class InputDocument(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    name: Optional[str] = None
    group: RootSystemSpec
    lattice: List[List[Exact]]
    polytope: List[List[Exact]]
    sigma: Optional[List[SigmaItem]] = None
    quadruple: Optional[QuadrupleBlock] = None


class LoadedInput:
    """문서 + 구성된 루트 시스템 / 모멘텀 쌍 / Σ (문서에 sigma 가 없으면 None)"""

    def __init__(self, doc: InputDocument, system: RootSystem, pair: MomentumPair,
                 sigmas: Optional[List[SphericalRoot]]):
        self.doc = doc
        self.system = system
        self.pair = pair
        self.sigmas = sigmas

    @property
    def has_sigma(self) -> bool:
        return self.sigmas is not None


# ── 위치 정보 ────────────────────────────────────────────────────────────────

_TOML_POS_RE = re.compile(r"\(at line (\d+), column (\d+)\)")


def _locate(text: str, token: str) -> Tuple[Optional[int], Optional[int]]:
    """token 이 처음 나타나는 (줄, 열), 1 부터. 없으면 (None, None)"""
    idx = text.find(token)
    if idx < 0:
        return None, None
    line = text.count("\n", 0, idx) + 1
    column = idx - (text.rfind("\n", 0, idx) + 1) + 1
    return line, column


def _validation_error(e: ValidationError, text: str, source: str) -> InputError:
    err = e.errors()[0]
    path = ".".join(str(p) for p in err["loc"])
    msg = err["msg"].removeprefix("Value error, ")
    line = column = None
    if err["type"] == "extra_forbidden" and err["loc"]:
        key = str(err["loc"][-1])
        line, column = _locate(text, f'"{key}"')
        if line is None:
            line, column = _locate(text, key)
    elif isinstance(err.get("input"), str):
        line, column = _locate(text, f'"{err["input"]}"')
    return InputError(f"{source}: {path}: {msg}", line, column)


# ── 파싱 / 직렬화 ────────────────────────────────────────────────────────────

def parse_document(text: str, fmt: str = "json", source: str = "<input>") -> InputDocument:
    """JSON 또는 TOML 문자열 → InputDocument"""
    if fmt == "json":
        try:
            raw: Any = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"{source}: {e.msg}", e.lineno, e.colno)
    elif fmt == "toml":
        try:
            raw = tomllib.loads(text)
        except tomllib.TOMLDecodeError as e:
            m = _TOML_POS_RE.search(str(e))
            line, column = (int(m.group(1)), int(m.group(2))) if m else (None, None)
            raise InputError(f"{source}: {_TOML_POS_RE.sub('', str(e)).strip()}", line, column)
    else:
        raise InputError(f"unknown document format '{fmt}'")
    if not isinstance(raw, dict):
        raise InputError(f"{source}: top level must be a table/object")
    try:
        return InputDocument.model_validate(raw)
    except ValidationError as e:
        raise _validation_error(e, text, source)


def load_document(path: str) -> InputDocument:
    """확장자 .toml 이면 TOML, 그 외는 JSON"""
    if not os.path.isfile(path):
        raise InputError(f"input file not found: {path}")
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    fmt = "toml" if path.lower().endswith(".toml") else "json"
    return parse_document(text, fmt, source=os.path.basename(path))


def serialize(doc: InputDocument) -> str:
    """정규화된 JSON (parse → serialize 는 멱등)"""
    data = doc.model_dump(mode="json", exclude_none=True)
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


# ── Σ 표기 ───────────────────────────────────────────────────────────────────

_COEF = r"\d+(?:/\d+)?"
_TERM_RE = re.compile(rf"^(?P<c>{_COEF})?\*?(?P<name>alpha\d+'*)$")
_GROUP_RE = re.compile(rf"^(?P<c>{_COEF})\*?\((?P<body>.+)\)$")


def _parse_terms(system: RootSystem, body: str, factor: Rational, text: str) -> Dict[int, Rational]:
    out: Dict[int, Rational] = {}
    for term in body.split("+"):
        m = _TERM_RE.match(term)
        if m is None:
            raise InputError(f"malformed spherical root '{text}'")
        c = parse_rational(m.group("c")) if m.group("c") else Integer(1)
        i = system.index_of(m.group("name"))
        out[i] = out.get(i, Integer(0)) + factor * c
    return out


def parse_sigma(system: RootSystem, item: Union[str, Dict[str, str]]) -> SphericalRoot:
    """'alpha1+alpha3', '2alpha1', '1/2(alpha1+alpha1')' 또는 {단순 루트: 계수} → 카탈로그 원소"""
    if isinstance(item, dict):
        text = json.dumps(item, sort_keys=True)
        coeffs = {system.index_of(k): parse_rational(v) for k, v in item.items()}
    else:
        text = item
        compact = item.replace(" ", "")
        m = _GROUP_RE.match(compact)
        if m is not None:
            coeffs = _parse_terms(system, m.group("body"), parse_rational(m.group("c")), text)
        else:
            coeffs = _parse_terms(system, compact, Integer(1), text)
    dense = [coeffs.get(i, Integer(0)) for i in range(system.nsimple)]
    sigma = system.catalog_lookup(dense)
    if sigma is None:
        raise InputError(f"'{text}' is not a spherical root of this group")
    return sigma


# ── 구성 ─────────────────────────────────────────────────────────────────────

def _rows(values: List[List[str]]) -> List[Tuple[Rational, ...]]:
    return [tuple(parse_rational(x) for x in row) for row in values]


def build_input(doc: InputDocument, table: Optional[LunaSTable] = None) -> LoadedInput:
    """InputDocument → (R, Ξ, Q[, Σ]). 격자/다면체 오류는 LatticeError 로 전파."""
    system = build_root_system(doc.group)
    lattice = Sublattice(_rows(doc.lattice), system.rank)
    polytope = RationalPolytope(_rows(doc.polytope), lattice)
    pair = MomentumPair(system, polytope, table)
    sigmas = None
    if doc.sigma is not None:
        sigmas = MomentumTripleInput(pair, [parse_sigma(system, s) for s in doc.sigma]).sigmas
    logger.debug(f"input {doc.name or ''}: rank {system.rank}, dim Q {polytope.k}, "
                 f"{len(polytope.vertices)} vertices, sigma={sigmas}")
    return LoadedInput(doc, system, pair, sigmas)


def load_input(path: str, table: Optional[LunaSTable] = None) -> LoadedInput:
    return build_input(load_document(path), table)


def quadruple_data(loaded: LoadedInput) -> Tuple[List[Tuple[Rational, ...]], List[Tuple[Rational, ...]]]:
    """문서의 quadruple 블록 (Ξ̃ 생성원, 최고 가중치)"""
    block = loaded.doc.quadruple
    if block is None:
        raise InputError("document has no 'quadruple' block")
    return _rows(block.lattice), _rows(block.highest_weights)
