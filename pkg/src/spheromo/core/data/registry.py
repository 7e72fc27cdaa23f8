"""데이터 테이블 로더 — LunaSTable (Luna 공리 S) / SocleRegistry (구면 모듈 socle)

두 파일 모두 버전이 붙은 TOML. 스키마는 docs/1_DATA_TABLES.md 참조.
테이블에 없는 행/키는 항상 UnsupportedError — 추측으로 통과시키지 않는다.
"""
import logging
import os
import re
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from spheromo.core.config import config
from spheromo.core.engine.rootsys import ROW_TYPES, SphericalRoot, row_instance
from spheromo.core.errors import InputError, UnsupportedError

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(r"^(\d+|n|n-\d+)$")


def _eval_token(token: str, n: int) -> int:
    token = token.strip()
    if not _TOKEN_RE.match(token):
        raise InputError(f"bad position token '{token}'")
    if token == "n":
        return n
    if token.startswith("n-"):
        return n - int(token[2:])
    return int(token)


def expand_positions(spec: Sequence[str], n: int) -> FrozenSet[int]:
    """["2..n-1", "n"] 형식 → Bourbaki 위치 집합 (1-based, 빈 범위 허용)"""
    out = set()
    for item in spec:
        if ".." in item:
            lo, hi = item.split("..", 1)
            a, b = _eval_token(lo, n), _eval_token(hi, n)
            out.update(range(a, b + 1))
        elif item.strip():
            out.add(_eval_token(item, n))
    bad = [p for p in out if not 1 <= p <= n]
    if bad:
        raise InputError(f"positions {sorted(bad)} out of range 1..{n}")
    return frozenset(out)


# ── LunaSTable ───────────────────────────────────────────────────────────────

class LunaRow(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    required: List[str] = Field(default_factory=list)
    optional: List[str] = Field(default_factory=list)


class LunaSTable(BaseModel):
    """행 태그별 허용 S^p∩supp(σ) 부분집합족: required ∪ (optional 의 임의 부분집합)"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    version: str
    schema_version: int = Field(1, alias="schema")
    rows: Dict[str, LunaRow] = Field(default_factory=dict)

    def permitted(self, sigma: SphericalRoot) -> Tuple[FrozenSet[int], FrozenSet[int]]:
        """σ 의 행에 대해 (필수, 선택) 전역 단순 루트 인덱스 집합"""
        row = self.rows.get(sigma.tag)
        if row is None:
            raise UnsupportedError(f"unsupported row '{sigma.tag}' in Luna (S) table {self.version}")
        n = len(sigma.labels)
        req = expand_positions(row.required, n)
        opt = expand_positions(row.optional, n)
        return (frozenset(sigma.labels[p - 1] for p in req), frozenset(sigma.labels[p - 1] for p in opt))

    def validate_rows(self) -> None:
        """나열된 모든 위치 α 가 ⟨α^∨,σ⟩=0 인지 표준 인스턴스에서 확인"""
        for tag, row in self.rows.items():
            if tag not in ROW_TYPES and not tag.startswith("A1xA1."):
                raise InputError(f"Luna (S) table: unknown row tag '{tag}'")
            lo = ROW_TYPES.get(tag, ("A", 2))[1]
            checked = 0
            for m in range(lo, lo + 4):
                inst = row_instance(tag, m)
                if inst is None:
                    continue
                cartan, coeffs = inst
                for p in expand_positions(row.required, m) | expand_positions(row.optional, m):
                    pairing = sum(cartan[p - 1][j] * coeffs[j] for j in range(m))
                    if pairing != 0:
                        raise InputError(
                            f"Luna (S) table: row '{tag}' lists position {p} with nonzero pairing {pairing} (rank {m})"
                        )
                checked += 1
            if not checked:
                raise InputError(f"Luna (S) table: row '{tag}' has no legal instance")


# ── SocleRegistry ────────────────────────────────────────────────────────────

class SocleEntry(BaseModel):
    """국소 socle 키 + 요구되는 ρ̄-pairing (0 이 아닌 값들의 다중집합)"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    id: str
    s_type: str = ""
    sp_count: int = 0
    sigma_tags: List[str] = Field(default_factory=list)
    a_count: int = 0
    dbar_count: int = 0
    other_pairings: List[int] = Field(default_factory=list)
    note: str = ""

    @property
    def key(self) -> Tuple:
        return (self.s_type, self.sp_count, tuple(sorted(self.sigma_tags)), self.a_count, self.dbar_count)


class SocleRegistry(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    version: str
    schema_version: int = Field(1, alias="schema")
    socle: List[SocleEntry] = Field(default_factory=list)

    def lookup(self, key: Tuple) -> SocleEntry:
        for entry in self.socle:
            if entry.key == key:
                return entry
        raise UnsupportedError(f"unsupported socle {key} (registry {self.version})")


# ── 로더 ─────────────────────────────────────────────────────────────────────

def _read_toml(path: str) -> dict:
    if not os.path.isfile(path):
        raise InputError(f"data file not found: {path}")
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except tomllib.TOMLDecodeError as e:
        raise InputError(f"{path}: {e}")


@lru_cache(maxsize=8)
def _load_luna_table(path: str) -> LunaSTable:
    try:
        table = LunaSTable.model_validate(_read_toml(path))
    except ValidationError as e:
        raise InputError(f"{path}: {e.errors()[0]['msg']}")
    table.validate_rows()
    logger.info(f"Luna (S) table {table.version} 로드: {len(table.rows)} rows ({path})")
    return table


@lru_cache(maxsize=8)
def _load_socle_registry(path: str) -> SocleRegistry:
    try:
        registry = SocleRegistry.model_validate(_read_toml(path))
    except ValidationError as e:
        raise InputError(f"{path}: {e.errors()[0]['msg']}")
    logger.info(f"socle registry {registry.version} 로드: {len(registry.socle)} entries ({path})")
    return registry


def load_luna_table(data_dir: Optional[str] = None) -> LunaSTable:
    """data_dir 미지정 시 호출 시점의 config.DATA_DIR (CLI --data-dir 반영)"""
    return _load_luna_table(os.path.join(data_dir or config.DATA_DIR, config.LUNA_TABLE_FILE))


def load_socle_registry(data_dir: Optional[str] = None) -> SocleRegistry:
    return _load_socle_registry(os.path.join(data_dir or config.DATA_DIR, config.SOCLE_TABLE_FILE))
