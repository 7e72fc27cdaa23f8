"""프로젝트 공통 상수 모음"""
from typing import Dict, FrozenSet, List

# ── 판정 상태 / 종료 코드 ────────────────────────────────────────────────────

STATUS_PASS: str = "pass"
STATUS_FAIL: str = "fail"
STATUS_UNSUPPORTED: str = "unsupported"

EXIT_PASS: int = 0
EXIT_FAIL: int = 1
EXIT_INPUT_ERROR: int = 2
EXIT_UNSUPPORTED: int = 3

EXIT_CODES: Dict[str, int] = {
    STATUS_PASS:        EXIT_PASS,
    STATUS_FAIL:        EXIT_FAIL,
    STATUS_UNSUPPORTED: EXIT_UNSUPPORTED,
}

# ── 검사 레벨 ────────────────────────────────────────────────────────────────

LEVEL_Q_ADMISSIBLE: str = "q-admissible"
LEVEL_ADMISSIBLE: str = "admissible"
LEVEL_SMOOTH: str = "smooth"
LEVEL_SMOOTH_R: str = "smooth-r"        # R-레벨 (정수 조건 생략, Kähler 판정용)
LEVEL_Q_REFLEXIVE: str = "q-reflexive"
LEVEL_REFLEXIVE: str = "reflexive"

CHECK_LEVELS: List[str] = [
    LEVEL_Q_ADMISSIBLE, LEVEL_ADMISSIBLE, LEVEL_SMOOTH, LEVEL_SMOOTH_R,
    LEVEL_Q_REFLEXIVE, LEVEL_REFLEXIVE,
]
ENUMERATE_LEVELS: List[str] = [LEVEL_Q_ADMISSIBLE, LEVEL_ADMISSIBLE, LEVEL_SMOOTH, LEVEL_REFLEXIVE]

# 별칭 → 정식 레벨명
LEVEL_ALIASES: Dict[str, str] = {
    "q-momentum": LEVEL_Q_ADMISSIBLE,
    "momentum":   LEVEL_ADMISSIBLE,
}

# ── 공리 식별자 (검사 순서대로, 첫 실패만 보고) ───────────────────────────────
# 모든 fail/unsupported 판정의 axiom 은 AXIOM_IDS 에 있어야 한다 (verdict._certificate 에서 확인)

Q_COMPATIBLE_ORDER: List[str] = [
    "lattice.primitive",
    "lattice.luna_s",
    "lattice.orthogonal_pair",
    "lattice.even_pairing",
    "polytope.luna_s",
    "polytope.facet_vanishing",
    "polytope.mirror_facet",
    "polytope.a1xa1_equal",
]
Q_ADMISSIBLE_ORDER: List[str] = ["pairwise.le_one", "pairwise.equality"]
ADMISSIBLE_ORDER: List[str] = [
    "admissible.orbit_differences",
    "admissible.vertex_in_weight_lattice",
    "admissible.integral_offset",
]
SMOOTH_ORDER: List[str] = ["smooth.basis", "smooth.socle"]
REFLEXIVE_ORDER: List[str] = ["reflexive.w_in_q", "reflexive.unit_offset", "reflexive.w_in_lattice_class"]
QUADRUPLE_ORDER: List[str] = ["quadruple.span", "quadruple.degree_one", "quadruple.hull"]
MONOID_ORDER: List[str] = [
    "monoid.primitive",
    "monoid.luna_s",
    "monoid.orthogonal_pair",
    "monoid.even_pairing",
    "monoid.ray_multiple",
    "monoid.coroot_split",
    "monoid.le_one",
    "monoid.equality",
]
FAN_ORDER: List[str] = ["fan.cc1", "fan.cc2", "fan.scc", "fan.cf1", "fan.cf2", "fan.complete"]
REFLECTIVE_ORDER: List[str] = [
    "reflective.full_dimension", "reflective.stabilizer", "reflective.facet_in_wall",
]
WOODWARD_ORDER: List[str] = ["woodward.full_rank", "woodward.meets_walls", "woodward.facet_wall"]
DELZANT_ORDER: List[str] = ["delzant.basis"]
SIMPLE_ORDER: List[str] = ["simple.vertex"]

# 판정 → 전체 검사 순서 (선행 레벨 포함)
CHECK_ORDERS: Dict[str, List[str]] = {
    "q_compatible": Q_COMPATIBLE_ORDER,
    "q_admissible": Q_COMPATIBLE_ORDER + Q_ADMISSIBLE_ORDER,
    "admissible":   Q_COMPATIBLE_ORDER + Q_ADMISSIBLE_ORDER + ADMISSIBLE_ORDER,
    "smooth":       Q_COMPATIBLE_ORDER + Q_ADMISSIBLE_ORDER + ADMISSIBLE_ORDER + SMOOTH_ORDER,
    "reflexive":    Q_COMPATIBLE_ORDER + Q_ADMISSIBLE_ORDER + ADMISSIBLE_ORDER + REFLEXIVE_ORDER,
    "monoid":       MONOID_ORDER,
    "quadruple":    QUADRUPLE_ORDER + MONOID_ORDER,
    "colored_fan":  FAN_ORDER,
    "reflective":   REFLECTIVE_ORDER,
    "woodward":     WOODWARD_ORDER,
    "delzant":      DELZANT_ORDER,
    "simple":       SIMPLE_ORDER,
}

# 레벨 판정 중 데이터 테이블이 비어 있을 때 (evaluate_level)
REGISTRY_AXIOMS: List[str] = [f"{level}.registry" for level in CHECK_LEVELS]

AXIOM_IDS: FrozenSet[str] = frozenset(
    [axiom for order in CHECK_ORDERS.values() for axiom in order] + REGISTRY_AXIOMS
)

# face_has_divisor 절(clause) 이름
CLAUSE_COLOR: str = "color"
CLAUSE_WALL: str = "wall"
CLAUSE_VALUATION: str = "valuation"

# ── inspect --show 항목 ──────────────────────────────────────────────────────

SHOW_CHOICES: List[str] = [
    "facets", "orbit-faces", "colors", "colored-fan",
    "socles", "anticanonical", "face-divisors", "delzant",
]

# ── 병렬 처리 Worker 수 (단일 소스) ──────────────────────────────────────────
MAX_ENUMERATE_WORKERS: int = 16   # enumerate_sigma 후보 Σ 병렬 평가 상한

# ── 출력 형식 ────────────────────────────────────────────────────────────────
REPORT_FORMATS: List[str] = ["text", "json"]
