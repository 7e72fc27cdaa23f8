"""루트 시스템 산술 + 구면 루트(spherical root) 카탈로그

가중치 좌표: 기본 가중치(fundamental weights) 다음에 토러스 지표.
이 좌표에서 ⟨α_i^∨, λ⟩ 는 λ 의 i 번째 좌표이고, 단순 루트는 Cartan 행렬의 열.
custom 블록(GL(n) 등)은 단순 루트/코루트 행을 직접 받는다.
"""
import logging
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, StrictStr
from sympy import Integer, Rational

from spheromo.core.errors import RootSystemError
from spheromo.core.utils.exact import (
    Vector, add, combo, dot, format_rational, is_integral, parse_rational, scale, sub, zero,
)

logger = logging.getLogger(__name__)

# 타입별 허용 랭크 (C2 는 B2 의 별칭으로 허용)
_LEGAL_RANKS: Dict[str, Tuple[int, Optional[int]]] = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


# ── 입력 스펙 ────────────────────────────────────────────────────────────────

class CustomBlock(BaseModel):
    """비표준 동종/환원군(GL(n) 등) 용 명시적 단순 루트·코루트"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    simple_roots: List[List[Union[StrictInt, StrictStr]]]
    coroots: List[List[Union[StrictInt, StrictStr]]]


class RootSystemSpec(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    components: List[Tuple[str, int]] = Field(default_factory=list)
    torus_rank: int = 0
    custom: Optional[CustomBlock] = None


# ── 유클리드 실현 → Cartan 행렬 ──────────────────────────────────────────────

def _e(i: int, dim: int, c: Rational = Integer(1)) -> List[Rational]:
    v = [Integer(0)] * dim
    v[i] = c
    return v


def _euclidean_simple_roots(letter: str, n: int) -> List[List[Rational]]:
    """Bourbaki 번호 순서의 단순 루트 유클리드 실현"""
    half = Rational(1, 2)
    if letter == "A":
        return [[a - b for a, b in zip(_e(i, n + 1), _e(i + 1, n + 1))] for i in range(n)]
    if letter in ("B", "C", "D"):
        roots = [[a - b for a, b in zip(_e(i, n), _e(i + 1, n))] for i in range(n - 1)]
        if letter == "B":
            roots.append(_e(n - 1, n))
        elif letter == "C":
            roots.append(_e(n - 1, n, Integer(2)))
        else:
            roots.append([a + b for a, b in zip(_e(n - 2, n), _e(n - 1, n))])
        return roots
    if letter == "G":
        return [[Integer(1), Integer(-1), Integer(0)], [Integer(-2), Integer(1), Integer(1)]]
    if letter == "F":
        return [
            [Integer(0), Integer(1), Integer(-1), Integer(0)],
            [Integer(0), Integer(0), Integer(1), Integer(-1)],
            [Integer(0), Integer(0), Integer(0), Integer(1)],
            [half, -half, -half, -half],
        ]
    if letter == "E":
        e8 = [
            [half, -half, -half, -half, -half, -half, -half, half],
            [a + b for a, b in zip(_e(0, 8), _e(1, 8))],
        ]
        for i in range(6):
            e8.append([a - b for a, b in zip(_e(i + 1, 8), _e(i, 8))])
        return e8[:n]
    raise RootSystemError(f"unknown Dynkin type {letter}")


def standard_cartan(letter: str, n: int) -> List[List[int]]:
    """a_ij = ⟨α_i^∨, α_j⟩ = 2(α_i,α_j)/(α_i,α_i)"""
    roots = _euclidean_simple_roots(letter, n)
    out = []
    for ai in roots:
        norm = dot(ai, ai)
        out.append([int(2 * dot(ai, aj) / norm) for aj in roots])
    return out


def _check_type(letter: str, n: int) -> None:
    if letter not in _LEGAL_RANKS:
        raise RootSystemError(f"illegal Dynkin type '{letter}'")
    lo, hi = _LEGAL_RANKS[letter]
    if n < lo or (hi is not None and n > hi):
        raise RootSystemError(f"illegal rank {n} for type {letter}")


def diagram_isomorphisms(target: Sequence[Sequence[int]], sub_cartan: Sequence[Sequence[int]]):
    """target(Bourbaki 번호) → sub_cartan 인덱스 대응 φ 중 Cartan 값을 보존하는 것 전부 (backtracking)"""
    m = len(target)
    if len(sub_cartan) != m:
        return

    def extend(prefix: List[int]):
        a = len(prefix)
        if a == m:
            yield tuple(prefix)
            return
        for cand in range(m):
            if cand in prefix:
                continue
            if sub_cartan[cand][cand] != target[a][a]:
                continue
            if all(target[a][b] == sub_cartan[cand][prefix[b]] and target[b][a] == sub_cartan[prefix[b]][cand]
                   for b in range(a)):
                yield from extend(prefix + [cand])

    yield from extend([])


# ── 구면 루트 ────────────────────────────────────────────────────────────────

def _row_patterns(letter: str, m: int) -> List[Tuple[str, List[Rational]]]:
    """연결 지지집합 타입별 구면 루트 행 (Bourbaki 번호 계수)"""
    one, two, half = Integer(1), Integer(2), Rational(1, 2)
    rows: List[Tuple[str, List[Rational]]] = []
    if letter == "A":
        rows.append(("A.sum", [one] * m))
        if m == 1:
            rows.append(("A1.double", [two]))
        if m == 3:
            rows.append(("A3.middle", [one, two, one]))
            rows.append(("A3.half", [half, one, half]))
    elif letter == "B":
        rows.append(("B.sum", [one] * m))
        rows.append(("B.double", [two] * m))
        if m == 3:
            rows.append(("B3.special", [one, two, Integer(3)]))
            rows.append(("B3.half", [half, one, Rational(3, 2)]))
    elif letter == "C" and m >= 3:
        rows.append(("C.sum", [one] + [two] * (m - 2) + [one]))
    elif letter == "D":
        rows.append(("D.double", [two] * (m - 2) + [one, one]))
        rows.append(("D.half", [one] * (m - 2) + [half, half]))
    elif letter == "F":
        rows.append(("F4", [one, two, Integer(3), two]))
    elif letter == "G":
        rows.append(("G2.sum", [one, one]))
        rows.append(("G2.double", [two, one]))
        rows.append(("G2.quad", [Integer(4), two]))
    return rows


def _candidate_types(m: int) -> List[Tuple[str, int]]:
    out = [("A", m)]
    if m >= 2:
        out.append(("B", m))
    if m >= 3:
        out.append(("C", m))
    if m >= 4:
        out.append(("D", m))
    if m in (6, 7, 8):
        out.append(("E", m))
    if m == 4:
        out.append(("F", 4))
    if m == 2:
        out.append(("G", 2))
    return out


class SphericalRoot:
    """단순 루트의 음이 아닌 유리 결합 + 카탈로그 행 태그

    coeffs 는 전체 단순 루트 길이의 dense 벡터, labels 는 행 타입의 Bourbaki 번호 순서로 본 전역 인덱스.
    동등성은 계수만으로 판단한다.
    """

    __slots__ = ("coeffs", "tag", "labels")

    def __init__(self, coeffs: Sequence[Rational], tag: str, labels: Sequence[int]):
        self.coeffs: Tuple[Rational, ...] = tuple(Rational(c) for c in coeffs)
        self.tag = tag
        self.labels: Tuple[int, ...] = tuple(labels)

    @property
    def support(self) -> FrozenSet[int]:
        return frozenset(i for i, c in enumerate(self.coeffs) if c != 0)

    @property
    def sort_key(self):
        return (tuple(sorted(self.support)), self.coeffs)

    def simple_index(self) -> Optional[int]:
        """σ = α_i ∈ S 이면 i"""
        supp = self.support
        if len(supp) == 1:
            (i,) = supp
            if self.coeffs[i] == 1:
                return i
        return None

    def doubled(self) -> Vector:
        return tuple(2 * c for c in self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, SphericalRoot) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"SphericalRoot({self.tag}, {[format_rational(c) for c in self.coeffs]})"


# ── 루트 시스템 ──────────────────────────────────────────────────────────────

class RootSystem:
    """단순 루트·코루트·양의 루트·Weyl 반사를 가진 불변 루트 시스템"""

    def __init__(
        self,
        simple_roots: List[Vector],
        coroots: List[Vector],
        rank: int,
        component_of: List[int],
        local_index: List[int],
        standard: bool,
    ):
        self.simple_roots = simple_roots
        self.coroots = coroots
        self.rank = rank
        self.nsimple = len(simple_roots)
        self.component_of = component_of
        self.local_index = local_index
        self.standard = standard
        self.cartan: List[List[int]] = [
            [int(dot(self.coroots[i], self.simple_roots[j])) for j in range(self.nsimple)]
            for i in range(self.nsimple)
        ]

    # 쌍(pairing)과 반사
    def pair(self, i: int, weight: Sequence[Rational]) -> Rational:
        if not 0 <= i < self.nsimple:
            raise RootSystemError(f"no simple root with index {i + 1}")
        return dot(self.coroots[i], weight)

    def reflect(self, i: int, weight: Sequence[Rational]) -> Vector:
        return sub(weight, scale(self.pair(i, weight), self.simple_roots[i]))

    def is_dominant(self, weight: Sequence[Rational]) -> bool:
        return all(self.pair(i, weight) >= 0 for i in range(self.nsimple))

    def orthogonal(self, i: int, j: int) -> bool:
        return i != j and self.cartan[i][j] == 0

    def root_weight(self, coeffs: Sequence[Rational]) -> Vector:
        return combo(coeffs, self.simple_roots, self.rank)

    def sigma_weight(self, sigma: SphericalRoot) -> Vector:
        return self.root_weight(sigma.coeffs)

    # 이름
    def root_name(self, i: int) -> str:
        """성분별 Bourbaki 번호 + 성분 순서만큼 프라임 (alpha1, alpha1', ...)"""
        return f"alpha{self.local_index[i] + 1}" + "'" * self.component_of[i]

    def index_of(self, name: str) -> int:
        """'alphaK' (전역 번호) 또는 'alphaK'' (성분 로컬 번호)"""
        text = name.strip()
        if not text.startswith("alpha"):
            raise RootSystemError(f"unknown simple root '{name}'")
        body = text[len("alpha"):]
        primes = len(body) - len(body.rstrip("'"))
        digits = body.rstrip("'")
        if not digits.isdigit():
            raise RootSystemError(f"unknown simple root '{name}'")
        k = int(digits)
        if primes == 0 and 1 <= k <= self.nsimple:
            return k - 1
        for i in range(self.nsimple):
            if self.component_of[i] == primes and self.local_index[i] == k - 1:
                return i
        raise RootSystemError(f"unknown simple root '{name}'")

    # 양의 루트 (α-string closure)
    @cached_property
    def positive_roots(self) -> List[Tuple[int, ...]]:
        r = self.nsimple
        units = [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
        roots = set(units)
        layer = list(units)
        while layer:
            nxt = []
            for beta in layer:
                for i in range(r):
                    if beta == units[i]:
                        continue
                    p = 0
                    while True:
                        lower = tuple(b - (p + 1) * (1 if j == i else 0) for j, b in enumerate(beta))
                        if min(lower) < 0 or lower not in roots:
                            break
                        p += 1
                    pairing = sum(beta[j] * self.cartan[i][j] for j in range(r))
                    if p - pairing > 0:
                        gamma = tuple(b + (1 if j == i else 0) for j, b in enumerate(beta))
                        if gamma not in roots:
                            roots.add(gamma)
                            nxt.append(gamma)
            layer = nxt
        return sorted(roots, key=lambda c: (sum(c), c))

    def two_rho(self, subset: Optional[Iterable[int]] = None) -> Vector:
        """부분계 S' 의 양의 루트 합 (= 2ρ_{S'}). subset 생략 시 전체 S."""
        chosen = set(range(self.nsimple)) if subset is None else set(subset)
        total = zero(self.rank)
        for c in self.positive_roots:
            if all(j in chosen for j, x in enumerate(c) if x):
                total = add(total, self.root_weight(c))
        return total

    # 부분 다이어그램
    def sub_cartan(self, indices: Sequence[int]) -> List[List[int]]:
        return [[self.cartan[i][j] for j in indices] for i in indices]

    def is_connected(self, indices: Sequence[int]) -> bool:
        idx = list(indices)
        if not idx:
            return False
        seen = {idx[0]}
        stack = [idx[0]]
        while stack:
            a = stack.pop()
            for b in idx:
                if b not in seen and self.cartan[a][b] != 0:
                    seen.add(b)
                    stack.append(b)
        return len(seen) == len(idx)

    def components(self, indices: Iterable[int]) -> List[List[int]]:
        rest = sorted(set(indices))
        comps = []
        while rest:
            comp = [rest[0]]
            grown = True
            while grown:
                grown = False
                for b in rest:
                    if b not in comp and any(self.cartan[a][b] != 0 for a in comp):
                        comp.append(b)
                        grown = True
            comps.append(sorted(comp))
            rest = [b for b in rest if b not in comp]
        return comps

    def connected_type(self, indices: Sequence[int]) -> Optional[str]:
        """연결 부분집합의 Dynkin 타입 문자열 (예: 'A2', 'B3')"""
        sub_c = self.sub_cartan(indices)
        for letter, m in _candidate_types(len(indices)):
            if next(diagram_isomorphisms(standard_cartan(letter, m), sub_c), None) is not None:
                return f"{letter}{m}"
        return None

    def diagram_type(self, indices: Iterable[int]) -> str:
        """부분집합의 타입 (성분 정렬 후 'x' 로 연결, 빈 집합은 '')"""
        names = sorted(self.connected_type(c) or "?" for c in self.components(indices))
        return "x".join(names)

    # 카탈로그
    @cached_property
    def catalog(self) -> List[SphericalRoot]:
        return spherical_root_catalog(self)

    def catalog_lookup(self, coeffs: Sequence[Rational]) -> Optional[SphericalRoot]:
        key = tuple(Rational(c) for c in coeffs)
        for s in self.catalog:
            if s.coeffs == key:
                return s
        return None


# ── 연산 ─────────────────────────────────────────────────────────────────────

def _build_standard(spec: RootSystemSpec) -> RootSystem:
    blocks = []
    for letter, n in spec.components:
        letter = letter.upper()
        _check_type(letter, n)
        if (letter, n) == ("C", 2):
            # B2 와 같은 번호 (α1 긴 루트)
            letter = "B"
        blocks.append(standard_cartan(letter, n))
    if spec.torus_rank < 0:
        raise RootSystemError("torus_rank must be nonnegative")
    r = sum(len(b) for b in blocks)
    rank = r + spec.torus_rank
    simple_roots, coroots, component_of, local_index = [], [], [], []
    offset = 0
    for c, block in enumerate(blocks):
        m = len(block)
        for j in range(m):
            # α_j = Cartan 열 (가중치 좌표), 토러스 성분은 0
            col = [Integer(0)] * rank
            for i in range(m):
                col[offset + i] = Integer(block[i][j])
            simple_roots.append(tuple(col))
            coroots.append(tuple(Integer(1 if k == offset + j else 0) for k in range(rank)))
            component_of.append(c)
            local_index.append(j)
        offset += m
    return RootSystem(simple_roots, coroots, rank, component_of, local_index, standard=True)


def _build_custom(spec: RootSystemSpec) -> RootSystem:
    block = spec.custom
    roots = [tuple(parse_rational(x) for x in row) for row in block.simple_roots]
    coroots = [tuple(parse_rational(x) for x in row) for row in block.coroots]
    if len(roots) != len(coroots):
        raise RootSystemError("custom block: simple_roots and coroots differ in count")
    widths = {len(r) for r in roots + coroots}
    if len(widths) > 1:
        raise RootSystemError("custom block: rows of different length")
    rank = widths.pop() if widths else spec.torus_rank
    r = len(roots)
    pairing = [[dot(coroots[i], roots[j]) for j in range(r)] for i in range(r)]
    for i in range(r):
        if pairing[i][i] != 2:
            raise RootSystemError(f"inconsistent custom pairing matrix: diagonal entry {i + 1} is not 2")
        for j in range(r):
            if i == j:
                continue
            if not is_integral([pairing[i][j]]) or pairing[i][j] > 0:
                raise RootSystemError(
                    f"inconsistent custom pairing matrix: entry ({i + 1},{j + 1}) must be a nonpositive integer"
                )
            if (pairing[i][j] == 0) != (pairing[j][i] == 0):
                raise RootSystemError(f"inconsistent custom pairing matrix: ({i + 1},{j + 1}) not symmetric in zeros")
    system = RootSystem(roots, coroots, rank, [0] * r, list(range(r)), standard=False)
    # 연결 성분별로 표준 타입과 일치해야 함 (성분 번호/로컬 번호도 여기서 부여)
    for c, comp in enumerate(system.components(range(r))):
        if system.connected_type(comp) is None:
            raise RootSystemError(f"inconsistent custom pairing matrix: component {comp} is not a Cartan matrix")
        for local, i in enumerate(comp):
            system.component_of[i] = c
            system.local_index[i] = local
    return system


def build_root_system(spec: RootSystemSpec) -> RootSystem:
    """RootSystemSpec → RootSystem (표준 블록 또는 custom 블록)"""
    if spec.custom is not None:
        if spec.components:
            raise RootSystemError("give either components or a custom block, not both")
        system = _build_custom(spec)
    else:
        system = _build_standard(spec)
    logger.debug(f"root system: rank={system.rank}, simple roots={system.nsimple}")
    return system


def pair(system: RootSystem, i: int, weight: Sequence[Rational]) -> Rational:
    return system.pair(i, weight)


def two_rho(system: RootSystem, subset: Optional[Iterable[int]] = None) -> Vector:
    return system.two_rho(subset)


def spherical_root_catalog(system: RootSystem) -> List[SphericalRoot]:
    """연결 부분 다이어그램 + 직교쌍(A1×A1) 에 카탈로그 행을 다이어그램 동형으로 인스턴스화"""
    r = system.nsimple
    found: Dict[Tuple[Rational, ...], SphericalRoot] = {}

    def emit(tag: str, labels: Sequence[int], coeffs_by_label: Sequence[Rational]) -> None:
        dense = [Integer(0)] * r
        for idx, c in zip(labels, coeffs_by_label):
            dense[idx] = Rational(c)
        key = tuple(dense)
        if key not in found:
            found[key] = SphericalRoot(dense, tag, labels)

    for mask in range(1, 1 << r):
        indices = [i for i in range(r) if mask >> i & 1]
        if not system.is_connected(indices):
            continue
        sub_c = system.sub_cartan(indices)
        for letter, m in _candidate_types(len(indices)):
            target = standard_cartan(letter, m)
            for phi in diagram_isomorphisms(target, sub_c):
                labels = [indices[p] for p in phi]
                for tag, coeffs in _row_patterns(letter, m):
                    emit(tag, labels, coeffs)

    half = Rational(1, 2)
    for i in range(r):
        for j in range(i + 1, r):
            if system.orthogonal(i, j):
                emit("A1xA1.sum", (i, j), (Integer(1), Integer(1)))
                emit("A1xA1.half", (i, j), (half, half))

    return sorted(found.values(), key=lambda s: s.sort_key)


def luna_axiom_S(system: RootSystem, sp: Iterable[int], sigma: SphericalRoot, table) -> bool:
    """Luna 공리 (S): Sp 의 모든 α 가 σ 와 직교하고, Sp∩supp(σ) 가 테이블이 허용하는 부분집합.

    테이블에 σ 의 행이 없으면 UnsupportedError (조용한 통과 금지).
    """
    sp = frozenset(sp)
    weight = system.sigma_weight(sigma)
    for a in sp:
        if system.pair(a, weight) != 0:
            return False
    required, optional = table.permitted(sigma)
    inter = sp & sigma.support
    return required <= inter <= (required | optional)


def spherically_closed(system: RootSystem, sigmas: Iterable[SphericalRoot], sp: Iterable[int]) -> List[SphericalRoot]:
    """σ → 2σ 치환: B_n 합(α2..αn ∈ Sp), G2 의 2α1+α2, 루트 격자 밖의 σ"""
    sp = frozenset(sp)
    out = []
    for s in sigmas:
        double = False
        if s.tag == "B.sum" and all(i in sp for i in s.labels[1:]):
            double = True
        elif s.tag == "G2.double":
            double = True
        elif not is_integral(s.coeffs):
            double = True
        if double:
            closed = system.catalog_lookup(s.doubled())
            out.append(closed if closed is not None else SphericalRoot(s.doubled(), f"{s.tag}*2", s.labels))
        else:
            out.append(s)
    return sorted(out, key=lambda x: x.sort_key)


def format_sigma(system: RootSystem, sigma: SphericalRoot) -> str:
    """'alpha1+alpha3', '2alpha1', '1/2(alpha1+alpha1')' 형식"""
    terms = [(i, c) for i, c in enumerate(sigma.coeffs) if c != 0]
    if not terms:
        return "0"
    values = {c for _, c in terms}
    if len(values) == 1:
        (c,) = values
        body = "+".join(system.root_name(i) for i, _ in terms)
        if c == 1:
            return body
        if len(terms) == 1:
            return f"{format_rational(c)}{body}"
        return f"{format_rational(c)}({body})"
    return "+".join(
        (system.root_name(i) if c == 1 else f"{format_rational(c)}{system.root_name(i)}") for i, c in terms
    )


# 행 태그 → (Dynkin 문자, 최소 랭크). A1×A1 행은 별도 처리
ROW_TYPES: Dict[str, Tuple[str, int]] = {
    "A.sum": ("A", 1), "A1.double": ("A", 1), "A3.middle": ("A", 3), "A3.half": ("A", 3),
    "B.sum": ("B", 2), "B.double": ("B", 2), "B3.special": ("B", 3), "B3.half": ("B", 3),
    "C.sum": ("C", 3), "D.double": ("D", 4), "D.half": ("D", 4), "F4": ("F", 4),
    "G2.sum": ("G", 2), "G2.double": ("G", 2), "G2.quad": ("G", 2),
}


def row_instance(tag: str, m: int) -> Optional[Tuple[List[List[int]], List[Rational]]]:
    """행 태그의 랭크 m 표준 인스턴스 (Cartan, 계수). 해당 랭크에 행이 없으면 None."""
    half = Rational(1, 2)
    if tag == "A1xA1.sum":
        return ([[2, 0], [0, 2]], [Integer(1), Integer(1)]) if m == 2 else None
    if tag == "A1xA1.half":
        return ([[2, 0], [0, 2]], [half, half]) if m == 2 else None
    if tag not in ROW_TYPES:
        return None
    letter, lo = ROW_TYPES[tag]
    if m < lo:
        return None
    try:
        _check_type(letter, m)
    except RootSystemError:
        return None
    for row_tag, coeffs in _row_patterns(letter, m):
        if row_tag == tag:
            return standard_cartan(letter, m), coeffs
    return None
