"""모멘텀 삼중쌍 판정 엔진

(Ξ, Q, Σ) 에 대해 Q-호환성 · Q-허용성 · 허용성 · 모노이드 판정 · 사중쌍 · 반사성(Fano)
을 정확한 유리수로 검사하고, 주어진 (Ξ, Q) 에 대한 모든 Σ 를 열거한다.
모든 판정은 정해진 순서로 공리를 검사하며 첫 번째 실패만 보고한다.
"""
import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from functools import cached_property
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from sympy import Integer, Rational

from spheromo.core.constants import (
    LEVEL_ADMISSIBLE, LEVEL_ALIASES, LEVEL_Q_ADMISSIBLE, LEVEL_Q_REFLEXIVE, LEVEL_REFLEXIVE,
    LEVEL_SMOOTH, LEVEL_SMOOTH_R, MAX_ENUMERATE_WORKERS, STATUS_UNSUPPORTED,
)
from spheromo.core.data.registry import LunaSTable, load_luna_table
from spheromo.core.engine.polykernel import (
    Facet, RationalPolytope, Sublattice, dual_rays, orbit_vertices, same_hyperplane,
)
from spheromo.core.engine.rootsys import RootSystem, SphericalRoot, format_sigma, luna_axiom_S
from spheromo.core.errors import InputError, LatticeError, SpheromoError, UnsupportedError
from spheromo.core.utils.exact import (
    Vector, dot, format_rational, format_vector, fresh_symbols, is_integral, is_primitive_integral,
    lattice_basis, lcm_denominators, lp_feasible, positive_multiple, scale, sub,
)
from spheromo.core.utils.verdict import Verdict, failed, passed, unsupported

logger = logging.getLogger(__name__)


# ── (Ξ, Q) 공통 데이터 ───────────────────────────────────────────────────────

class MomentumPair:
    """루트 시스템 + 격자 Ξ + 우세 다면체 Q + Luna (S) 테이블"""

    def __init__(self, system: RootSystem, polytope: RationalPolytope, table: Optional[LunaSTable] = None):
        if polytope.lattice.ambient_rank != system.rank:
            raise LatticeError(f"rank mismatch: polytope in rank {polytope.lattice.ambient_rank}, group rank {system.rank}")
        for v in polytope.vertices:
            if not system.is_dominant(v):
                raise LatticeError(f"vertex {format_vector(v)} is not dominant")
        self.system = system
        self.polytope = polytope
        self.lattice: Sublattice = polytope.lattice
        self.table = table if table is not None else load_luna_table()

    @cached_property
    def coroots(self) -> List[Vector]:
        """α_i^∨|_Ξ (Ξ 기저 위의 값)"""
        return [self.lattice.restrict(c) for c in self.system.coroots]

    @cached_property
    def s_perp_lattice(self) -> FrozenSet[int]:
        return frozenset(i for i, c in enumerate(self.coroots) if all(x == 0 for x in c))

    @cached_property
    def s_perp_polytope(self) -> FrozenSet[int]:
        return frozenset(
            i for i in range(self.system.nsimple)
            if all(self.system.pair(i, v) == 0 for v in self.polytope.vertices)
        )

    @cached_property
    def root_coords(self) -> List[Optional[Vector]]:
        """단순 루트의 Ξ_Q 좌표 (Ξ_Q 밖이면 None)"""
        return [self.lattice.coordinates(a) for a in self.system.simple_roots]

    def sigma_coords(self, sigma: SphericalRoot) -> Optional[Vector]:
        return self.lattice.coordinates(self.system.sigma_weight(sigma))

    def vanishes_on(self, i: int, face) -> bool:
        return all(self.system.pair(i, self.polytope.vertices[j]) == 0 for j in face)

    def positive_on_root(self, functional: Sequence[Rational], i: int) -> bool:
        coords = self.root_coords[i]
        return coords is not None and dot(functional, coords) > 0

    def name(self, sigma: SphericalRoot) -> str:
        return format_sigma(self.system, sigma)

    def scaled(self, n: int) -> "MomentumPair":
        return MomentumPair(self.system, self.polytope.scaled(n), self.table)


class MomentumTripleInput:
    """(R, Ξ, Q, Σ) — Σ 는 카탈로그 원소, 정렬 보관"""

    def __init__(self, pair: MomentumPair, sigmas: Sequence[SphericalRoot]):
        catalog = set(pair.system.catalog)
        for s in sigmas:
            if s not in catalog:
                raise InputError(f"{pair.name(s)} is not a spherical root of this group")
        self.pair = pair
        self.sigmas: List[SphericalRoot] = sorted(set(sigmas), key=lambda s: s.sort_key)

    @property
    def system(self) -> RootSystem:
        return self.pair.system

    @property
    def polytope(self) -> RationalPolytope:
        return self.pair.polytope


class AlphaPair:
    """α ∈ Σ∩S 에 대한 두 추상 color D_α^± 와 ρ 값"""

    __slots__ = ("alpha", "facet", "plus", "minus")

    def __init__(self, alpha: int, facet: Facet, plus: Vector, minus: Vector):
        self.alpha = alpha
        self.facet = facet
        self.plus = plus
        self.minus = minus

    @property
    def rhos(self) -> Tuple[Vector, Vector]:
        return (self.plus, self.minus)

    def __repr__(self) -> str:
        return f"AlphaPair(alpha{self.alpha + 1}, +{format_vector(self.plus)}, -{format_vector(self.minus)})"


def double_index(sigma: SphericalRoot) -> Optional[int]:
    """σ = 2α_i 이면 i"""
    supp = sigma.support
    if len(supp) == 1:
        (i,) = supp
        if sigma.coeffs[i] == 2:
            return i
    return None


def orthogonal_pair(sigma: SphericalRoot) -> Optional[Tuple[int, int]]:
    if sigma.tag.startswith("A1xA1"):
        a, b = sigma.labels
        return a, b
    return None


# ── 격자 호환성 (Ξ 또는 Ξ̃ 공통) ─────────────────────────────────────────────

def _lattice_checks(
    system: RootSystem,
    table: LunaSTable,
    sigma: SphericalRoot,
    coords: Optional[Vector],
    coroots: List[Vector],
    s_perp: FrozenSet[int],
    prefix: str,
) -> Optional[Verdict]:
    """primitive → Luna (S) → 직교쌍 등식 → 2α 짝수성. 통과하면 None."""
    name = format_sigma(system, sigma)
    if coords is None or not is_primitive_integral(coords):
        shown = "outside Ξ_Q" if coords is None else format_vector(coords)
        return failed(f"{prefix}.primitive", f"{name} not primitive in lattice", sigma=name, coords=shown)
    try:
        ok = luna_axiom_S(system, s_perp, sigma, table)
    except UnsupportedError as e:
        return unsupported(f"{prefix}.luna_s", str(e), sigma=name)
    if not ok:
        sp = ",".join(system.root_name(i) for i in sorted(s_perp)) or "-"
        return failed(f"{prefix}.luna_s", f"Luna (S) fails for ({{{sp}}}, {name})", sigma=name, s_perp=sp)
    pair = orthogonal_pair(sigma)
    if pair is not None:
        a, b = pair
        if coroots[a] != coroots[b]:
            return failed(
                f"{prefix}.orthogonal_pair",
                f"{system.root_name(a)}^v and {system.root_name(b)}^v differ on the lattice",
                sigma=name, left=format_vector(coroots[a]), right=format_vector(coroots[b]),
            )
    d = double_index(sigma)
    if d is not None and not all(Rational(x) % 2 == 0 for x in coroots[d]):
        return failed(
            f"{prefix}.even_pairing",
            f"{system.root_name(d)}^v is not even on the lattice",
            sigma=name, functional=format_vector(coroots[d]),
        )
    return None


# ── Q-호환성 ─────────────────────────────────────────────────────────────────

def _mirror_facet(pair: MomentumPair, i: int) -> Tuple[Optional[Facet], List[Facet]]:
    """⟨ρ_F,α⟩=1 이고 나머지 양의 facet 이 모두 s_α(H_F) 위에 있는 사전식 최소 F"""
    coords = pair.root_coords[i]
    if coords is None:
        return None, []
    polytope = pair.polytope
    positive = [f for f in polytope.facets if dot(f.normal, coords) > 0]
    for f in positive:
        if dot(f.normal, coords) != 1:
            continue
        mirror = (sub(pair.coroots[i], f.normal), pair.system.pair(i, polytope.omega) - f.offset)
        if all(g is f or same_hyperplane((g.normal, g.offset), mirror) for g in positive):
            return f, positive
    return None, positive


def q_compatible(pair: MomentumPair, sigma: SphericalRoot) -> Verdict:
    """σ 가 (Ξ, Q) 와 Q-호환인지 (격자 4개 → 다면체 4개 순서)"""
    system = pair.system
    name = pair.name(sigma)
    coords = pair.sigma_coords(sigma)
    verdict = _lattice_checks(system, pair.table, sigma, coords, pair.coroots, pair.s_perp_lattice, "lattice")
    if verdict is not None:
        return verdict

    try:
        ok = luna_axiom_S(system, pair.s_perp_polytope, sigma, pair.table)
    except UnsupportedError as e:
        return unsupported("polytope.luna_s", str(e), sigma=name)
    if not ok:
        sp = ",".join(system.root_name(i) for i in sorted(pair.s_perp_polytope)) or "-"
        return failed("polytope.luna_s", f"Luna (S) fails for (S^p(Q)={{{sp}}}, {name})", sigma=name, s_perp=sp)

    polytope = pair.polytope
    i = sigma.simple_index()
    trace = []
    if i is None:
        free = [a for a in range(system.nsimple) if a not in pair.s_perp_polytope]
        for f in polytope.facets:
            if dot(f.normal, coords) > 0 and not any(pair.vanishes_on(a, f.vertices) for a in free):
                return failed(
                    "polytope.facet_vanishing",
                    f"facet {format_vector(f.normal)} is positive on {name} but lies in no coroot wall",
                    sigma=name, facet=format_vector(f.normal),
                )
    else:
        chosen, positive = _mirror_facet(pair, i)
        if chosen is None:
            ones = [f for f in positive if dot(f.normal, coords) == 1]
            if not ones:
                return failed(
                    "polytope.mirror_facet", f"no facet with <rho_F, {name}> = 1",
                    sigma=name, positive=[format_vector(f.normal) for f in positive],
                )
            return failed(
                "polytope.mirror_facet",
                f"facets positive on {name} are not F and s_alpha(F)",
                sigma=name, facet=format_vector(ones[0].normal),
                positive=[format_vector(f.normal) for f in positive],
            )
        trace.append(f"{name}: facet {format_vector(chosen.normal)} (<rho_F,{name}>=1)")

    op = orthogonal_pair(sigma)
    if op is not None:
        a, b = op
        for v in polytope.vertices:
            if system.pair(a, v) != system.pair(b, v):
                return failed(
                    "polytope.a1xa1_equal",
                    f"{system.root_name(a)}^v and {system.root_name(b)}^v differ at vertex {format_vector(v)}",
                    sigma=name, vertex=format_vector(v),
                )
    logger.debug(f"Q-호환: {name}")
    return passed(*trace)


def build_A(pair: MomentumPair, alpha: int) -> AlphaPair:
    """A(α) = {D_α^+, D_α^-}: ρ(D^+)=ρ_F, ρ(D^-)=α^∨|_Ξ − ρ_F"""
    coeffs = [Integer(1) if j == alpha else Integer(0) for j in range(pair.system.nsimple)]
    sigma = pair.system.catalog_lookup(coeffs) or SphericalRoot(coeffs, "A.sum", [alpha])
    verdict = q_compatible(pair, sigma)
    if not verdict.passed:
        raise SpheromoError(f"{pair.system.root_name(alpha)} is not Q-compatible ({verdict.axiom})")
    facet, _ = _mirror_facet(pair, alpha)
    return AlphaPair(alpha, facet, facet.normal, sub(pair.coroots[alpha], facet.normal))


# ── Q-허용성 / 허용성 ────────────────────────────────────────────────────────

def _pairwise(
    pair: MomentumPair,
    sigmas: Sequence[SphericalRoot],
    coords: Dict[SphericalRoot, Vector],
    splits: Dict[int, Tuple[Vector, Vector]],
    prefix: str,
) -> Optional[Verdict]:
    """⟨ρ(D),σ⟩ ≤ 1, 등호는 σ=β∈S 이고 ρ(D)∈A(β) 일 때만"""
    checks = []
    for i, rhos in splits.items():
        for rho in rhos:
            for s in sigmas:
                if s.simple_index() == i:
                    continue
                checks.append((i, rho, s, dot(rho, coords[s])))
    for i, rho, s, value in checks:
        if value > 1:
            return failed(
                f"{prefix}.le_one",
                f"<rho(D), {pair.name(s)}> = {format_rational(value)} > 1 for D in A({pair.system.root_name(i)})",
                alpha=pair.system.root_name(i), rho=format_vector(rho), sigma=pair.name(s), value=format_rational(value),
            )
    for i, rho, s, value in checks:
        j = s.simple_index()
        if value == 1 and not (j is not None and rho in splits.get(j, ())):
            return failed(
                f"{prefix}.equality",
                f"<rho(D), {pair.name(s)}> = 1 without a matching color of {pair.name(s)}",
                alpha=pair.system.root_name(i), rho=format_vector(rho), sigma=pair.name(s),
            )
    return None


def q_admissible(pair: MomentumPair, sigmas: Sequence[SphericalRoot]) -> Verdict:
    trace = []
    for s in sigmas:
        verdict = q_compatible(pair, s)
        if not verdict.passed:
            return verdict
        trace.extend(verdict.trace)
    coords = {s: pair.sigma_coords(s) for s in sigmas}
    splits = {}
    for s in sigmas:
        i = s.simple_index()
        if i is not None:
            splits[i] = build_A(pair, i).rhos
    verdict = _pairwise(pair, sigmas, coords, splits, "pairwise")
    if verdict is not None:
        return verdict.with_trace(*trace)
    return passed(*trace)


def rescaled_normal(pair: MomentumPair, facet: Facet, sigmas: Sequence[SphericalRoot]) -> Vector:
    """ρ^Σ_F: ⟨ρ_F,α⟩>0 인 α ∈ S∩½Σ 가 있으면 ½α^∨|_Ξ, 아니면 ρ_F"""
    for s in sigmas:
        i = double_index(s)
        if i is not None and pair.positive_on_root(facet.normal, i):
            return scale(Rational(1, 2), pair.coroots[i])
    return facet.normal


def m_sigma(pair: MomentumPair, facet: Facet, v: Sequence[Rational], sigmas: Sequence[SphericalRoot]) -> Rational:
    """m^Σ_{F,v} = −⟨ρ^Σ_F, F − v⟩"""
    polytope = pair.polytope
    rho = rescaled_normal(pair, facet, sigmas)
    on_face = polytope.points[min(facet.vertices)]
    return -dot(rho, sub(on_face, polytope.coords(v)))


def relevant_roots(pair: MomentumPair, sigmas: Sequence[SphericalRoot]) -> FrozenSet[int]:
    """S ∩ (Σ ∪ ½Σ)"""
    out = set()
    for s in sigmas:
        i = s.simple_index()
        if i is None:
            i = double_index(s)
        if i is not None:
            out.add(i)
    return frozenset(out)


def sigma_orbit_vertices(pair: MomentumPair, sigmas: Sequence[SphericalRoot]) -> List[int]:
    return orbit_vertices(pair.polytope, [pair.system.sigma_weight(s) for s in sigmas])


def admissible(pair: MomentumPair, sigmas: Sequence[SphericalRoot]) -> Verdict:
    verdict = q_admissible(pair, sigmas)
    if not verdict.passed:
        return verdict
    polytope = pair.polytope
    ov = sigma_orbit_vertices(pair, sigmas)
    names = [format_vector(polytope.vertices[j]) for j in ov]
    if not ov:
        return failed("admissible.orbit_differences", "no orbit vertex")
    base = polytope.vertices[ov[0]]
    for j in ov[1:]:
        if not pair.lattice.member(sub(polytope.vertices[j], base)):
            return failed(
                "admissible.orbit_differences",
                "difference of orbit vertices is not in the lattice",
                v=format_vector(polytope.vertices[j]), w=format_vector(base),
            )
    if not is_integral(base):
        return failed(
            "admissible.vertex_in_weight_lattice",
            f"orbit vertex {format_vector(base)} is not in the weight lattice",
            vertex=format_vector(base),
        )
    relevant = relevant_roots(pair, sigmas)
    for f in polytope.facets:
        if any(pair.positive_on_root(f.normal, i) for i in relevant):
            m = m_sigma(pair, f, base, sigmas)
            if Rational(m).q != 1:
                return failed(
                    "admissible.integral_offset",
                    f"m^Sigma = {format_rational(m)} is not an integer",
                    facet=format_vector(f.normal), vertex=format_vector(base), m=format_rational(m),
                )
    return passed(*verdict.trace, f"orbit vertices: {', '.join(names)}")


def scale_to_admissible(pair: MomentumPair, sigmas: Sequence[SphericalRoot]) -> Tuple[Optional[int], Verdict]:
    """Q-허용 Σ 에 대해 Σ 가 (Ξ, nQ) 에서 허용인 최소 n (1..N)"""
    verdict = q_admissible(pair, sigmas)
    if not verdict.passed:
        return None, verdict
    polytope = pair.polytope
    ov = sigma_orbit_vertices(pair, sigmas)
    values: List[Rational] = [x for v in polytope.vertices for x in v]
    for j in ov:
        diff = pair.lattice.coordinates(sub(polytope.vertices[j], polytope.vertices[ov[0]]))
        values.extend(diff)
        for f in polytope.facets:
            values.append(m_sigma(pair, f, polytope.vertices[j], sigmas))
    bound = lcm_denominators(values)
    for n in range(1, bound + 1):
        verdict = admissible(pair.scaled(n), sigmas)
        if verdict.passed:
            logger.info(f"스케일 인수 n={n} (상한 {bound})")
            return n, verdict.with_trace(f"scale n={n} (bound {bound})")
    # 상한 N 에서는 항상 허용: 여기 도달하면 입력 불변식 위반
    return bound, verdict


# ── 확장 격자 · 모노이드 ─────────────────────────────────────────────────────

class ExtendedLattice:
    """Ξ̃ = (Ξ×{0}) ⊕ Z(v,1) ⊆ Λ×Z"""

    def __init__(self, base: Sublattice, anchor: Sequence[Rational]):
        anchor = tuple(Rational(x) for x in anchor)
        if len(anchor) != base.ambient_rank or not is_integral(anchor):
            raise LatticeError(f"ill-formed extended lattice: anchor {format_vector(anchor)} not in the weight lattice")
        self.base = base
        self.anchor: Vector = anchor

    @classmethod
    def from_generators(cls, generators: Sequence[Sequence[Rational]], rank: int) -> "ExtendedLattice":
        """Λ×Z 의 생성원 → 차수 0 부분격자와 차수 1 원소로 분해 (정수 행 연산)"""
        rows = [list(r) for r in lattice_basis(generators, rank + 1)]
        while sum(1 for r in rows if r[-1] != 0) > 1:
            live = sorted((r for r in rows if r[-1] != 0), key=lambda r: abs(r[-1]))
            pivot = live[0]
            for r in live[1:]:
                q = int(r[-1]) // int(pivot[-1])
                for c in range(rank + 1):
                    r[c] -= q * pivot[c]
        degree = [r for r in rows if r[-1] != 0]
        if len(degree) != 1 or abs(degree[0][-1]) != 1:
            raise LatticeError("ill-formed extended lattice: degrees do not generate Z")
        top = degree[0] if degree[0][-1] == 1 else [-x for x in degree[0]]
        base = Sublattice([r[:rank] for r in rows if r[-1] == 0], rank)
        return cls(base, top[:rank])

    @property
    def basis(self) -> List[Vector]:
        return [tuple(b) + (Integer(0),) for b in self.base.basis] + [self.anchor + (Integer(1),)]

    def coordinates(self, weight: Sequence[Rational]) -> Optional[Vector]:
        degree = Rational(weight[-1])
        rest = sub(tuple(weight[:-1]), scale(degree, self.anchor))
        coords = self.base.coordinates(rest)
        return None if coords is None else tuple(coords) + (degree,)

    def member(self, weight: Sequence[Rational]) -> bool:
        coords = self.coordinates(weight)
        return coords is not None and is_integral(coords)

    def restrict(self, functional: Sequence[Rational], degree_value: Rational = Integer(0)) -> Vector:
        return self.base.restrict(functional) + (dot(functional, self.anchor) + degree_value,)

    def with_anchor(self, anchor: Sequence[Rational]) -> "ExtendedLattice":
        if not self.member(tuple(anchor) + (Integer(1),)):
            raise LatticeError(f"({format_vector(anchor)}, 1) is not in the extended lattice")
        return ExtendedLattice(self.base, anchor)

    def __repr__(self) -> str:
        return f"ExtendedLattice({self.base!r}, anchor={format_vector(self.anchor)})"


class WeightMonoid:
    """Γ(Q) = Q≥0(Q×{1}) ∩ Ξ̃ — 쌍대 원뿔 광선과 코루트 제한"""

    def __init__(self, pair: MomentumPair, anchor: Sequence[Rational]):
        self.pair = pair
        self.extended = ExtendedLattice(pair.lattice, anchor)
        self.rays: List[Vector] = [ray for _, ray in dual_rays(pair.polytope, self.extended.anchor)]
        self._anchor_coords = pair.polytope.coords(self.extended.anchor)
        self._splits: Dict[int, Tuple[Vector, Vector]] = {}

    @cached_property
    def coroots(self) -> List[Vector]:
        return [self.extended.restrict(c) for c in self.pair.system.coroots]

    @cached_property
    def s_perp(self) -> FrozenSet[int]:
        return frozenset(i for i, c in enumerate(self.coroots) if all(x == 0 for x in c))

    def sigma_coords(self, sigma: SphericalRoot) -> Optional[Vector]:
        coords = self.pair.sigma_coords(sigma)
        return None if coords is None else tuple(coords) + (Integer(0),)

    def in_dual(self, functional: Sequence[Rational]) -> bool:
        """Γ^∨ 소속: Q×{1} 의 모든 꼭짓점에서 값 ≥ 0"""
        head, last = tuple(functional[:-1]), functional[-1]
        return all(dot(head, sub(x, self._anchor_coords)) + last >= 0 for x in self.pair.polytope.points)

    def split(self, alpha: int) -> Tuple[Vector, Vector]:
        return self._splits[alpha]


def monoid_compatible(monoid: WeightMonoid, sigma: SphericalRoot) -> Verdict:
    pair = monoid.pair
    system = pair.system
    name = pair.name(sigma)
    coords = monoid.sigma_coords(sigma)
    verdict = _lattice_checks(system, pair.table, sigma, coords, monoid.coroots, monoid.s_perp, "monoid")
    if verdict is not None:
        return verdict
    i = sigma.simple_index()
    if i is None:
        free = [d for d in range(system.nsimple) if d not in monoid.s_perp]
        for ray in monoid.rays:
            if dot(ray, coords) > 0 and not any(positive_multiple(monoid.coroots[d], ray) for d in free):
                return failed(
                    "monoid.ray_multiple",
                    f"ray {format_vector(ray)} is positive on {name} but no coroot is a positive multiple",
                    sigma=name, ray=format_vector(ray),
                )
        return passed()
    positive = [r for r in monoid.rays if dot(r, coords) > 0]
    for r in positive:
        if dot(r, coords) != 1:
            continue
        other = sub(monoid.coroots[i], r)
        if monoid.in_dual(other) and all(p in (r, other) for p in positive):
            monoid._splits[i] = (r, other)
            return passed(f"{name}: rho1={format_vector(r)}, rho2={format_vector(other)}")
    return failed(
        "monoid.coroot_split",
        f"no decomposition of {system.root_name(i)}^v into rho1 + rho2",
        sigma=name, positive=[format_vector(r) for r in positive],
    )


def monoid_admissible(monoid: WeightMonoid, sigmas: Sequence[SphericalRoot]) -> Verdict:
    trace = []
    for s in sigmas:
        verdict = monoid_compatible(monoid, s)
        if not verdict.passed:
            return verdict
        trace.extend(verdict.trace)
    coords = {s: monoid.sigma_coords(s) for s in sigmas}
    splits = {s.simple_index(): monoid.split(s.simple_index()) for s in sigmas if s.simple_index() is not None}
    verdict = _pairwise(monoid.pair, sigmas, coords, splits, "monoid")
    if verdict is not None:
        return verdict.with_trace(*trace)
    return passed(*trace)


def monoid_for(pair: MomentumPair, sigmas: Sequence[SphericalRoot]) -> WeightMonoid:
    """첫 번째 orbit vertex 로 Ξ̃ 를 만든 모노이드"""
    ov = sigma_orbit_vertices(pair, sigmas)
    if not ov:
        raise LatticeError("no orbit vertex for the extended lattice")
    return WeightMonoid(pair, pair.polytope.vertices[ov[0]])


# ── 모멘텀 사중쌍 ────────────────────────────────────────────────────────────

def _hull_member(target: Vector, points: List[Vector], cone: List[Vector]) -> bool:
    """target ∈ Conv(points) − Q≥0(cone)"""
    cs = fresh_symbols("h", len(points))
    ds = fresh_symbols("s", len(cone))
    constraints = [c >= 0 for c in cs] + [d >= 0 for d in ds] + [sum(cs) <= 1, sum(cs) >= 1]
    for j in range(len(target)):
        expr = sum(c * p[j] for c, p in zip(cs, points)) - sum(d * s[j] for d, s in zip(ds, cone)) - target[j]
        constraints += [expr <= 0, expr >= 0]
    return lp_feasible(constraints)


def quadruple_check(
    system: RootSystem,
    extended_generators: Sequence[Sequence[Rational]],
    highest_weights: Sequence[Sequence[Rational]],
    vertices: Sequence[Sequence[Rational]],
    sigmas: Sequence[SphericalRoot],
    table: Optional[LunaSTable] = None,
) -> Verdict:
    """(Ξ̃, V, Q, Σ) 모멘텀 사중쌍 — span → 차수 1 원소 → hull → 모노이드 허용성"""
    extended = ExtendedLattice.from_generators(extended_generators, system.rank)
    try:
        polytope = RationalPolytope(vertices, extended.base)
    except LatticeError as e:
        return failed("quadruple.span", str(e))
    off = [v for v in polytope.vertices if extended.coordinates(tuple(v) + (Integer(1),)) is None]
    if off:
        return failed("quadruple.span", "Q x {1} does not span the extended lattice", vertex=format_vector(off[0]))

    lambdas = []
    for h in highest_weights:
        h = tuple(Rational(x) for x in h)
        if not system.is_dominant(h):
            raise LatticeError(f"highest weight {format_vector(h)} is not dominant")
        if polytope.vertex_index(h) is not None and extended.member(h + (Integer(1),)):
            lambdas.append(h)
    if not lambdas:
        return failed("quadruple.degree_one", "no vertex of Q is a degree-one highest weight of V*")

    cone = [system.sigma_weight(s) for s in sigmas]
    for v in polytope.vertices:
        if not _hull_member(v, lambdas, cone):
            return failed(
                "quadruple.hull", f"vertex {format_vector(v)} is not in Conv(lambda_i) - Q>=0 Sigma",
                vertex=format_vector(v),
            )

    pair = MomentumPair(system, polytope, table)
    monoid = WeightMonoid(pair, lambdas[0])
    verdict = monoid_admissible(monoid, sigmas)
    if not verdict.passed:
        return verdict
    return passed(f"degree-one weights: {', '.join(format_vector(x) for x in lambdas)}", *verdict.trace)


# ── 반사성 (Fano) ────────────────────────────────────────────────────────────

def anticanonical_weight(system: RootSystem, polytope: RationalPolytope) -> Vector:
    """w = 2ρ − 2ρ_{S^p(Q)}"""
    sp = [i for i in range(system.nsimple) if all(system.pair(i, v) == 0 for v in polytope.vertices)]
    return sub(system.two_rho(), system.two_rho(sp))


def reflexive_check(pair: MomentumPair, sigmas: Sequence[SphericalRoot], level: str = LEVEL_REFLEXIVE) -> Verdict:
    if level not in (LEVEL_Q_REFLEXIVE, LEVEL_REFLEXIVE):
        raise InputError(f"unknown reflexivity level '{level}'")
    prereq = q_admissible if level == LEVEL_Q_REFLEXIVE else admissible
    verdict = prereq(pair, sigmas)
    if not verdict.passed:
        return verdict
    system, polytope = pair.system, pair.polytope
    w = anticanonical_weight(system, polytope)
    if not polytope.contains(w):
        return failed("reflexive.w_in_q", f"w = {format_vector(w)} is not in Q", w=format_vector(w))

    in_sigma = [s.simple_index() for s in sigmas if s.simple_index() is not None]
    coords = [pair.sigma_coords(s) for s in sigmas]
    free = [a for a in range(system.nsimple) if a not in pair.s_perp_polytope]
    for f in polytope.facets:
        colored = any(pair.positive_on_root(f.normal, i) for i in in_sigma)
        generic = (
            all(dot(f.normal, c) <= 0 for c in coords)
            and not any(pair.vanishes_on(a, f.vertices) for a in free)
        )
        if colored or generic:
            m = m_sigma(pair, f, w, sigmas)
            if m != 1:
                return failed(
                    "reflexive.unit_offset", f"m^Sigma_(F,w) = {format_rational(m)} != 1",
                    facet=format_vector(f.normal), m=format_rational(m),
                )
    if level == LEVEL_REFLEXIVE:
        ov = sigma_orbit_vertices(pair, sigmas)
        if not any(pair.lattice.member(sub(polytope.vertices[j], w)) for j in ov):
            return failed(
                "reflexive.w_in_lattice_class", "v - w is not in the lattice for every orbit vertex v",
                w=format_vector(w),
            )
    return passed(*verdict.trace, f"w = {format_vector(w)}")


# ── 레벨 판정 / Σ 열거 ───────────────────────────────────────────────────────

def canonical_level(level: str) -> str:
    return LEVEL_ALIASES.get(level, level)


def evaluate_level(pair: MomentumPair, sigmas: Sequence[SphericalRoot], level: str) -> Verdict:
    """레벨 이름으로 판정. UnsupportedError 는 unsupported 판정으로 변환."""
    level = canonical_level(level)
    try:
        if level == LEVEL_Q_ADMISSIBLE:
            return q_admissible(pair, sigmas)
        if level == LEVEL_ADMISSIBLE:
            return admissible(pair, sigmas)
        if level in (LEVEL_SMOOTH, LEVEL_SMOOTH_R):
            from spheromo.core.engine.colored import smooth_check
            return smooth_check(pair, sigmas, algebraic=(level == LEVEL_SMOOTH))
        if level in (LEVEL_Q_REFLEXIVE, LEVEL_REFLEXIVE):
            return reflexive_check(pair, sigmas, level)
    except UnsupportedError as e:
        return unsupported(f"{level}.registry", str(e))
    raise InputError(f"unknown level '{level}'")


def _sigma_set_key(sigmas: Sequence[SphericalRoot]):
    return (len(sigmas), tuple(s.sort_key for s in sigmas))


def enumerate_sigma(
    pair: MomentumPair, level: str = LEVEL_ADMISSIBLE, jobs: int = 1,
) -> List[Tuple[List[SphericalRoot], Verdict]]:
    """레벨을 통과(또는 unsupported)하는 모든 Σ 와 판정 — 크기, 지지집합, 계수 순.

    Q-허용성은 부분집합에 닫혀 있으므로 쌍별 Q-허용 그래프의 clique 만 후보로 삼는다.
    Q-호환성이 unsupported 인 σ 는 단독으로만 보고되고 그 상위 Σ 는 열거하지 않는다.
    """
    level = canonical_level(level)
    singles: List[SphericalRoot] = []
    results: List[Tuple[List[SphericalRoot], Verdict]] = []
    for s in pair.system.catalog:
        verdict = q_compatible(pair, s)
        if verdict.passed:
            singles.append(s)
        elif verdict.status == STATUS_UNSUPPORTED:
            logger.warning(f"{pair.name(s)}: unsupported, 상위 Σ 열거 생략")
            results.append(([s], verdict.with_trace(f"supersets of {pair.name(s)} not enumerated")))
    logger.info(f"Q-호환 spherical root {len(singles)}개: {[pair.name(s) for s in singles]}")

    ok = {}
    for a in range(len(singles)):
        for b in range(a + 1, len(singles)):
            ok[(a, b)] = q_admissible(pair, [singles[a], singles[b]]).passed

    candidates: List[List[SphericalRoot]] = []

    def grow(clique: List[int], start: int) -> None:
        candidates.append([singles[i] for i in clique])
        for nxt in range(start, len(singles)):
            if all(ok[(i, nxt)] for i in clique):
                grow(clique + [nxt], nxt + 1)

    grow([], 0)
    logger.info(f"후보 Σ {len(candidates)}개, 레벨 {level}")

    workers = max(1, min(jobs, MAX_ENUMERATE_WORKERS))
    if workers == 1:
        evaluated = [(c, evaluate_level(pair, c, level)) for c in candidates]
    else:
        evaluated = []
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {pool.submit(evaluate_level, pair, c, level): c for c in candidates}
            for future in as_completed(futures):
                evaluated.append((futures[future], future.result()))

    for sigmas, verdict in evaluated:
        if verdict.passed or verdict.status == STATUS_UNSUPPORTED:
            results.append((sigmas, verdict))
        else:
            logger.debug(f"제외: {[pair.name(s) for s in sigmas]} ({verdict.axiom})")
    return sorted(results, key=lambda item: _sigma_set_key(item[0]))
