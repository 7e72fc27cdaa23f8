"""Color · n_D · colored fan · 국소 socle · 매끄러움 · Kähler 판정

(Ξ, Q, Σ) 의 조합론적 데이터만으로 embedding 의 colored fan 을 만들고,
orbit vertex 마다 국소 인수분해성(기저 조건)과 socle 조건을 검사한다.
functional 은 모두 Ξ 기저 위의 값 벡터, n_D 는 기준점 w 에 대한 오프셋.
"""
import logging
from collections import Counter
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from sympy import Integer, Rational

from spheromo.core.constants import CLAUSE_COLOR, CLAUSE_VALUATION, CLAUSE_WALL, LEVEL_SMOOTH_R
from spheromo.core.data.registry import SocleRegistry, load_socle_registry
from spheromo.core.engine.momentum import (
    MomentumPair, admissible, build_A, double_index, enumerate_sigma, orthogonal_pair, q_admissible,
    sigma_orbit_vertices,
)
from spheromo.core.engine.polykernel import (
    Cone, Face, Facet, RationalPolytope, orbit_faces, relint_meets, same_hyperplane,
    valuation_cone,
)
from spheromo.core.engine.rootsys import RootSystem, SphericalRoot, spherically_closed
from spheromo.core.errors import LatticeError, UnsupportedError
from spheromo.core.utils.exact import (
    Vector, determinant, dot, format_rational, format_vector, fresh_symbols, is_integral, lex_key,
    lp_maximize, positive_multiple, rank, scale, sub,
)
from spheromo.core.utils.verdict import Verdict, failed, passed, unsupported

logger = logging.getLogger(__name__)

COLOR_A = "A"          # α ∈ Σ∩S 가 움직이는 color (D_α^±)
COLOR_FREE = "free"    # α ∉ Σ 가 움직이는 color (ρ = α^∨|_Ξ 또는 ½α^∨|_Ξ)


# ── colors ───────────────────────────────────────────────────────────────────

class Color:
    """추상 color D: ρ(D), D 를 움직이는 단순 루트, 오프셋 n_D"""

    __slots__ = ("name", "rho", "moved_by", "offset", "kind")

    def __init__(self, name: str, rho: Vector, moved_by: FrozenSet[int], offset: Rational, kind: str):
        self.name = name
        self.rho = rho
        self.moved_by = moved_by
        self.offset = offset
        self.kind = kind

    def __repr__(self) -> str:
        return f"Color({self.name}, rho={format_vector(self.rho)}, n={format_rational(self.offset)})"


class ColorTable:
    """Δ(Ξ,Q,Σ) — color 목록, moved-by 관계, 기준점 w"""

    def __init__(self, pair: MomentumPair, sigmas: Sequence[SphericalRoot], reference: Vector, colors: List[Color]):
        self.pair = pair
        self.sigmas = list(sigmas)
        self.reference = reference
        self.colors = colors
        self._by_name = {c.name: c for c in colors}

    def get(self, name: str) -> Color:
        return self._by_name[name]

    def moved(self, i: int) -> List[Color]:
        return [c for c in self.colors if i in c.moved_by]

    @property
    def moved_by(self) -> Dict[int, List[str]]:
        """단순 루트 인덱스 → 그 루트가 움직이는 color 이름들"""
        out: Dict[int, List[str]] = {}
        for c in self.colors:
            for i in sorted(c.moved_by):
                out.setdefault(i, []).append(c.name)
        return out

    def value(self, color: Color, weight: Sequence[Rational]) -> Rational:
        """⟨ρ(D), q − w⟩ + n_D"""
        coords = self.pair.lattice.coordinates(sub(weight, self.reference))
        if coords is None:
            raise LatticeError(f"{format_vector(weight)} - w is not in Ξ_Q")
        return dot(color.rho, coords) + color.offset

    def vanishing(self, face: Iterable[int]) -> List[str]:
        """면 F 전체에서 ⟨ρ(D), F − w⟩ + n_D = 0 인 color 들"""
        verts = [self.pair.polytope.vertices[j] for j in face]
        return [c.name for c in self.colors if all(self.value(c, v) == 0 for v in verts)]


def default_reference(pair: MomentumPair, sigmas: Sequence[SphericalRoot]) -> Vector:
    """사전식 최소 orbit vertex (없으면 ω)"""
    ov = sigma_orbit_vertices(pair, sigmas)
    if not ov:
        return pair.polytope.omega
    return min((pair.polytope.vertices[j] for j in ov), key=lex_key)


def color_table(
    pair: MomentumPair, sigmas: Sequence[SphericalRoot], w: Optional[Sequence[Rational]] = None,
) -> ColorTable:
    """A(α) 들을 같은 ρ 로 붙이고, 나머지 α ∈ S∖(S^p(Q)∪Σ) 마다 color 하나"""
    system, polytope = pair.system, pair.polytope
    w = default_reference(pair, sigmas) if w is None else tuple(Rational(x) for x in w)
    colors: List[Color] = []

    simple = sorted({s.simple_index() for s in sigmas if s.simple_index() is not None})
    for i in simple:
        ap = build_A(pair, i)
        root = system.root_name(i)
        plus_offset = polytope.offset_at(ap.facet, w)
        glued = set()
        for name, rho, offset in (
            (f"D+({root})", ap.plus, plus_offset),
            (f"D-({root})", ap.minus, system.pair(i, w) - plus_offset),
        ):
            match = next(
                (c for c in colors
                 if c.kind == COLOR_A and c.rho == rho and i not in c.moved_by and c.name not in glued),
                None,
            )
            if match is None:
                colors.append(Color(name, rho, frozenset({i}), offset, COLOR_A))
            else:
                # 서로 다른 α, β 의 D 가 같은 ρ 를 가지면 하나의 color
                match.moved_by = match.moved_by | {i}
                match.name = f"{match.name}={name}"
                glued.add(match.name)

    doubles = {double_index(s) for s in sigmas} - {None}
    partners: Dict[int, int] = {}
    for s in sigmas:
        op = orthogonal_pair(s)
        if op is not None:
            a, b = op
            partners[a], partners[b] = b, a
    covered = set(simple)
    for i in range(system.nsimple):
        if i in covered or i in pair.s_perp_polytope:
            continue
        moved = {i}
        j = partners.get(i)
        if j is not None and j not in covered and j not in pair.s_perp_polytope:
            moved.add(j)
        covered |= moved
        eps = Rational(1, 2) if i in doubles else Integer(1)
        names = ",".join(system.root_name(a) for a in sorted(moved))
        colors.append(Color(
            f"D({names})", scale(eps, pair.coroots[i]), frozenset(moved), eps * system.pair(i, w), COLOR_FREE,
        ))

    logger.debug(f"colors (w={format_vector(w)}): {colors}")
    return ColorTable(pair, sigmas, w, colors)


# ── colored fan ──────────────────────────────────────────────────────────────

class ColoredCone:
    """(C, D) — C 의 극광선(원시) 과 color 이름 집합. face 는 Q 의 면 (직접 만든 fan 이면 None)"""

    __slots__ = ("rays", "colors", "face")

    def __init__(self, rays: Sequence[Sequence[Rational]], colors: Iterable[str], face: Optional[Face] = None):
        self.rays: List[Vector] = [tuple(Rational(x) for x in r) for r in rays]
        self.colors: FrozenSet[str] = frozenset(colors)
        self.face = face

    @property
    def key(self) -> Tuple[FrozenSet[Vector], FrozenSet[str]]:
        return frozenset(self.rays), self.colors

    def __repr__(self) -> str:
        return f"ColoredCone({[format_vector(r) for r in self.rays]}, {sorted(self.colors)})"


class ColoredFan:
    """colored cone 목록 + color 의 ρ. 광선은 생성 시 극광선으로 정규화한다."""

    def __init__(
        self,
        dim: int,
        cones: Sequence[ColoredCone],
        rho: Dict[str, Vector],
        table: Optional[ColorTable] = None,
        valuation: Optional[Cone] = None,
    ):
        self.dim = dim
        self.rho = rho
        self.table = table
        self.valuation = valuation
        for cc in cones:
            missing = cc.colors - set(rho)
            if missing:
                raise LatticeError(f"unknown colors {sorted(missing)} in colored cone")
            if cc.rays:
                cc.rays = Cone(dim, generators=cc.rays).rays()
        self.cones: List[ColoredCone] = list(cones)

    def cone_at(self, face: Face) -> Optional[ColoredCone]:
        return next((cc for cc in self.cones if cc.face == face), None)

    def orbit_vertex_indices(self) -> List[int]:
        return sorted(next(iter(cc.face)) for cc in self.cones if cc.face is not None and len(cc.face) == 1)

    def maximal(self) -> List[ColoredCone]:
        return [cc for cc in self.cones if rank(cc.rays) == self.dim]


def colored_fan(
    pair: MomentumPair, sigmas: Sequence[SphericalRoot], w: Optional[Sequence[Rational]] = None,
) -> ColoredFan:
    """orbit face F 마다 (C(F), D(F)), D(F) = {D : ⟨ρ(D), F−w⟩ + n_D = 0}"""
    table = color_table(pair, sigmas, w)
    polytope = pair.polytope
    weights = [pair.system.sigma_weight(s) for s in sigmas]
    cones = []
    for face in orbit_faces(polytope, weights):
        gens = [f.normal for f in polytope.facets_containing(face)]
        cones.append(ColoredCone(gens, table.vanishing(face), face))
    fan = ColoredFan(polytope.k, cones, {c.name: c.rho for c in table.colors}, table, valuation_cone(polytope, weights))
    logger.debug(f"colored fan: {len(fan.cones)} cones, {len(fan.maximal())} maximal")
    return fan


def _relints_meet(first: List[Vector], second: List[Vector], ineqs: List[Vector], dim: int) -> bool:
    """relint(cone first) ∩ relint(cone second) ∩ V ≠ ∅"""
    cs = fresh_symbols("a", len(first))
    ds = fresh_symbols("b", len(second))
    (t,) = fresh_symbols("t", 1)
    constraints = [c - t >= 0 for c in cs] + [d - t >= 0 for d in ds] + [t <= 1]
    point = [sum((c * g[j] for c, g in zip(cs, first)), Integer(0)) for j in range(dim)]
    other = [sum((d * h[j] for d, h in zip(ds, second)), Integer(0)) for j in range(dim)]
    for j in range(dim):
        constraints += [point[j] - other[j] <= 0, point[j] - other[j] >= 0]
    for u in ineqs:
        constraints.append(sum((u[j] * point[j] for j in range(dim)), Integer(0)) >= 0)
    best = lp_maximize(t, constraints)
    return best is not None and best > 0


def _meets_interior(gens: Sequence[Vector], ineqs: List[Vector], dim: int) -> bool:
    """relint(cone gens) 가 V 의 내부와 만나는지"""
    cs = fresh_symbols("c", len(gens))
    (t,) = fresh_symbols("t", 1)
    constraints = [c - t >= 0 for c in cs] + [t <= 1]
    point = [sum((c * g[j] for c, g in zip(cs, gens)), Integer(0)) for j in range(dim)]
    for u in ineqs:
        constraints.append(sum((u[j] * point[j] for j in range(dim)), Integer(0)) - t >= 0)
    best = lp_maximize(t, constraints)
    return best is not None and best > 0


def validate_colored_fan(fan: ColoredFan, valuation: Optional[Cone] = None) -> Verdict:
    """(CC1) → (CC2) → (SCC) → (CF1) → (CF2) → V 위의 완비성"""
    valuation = valuation or fan.valuation
    if valuation is None:
        raise LatticeError("validate_colored_fan needs the valuation cone")
    dim = fan.dim
    ineqs = valuation.inequality_description()
    cones = {id(cc): Cone(dim, generators=cc.rays) for cc in fan.cones}

    def shown(cc: ColoredCone) -> str:
        return "cone{" + ", ".join(format_vector(r) for r in cc.rays) + "}"

    for cc in fan.cones:
        rhos = [fan.rho[c] for c in sorted(cc.colors)]
        for name in sorted(cc.colors):
            if not cones[id(cc)].contains(fan.rho[name]):
                return failed("fan.cc1", f"rho({name}) is not in {shown(cc)}", cone=shown(cc), color=name)
        for r in cc.rays:
            if not valuation.contains(r) and not any(positive_multiple(rho, r) for rho in rhos):
                return failed(
                    "fan.cc1", f"ray {format_vector(r)} is neither in V nor spanned by a color",
                    cone=shown(cc), ray=format_vector(r),
                )
    for cc in fan.cones:
        if not relint_meets(cones[id(cc)], valuation):
            return failed("fan.cc2", f"relative interior of {shown(cc)} misses V", cone=shown(cc))
    for cc in fan.cones:
        zero = [c for c in sorted(cc.colors) if all(x == 0 for x in fan.rho[c])]
        if zero:
            return failed("fan.scc", f"rho({zero[0]}) = 0", cone=shown(cc), color=zero[0])
        if not cones[id(cc)].is_strictly_convex():
            return failed("fan.scc", f"{shown(cc)} is not strictly convex", cone=shown(cc))

    faces = {id(cc): cones[id(cc)].faces() for cc in fan.cones}
    index = {cc.key for cc in fan.cones}
    for cc in fan.cones:
        for tau in faces[id(cc)]:
            sub_cone = Cone(dim, generators=list(tau))
            if not relint_meets(sub_cone, valuation):
                continue
            colors = frozenset(c for c in cc.colors if sub_cone.contains(fan.rho[c]))
            if (frozenset(tau), colors) not in index:
                return failed(
                    "fan.cf1", f"face cone{{{', '.join(format_vector(r) for r in tau)}}} of {shown(cc)} is missing",
                    cone=shown(cc), face=[format_vector(r) for r in tau], colors=sorted(colors),
                )
    for a, b in _pairs(fan.cones):
        if _relints_meet(a.rays, b.rays, ineqs, dim):
            return failed("fan.cf2", f"{shown(a)} and {shown(b)} overlap inside V", first=shown(a), second=shown(b))

    if dim == 0:
        return passed() if fan.cones else failed("fan.complete", "empty fan")
    maximal = fan.maximal()
    if not any(_meets_interior(cc.rays, ineqs, dim) for cc in maximal):
        return failed("fan.complete", "no maximal cone meets the interior of V")
    for cc in maximal:
        for tau in faces[id(cc)]:
            if rank(list(tau)) != dim - 1 or not _meets_interior(tau, ineqs, dim):
                continue
            if not any(other is not cc and tau in faces[id(other)] for other in maximal):
                return failed(
                    "fan.complete", f"wall cone{{{', '.join(format_vector(r) for r in tau)}}} bounds the support inside V",
                    cone=shown(cc),
                )
    return passed(f"{len(fan.cones)} colored cones, {len(maximal)} maximal")


def _pairs(items: List[ColoredCone]):
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            yield items[a], items[b]


# ── orbit vertex 데이터 / 국소 socle ─────────────────────────────────────────

class OrbitVertexData:
    """S(v), D(v), B(v) 와 ρ_v 값 (D(v) 먼저, 이름순 → B(v) 사전식)"""

    def __init__(self, index: int, vertex: Vector, s_roots: List[int], colors: List[str],
                 b_rays: List[Vector], functionals: List[Vector]):
        self.index = index
        self.vertex = vertex
        self.s_roots = s_roots
        self.colors = colors
        self.b_rays = b_rays
        self.functionals = functionals

    @property
    def label(self) -> str:
        return f"v{self.index + 1}"


def orbit_vertex_data(
    pair: MomentumPair,
    sigmas: Sequence[SphericalRoot],
    v: Sequence[Rational],
    fan: Optional[ColoredFan] = None,
) -> OrbitVertexData:
    polytope = pair.polytope
    j = polytope.vertex_index(v)
    fan = fan or colored_fan(pair, sigmas)
    cc = fan.cone_at(frozenset({j})) if j is not None else None
    if cc is None:
        raise LatticeError(f"{format_vector(v)} is not an orbit vertex")
    table = fan.table
    colors = sorted(cc.colors)
    s_roots = [i for i in range(pair.system.nsimple) if all(c.name in cc.colors for c in table.moved(i))]
    b_rays = [r for r in cc.rays if not any(positive_multiple(table.get(c).rho, r) for c in colors)]
    functionals = [table.get(c).rho for c in colors] + b_rays
    return OrbitVertexData(j, polytope.vertices[j], s_roots, colors, b_rays, functionals)


class LocalizedSocle:
    """(S(v), S(v)∩S^p(Q), Σ^sc∩ZS(v), Ā(v), D̄(v), B(v)∪(D(v)∖D̄(v)), ρ̄)"""

    def __init__(
        self,
        data: OrbitVertexData,
        s_type: str,
        sp_roots: List[int],
        closed: List[SphericalRoot],
        a_bar: List[str],
        d_bar: List[str],
        rest: List[str],
        pairings: List[Rational],
    ):
        self.data = data
        self.s_type = s_type
        self.sp_roots = sp_roots
        self.closed = closed
        self.a_bar = a_bar
        self.d_bar = d_bar
        self.rest = rest
        self.other_pairings = sorted(pairings)

    @property
    def key(self) -> Tuple:
        return (self.s_type, len(self.sp_roots), tuple(sorted(s.tag for s in self.closed)),
                len(self.a_bar), len(self.d_bar))


def localized_socle(pair: MomentumPair, sigmas: Sequence[SphericalRoot], data: OrbitVertexData,
                    table: ColorTable) -> LocalizedSocle:
    system = pair.system
    s_v = frozenset(data.s_roots)
    closed = [
        s for s in spherically_closed(system, sigmas, pair.s_perp_polytope)
        if s.support <= s_v and is_integral(s.coeffs)
    ]
    in_closed = {s.simple_index() for s in closed} - {None}
    a_bar = sorted({c.name for i in s_v & in_closed for c in table.moved(i)})
    d_bar = [c for c in data.colors if table.get(c).moved_by & s_v]
    rest_colors = [c for c in data.colors if c not in d_bar]
    rest = [format_vector(r) for r in data.b_rays] + rest_colors
    rest_rhos = list(data.b_rays) + [table.get(c).rho for c in rest_colors]
    sc_coords = [pair.lattice.coordinates(system.sigma_weight(s)) for s in closed]
    pairings = [dot(r, c) for r in rest_rhos for c in sc_coords if dot(r, c) != 0]
    return LocalizedSocle(
        data, system.diagram_type(s_v), sorted(s_v & pair.s_perp_polytope), closed, a_bar, d_bar, rest, pairings,
    )


def localized_socles(pair: MomentumPair, sigmas: Sequence[SphericalRoot]) -> List[LocalizedSocle]:
    fan = colored_fan(pair, sigmas)
    out = []
    for j in fan.orbit_vertex_indices():
        data = orbit_vertex_data(pair, sigmas, pair.polytope.vertices[j], fan)
        out.append(localized_socle(pair, sigmas, data, fan.table))
    return out


# ── 매끄러움 ─────────────────────────────────────────────────────────────────

def _basis_problem(functionals: List[Vector], k: int) -> Optional[str]:
    if len(functionals) != k:
        return f"{len(functionals)} functionals for rank {k}"
    det = determinant(functionals)
    if abs(det) != 1:
        return f"determinant {format_rational(det)}"
    return None


def _socle_mismatch(found: List[Rational], expected: List[int]) -> Rational:
    extra = Counter(found) - Counter(Integer(x) for x in expected)
    if extra:
        return sorted(extra)[0]
    missing = Counter(Integer(x) for x in expected) - Counter(found)
    return sorted(missing)[0]


def smooth_check(
    pair: MomentumPair,
    sigmas: Sequence[SphericalRoot],
    algebraic: bool = True,
    registry: Optional[SocleRegistry] = None,
) -> Verdict:
    """orbit vertex 마다 (a) ρ_v 값이 Hom(Ξ,Z) 기저 (b) 국소 socle 이 구면 모듈 socle.

    algebraic=False 는 R-레벨 (허용성의 정수 조건 생략).
    """
    verdict = (admissible if algebraic else q_admissible)(pair, sigmas)
    if not verdict.passed:
        return verdict
    system, polytope = pair.system, pair.polytope
    fan = colored_fan(pair, sigmas)
    trace = list(verdict.trace)
    for j in fan.orbit_vertex_indices():
        vertex = polytope.vertices[j]
        label = f"v{j + 1}"
        strict = all(system.pair(i, vertex) > 0 for i in range(system.nsimple))
        if strict:
            # 열린 Weyl chamber 안: socle 조건 자동, 기저 조건은 facet 법선
            data = None
            functionals = [f.normal for f in polytope.facets_containing(frozenset({j}))]
        else:
            data = orbit_vertex_data(pair, sigmas, vertex, fan)
            functionals = data.functionals
        problem = _basis_problem(functionals, polytope.k)
        if problem is not None:
            return failed(
                "smooth.basis", f"not locally factorial at {label}: {problem}",
                vertex=label, weight=format_vector(vertex), count=len(functionals), rank=polytope.k,
                functionals=[format_vector(f) for f in functionals],
            ).with_trace(*trace)
        if data is None:
            trace.append(f"{label}: strictly dominant, facet normals form a basis")
            continue
        socle = localized_socle(pair, sigmas, data, fan.table)
        registry = registry or load_socle_registry()
        try:
            entry = registry.lookup(socle.key)
        except UnsupportedError as e:
            return unsupported("smooth.socle", str(e), vertex=label)
        if socle.other_pairings != sorted(Integer(x) for x in entry.other_pairings):
            odd = _socle_mismatch(socle.other_pairings, entry.other_pairings)
            return failed(
                "smooth.socle", f"socle mismatch at {label}, pairing {format_rational(odd)}",
                vertex=label, socle=entry.id,
                expected=[str(x) for x in sorted(entry.other_pairings)],
                found=[format_rational(x) for x in socle.other_pairings],
            ).with_trace(*trace)
        trace.append(f"{label}: socle {entry.id}")
    return passed(*trace)


def kaehler_check(pair: MomentumPair, jobs: int = 1) -> List[Tuple[List[SphericalRoot], Verdict]]:
    """(Ξ, P, Σ) 가 매끄러운 R-모멘텀 삼중쌍인 모든 Σ (unsupported 포함)"""
    return enumerate_sigma(pair, LEVEL_SMOOTH_R, jobs)


# ── 다면체 조건 (Delzant / simple / reflective / Woodward) ──────────────────

def delzant_check(polytope: RationalPolytope) -> Verdict:
    for j, vertex in enumerate(polytope.vertices):
        normals = [f.normal for f in polytope.facets_containing(frozenset({j}))]
        problem = _basis_problem(normals, polytope.k)
        if problem is not None:
            return failed("delzant.basis", f"facet normals at v{j + 1} are not a basis: {problem}",
                          vertex=format_vector(vertex))
    return passed()


def simple_check(polytope: RationalPolytope) -> Verdict:
    for j, vertex in enumerate(polytope.vertices):
        count = len(polytope.facets_containing(frozenset({j})))
        if count != polytope.k:
            return failed("simple.vertex", f"v{j + 1} lies on {count} facets, dimension {polytope.k}",
                          vertex=format_vector(vertex), count=count)
    return passed()


def _reflect_hyperplane(system: RootSystem, polytope: RationalPolytope, i: int, facet: Facet) -> Tuple[Vector, Rational]:
    """s_α(H_F) 의 (법선, 오프셋) — Ξ 좌표, ω 기준"""
    c = dot(facet.normal, polytope.sigma_coords(system.simple_roots[i]))
    coroot = polytope.lattice.restrict(system.coroots[i])
    return sub(facet.normal, scale(c, coroot)), facet.offset - c * system.pair(i, polytope.omega)


def reflective_check(system: RootSystem, polytope: RationalPolytope) -> Verdict:
    """최대 차원 → 모든 점에서 facet 초평면 집합이 Weyl 고정군에 안정 → facet 이 열린 chamber 와 만남"""
    if polytope.k != system.rank:
        return failed("reflective.full_dimension", f"dim Q = {polytope.k} < rank {system.rank}")
    # 면의 상대 내부 점의 고정군은 그 면 전체에서 0 인 단순 반사들이 생성
    for face in polytope.faces:
        planes = polytope.facets_containing(face)
        walls = [i for i in range(system.nsimple)
                 if all(system.pair(i, polytope.vertices[j]) == 0 for j in face)]
        for i in walls:
            for f in planes:
                image = _reflect_hyperplane(system, polytope, i, f)
                if not any(same_hyperplane(image, (g.normal, g.offset)) for g in planes):
                    return failed(
                        "reflective.stabilizer",
                        f"s_{system.root_name(i)} moves the facet {format_vector(f.normal)} off the face",
                        point=format_vector(polytope.barycenter(face)), root=system.root_name(i),
                        facet=format_vector(f.normal),
                    )
    for f in polytope.facets:
        for i in range(system.nsimple):
            if all(system.pair(i, polytope.vertices[j]) == 0 for j in f.vertices):
                return failed(
                    "reflective.facet_in_wall", f"facet {format_vector(f.normal)} lies in the wall of {system.root_name(i)}",
                    facet=format_vector(f.normal), root=system.root_name(i),
                )
    return passed()


def woodward_facet_condition(pair: MomentumPair) -> Verdict:
    """모든 facet F, α ∈ S 에 대해 ⟨ρ_F,α⟩ > 0 ⟺ F ⊇ P∩H_α (P 가 모든 벽과 만난다는 가정 포함)"""
    system, polytope = pair.system, pair.polytope
    if polytope.k != system.rank:
        return failed("woodward.full_rank", f"rank of the lattice {polytope.k} < rank {system.rank}")
    for i in range(system.nsimple):
        wall = frozenset(j for j, v in enumerate(polytope.vertices) if system.pair(i, v) == 0)
        if not wall:
            return failed("woodward.meets_walls", f"P does not meet the wall of {system.root_name(i)}",
                          root=system.root_name(i))
        for f in polytope.facets:
            positive = pair.positive_on_root(f.normal, i)
            if positive != (wall <= f.vertices):
                return failed(
                    "woodward.facet_wall",
                    f"facet {format_vector(f.normal)}: <rho_F, {system.root_name(i)}> "
                    f"{'> 0' if positive else '<= 0'} but it {'does not contain' if positive else 'contains'} P∩H",
                    facet=format_vector(f.normal), root=system.root_name(i),
                )
    return passed()


def face_has_divisor(pair: MomentumPair, sigmas: Sequence[SphericalRoot]) -> List[Tuple[Facet, Optional[str]]]:
    """facet 마다 처음 성립하는 절: color (ρ_F = ρ(D)) / wall (F ⊆ H_α, α ∉ Σ∪S^p(Q)) / valuation (ρ_F ≤ 0 on Σ)"""
    table = color_table(pair, sigmas)
    in_sigma = {s.simple_index() for s in sigmas} - {None}
    free = [i for i in range(pair.system.nsimple) if i not in in_sigma and i not in pair.s_perp_polytope]
    coords = [pair.sigma_coords(s) for s in sigmas]
    out = []
    for f in pair.polytope.facets:
        if any(c.rho == f.normal for c in table.colors):
            clause = CLAUSE_COLOR
        elif any(pair.vanishes_on(i, f.vertices) for i in free):
            clause = CLAUSE_WALL
        elif all(dot(f.normal, c) <= 0 for c in coords):
            clause = CLAUSE_VALUATION
        else:
            clause = None
            logger.warning(f"facet {format_vector(f.normal)}: 어느 절에도 해당하지 않음")
        out.append((f, clause))
    return out
