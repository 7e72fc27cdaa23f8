"""정확한 유리 격자 · 다면체 · 원뿔 · 법선 팬 · orbit face

내부 계산은 Ξ-좌표(격자 기저 b_j 에 대한 좌표, ω 기준)로 한다.
Ξ 위의 함수(functional)는 기저 위의 값 벡터 (ε-기저 좌표).
"""
import logging
from functools import cached_property
from itertools import combinations
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from sympy import Integer, Rational

from spheromo.core.errors import LatticeError
from spheromo.core.utils.exact import (
    Vector, dot, fresh_symbols, format_vector, is_integral, is_primitive_integral, lattice_basis,
    lex_key, lp_feasible, lp_maximize, nullspace, primitive, rank, scale, solve_coordinates, sub,
    unimodular_span, zero,
)

logger = logging.getLogger(__name__)

Face = FrozenSet[int]


# ── 격자 ─────────────────────────────────────────────────────────────────────

class Sublattice:
    """가중치 격자 Λ=Z^n 안의 부분격자 Ξ (행 기저)"""

    def __init__(self, generators: Sequence[Sequence[Rational]], ambient_rank: int):
        gens = [tuple(Rational(x) for x in g) for g in generators]
        for g in gens:
            if len(g) != ambient_rank:
                raise LatticeError(f"rank mismatch: generator of length {len(g)} in rank {ambient_rank}")
            if not is_integral(g):
                raise LatticeError(f"lattice generator {format_vector(g)} is not in the weight lattice")
        nonzero = [g for g in gens if any(x != 0 for x in g)]
        if nonzero and rank(nonzero) == len(nonzero):
            # 일차독립이면 사용자 기저를 그대로 (ε-기저가 그 쌍대)
            self.basis: List[Vector] = nonzero
        else:
            self.basis = lattice_basis(nonzero, ambient_rank)
        self.ambient_rank = ambient_rank

    @property
    def k(self) -> int:
        return len(self.basis)

    def coordinates(self, weight: Sequence[Rational]) -> Optional[Vector]:
        """Ξ_Q 좌표. Ξ_Q 밖이면 None."""
        if len(weight) != self.ambient_rank:
            raise LatticeError(f"rank mismatch: {len(weight)} vs {self.ambient_rank}")
        return solve_coordinates(self.basis, weight)

    def member(self, weight: Sequence[Rational]) -> bool:
        coords = self.coordinates(weight)
        return coords is not None and is_integral(coords)

    def in_span(self, weight: Sequence[Rational]) -> bool:
        return self.coordinates(weight) is not None

    def restrict(self, functional: Sequence[Rational]) -> Vector:
        """Λ 위의 함수(코루트 등)를 Ξ 로 제한 → 기저 위의 값"""
        return tuple(dot(functional, b) for b in self.basis)

    def weight_of(self, coords: Sequence[Rational]) -> Vector:
        out = zero(self.ambient_rank)
        for c, b in zip(coords, self.basis):
            out = tuple(x + Rational(c) * y for x, y in zip(out, b))
        return out

    def __repr__(self) -> str:
        return f"Sublattice({[format_vector(b) for b in self.basis]})"


def member(lattice: Sublattice, weight: Sequence[Rational]) -> bool:
    return lattice.member(weight)


def is_primitive(functional: Sequence[Rational]) -> bool:
    """Hom_Z(Ξ,Z) 원소(기저 값 벡터)의 원시성"""
    return is_primitive_integral(functional)


def span_check(lattice: Sublattice, vectors: Sequence[Sequence[Rational]]) -> bool:
    """vectors 가 Ξ 를 정확히 생성하는지 (모두 Ξ 안 + 좌표 행렬의 불변인자 모두 1)"""
    coords = []
    for v in vectors:
        c = lattice.coordinates(v)
        if c is None or not is_integral(c):
            return False
        coords.append(c)
    return unimodular_span(coords, lattice.k)


# ── 원뿔 ─────────────────────────────────────────────────────────────────────

def _dedupe_rays(vectors: Iterable[Sequence[Rational]]) -> List[Vector]:
    seen = {}
    for v in vectors:
        p = primitive(v)
        if any(x != 0 for x in p):
            seen.setdefault(p, p)
    return sorted(seen.values(), key=lex_key)


class Cone:
    """생성원 및/또는 부등식(⟨u,x⟩ ≥ 0) 으로 주어진 유한생성 원뿔"""

    def __init__(
        self,
        dim: int,
        generators: Optional[Sequence[Sequence[Rational]]] = None,
        inequalities: Optional[Sequence[Sequence[Rational]]] = None,
    ):
        if generators is None and inequalities is None:
            raise LatticeError("cone needs generators or inequalities")
        for v in list(generators or []) + list(inequalities or []):
            if len(v) != dim:
                raise LatticeError(f"dimension mismatch: vector of length {len(v)} in dimension {dim}")
        self.dim = dim
        self.generators = None if generators is None else [tuple(Rational(x) for x in g) for g in generators]
        self.inequalities = None if inequalities is None else [tuple(Rational(x) for x in u) for u in inequalities]

    @classmethod
    def from_generators(cls, generators, dim: int) -> "Cone":
        return cls(dim, generators=generators)

    @classmethod
    def from_inequalities(cls, inequalities, dim: int) -> "Cone":
        return cls(dim, inequalities=inequalities)

    def dual(self) -> "Cone":
        """C^∨ = {u : ⟨u,x⟩ ≥ 0 ∀x∈C} — 생성원과 부등식 기술을 맞바꾼다"""
        return Cone(self.dim, generators=self.inequalities, inequalities=self.generators)

    def contains(self, x: Sequence[Rational]) -> bool:
        if self.inequalities is not None:
            return all(dot(u, x) >= 0 for u in self.inequalities)
        gens = self.generators or []
        if not gens:
            return all(v == 0 for v in x)
        cs = fresh_symbols("g", len(gens))
        constraints = [c >= 0 for c in cs]
        for j in range(self.dim):
            constraints.append(sum(c * g[j] for c, g in zip(cs, gens)) - x[j] <= 0)
            constraints.append(sum(c * g[j] for c, g in zip(cs, gens)) - x[j] >= 0)
        return lp_feasible(constraints)

    def is_full_dimensional(self) -> bool:
        return rank(self.ray_generators()) == self.dim

    def is_strictly_convex(self) -> bool:
        """뾰족함(pointed): Σc_i g_i = 0, c ≥ 0, Σc = 1 이 불가능"""
        gens = self.ray_generators()
        if not gens:
            return True
        cs = fresh_symbols("p", len(gens))
        constraints = [c >= 0 for c in cs] + [sum(cs) <= 1, sum(cs) >= 1]
        for j in range(self.dim):
            expr = sum(c * g[j] for c, g in zip(cs, gens))
            constraints += [expr <= 0, expr >= 0]
        return not lp_feasible(constraints)

    def ray_generators(self) -> List[Vector]:
        """원뿔을 생성하는 벡터 (부등식만 있으면 꼭짓점 광선 계산)"""
        if self.generators is not None:
            return list(self.generators)
        return self.rays()

    def rays(self) -> List[Vector]:
        """극광선(extremal ray)의 원시 생성원"""
        if self.generators is not None:
            gens = _dedupe_rays(self.generators)
            out = []
            for g in gens:
                others = [h for h in gens if h != g]
                if not others or not Cone(self.dim, generators=others).contains(g):
                    out.append(g)
            return out
        # H→V: 전차원 뾰족 원뿔 가정, (d-1) 개 tight 부등식의 공통 해
        ineqs = _dedupe_rays(self.inequalities)
        if self.dim == 0:
            return []
        candidates = []
        for subset in combinations(ineqs, self.dim - 1):
            if rank(list(subset)) != self.dim - 1:
                continue
            (ray,) = nullspace(list(subset), self.dim)
            for sign in (1, -1):
                r = scale(sign, ray)
                if all(dot(u, r) >= 0 for u in ineqs):
                    candidates.append(r)
        return _dedupe_rays(candidates)

    def facet_inequalities(self) -> List[Vector]:
        """V→H: 전차원 원뿔의 facet 법선 (원시 정수)"""
        if self.inequalities is not None:
            return Cone(self.dim, generators=self.inequalities).rays()
        gens = _dedupe_rays(self.generators or [])
        if rank(gens) != self.dim:
            raise LatticeError("facet description needs a full-dimensional cone")
        candidates = []
        for subset in combinations(gens, self.dim - 1):
            if rank(list(subset)) != self.dim - 1:
                continue
            (normal,) = nullspace(list(subset), self.dim)
            values = [dot(normal, g) for g in gens]
            if all(v >= 0 for v in values):
                candidates.append(normal)
            elif all(v <= 0 for v in values):
                candidates.append(scale(-1, normal))
        return _dedupe_rays(candidates)

    def inequality_description(self) -> List[Vector]:
        return list(self.inequalities) if self.inequalities is not None else self.facet_inequalities()

    def faces(self) -> List[Tuple[Vector, ...]]:
        """뾰족 원뿔의 면 — 극광선 부분집합 T 중 지지 함수 u (T 에서 0, 나머지 광선에서 ≥ 1) 가 있는 것"""
        rays = self.rays()
        out = []
        for size in range(len(rays) + 1):
            for subset in combinations(range(len(rays)), size):
                us = fresh_symbols("u", self.dim)
                constraints = []
                for idx, r in enumerate(rays):
                    expr = sum((u * x for u, x in zip(us, r)), Integer(0))
                    if idx in subset:
                        constraints += [expr <= 0, expr >= 0]
                    else:
                        constraints.append(expr >= 1)
                if lp_feasible(constraints):
                    out.append(tuple(rays[i] for i in subset))
        return out

    def __repr__(self) -> str:
        if self.generators is not None:
            return f"Cone(gens={[format_vector(g) for g in self.generators]})"
        return f"Cone(ineqs={[format_vector(u) for u in self.inequalities]})"


def same_hyperplane(a: Tuple[Sequence[Rational], Rational], b: Tuple[Sequence[Rational], Rational]) -> bool:
    """(ρ, m) 두 쌍이 같은 초평면 {⟨ρ,x⟩ + m = 0} 을 나타내는지 (부호 무관)"""
    na, ma = a
    nb, mb = b
    if all(x == 0 for x in na) or all(x == 0 for x in nb):
        return False
    return rank([tuple(na) + (ma,), tuple(nb) + (mb,)]) == 1


def relint_meets(cone: Cone, other: Cone) -> bool:
    """relint(C) ∩ V ≠ ∅ — 모든 생성원 계수 c_i ≥ t, t ≤ 1 에서 t 최대화, t* > 0 이면 참"""
    if cone.dim != other.dim:
        raise LatticeError(f"dimension mismatch: {cone.dim} vs {other.dim}")
    gens = cone.ray_generators()
    ineqs = other.inequality_description()
    if not gens or not ineqs:
        return True
    cs = fresh_symbols("c", len(gens))
    (t,) = fresh_symbols("t", 1)
    constraints = [c - t >= 0 for c in cs] + [t <= 1]
    for u in ineqs:
        constraints.append(sum(c * dot(u, g) for c, g in zip(cs, gens)) >= 0)
    best = lp_maximize(t, constraints)
    return best is not None and best > 0


# ── 다면체 ───────────────────────────────────────────────────────────────────

class Facet:
    """원시 내향 법선 ρ_F, 기준점 ω 에 대한 오프셋 m_{F,ω}, 꼭짓점 인덱스 집합"""

    __slots__ = ("normal", "offset", "vertices")

    def __init__(self, normal: Vector, offset: Rational, vertices: Face):
        self.normal = normal
        self.offset = offset
        self.vertices = vertices

    def __repr__(self) -> str:
        return f"Facet({format_vector(self.normal)}, m={self.offset}, {sorted(self.vertices)})"


class RationalPolytope:
    """가중치 좌표 꼭짓점 + 격자 Ξ. ω = 첫 번째 꼭짓점.

    (Q1): Q−ω 가 Ξ_Q 를 생성해야 한다. 중복/비꼭짓점은 경고 후 제거.
    """

    def __init__(self, vertices: Sequence[Sequence[Rational]], lattice: Sublattice):
        if not vertices:
            raise LatticeError("(Q1) violation: polytope without vertices")
        pts: List[Vector] = []
        for v in vertices:
            v = tuple(Rational(x) for x in v)
            if len(v) != lattice.ambient_rank:
                raise LatticeError(f"rank mismatch: vertex of length {len(v)} in rank {lattice.ambient_rank}")
            if v not in pts:
                pts.append(v)
        self.lattice = lattice
        self.k = lattice.k
        xs = self._coords_against(pts, pts[0])
        facets = _facets_of_points(xs, self.k)
        keep = [i for i, x in enumerate(xs) if _is_vertex(x, facets, self.k)]
        for i, v in enumerate(pts):
            if i not in keep:
                logger.warning(f"꼭짓점 아님 — 제거: {format_vector(v)}")
        self.vertices: List[Vector] = [pts[i] for i in keep]
        self.omega: Vector = self.vertices[0]
        self.points: List[Vector] = self._coords_against(self.vertices, self.omega)
        self.facets: List[Facet] = _facets_of_points(self.points, self.k)

    def _coords_against(self, pts: List[Vector], base: Vector) -> List[Vector]:
        xs = []
        for v in pts:
            c = self.lattice.coordinates(sub(v, base))
            if c is None:
                raise LatticeError(f"(Q1) violation: {format_vector(v)} - ω is not in Ξ_Q")
            xs.append(c)
        if rank(xs) != self.k:
            raise LatticeError(f"(Q1) violation: Q - ω spans rank {rank(xs)} < rank Ξ = {self.k}")
        return xs

    # 좌표 / 값
    def coords(self, weight: Sequence[Rational]) -> Vector:
        c = self.lattice.coordinates(sub(weight, self.omega))
        if c is None:
            raise LatticeError(f"{format_vector(weight)} is not in ω + Ξ_Q")
        return c

    def sigma_coords(self, weight: Sequence[Rational]) -> Vector:
        c = self.lattice.coordinates(weight)
        if c is None:
            raise LatticeError(f"{format_vector(weight)} is not in Ξ_Q")
        return c

    def offset_at(self, facet: Facet, weight: Sequence[Rational]) -> Rational:
        """m_{F,v} = m_{F,ω} + ⟨ρ_F, v−ω⟩"""
        return facet.offset + dot(facet.normal, self.coords(weight))

    def contains(self, weight: Sequence[Rational]) -> bool:
        c = self.lattice.coordinates(sub(weight, self.omega))
        if c is None:
            return False
        return all(dot(f.normal, c) + f.offset >= 0 for f in self.facets)

    def vertex_index(self, weight: Sequence[Rational]) -> Optional[int]:
        w = tuple(Rational(x) for x in weight)
        return self.vertices.index(w) if w in self.vertices else None

    # 면 구조
    @cached_property
    def faces(self) -> List[Face]:
        """facet 꼭짓점 집합의 교집합 폐포 + Q 자신"""
        found = {frozenset(range(len(self.vertices)))}
        layer = {f.vertices for f in self.facets}
        while layer:
            found |= layer
            nxt = set()
            for a, b in combinations(sorted(found, key=sorted), 2):
                c = a & b
                if c and c not in found:
                    nxt.add(c)
            layer = nxt
        return sorted(found, key=lambda f: (self.face_dim(f), sorted(f)))

    def face_dim(self, face: Face) -> int:
        idx = sorted(face)
        base = self.points[idx[0]]
        return rank([sub(self.points[i], base) for i in idx[1:]])

    def is_face(self, face: Iterable[int]) -> bool:
        return frozenset(face) in set(self.faces)

    def facets_containing(self, face: Face) -> List[Facet]:
        return [f for f in self.facets if face <= f.vertices]

    def barycenter(self, face: Face) -> Vector:
        idx = sorted(face)
        total = zero(self.lattice.ambient_rank)
        for i in idx:
            total = tuple(a + b for a, b in zip(total, self.vertices[i]))
        return scale(Rational(1, len(idx)), total)

    def scaled(self, n: int) -> "RationalPolytope":
        return RationalPolytope([scale(n, v) for v in self.vertices], self.lattice)

    def __repr__(self) -> str:
        return f"RationalPolytope({[format_vector(v) for v in self.vertices]})"


def _facets_of_points(xs: List[Vector], k: int) -> List[Facet]:
    """k 개 점의 차분 rank 가 k-1 인 부분집합마다 초평면 후보 → 내향·원시 법선으로 중복 제거"""
    if k == 0:
        return []
    found = {}
    for idx in combinations(range(len(xs)), k):
        base = xs[idx[0]]
        diffs = [sub(xs[i], base) for i in idx[1:]]
        if rank(diffs) != k - 1:
            continue
        (normal,) = nullspace(diffs, k)
        level = dot(normal, base)
        values = [dot(normal, x) - level for x in xs]
        if all(v >= 0 for v in values):
            oriented = normal
        elif all(v <= 0 for v in values):
            oriented = scale(-1, normal)
        else:
            continue
        rho = primitive(oriented)
        if rho in found:
            continue
        tight = frozenset(i for i, x in enumerate(xs) if dot(rho, sub(x, base)) == 0)
        found[rho] = Facet(rho, -dot(rho, base), tight)
    return sorted(found.values(), key=lambda f: lex_key(f.normal))


def _is_vertex(x: Vector, facets: List[Facet], k: int) -> bool:
    if k == 0:
        return True
    tight = [f.normal for f in facets if dot(f.normal, x) + f.offset == 0]
    return rank(tight) == k


# ── 모듈 연산 ────────────────────────────────────────────────────────────────

def facets(polytope: RationalPolytope) -> List[Facet]:
    return list(polytope.facets)


def normal_cone(polytope: RationalPolytope, face: Iterable[int]) -> Cone:
    """C(F): F 를 포함하는 facet 들의 ρ 로 생성. F=Q 면 {0}."""
    face = frozenset(face)
    if not polytope.is_face(face):
        raise LatticeError(f"{sorted(face)} is not a face")
    return Cone(polytope.k, generators=[f.normal for f in polytope.facets_containing(face)])


def valuation_cone(polytope: RationalPolytope, sigma_weights: Sequence[Sequence[Rational]]) -> Cone:
    """V = {ν : ⟨ν,σ⟩ ≤ 0 ∀σ∈Σ}"""
    ineqs = [scale(-1, polytope.sigma_coords(s)) for s in sigma_weights]
    return Cone(polytope.k, inequalities=ineqs)


def orbit_faces(polytope: RationalPolytope, sigma_weights: Sequence[Sequence[Rational]]) -> List[Face]:
    """relint(C(F)) ∩ V ≠ ∅ 인 면 F (면 차원, 인덱스 순)"""
    valuation = valuation_cone(polytope, sigma_weights)
    return [f for f in polytope.faces if relint_meets(normal_cone(polytope, f), valuation)]


def orbit_vertices(polytope: RationalPolytope, sigma_weights: Sequence[Sequence[Rational]]) -> List[int]:
    return sorted(next(iter(f)) for f in orbit_faces(polytope, sigma_weights) if len(f) == 1)


def dual_rays(polytope: RationalPolytope, anchor: Sequence[Rational]) -> List[Tuple[Facet, Vector]]:
    """Q≥0(Q×{1}) 의 쌍대 원뿔 극광선 (Ξ̃ = Ξ×0 ⊕ Z(v,1) 기저 위의 값).

    facet F 와 일대일: 광선 = primitive(ρ_F, m_{F,v}).
    """
    anchor = tuple(Rational(x) for x in anchor)
    if not is_integral(anchor) or not polytope.contains(anchor):
        raise LatticeError(f"anchor {format_vector(anchor)} is not in Λ ∩ Q")
    out = []
    for f in polytope.facets:
        out.append((f, primitive(tuple(f.normal) + (polytope.offset_at(f, anchor),))))
    return out
