"""
무작위 인스턴스 성질 테스트
===========================
고정 시드 random.Random 으로 만든 다면체 수백 개에 대해 판정 사이의 관계를 검증.

  - 토러스: smooth(Σ=∅) ⟺ Delzant
  - Delzant ⟹ simple, facet/꼭짓점 구조의 기본 성질
  - A2: q-admissible 열거 = 카탈로그 전체 부분집합의 전수 검사
  - 볼록 기하: LP 소속 판정 = facet 부등식, 원뿔 V→H→V 와 이중 쌍대
  - A2: color 항등식, colored fan 공리, orbit face, 스케일, 모노이드 허용성

실행:
    pytest tests/test_properties.py -v -m slow
"""
import random
from itertools import combinations

import pytest

pytestmark = pytest.mark.slow

INSTANCES = 200


# ─────────────────────────────────────────────────────────────────
# helpers
# ─────────────────────────────────────────────────────────────────

def _random_polytopes(seed: int, dim: int, npoints, bound: int):
    """Z^dim 위의 무작위 격자 다면체 INSTANCES 개 (퇴화된 점 집합은 건너뜀)"""
    from spheromo.core.engine.polykernel import RationalPolytope, Sublattice
    from spheromo.core.errors import LatticeError

    rng = random.Random(seed)
    identity = [tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)]
    lattice = Sublattice(identity, dim)
    out = []
    while len(out) < INSTANCES:
        n = rng.randint(*npoints)
        pts = [tuple(rng.randint(0, bound) for _ in range(dim)) for _ in range(n)]
        try:
            out.append(RationalPolytope(pts, lattice))
        except LatticeError:
            continue
    return out


def _random_a2_pairs(seed: int):
    """A2, Ξ = 루트 격자, 우세 삼각형 Q = ω + Conv(0, x1α1+y1α2, x2α1+y2α2)"""
    from spheromo.core.engine.momentum import MomentumPair
    from spheromo.core.engine.polykernel import RationalPolytope, Sublattice
    from spheromo.core.engine.rootsys import RootSystemSpec, build_root_system
    from spheromo.core.errors import LatticeError

    system = build_root_system(RootSystemSpec(components=[("A", 2)]))
    lattice = Sublattice([(2, -1), (-1, 2)], 2)
    rng = random.Random(seed)
    out = []
    while len(out) < INSTANCES:
        omega = (rng.randint(0, 6), rng.randint(0, 6))
        vertices = [omega]
        for _ in range(2):
            x, y = rng.randint(-2, 2), rng.randint(-2, 2)
            vertices.append((omega[0] + 2 * x - y, omega[1] - x + 2 * y))
        if any(c < 0 for v in vertices for c in v):
            continue
        try:
            out.append(MomentumPair(system, RationalPolytope(vertices, lattice)))
        except LatticeError:
            continue
    return out


# ─────────────────────────────────────────────────────────────────
# 토러스 / 다면체 구조
# ─────────────────────────────────────────────────────────────────

class TestTorusSmoothIsDelzant:
    def test_random_polygons(self):
        """토러스 작용: 모든 꼭짓점이 열린 chamber 안 → smooth 는 정확히 Delzant"""
        from spheromo.core.engine.colored import delzant_check, smooth_check
        from spheromo.core.engine.momentum import MomentumPair
        from spheromo.core.engine.rootsys import RootSystemSpec, build_root_system

        system = build_root_system(RootSystemSpec(torus_rank=2))
        delzant_seen = 0
        for polytope in _random_polytopes(seed=7, dim=2, npoints=(3, 6), bound=4):
            pair = MomentumPair(system, polytope)
            smooth = smooth_check(pair, []).passed
            delzant = delzant_check(polytope).passed
            assert smooth == delzant, polytope
            delzant_seen += delzant
        # 양쪽 경우가 모두 나와야 의미가 있음
        assert 0 < delzant_seen < INSTANCES


class TestPolytopeStructure:
    def test_delzant_implies_simple(self):
        from spheromo.core.engine.colored import delzant_check, simple_check
        for polytope in _random_polytopes(seed=11, dim=3, npoints=(4, 7), bound=3):
            if delzant_check(polytope).passed:
                assert simple_check(polytope).passed, polytope

    def test_incidence(self):
        """꼭짓점마다 facet ≥ k 개, facet 마다 꼭짓점 ≥ k 개, 부등식은 모든 꼭짓점에서 성립"""
        from spheromo.core.utils.exact import dot
        for polytope in _random_polytopes(seed=13, dim=3, npoints=(4, 7), bound=3):
            k = polytope.k
            for j in range(len(polytope.vertices)):
                assert len(polytope.facets_containing(frozenset({j}))) >= k
            for f in polytope.facets:
                assert len(f.vertices) >= k
                for j, x in enumerate(polytope.points):
                    value = dot(f.normal, x) + f.offset
                    assert value >= 0
                    assert (value == 0) == (j in f.vertices)

    def test_vertices_are_faces(self):
        for polytope in _random_polytopes(seed=17, dim=2, npoints=(3, 6), bound=4):
            faces = set(polytope.faces)
            assert all(frozenset({j}) in faces for j in range(len(polytope.vertices)))
            assert frozenset(range(len(polytope.vertices))) in faces


# ─────────────────────────────────────────────────────────────────
# Σ 열거
# ─────────────────────────────────────────────────────────────────

class TestEnumerationMatchesBruteForce:
    def test_a2_q_admissible(self):
        """clique 로 줄인 열거 결과 = 모든 부분집합에 q_admissible 을 직접 적용한 결과"""
        from spheromo.core.engine.momentum import enumerate_sigma, q_admissible

        for pair in _random_a2_pairs(seed=3):
            catalog = pair.system.catalog
            brute = set()
            for size in range(len(catalog) + 1):
                for subset in combinations(catalog, size):
                    if q_admissible(pair, list(subset)).passed:
                        brute.add(frozenset(subset))
            listed = {frozenset(sigmas) for sigmas, v in enumerate_sigma(pair, "q-admissible") if v.passed}
            assert listed == brute, pair.polytope

    def test_subset_closed(self):
        from spheromo.core.engine.momentum import enumerate_sigma

        for pair in _random_a2_pairs(seed=5)[:50]:
            listed = {frozenset(sigmas) for sigmas, v in enumerate_sigma(pair, "q-admissible") if v.passed}
            for sigmas in listed:
                for s in sigmas:
                    assert sigmas - {s} in listed


def _admissible_sets(pairs, level: str):
    """(pair, Σ) — 레벨을 통과한 Σ 만 (빈 Σ 제외)"""
    from spheromo.core.engine.momentum import enumerate_sigma

    out = []
    for pair in pairs:
        for sigmas, verdict in enumerate_sigma(pair, level):
            if verdict.passed and sigmas:
                out.append((pair, sigmas))
    return out


# ─────────────────────────────────────────────────────────────────
# 볼록 기하 오라클
# ─────────────────────────────────────────────────────────────────

class TestFacetOracle:
    def test_hull_membership_matches_facets(self):
        """LP 로 구한 Conv(꼭짓점) 소속 ⟺ 모든 facet 부등식 만족"""
        from sympy import Rational

        from spheromo.core.utils.exact import fresh_symbols, lp_feasible

        rng = random.Random(19)
        inside_seen = 0
        for polytope in _random_polytopes(seed=23, dim=2, npoints=(3, 6), bound=4):
            for _ in range(4):
                x = tuple(Rational(rng.randint(-2, 10), 2) for _ in range(2))
                lam = fresh_symbols("l", len(polytope.vertices))
                constraints = [c >= 0 for c in lam] + [sum(lam) <= 1, sum(lam) >= 1]
                for j in range(2):
                    expr = sum(c * v[j] for c, v in zip(lam, polytope.vertices))
                    constraints += [expr - x[j] <= 0, expr - x[j] >= 0]
                in_hull = lp_feasible(constraints)
                assert polytope.contains(x) == in_hull, (polytope, x)
                inside_seen += in_hull
        assert inside_seen > 0


class TestConeDuality:
    def _random_cones(self):
        from spheromo.core.engine.polykernel import Cone
        from spheromo.core.utils.exact import rank

        rng = random.Random(29)
        out = []
        while len(out) < INSTANCES:
            gens = [tuple(rng.randint(0, 3) for _ in range(3)) for _ in range(rng.randint(3, 6))]
            gens = [g for g in gens if any(g)]
            # 양의 팔분공간 안의 생성원 → 뾰족
            if rank(gens) == 3:
                out.append(Cone(3, generators=gens))
        return out

    def test_v_to_h_to_v(self):
        """생성원 → facet 법선 → (H→V) 광선 = 원래 극광선"""
        from spheromo.core.engine.polykernel import Cone

        for cone in self._random_cones():
            normals = cone.facet_inequalities()
            assert Cone(3, inequalities=normals).rays() == cone.rays(), cone

    def test_double_dual(self):
        """C^∨ 의 facet 법선 = C 의 극광선"""
        from spheromo.core.engine.polykernel import Cone

        for cone in self._random_cones():
            dual = Cone(3, generators=cone.facet_inequalities())
            assert dual.facet_inequalities() == cone.rays(), cone
            assert dual.dual().rays() == cone.rays()


# ─────────────────────────────────────────────────────────────────
# color 항등식 · 스케일 · 모노이드 (A2 무작위 삼각형)
# ─────────────────────────────────────────────────────────────────

class TestColorIdentities:
    def test_alpha_pair_rhos(self):
        """Q-호환인 단순 루트 α: ρ(D+) + ρ(D−) = α^∨|_Ξ, 두 값 모두 α 에서 1"""
        from spheromo.core.engine.momentum import build_A, q_compatible
        from spheromo.core.utils.exact import add, dot

        checked = 0
        for pair in _random_a2_pairs(seed=31):
            for i in range(pair.system.nsimple):
                sigma = pair.system.catalog_lookup([1 if j == i else 0 for j in range(pair.system.nsimple)])
                if sigma is None or not q_compatible(pair, sigma).passed:
                    continue
                ap = build_A(pair, i)
                coords = pair.root_coords[i]
                assert add(ap.plus, ap.minus) == pair.coroots[i]
                assert dot(ap.plus, coords) == 1
                assert dot(ap.minus, coords) == 1
                checked += 1
        assert checked > 0

    def test_offsets_sum_to_coroot_pairing(self):
        """α ∈ S: ε_α ⟨α^∨, w⟩ = α 가 움직이는 color 들의 n_D 합"""
        from sympy import Integer, Rational

        from spheromo.core.engine.colored import color_table
        from spheromo.core.engine.momentum import double_index

        for pair, sigmas in _admissible_sets(_random_a2_pairs(seed=37)[:60], "admissible"):
            table = color_table(pair, sigmas)
            doubles = {double_index(s) for s in sigmas}
            for i in range(pair.system.nsimple):
                moved = table.moved(i)
                if any("=" in c.name for c in moved):
                    continue
                eps = Rational(1, 2) if i in doubles else Integer(1)
                expected = eps * pair.system.pair(i, table.reference)
                assert sum((c.offset for c in moved), Integer(0)) == expected, (pair.polytope, sigmas, i)

    def test_colored_fan_passes_axioms(self):
        from spheromo.core.engine.colored import colored_fan, validate_colored_fan

        for pair, sigmas in _admissible_sets(_random_a2_pairs(seed=41)[:60], "admissible"):
            verdict = validate_colored_fan(colored_fan(pair, sigmas))
            assert verdict.passed, (pair.polytope, sigmas, verdict.axiom)


class TestOrbitFaces:
    def test_independent_sigma_faces_contain_orbit_vertex(self):
        from spheromo.core.engine.polykernel import orbit_faces, orbit_vertices
        from spheromo.core.utils.exact import rank

        for pair, sigmas in _admissible_sets(_random_a2_pairs(seed=43)[:80], "q-admissible"):
            weights = [pair.system.sigma_weight(s) for s in sigmas]
            if rank(weights) != len(weights):
                continue
            ov = set(orbit_vertices(pair.polytope, weights))
            for face in orbit_faces(pair.polytope, weights):
                assert face & ov, (pair.polytope, sigmas, face)


class TestScalingAndMonoid:
    def test_scale_to_admissible(self):
        """Q-허용 Σ → 최소 n 에서 (Ξ, nQ) 허용"""
        from spheromo.core.engine.momentum import admissible, scale_to_admissible

        for pair, sigmas in _admissible_sets(_random_a2_pairs(seed=47)[:60], "q-admissible"):
            n, _ = scale_to_admissible(pair, sigmas)
            assert n is not None and n >= 1
            assert admissible(pair.scaled(n), sigmas).passed, (pair.polytope, sigmas, n)

    def test_admissible_implies_monoid_admissible(self):
        from spheromo.core.engine.momentum import monoid_admissible, monoid_for

        for pair, sigmas in _admissible_sets(_random_a2_pairs(seed=53)[:60], "admissible"):
            verdict = monoid_admissible(monoid_for(pair, sigmas), sigmas)
            assert verdict.passed, (pair.polytope, sigmas, verdict.axiom)
