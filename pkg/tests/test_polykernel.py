"""
격자 · 다면체 · 원뿔 커널 테스트
================================
polykernel.py 의 Sublattice, RationalPolytope(facet/면 구조), Cone, orbit face 를 검증.

실행:
    pytest tests/test_polykernel.py -v
"""
import pytest
from sympy import Integer, Rational


# ─────────────────────────────────────────────────────────────────
# helpers
# ─────────────────────────────────────────────────────────────────

def _lattice(rows, rank: int):
    from spheromo.core.engine.polykernel import Sublattice
    return Sublattice([tuple(Integer(x) for x in r) for r in rows], rank)


def _polytope(vertices, rows, rank: int):
    from spheromo.core.engine.polykernel import RationalPolytope
    return RationalPolytope(vertices, _lattice(rows, rank))


def _foschi():
    """SL3, Ξ = Z{α1, α2}, Q = Conv(4ϖ1+4ϖ2, 5ϖ1+2ϖ2, 2ϖ1+5ϖ2)"""
    return _polytope([(4, 4), (5, 2), (2, 5)], [(2, -1), (-1, 2)], 2)


def _sp6():
    half, third = Rational(1, 2), Rational(1, 3)
    return _polytope(
        [(0, half, 0), (0, 1, 0), (third, 0, third)], [(2, -3, 2), (-1, 2, -1)], 3,
    )


# ─────────────────────────────────────────────────────────────────
# Sublattice
# ─────────────────────────────────────────────────────────────────

class TestSublattice:
    def test_independent_rows_kept(self):
        """일차독립 생성원은 그대로 기저"""
        lattice = _lattice([(2, -1), (-1, 2)], 2)
        assert lattice.basis == [(2, -1), (-1, 2)]
        assert lattice.k == 2

    def test_dependent_generators_reduced(self):
        """종속 생성원 → HNF 기저, 랭크 보존"""
        lattice = _lattice([(1, 0), (0, 2), (1, 2)], 2)
        assert lattice.k == 2
        assert lattice.member((1, 2))
        assert not lattice.member((0, 1))
        assert lattice.in_span((0, 1))

    def test_coordinates(self):
        lattice = _lattice([(2, -1), (-1, 2)], 2)
        assert lattice.coordinates((1, 1)) == (1, 1)
        assert lattice.coordinates((1, 0)) == (Rational(2, 3), Rational(1, 3))
        assert not lattice.member((1, 0))

    def test_outside_span(self):
        lattice = _lattice([(1, 0, 0)], 3)
        assert lattice.coordinates((0, 1, 0)) is None
        assert not lattice.in_span((0, 1, 0))

    def test_restrict_is_value_on_basis(self):
        """α^∨|_Ξ = 기저 위의 값"""
        lattice = _lattice([(2, -3, 2), (-1, 2, -1)], 3)
        assert lattice.restrict((0, 1, 0)) == (-3, 2)

    def test_non_integral_generator(self):
        from spheromo.core.engine.polykernel import Sublattice
        from spheromo.core.errors import LatticeError
        with pytest.raises(LatticeError):
            Sublattice([(Rational(1, 2), 0)], 2)

    def test_rank_mismatch(self):
        from spheromo.core.errors import LatticeError
        with pytest.raises(LatticeError):
            _lattice([(1, 0, 0)], 2)

    def test_primitive(self):
        from spheromo.core.engine.polykernel import is_primitive
        assert is_primitive((1, -1))
        assert not is_primitive((2, 4))
        assert not is_primitive((Rational(1, 2), 0))

    def test_span_check(self):
        """Ξ = Z{α1, α2}: 좌표 행렬의 불변인자가 모두 1 일 때만 생성"""
        from spheromo.core.engine.polykernel import span_check
        lattice = _lattice([(2, -1), (-1, 2)], 2)
        assert span_check(lattice, [(2, -1), (-1, 2)])
        assert span_check(lattice, [(2, -1), (1, 1)])
        assert not span_check(lattice, [(4, -2), (-1, 2)])
        assert not span_check(lattice, [(1, 0), (0, 1)])


# ─────────────────────────────────────────────────────────────────
# RationalPolytope: facet, 면, (Q1)
# ─────────────────────────────────────────────────────────────────

class TestFacets:
    def test_foschi_facets(self):
        """Ξ 좌표 (ω 기준) facet: (-1,0), (0,-1) 은 ω 를 지나고 (1,1) 은 m=1"""
        from spheromo.core.engine.polykernel import facets
        polytope = _foschi()
        found = [(f.normal, f.offset, sorted(f.vertices)) for f in facets(polytope)]
        assert found == [
            ((-1, 0), 0, [0, 1]),
            ((0, -1), 0, [0, 2]),
            ((1, 1), 1, [1, 2]),
        ]

    def test_sp6_facets(self):
        """Sp6: ρ = -3ε1+ε2, ε2, 2ε1-ε2"""
        polytope = _sp6()
        assert [f.normal for f in polytope.facets] == [(-3, 1), (0, 1), (2, -1)]
        assert polytope.points == [(0, 0), (Rational(1, 2), 1), (Rational(1, 6), 0)]

    def test_facet_normals_primitive(self):
        from spheromo.core.utils.exact import is_primitive_integral
        for polytope in (_foschi(), _sp6()):
            assert all(is_primitive_integral(f.normal) for f in polytope.facets)

    def test_offset_at_vertex(self):
        """m_{F,v} = 0 ⟺ v ∈ F"""
        polytope = _foschi()
        far = polytope.facets[2]
        assert polytope.offset_at(far, (5, 2)) == 0
        assert polytope.offset_at(far, (4, 4)) == 1

    def test_contains(self):
        polytope = _foschi()
        assert polytope.contains((4, 4))
        assert not polytope.contains((5, 5))
        assert not polytope.contains((4, 5))

    def test_faces(self):
        """삼각형: 꼭짓점 3 + 변 3 + 자신"""
        polytope = _foschi()
        faces = polytope.faces
        assert len(faces) == 7
        assert [polytope.face_dim(f) for f in faces] == [0, 0, 0, 1, 1, 1, 2]

    def test_non_vertex_dropped(self):
        """중복점/비꼭짓점은 제거, 나머지는 입력 순서 유지"""
        polytope = _polytope([(0, 0), (2, 0), (1, 0), (0, 2), (2, 2), (0, 0)], [(1, 0), (0, 1)], 2)
        assert polytope.vertices == [(0, 0), (2, 0), (0, 2), (2, 2)]

    def test_q1_violation_point(self):
        """(Q1): Q - ω 가 Ξ_Q 를 생성하지 않음"""
        from spheromo.core.errors import LatticeError
        with pytest.raises(LatticeError):
            _polytope([(0, 0)], [(1, 0), (0, 1)], 2)

    def test_q1_violation_outside_span(self):
        from spheromo.core.errors import LatticeError
        with pytest.raises(LatticeError):
            _polytope([(0, 0), (0, 1)], [(1, 0)], 2)

    def test_lower_dimensional_lattice(self):
        """dim Q = rank Ξ < rank Λ 도 허용 (Ξ 좌표로 full-dimensional)"""
        polytope = _polytope([(0, 0), (0, 3)], [(0, 1)], 2)
        assert polytope.k == 1
        assert [f.normal for f in polytope.facets] == [(-1,), (1,)]

    def test_scaled(self):
        polytope = _foschi().scaled(2)
        assert polytope.vertices == [(8, 8), (10, 4), (4, 10)]
        assert [f.offset for f in polytope.facets] == [0, 0, 2]


# ─────────────────────────────────────────────────────────────────
# Cone
# ─────────────────────────────────────────────────────────────────

class TestCone:
    def test_contains_generators(self):
        from spheromo.core.engine.polykernel import Cone
        cone = Cone(2, generators=[(1, 0), (0, 1)])
        assert cone.contains((1, 1))
        assert cone.contains((0, 0))
        assert not cone.contains((-1, 0))

    def test_contains_inequalities(self):
        from spheromo.core.engine.polykernel import Cone
        cone = Cone.from_inequalities([(1, 0)], 2)
        assert cone.contains((0, -5))
        assert not cone.contains((-1, 0))

    def test_rays_drop_redundant(self):
        """(1,1) 은 극광선이 아님, 생성원은 원시화"""
        from spheromo.core.engine.polykernel import Cone
        cone = Cone(2, generators=[(2, 0), (0, 1), (1, 1)])
        assert cone.rays() == [(0, 1), (1, 0)]

    def test_dual_round_trip(self):
        from spheromo.core.engine.polykernel import Cone
        cone = Cone(2, generators=[(1, 0), (1, 1)])
        normals = cone.facet_inequalities()
        assert normals == [(0, 1), (1, -1)]
        dual = Cone.from_inequalities(normals, 2).dual()
        assert dual.generators == [(0, 1), (1, -1)]

    def test_rays_from_inequalities(self):
        from spheromo.core.engine.polykernel import Cone
        cone = Cone.from_inequalities([(0, 1), (1, -1)], 2)
        assert cone.rays() == [(1, 0), (1, 1)]

    def test_strict_convexity(self):
        from spheromo.core.engine.polykernel import Cone
        assert Cone(2, generators=[(1, 0), (0, 1)]).is_strictly_convex()
        assert not Cone(2, generators=[(1, 0), (-1, 0)]).is_strictly_convex()

    def test_full_dimension(self):
        from spheromo.core.engine.polykernel import Cone
        assert Cone(2, generators=[(1, 0), (0, 1)]).is_full_dimensional()
        assert not Cone(2, generators=[(1, 0)]).is_full_dimensional()

    def test_faces_of_quadrant(self):
        """2차원 사분면: {0}, 광선 2개, 자신"""
        from spheromo.core.engine.polykernel import Cone
        faces = Cone(2, generators=[(1, 0), (0, 1)]).faces()
        assert faces == [(), ((0, 1),), ((1, 0),), ((0, 1), (1, 0))]

    def test_dimension_mismatch(self):
        from spheromo.core.engine.polykernel import Cone
        from spheromo.core.errors import LatticeError
        with pytest.raises(LatticeError):
            Cone(2, generators=[(1, 0, 0)])

    def test_relint_meets(self):
        from spheromo.core.engine.polykernel import Cone, relint_meets
        quadrant = Cone(2, generators=[(1, 0), (0, 1)])
        assert relint_meets(quadrant, Cone.from_inequalities([(1, 0)], 2))
        assert not relint_meets(quadrant, Cone.from_inequalities([(-1, 0)], 2))
        # 경계만 닿는 경우는 상대 내부 교차가 아님
        assert not relint_meets(quadrant, Cone.from_inequalities([(-1, 0), (0, -1)], 2))

    def test_same_hyperplane(self):
        from spheromo.core.engine.polykernel import same_hyperplane
        assert same_hyperplane(((1, 0), 1), ((2, 0), 2))
        assert same_hyperplane(((1, 0), 1), ((-1, 0), -1))
        assert not same_hyperplane(((1, 0), 1), ((1, 0), 2))


# ─────────────────────────────────────────────────────────────────
# normal_cone / valuation_cone / orbit_faces
# ─────────────────────────────────────────────────────────────────

class TestOrbitFaces:
    def test_normal_cone_at_vertex(self):
        from spheromo.core.engine.polykernel import normal_cone
        cone = normal_cone(_foschi(), [0])
        assert sorted(cone.generators) == [(-1, 0), (0, -1)]

    def test_normal_cone_of_polytope_is_zero(self):
        from spheromo.core.engine.polykernel import normal_cone
        cone = normal_cone(_foschi(), [0, 1, 2])
        assert cone.generators == []
        assert cone.contains((0, 0))

    def test_normal_cone_rejects_non_face(self):
        """사각형의 대각선은 면이 아님"""
        from spheromo.core.engine.polykernel import normal_cone
        from spheromo.core.errors import LatticeError
        square = _polytope([(0, 0), (1, 0), (0, 1), (1, 1)], [(1, 0), (0, 1)], 2)
        with pytest.raises(LatticeError):
            normal_cone(square, [0, 3])

    def test_empty_sigma_all_vertices(self):
        """Σ = ∅: V 가 전체 공간이므로 모든 면이 orbit face"""
        from spheromo.core.engine.polykernel import orbit_faces, orbit_vertices
        polytope = _foschi()
        assert orbit_vertices(polytope, []) == [0, 1, 2]
        assert len(orbit_faces(polytope, [])) == 7

    def test_foschi_full_sigma(self):
        """Σ = {α1, α2}: orbit vertex 는 λ1 = 4ϖ1+4ϖ2 하나"""
        from spheromo.core.engine.polykernel import orbit_vertices
        assert orbit_vertices(_foschi(), [(2, -1), (-1, 2)]) == [0]

    def test_valuation_cone(self):
        from spheromo.core.engine.polykernel import valuation_cone
        cone = valuation_cone(_foschi(), [(2, -1)])
        assert cone.contains((-1, 0))
        assert not cone.contains((1, 0))


class TestDualRays:
    def test_foschi_at_omega(self):
        """facet 마다 광선 (ρ_F, m_{F,v})"""
        from spheromo.core.engine.polykernel import dual_rays
        rays = [ray for _, ray in dual_rays(_foschi(), (4, 4))]
        assert rays == [(-1, 0, 0), (0, -1, 0), (1, 1, 1)]

    def test_offsets_move_with_anchor(self):
        from spheromo.core.engine.polykernel import dual_rays
        rays = [ray for _, ray in dual_rays(_foschi(), (5, 2))]
        assert rays == [(-1, 0, 0), (0, -1, 1), (1, 1, 0)]

    def test_anchor_outside_polytope(self):
        from spheromo.core.engine.polykernel import dual_rays
        from spheromo.core.errors import LatticeError
        with pytest.raises(LatticeError):
            dual_rays(_foschi(), (0, 0))
        with pytest.raises(LatticeError):
            dual_rays(_foschi(), (Rational(9, 2), 4))
