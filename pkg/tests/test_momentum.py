"""
모멘텀 삼중쌍 판정 테스트
=========================
momentum.py 의 Q-호환성, A(α), Q-허용성/허용성, 스케일, 모노이드, 사중쌍, 반사성, Σ 열거를 검증.
입력은 tests/fixtures/*.json (conftest.load).

실행:
    pytest tests/test_momentum.py -v
"""
from itertools import combinations

import pytest


# ─────────────────────────────────────────────────────────────────
# helpers
# ─────────────────────────────────────────────────────────────────

def _sigma(loaded, *names):
    from spheromo.core.data.document import parse_sigma
    return sorted((parse_sigma(loaded.system, n) for n in names), key=lambda s: s.sort_key)


def _names(pair, results):
    return [[pair.name(s) for s in sigmas] for sigmas, _ in results]


# ─────────────────────────────────────────────────────────────────
# MomentumPair / MomentumTripleInput
# ─────────────────────────────────────────────────────────────────

class TestMomentumPair:
    def test_coroots_restricted(self, load):
        """Sp6: α2^∨|_Ξ = (-3, 2)"""
        pair = load("sp6").pair
        assert pair.coroots[1] == (-3, 2)
        assert pair.s_perp_lattice == frozenset()

    def test_s_perp_polytope(self, load):
        """Sp4: 0 이 꼭짓점이지만 S^p(Q) 는 모든 꼭짓점에서 0 인 α 만"""
        pair = load("sp4").pair
        assert pair.s_perp_polytope == frozenset()

    def test_non_dominant_vertex(self):
        from spheromo.core.engine.momentum import MomentumPair
        from spheromo.core.engine.polykernel import RationalPolytope, Sublattice
        from spheromo.core.engine.rootsys import RootSystemSpec, build_root_system
        from spheromo.core.errors import LatticeError
        system = build_root_system(RootSystemSpec(components=[("A", 2)]))
        polytope = RationalPolytope([(1, 0), (-1, 1)], Sublattice([(-2, 1)], 2))
        with pytest.raises(LatticeError):
            MomentumPair(system, polytope)

    def test_rank_mismatch(self):
        from spheromo.core.engine.momentum import MomentumPair
        from spheromo.core.engine.polykernel import RationalPolytope, Sublattice
        from spheromo.core.engine.rootsys import RootSystemSpec, build_root_system
        from spheromo.core.errors import LatticeError
        system = build_root_system(RootSystemSpec(components=[("A", 2)]))
        polytope = RationalPolytope([(0,), (1,)], Sublattice([(1,)], 1))
        with pytest.raises(LatticeError):
            MomentumPair(system, polytope)

    def test_triple_rejects_foreign_root(self, load):
        """카탈로그 밖의 σ → InputError"""
        from spheromo.core.engine.momentum import MomentumTripleInput
        from spheromo.core.engine.rootsys import SphericalRoot
        from spheromo.core.errors import InputError
        pair = load("foschi").pair
        with pytest.raises(InputError):
            MomentumTripleInput(pair, [SphericalRoot([3, 0], "A.sum", [0])])

    def test_triple_sorted_and_deduplicated(self, load):
        from spheromo.core.engine.momentum import MomentumTripleInput
        loaded = load("foschi")
        a1, a2 = _sigma(loaded, "alpha1", "alpha2")
        triple = MomentumTripleInput(loaded.pair, [a2, a1, a2])
        assert triple.sigmas == [a1, a2]


# ─────────────────────────────────────────────────────────────────
# q_compatible / build_A
# ─────────────────────────────────────────────────────────────────

class TestQCompatible:
    def test_foschi_simple_roots(self, load):
        from spheromo.core.engine.momentum import q_compatible
        loaded = load("foschi")
        for sigma in _sigma(loaded, "alpha1", "alpha2"):
            assert q_compatible(loaded.pair, sigma).passed

    def test_sp6_alpha2(self, load):
        """Sp6: α2 는 Q-호환 (ρ1 = -3ε1+ε2 가 ⟨ρ,α2⟩ = 1 인 사전식 최소 facet)"""
        from spheromo.core.engine.momentum import q_compatible
        loaded = load("sp6")
        (alpha2,) = _sigma(loaded, "alpha2")
        verdict = q_compatible(loaded.pair, alpha2)
        assert verdict.passed
        assert any("(-3, 1)" in line for line in verdict.trace)

    def test_sp6_orthogonal_sum(self, load):
        from spheromo.core.engine.momentum import q_compatible
        loaded = load("sp6")
        (sigma,) = _sigma(loaded, "alpha1+alpha3")
        assert q_compatible(loaded.pair, sigma).passed

    def test_not_primitive(self, load):
        """Foschi: 2α1 은 Ξ = Z{α1, α2} 에서 원시가 아님"""
        from spheromo.core.engine.momentum import q_compatible
        loaded = load("foschi")
        (sigma,) = _sigma(loaded, "2alpha1")
        verdict = q_compatible(loaded.pair, sigma)
        assert verdict.failed
        assert verdict.axiom == "lattice.primitive"
        assert verdict.certificate.witness["coords"] == "(2, 0)"

    def test_outside_lattice_span(self, load):
        """Sp6: α1 ∉ Ξ_Q → fail (예외가 아님)"""
        from spheromo.core.engine.momentum import q_compatible
        loaded = load("sp6")
        (sigma,) = _sigma(loaded, "alpha1")
        verdict = q_compatible(loaded.pair, sigma)
        assert verdict.failed
        assert verdict.axiom == "lattice.primitive"
        assert verdict.certificate.witness["coords"] == "outside Ξ_Q"


class TestBuildA:
    def test_foschi(self, load):
        """ρ(D^+) + ρ(D^-) = α1^∨|_Ξ"""
        from spheromo.core.engine.momentum import build_A
        pair = load("foschi").pair
        ap = build_A(pair, 0)
        assert ap.plus == (1, 1)
        assert ap.minus == (1, -2)
        assert tuple(a + b for a, b in zip(ap.plus, ap.minus)) == pair.coroots[0]

    def test_sp6_alpha2(self, load):
        from spheromo.core.engine.momentum import build_A
        ap = build_A(load("sp6").pair, 1)
        assert ap.plus == (-3, 1)
        assert ap.minus == (0, 1)

    def test_not_compatible_raises(self, load):
        """Sp6: α1 은 Q-호환이 아님 → A(α1) 없음"""
        from spheromo.core.engine.momentum import build_A
        from spheromo.core.errors import SpheromoError
        with pytest.raises(SpheromoError):
            build_A(load("sp6").pair, 0)


# ─────────────────────────────────────────────────────────────────
# q_admissible / admissible / scale_to_admissible
# ─────────────────────────────────────────────────────────────────

class TestAdmissible:
    def test_foschi_full(self, load):
        from spheromo.core.engine.momentum import admissible, q_admissible
        loaded = load("foschi")
        assert q_admissible(loaded.pair, loaded.sigmas).passed
        assert admissible(loaded.pair, loaded.sigmas).passed

    def test_sp6_full(self, load):
        from spheromo.core.engine.momentum import admissible
        loaded = load("sp6")
        verdict = admissible(loaded.pair, loaded.sigmas)
        assert verdict.passed
        assert verdict.trace[-1].startswith("orbit vertices:")

    @pytest.mark.parametrize("names", [(), ("alpha2",), ("alpha1+alpha3",)])
    def test_sp6_proper_subsets_fail(self, load, names):
        """Sp6: Σ 의 진부분집합은 Q-허용이지만 허용은 아님 (정수/orbit vertex 조건)"""
        from spheromo.core.engine.momentum import admissible, q_admissible
        loaded = load("sp6")
        sigmas = _sigma(loaded, *names)
        assert q_admissible(loaded.pair, sigmas).passed
        verdict = admissible(loaded.pair, sigmas)
        assert verdict.failed
        assert verdict.axiom.startswith("admissible.")

    def test_subset_closed(self, load):
        """Q-허용성은 부분집합에 닫혀 있음"""
        from spheromo.core.engine.momentum import q_admissible
        loaded = load("foschi")
        for size in range(len(loaded.sigmas) + 1):
            for subset in combinations(loaded.sigmas, size):
                assert q_admissible(loaded.pair, list(subset)).passed

    def test_scale_already_admissible(self, load):
        from spheromo.core.engine.momentum import scale_to_admissible
        loaded = load("sp6")
        n, verdict = scale_to_admissible(loaded.pair, loaded.sigmas)
        assert n == 1
        assert verdict.passed

    def test_scale_empty_sigma(self, load):
        """Sp6, Σ = ∅: 꼭짓점 차이 (1/2, 1), (1/6, 0) 이 격자에 들어가는 최소 n = 6"""
        from spheromo.core.engine.momentum import admissible, scale_to_admissible
        pair = load("sp6").pair
        n, verdict = scale_to_admissible(pair, [])
        assert n == 6
        assert verdict.passed
        assert admissible(pair.scaled(n), []).passed

    def test_scale_not_q_admissible(self, load):
        from spheromo.core.engine.momentum import scale_to_admissible
        loaded = load("foschi")
        n, verdict = scale_to_admissible(loaded.pair, _sigma(loaded, "2alpha1"))
        assert n is None
        assert verdict.failed


# ─────────────────────────────────────────────────────────────────
# 모노이드 / 사중쌍
# ─────────────────────────────────────────────────────────────────

class TestMonoid:
    def test_extended_lattice_from_generators(self):
        """Ξ̃ = Z{(1,0,0), (0,1,0), (4,2,1)} → 기저 Z², 차수 1 원소 (4,2)"""
        from spheromo.core.engine.momentum import ExtendedLattice
        extended = ExtendedLattice.from_generators([(1, 0, 0), (0, 1, 0), (4, 2, 1)], 2)
        assert extended.base.k == 2
        assert extended.member((0, 0, 1))
        assert extended.member((4, 2, 1))

    def test_extended_lattice_bad_degree(self):
        """차수가 Z 를 생성하지 않으면 LatticeError"""
        from spheromo.core.engine.momentum import ExtendedLattice
        from spheromo.core.errors import LatticeError
        with pytest.raises(LatticeError):
            ExtendedLattice.from_generators([(1, 0, 0), (0, 1, 0), (0, 0, 2)], 2)

    def test_with_anchor(self):
        from spheromo.core.engine.momentum import ExtendedLattice
        from spheromo.core.errors import LatticeError
        extended = ExtendedLattice.from_generators([(1, 0, 0), (0, 2, 0), (0, 0, 1)], 2)
        assert extended.with_anchor((1, 2)).anchor == (1, 2)
        with pytest.raises(LatticeError):
            extended.with_anchor((0, 1))

    def test_admissible_implies_monoid_admissible(self, load):
        """Foschi: 허용 Σ 는 orbit vertex 에서 만든 Ξ̃ 위에서도 허용"""
        from spheromo.core.engine.momentum import monoid_admissible, monoid_for
        loaded = load("foschi")
        monoid = monoid_for(loaded.pair, loaded.sigmas)
        assert monoid.extended.anchor == (4, 4)
        assert monoid_admissible(monoid, loaded.sigmas).passed
        assert monoid.split(0) == ((1, 1, 1), (1, -2, 3))

    def test_monoid_compatible_simple_root(self, load):
        """α2^∨ = (1,1,1) + (−2,1,3), 두 번째도 Γ^∨ 안"""
        from spheromo.core.engine.momentum import WeightMonoid, monoid_compatible
        loaded = load("foschi")
        monoid = WeightMonoid(loaded.pair, (4, 4))
        assert monoid.rays == [(-1, 0, 0), (0, -1, 0), (1, 1, 1)]
        assert monoid_compatible(monoid, _sigma(loaded, "alpha2")[0]).passed
        assert monoid.split(1) == ((1, 1, 1), (-2, 1, 3))

    def test_monoid_compatible_not_primitive(self, load):
        from spheromo.core.engine.momentum import WeightMonoid, monoid_compatible
        loaded = load("foschi")
        monoid = WeightMonoid(loaded.pair, (4, 4))
        verdict = monoid_compatible(monoid, _sigma(loaded, "2alpha1")[0])
        assert verdict.axiom == "monoid.primitive"


class TestQuadruple:
    def _check(self, loaded, sigmas):
        from spheromo.core.data.document import quadruple_data
        from spheromo.core.engine.momentum import quadruple_check
        generators, weights = quadruple_data(loaded)
        return quadruple_check(loaded.system, generators, weights, loaded.pair.polytope.vertices, sigmas)

    def test_empty_sigma_hull(self, load):
        """Σ = ∅: Conv(4ϖ1+2ϖ1') 가 Q 를 덮지 못함"""
        verdict = self._check(load("sl2xsl2"), [])
        assert verdict.failed
        assert verdict.axiom == "quadruple.hull"

    def test_no_sigma_gives_quadruple(self, load):
        """SL2×SL2 의 어떤 Σ 로도 사중쌍이 아님"""
        loaded = load("sl2xsl2")
        catalog = loaded.system.catalog
        assert len(catalog) == 6
        for size in range(len(catalog) + 1):
            for subset in combinations(catalog, size):
                assert not self._check(loaded, list(subset)).passed

    def test_span_failure(self, load):
        """Ξ̃ 의 차수 0 부분이 Q - ω 를 담지 못하면 span 실패"""
        from spheromo.core.engine.momentum import quadruple_check
        loaded = load("sl2xsl2")
        verdict = quadruple_check(
            loaded.system, [(1, 0, 0), (0, 0, 1)], [(4, 2)], loaded.pair.polytope.vertices, [],
        )
        assert verdict.failed
        assert verdict.axiom == "quadruple.span"


# ─────────────────────────────────────────────────────────────────
# 반사성 (Fano)
# ─────────────────────────────────────────────────────────────────

class TestReflexive:
    def test_anticanonical_weight(self, load):
        from spheromo.core.engine.momentum import anticanonical_weight
        loaded = load("sp4")
        assert anticanonical_weight(loaded.system, loaded.pair.polytope) == (2, 2)

    def test_sp4_q_reflexive(self, load):
        from spheromo.core.engine.momentum import reflexive_check
        loaded = load("sp4")
        assert reflexive_check(loaded.pair, loaded.sigmas, "q-reflexive").passed

    def test_sp4_not_reflexive(self, load):
        """w - v 가 어떤 orbit vertex 에서도 Ξ 에 없음"""
        from spheromo.core.engine.momentum import reflexive_check
        loaded = load("sp4")
        verdict = reflexive_check(loaded.pair, loaded.sigmas, "reflexive")
        assert verdict.failed
        assert verdict.axiom == "reflexive.w_in_lattice_class"
        assert verdict.certificate.witness["w"] == "(2, 2)"

    def test_unknown_level(self, load):
        from spheromo.core.engine.momentum import reflexive_check
        from spheromo.core.errors import InputError
        loaded = load("sp4")
        with pytest.raises(InputError):
            reflexive_check(loaded.pair, loaded.sigmas, "smooth")


# ─────────────────────────────────────────────────────────────────
# evaluate_level / enumerate_sigma
# ─────────────────────────────────────────────────────────────────

class TestEvaluateLevel:
    def test_alias(self, load):
        from spheromo.core.engine.momentum import evaluate_level
        loaded = load("foschi")
        assert evaluate_level(loaded.pair, loaded.sigmas, "momentum").passed

    def test_unknown_level(self, load):
        from spheromo.core.engine.momentum import evaluate_level
        from spheromo.core.errors import InputError
        loaded = load("foschi")
        with pytest.raises(InputError):
            evaluate_level(loaded.pair, loaded.sigmas, "fano")


class TestEnumerate:
    def test_foschi_admissible(self, load):
        from spheromo.core.engine.momentum import enumerate_sigma
        pair = load("foschi").pair
        results = enumerate_sigma(pair, "admissible")
        assert _names(pair, results) == [[], ["alpha1"], ["alpha2"], ["alpha1", "alpha2"]]
        assert all(v.passed for _, v in results)

    def test_woodward_q_admissible(self, load):
        """Woodward 다각형: Σ = ∅ 만 Q-허용"""
        from spheromo.core.engine.momentum import enumerate_sigma
        pair = load("woodward_gl2").pair
        assert _names(pair, enumerate_sigma(pair, "q-admissible")) == [[]]

    def test_torus(self, load):
        from spheromo.core.engine.momentum import enumerate_sigma
        pair = load("torus_delzant").pair
        assert _names(pair, enumerate_sigma(pair, "smooth")) == [[]]

    def test_unsupported_singletons_not_extended(self, load):
        """Luna (S) 테이블이 비면 α1, α1+α2, α2 는 unsupported 단독 항목, 상위 Σ 없음"""
        from spheromo.core.data.registry import LunaSTable
        from spheromo.core.engine.momentum import MomentumPair, enumerate_sigma
        loaded = load("foschi")
        empty = LunaSTable.model_validate({"version": "empty", "rows": {}})
        pair = MomentumPair(loaded.system, loaded.pair.polytope, empty)
        results = enumerate_sigma(pair, "admissible")
        assert _names(pair, results) == [[], ["alpha1"], ["alpha1+alpha2"], ["alpha2"]]
        assert results[0][1].passed
        for sigmas, verdict in results[1:]:
            assert verdict.status == "unsupported"
            assert verdict.axiom == "lattice.luna_s"
            assert verdict.trace == [f"supersets of {pair.name(sigmas[0])} not enumerated"]

    def test_parallel_matches_serial(self, load):
        from spheromo.core.engine.momentum import enumerate_sigma
        pair = load("foschi").pair
        serial = _names(pair, enumerate_sigma(pair, "q-admissible", jobs=1))
        parallel = _names(pair, enumerate_sigma(pair, "q-admissible", jobs=4))
        assert serial == parallel
