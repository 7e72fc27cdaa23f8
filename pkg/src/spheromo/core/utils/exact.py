"""정확한 유리수 산술 · 정수 격자 · LP 헬퍼

부동소수점은 어디에서도 사용하지 않는다. 모든 벡터는 sympy Rational 의 tuple.
"""
import logging
import re
from functools import reduce
from math import gcd, lcm
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from sympy import Integer, Matrix, Rational, Symbol, symbols
from sympy.logic.boolalg import BooleanFalse, BooleanTrue
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form, invariant_factors
from sympy.solvers.simplex import InfeasibleLPError, UnboundedLPError, lpmax

from spheromo.core.errors import InputError, LatticeError

logger = logging.getLogger(__name__)

Vector = Tuple[Rational, ...]
RationalLike = Union[int, str, Rational]

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


# ── 유리수 파싱 ──────────────────────────────────────────────────────────────

def parse_rational(value: RationalLike) -> Rational:
    """"p/q" 또는 정수 문자열/정수 → Rational. 소수점·float 는 거부."""
    if isinstance(value, bool):
        raise InputError(f"boolean is not a rational: {value!r}")
    if isinstance(value, Rational):
        return value
    if isinstance(value, int):
        return Integer(value)
    if not isinstance(value, str):
        raise InputError(f"not an exact rational: {value!r}")
    text = value.strip().replace(" ", "")
    if not _RATIONAL_RE.match(text):
        raise InputError(f"malformed rational '{value}' (expected 'p/q' or integer)")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise InputError(f"zero denominator in '{value}'")
        return Rational(int(num), int(den))
    return Integer(int(text))


def format_rational(q: Rational) -> str:
    q = Rational(q)
    return str(q.p) if q.q == 1 else f"{q.p}/{q.q}"


def format_vector(v: Sequence[Rational]) -> str:
    return "(" + ", ".join(format_rational(x) for x in v) + ")"


def vec(values: Iterable[RationalLike]) -> Vector:
    return tuple(parse_rational(x) for x in values)


def zero(n: int) -> Vector:
    return tuple(Integer(0) for _ in range(n))


# ── 벡터 연산 ────────────────────────────────────────────────────────────────

def dot(u: Sequence[Rational], v: Sequence[Rational]) -> Rational:
    if len(u) != len(v):
        raise LatticeError(f"rank mismatch: {len(u)} vs {len(v)}")
    return sum((Rational(a) * b for a, b in zip(u, v)), Integer(0))


def add(u: Sequence[Rational], v: Sequence[Rational]) -> Vector:
    return tuple(Rational(a) + b for a, b in zip(u, v))


def sub(u: Sequence[Rational], v: Sequence[Rational]) -> Vector:
    return tuple(Rational(a) - b for a, b in zip(u, v))


def scale(c: RationalLike, v: Sequence[Rational]) -> Vector:
    c = parse_rational(c)
    return tuple(c * a for a in v)


def combo(coeffs: Sequence[Rational], rows: Sequence[Sequence[Rational]], n: int) -> Vector:
    """Σ c_i · row_i (길이 n)"""
    out = zero(n)
    for c, row in zip(coeffs, rows):
        if c:
            out = add(out, scale(c, row))
    return out


def is_integral(v: Iterable[Rational]) -> bool:
    return all(Rational(x).q == 1 for x in v)


def lcm_denominators(values: Iterable[Rational]) -> int:
    return reduce(lcm, (Rational(x).q for x in values), 1)


def primitive(v: Sequence[Rational]) -> Vector:
    """유리 벡터의 양의 배수 중 원시(primitive) 정수 벡터. 0 벡터는 그대로."""
    d = lcm_denominators(v)
    ints = [int(Rational(x) * d) for x in v]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    if g == 0:
        return tuple(Integer(0) for _ in v)
    return tuple(Integer(x // g) for x in ints)


def is_primitive_integral(v: Sequence[Rational]) -> bool:
    if not is_integral(v):
        return False
    return reduce(gcd, (abs(int(x)) for x in v), 0) == 1


def positive_multiple(u: Sequence[Rational], v: Sequence[Rational]) -> bool:
    """u = c·v (c > 0) 여부"""
    if len(u) != len(v):
        return False
    if all(x == 0 for x in v):
        return all(x == 0 for x in u)
    return primitive(u) == primitive(v) and any(x != 0 for x in u)


def lex_key(v: Sequence[Rational]) -> Tuple[Rational, ...]:
    return tuple(Rational(x) for x in v)


# ── 선형대수 (QQ) ────────────────────────────────────────────────────────────

def rank(rows: Sequence[Sequence[Rational]], ncols: Optional[int] = None) -> int:
    if not rows:
        return 0
    return Matrix([list(r) for r in rows]).rank()


def nullspace(rows: Sequence[Sequence[Rational]], ncols: int) -> List[Vector]:
    """{x : row·x = 0 ∀row} 의 기저. 행이 없으면 표준 기저."""
    if not rows:
        return [tuple(Integer(1 if i == j else 0) for j in range(ncols)) for i in range(ncols)]
    basis = Matrix([list(r) for r in rows]).nullspace()
    return [tuple(Rational(x) for x in b) for b in basis]


def solve_coordinates(basis: Sequence[Sequence[Rational]], v: Sequence[Rational]) -> Optional[Vector]:
    """x·B = v 의 유일해 (B 행은 일차독립). span 밖이면 None."""
    if not basis:
        return () if all(x == 0 for x in v) else None
    bt = Matrix([list(r) for r in basis]).T
    try:
        sol, params = bt.gauss_jordan_solve(Matrix(list(v)))
    except ValueError:
        return None
    if params.shape[0]:
        raise LatticeError("basis rows are linearly dependent")
    return tuple(Rational(x) for x in sol)


def determinant(rows: Sequence[Sequence[Rational]]) -> Rational:
    if not rows:
        return Integer(1)
    return Rational(Matrix([list(r) for r in rows]).det())


# ── 정수 격자 (ZZ normal forms) ──────────────────────────────────────────────

def _to_zz(rows: Sequence[Sequence[Rational]], ncols: int) -> DomainMatrix:
    data = [[ZZ(int(x)) for x in r] for r in rows]
    return DomainMatrix(data, (len(rows), ncols), ZZ)


def lattice_basis(generators: Sequence[Sequence[Rational]], ncols: int) -> List[Vector]:
    """정수 생성원 → Z-기저 (HNF 열). 생성원은 정수여야 한다."""
    gens = [g for g in generators if any(x != 0 for x in g)]
    if not gens:
        return []
    if not all(is_integral(g) for g in gens):
        raise LatticeError("lattice generators must be integral")
    # 생성원을 열로 놓은 n×g 행렬의 HNF 열이 열 격자의 기저
    cols = _to_zz(gens, ncols).transpose()
    hnf = hermite_normal_form(cols).to_Matrix()
    return [tuple(Integer(hnf[i, j]) for i in range(hnf.rows)) for j in range(hnf.cols)]


def unimodular_span(vectors: Sequence[Sequence[Rational]], k: int) -> bool:
    """정수 좌표 벡터들이 Z^k 전체를 생성하는지 (불변인자 k개 모두 1)"""
    if k == 0:
        return True
    if not vectors or not all(is_integral(v) for v in vectors):
        return False
    factors = invariant_factors(_to_zz(vectors, k))
    return len(factors) == k and all(abs(int(f)) == 1 for f in factors)


# ── 정확한 LP (sympy simplex) ────────────────────────────────────────────────

def fresh_symbols(prefix: str, n: int) -> Tuple[Symbol, ...]:
    if n == 0:
        return ()
    return tuple(symbols(f"{prefix}0:{n}", real=True))


def _clean_constraints(constraints):
    """True 로 평가된 제약은 제거, False 가 있으면 None (불가능)"""
    out = []
    for c in constraints:
        if c is True or isinstance(c, BooleanTrue):
            continue
        if c is False or isinstance(c, BooleanFalse):
            return None
        out.append(c)
    return out


def lp_maximize(objective, constraints) -> Optional[Rational]:
    """정확한 LP 최댓값. 불가능하면 None, 비유계면 LatticeError."""
    cleaned = _clean_constraints(constraints)
    if cleaned is None:
        return None
    try:
        value, _ = lpmax(objective, cleaned)
    except InfeasibleLPError:
        return None
    except UnboundedLPError:
        raise LatticeError("unbounded linear program (missing slack bound)")
    return Rational(value)


def lp_feasible(constraints) -> bool:
    """제약 집합의 실행 가능성 — 상한 0 인 더미 목적함수를 최대화"""
    (t,) = fresh_symbols("feas", 1)
    return lp_maximize(t, list(constraints) + [t <= 0, t >= -1]) is not None
