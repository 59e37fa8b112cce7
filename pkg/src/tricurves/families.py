"""Infinite families of negative-curve polynomials.

Four constructions are provided, each with built-in verification:

* ``mn_pairs`` -- the integer solutions (M, N) of (M+N)^2 = K*M*N + 1,
  generated by the recurrence F_{n+2} = (K-2) F_{n+1} - F_n.
* ``xi`` -- the polynomials cutting out the curves supported in the
  integral triangles IT_K(M,N) and the rational triangles RT_K(M,N),
  computed by exact division from the pair of recurrence identities.
* ``new_nonspecial`` -- for each K >= 4, a curve of vanishing order
  m = ceil(K^2 - 7K/2 + 2) in a triangle with slopes (a/d, b/2).
* ``special_upsilon`` -- for each K >= 4, a special curve (positive
  deficiency) obtained as an exact quotient of a difference of powers
  of two ``xi`` polynomials.

Every constructor asserts its advertised invariants (supports, vanishing
orders, vertex coefficients, closed-form counts) rather than assuming
them; an assertion failure here means an internal inconsistency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .lattice import (
    LatticePoint,
    QPolygon,
    lattice_length,
    lattice_perimeter,
    lattice_points,
    pick_stats,
)
from .laurent import (
    ONE,
    X,
    Y,
    LaurentPoly,
    divides,
    edge_restriction,
    newton_polygon,
    power,
    taylor_coefficient,
    vanishing_order,
)
from .trispace import SlopePair, SlopeTriangle, WppWeights, minimal_triangle

# vanishing-order postconditions are asserted exactly whenever the support
# bounding box is at most this many cells; larger instances rely on the
# order-multiplicativity of the construction instead.
_ORDER_CHECK_CELLS = 30_000


@dataclass(frozen=True)
class FamilySolution:
    """A solution (M, N) = (F_{n+1}, F_n) of (M+N)^2 = K*M*N + 1."""

    K: int
    n: int
    M: int
    N: int

    def __post_init__(self):
        if self.K < 3:
            raise ValueError("K must be at least 3")
        if self.n < 0:
            raise ValueError("index must be nonnegative")
        if self.M < 1 or self.N < 0:
            raise ValueError("M must be positive and N nonnegative")
        if (self.M + self.N) ** 2 != self.K * self.M * self.N + 1:
            raise ValueError(
                f"({self.M},{self.N}) does not solve (M+N)^2 = {self.K}MN+1"
            )


def _f_sequence(K: int, upto: int) -> list:
    """F_0, ..., F_upto with F_{n+2} = (K-2) F_{n+1} - F_n."""
    fs = [0, 1]
    while len(fs) <= upto:
        fs.append((K - 2) * fs[-1] - fs[-2])
    return fs[: upto + 1]


def mn_pairs(K: int, n_max: int) -> list:
    """Solutions (M_n, N_n) for n = 0..n_max.

    For K = 3 the sequence terminates after (1, 0), (1, 1): beyond that
    the recurrence leaves the positive range and the list is truncated.
    """
    if K < 3:
        raise ValueError("K must be at least 3")
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    fs = _f_sequence(K, n_max + 1)
    out = []
    for n in range(n_max + 1):
        if fs[n + 1] < 1 or fs[n] < 0:
            break
        out.append(FamilySolution(K, n, fs[n + 1], fs[n]))
    return out


def _solution(K: int, n: int) -> FamilySolution:
    pairs = mn_pairs(K, n)
    if len(pairs) <= n:
        raise ValueError(f"no family solution with K={K}, n={n}")
    return pairs[n]


def epsilon_int(K: int, n: int) -> int:
    """Sign of the top-degree correction in the degree-K identity."""
    if K % 2 == 0:
        return -1
    return 1 if n % 3 == 1 else -1


def epsilon_rat(K: int, n: int) -> int:
    """Sign of the top-degree correction in the product identity."""
    if K % 2 == 0:
        return 1 if n % 2 == 1 else -1
    return 1 if n % 3 == 2 else -1


def family_triangle(K: int, M: int, N: int, kind: str) -> SlopeTriangle:
    """The triangle IT_K(M,N) or RT_K(M,N) supporting xi(K, n, kind).

    IT has vertices (0,0), (M,0), (M+N, KN) and slopes (KN/(M+N), K);
    RT has vertices (0,0), (M-(M+N)/K, 0), (M, M+N) and slopes
    ((M+N)/M, K).
    """
    if (M + N) ** 2 != K * M * N + 1:
        raise ValueError(f"({M},{N}) is not a solution for K={K}")
    if kind == "IT":
        if N < 1:
            raise ValueError("IT triangle needs N >= 1")
        tri = SlopeTriangle.from_vertices((0, 0), (M, 0), (M + N, K * N))
        assert tri.slopes == SlopePair(Fraction(K * N, M + N), K)
    elif kind == "RT":
        tri = SlopeTriangle.from_vertices(
            (0, 0), (M - Fraction(M + N, K), 0), (M, M + N))
        assert tri.slopes == SlopePair(Fraction(M + N, M), K)
    else:
        raise ValueError("kind must be 'IT' or 'RT'")
    return tri


def _y_minus_one_power(k: int) -> LaurentPoly:
    return power(Y - ONE, k)


def _verify_xi(K: int, n: int, kind: str, f: LaurentPoly) -> None:
    sol = _solution(K, n)
    M, N = sol.M, sol.N
    assert f.coeff(0, 0) == 1, "constant term must be 1"
    tri = family_triangle(K, M, N, "IT" if kind == "int" else "RT")
    poly = tri.polygon()
    # containment of the whole support follows from containment of its hull
    for pt in newton_polygon(f).vertices:
        assert poly.contains(pt), f"support point {pt} outside triangle"
    if kind == "int":
        for vx, vy in ((0, 0), (M, 0), (M + N, K * N)):
            assert abs(f.coeff(vx, vy)) == 1, "vertex coefficient not +-1"
    else:
        assert abs(f.coeff(M, M + N)) == 1, "top vertex coefficient not +-1"
    x0, x1, y0, y1 = f.bounding_box()
    if (x1 - x0 + 1) * (y1 - y0 + 1) <= _ORDER_CHECK_CELLS:
        want = M + N if kind == "int" else M
        assert vanishing_order(f) == want, "wrong vanishing order"


@lru_cache(maxsize=None)
def xi(K: int, n: int, kind: str) -> LaurentPoly:
    """The curve polynomial for IT_K(M_n,N_n) (int) or RT_K(M_n,N_n) (rat).

    For n >= 1 the two defining identities are

        xi_int_n * xi_int_{n-1} = (xi_rat_{n-1})^K
                                  + eps_int_n x^(M+N) (y-1)^(KN),
        xi_rat_n * xi_rat_{n-1} = xi_int_n + eps_rat_n x^M (y-1)^(M+N),

    each solved by exact division; a failed division means the recurrence
    state is inconsistent and raises ArithmeticError.
    """
    if kind not in ("int", "rat"):
        raise ValueError("kind must be 'int' or 'rat'")
    if K < 3:
        raise ValueError("K must be at least 3")
    if n < 0:
        raise ValueError("index must be nonnegative")
    if n == 0:
        return ONE - X if kind == "int" else ONE - X * Y
    sol = _solution(K, n)
    M, N = sol.M, sol.N
    if kind == "int":
        lhs = power(xi(K, n - 1, "rat"), K) + \
            epsilon_int(K, n) * (X ** (M + N)) * _y_minus_one_power(K * N)
        q = divides(xi(K, n - 1, "int"), lhs)
    else:
        lhs = xi(K, n, "int") + \
            epsilon_rat(K, n) * (X ** M) * _y_minus_one_power(M + N)
        q = divides(xi(K, n - 1, "rat"), lhs)
    if q is None:
        raise ArithmeticError(
            f"recurrence division failed for xi({K},{n},{kind})")
    _verify_xi(K, n, kind, q)
    return q


# ---------------------------------------------------------------------------
# The new non-special family.
# ---------------------------------------------------------------------------


def nonspecial_parameters(K: int) -> tuple:
    """(a, b, c, d, m) for the non-special family member at K."""
    if K < 4:
        raise ValueError("K must be at least 4")
    a = 2 * K - 3
    b = 2 * K - 1
    c = 4 * K * K - 16 * K + 11
    d = 2 * K - 5
    m = math.ceil(Fraction(2 * K * K - 7 * K + 4, 2))
    return a, b, c, d, m


def new_nonspecial(K: int) -> tuple:
    """The non-special curve at K: (triangle, m, candidate).

    Verifies that the convex hull of the triangle's lattice points has
    area (m^2-1)/2 and lattice perimeter m+1, so the lattice count is
    binom(m+1, 2) + 1, and that the interpolation kernel on these points
    is one-dimensional.
    """
    a, b, c, d, m = nonspecial_parameters(K)
    if K % 2 == 0:
        tri = SlopeTriangle.from_vertices(
            (Fraction(-1, a), 0), (m - K + 2, 0),
            (m, Fraction((K - 2) * b, 2)))
    else:
        lam = Fraction(K - 1, 2) + Fraction(1, c)
        tri = SlopeTriangle.from_vertices(
            (0, 0), (m - K + 2, 0), (lam * d, lam * a))
    assert tri.slopes == SlopePair(Fraction(a, d), Fraction(b, 2))

    pts = lattice_points(tri.polygon())
    hull = QPolygon.hull_of(pts)
    area, _, _ = pick_stats(hull)
    assert area == Fraction(m * m - 1, 2), "hull area mismatch"
    assert lattice_perimeter(hull) == m + 1, "hull perimeter mismatch"
    assert len(pts) == math.comb(m + 1, 2) + 1, "lattice count mismatch"

    from . import negcurve

    candidate = negcurve.detect_negative_curve(tri, m)
    if candidate is None:
        raise ArithmeticError(f"no curve found in the K={K} triangle")
    assert candidate.kernel_dimension == 1, "kernel dimension must be 1"
    return tri, m, candidate


# ---------------------------------------------------------------------------
# The special family.
# ---------------------------------------------------------------------------


def special_parameters(K: int) -> tuple:
    """(N, M, weights, m, deficiency) for the special curve at K."""
    if K < 4:
        raise ValueError("K must be at least 4")
    N = K - 2
    M = N * N - 1
    weights = WppWeights(K * N, K * N * N - 1, K * M * N * N - (M + N))
    m = N * (M + N) - 1
    deficiency = (K - 2) * (K - 3) // 2
    return N, M, weights, m, deficiency


def special_triangle(K: int) -> SlopeTriangle:
    """The minimal supporting triangle of the special curve at K."""
    N, M, _, _, _ = special_parameters(K)
    bl = (Fraction(-(K - 1), K * N), Fraction(0))
    br = (M * N - 1, 0)
    apex = (N * (M + N) - 1, K * N * N - 1)
    return SlopeTriangle.from_vertices(bl, br, apex)


def _special_newton_polygon(K: int) -> QPolygon:
    N, M, _, _, _ = special_parameters(K)
    return QPolygon([
        (0, 0),
        (M * N - 1, 0),
        (N * (M + N) - 1, K * N * N - 1),
        (M + N - 1, K * N - 1),
        (N - 1, N),
    ])


def special_upsilon(K: int) -> tuple:
    """The special curve at K: (poly, weights, m, deficiency).

    The polynomial is the exact quotient

        x (1 - y) * poly = xi(K,2,int)^N - xi(K-1,1,int)^(M+N),

    normalized to constant term 1.  The vanishing order, Newton polygon,
    perimeter/area/point-count closed forms, self-intersection
    -(K-1)/(KN) and the length-1 edge used for irreducibility are all
    verified exactly.
    """
    N, M, weights, m, deficiency = special_parameters(K)
    lhs = power(xi(K, 2, "int"), N) - power(xi(K - 1, 1, "int"), M + N)
    ups = divides(X - X * Y, lhs)
    if ups is None:
        raise ArithmeticError(f"x(1-y) does not divide the K={K} difference")
    if ups.coeff(0, 0) == -1:
        ups = -1 * ups
    assert ups.coeff(0, 0) == 1

    # Vanishing order: both powers vanish to order N(M+N) exactly, so the
    # quotient vanishes to order >= N(M+N) - 1 = m; exhibit one nonzero
    # degree-m Taylor coefficient for the matching upper bound.
    assert _has_taylor_term(ups, m), "vanishing order exceeds m"

    np_poly = newton_polygon(ups)
    assert np_poly == _special_newton_polygon(K), "Newton polygon mismatch"
    area, _, _ = pick_stats(np_poly)
    assert area == Fraction(
        K * M * N ** 3 - K * N * N - M * N + M + N, 2)
    assert lattice_perimeter(np_poly) == N * (M + 1) + 1
    count = (K * M * N ** 3 - K * N * N + 2 * N + M + 3) // 2
    assert len(lattice_points(np_poly)) == count

    # supporting triangle and self-intersection
    bl = (Fraction(-(K - 1), K * N), Fraction(0))
    br = (M * N - 1, 0)
    apex = (N * (M + N) - 1, K * N * N - 1)
    tri = SlopeTriangle.from_vertices(bl, br, apex)
    assert tri.slopes.s == Fraction(K * N, M + N)
    mintri = minimal_triangle(lattice_points(np_poly), tri.slopes)
    assert mintri.vertices == tri.vertices, "triangle is not minimal"
    assert 2 * tri.area() - m * m == Fraction(-(K - 1), K * N)

    # deficiency by direct count over the triangle
    tri_count = len(lattice_points(tri.polygon()))
    assert math.comb(m + 1, 2) + 1 - tri_count == deficiency

    # irreducibility: the right edge of the Newton polygon has lattice
    # length 1 and +-1 coefficients at both endpoints, so the edge cannot
    # split in any Minkowski factorization.
    assert lattice_length(LatticePoint(*br), LatticePoint(*apex)) == 1
    assert abs(ups.coeff(*br)) == 1 and abs(ups.coeff(*apex)) == 1
    return ups, weights, m, deficiency


def _has_taylor_term(f: LaurentPoly, total: int) -> bool:
    """Whether some Taylor coefficient of f at (1,1) has degree `total`."""
    for i in range(total + 1):
        if taylor_coefficient(f, i, total - i) != 0:
            return True
    return False


# ---------------------------------------------------------------------------
# Edge coefficients.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeRow:
    """Coefficients of xi(K, n, *) along the lower edges of its triangle.

    delta sits at the bottom-right vertex; a / a_prime are the next slots
    on the right edge / base of the integral triangle; c / c_prime are
    the extreme slots of the rational polynomial; b is the subleading
    slot at the top of the right edge.
    """

    n: int
    delta: int
    a: int
    a_prime: int
    c: int
    c_prime: int
    b: int
    eps_int: int
    eps_rat: int


@dataclass(frozen=True)
class EdgeCoefficients:
    K: int
    rows: tuple


def edge_coefficients(K: int, n_max: int) -> EdgeCoefficients:
    """Edge coefficient sequences for n = 0..n_max, doubly computed.

    Each row is read directly off the polynomials and independently
    recomputed from the sign recurrences; any disagreement raises.  The
    bounds |a_{2n}| = |a_{2n-1}| <= n, |a'_{2n+1}| = |a'_{2n}| <= n+1 and
    |b_n| = F_{n-1} + F_{n-2} are asserted.
    """
    if K < 4:
        raise ValueError("K must be at least 4")
    fs = _f_sequence(K, n_max + 1)
    # initial values: reading 1 - x from its right vertex gives -1 + z,
    # so delta_0 = -1 and a'_0 = +1; 1 - xy contributes c_0 = -1, c'_0 = 1
    rows = [EdgeRow(0, -1, 0, 1, -1, 1, 0,
                    epsilon_int(K, 0), epsilon_rat(K, 0))]
    for n in range(1, n_max + 1):
        sol = _solution(K, n)
        M, N = sol.M, sol.N
        f_int = xi(K, n, "int")
        f_rat = xi(K, n, "rat")
        right = edge_restriction(f_int, ((M, 0), (M + N, K * N)))
        base = edge_restriction(f_int, ((M, 0), (0, 0)))
        delta = int(right[0])
        a = int(right[1])
        b = int(right[-2])
        a_prime = int(base[1])
        assert delta == base[0], "vertex coefficient differs between edges"
        assert abs(right[-1]) == 1, "top edge coefficient not +-1"
        # rational polynomial: the first lattice slots above / left of the
        # rational vertices of its triangle (y = 1 resp. K-1 on the right
        # edge, distance (K-1)/K resp. 1/K along the base, by parity of n)
        y_first = 1 if n % 2 == 0 else K - 1
        steps = y_first - (M + N)
        assert steps % K == 0, "no lattice slot at the designated height"
        c = int(f_rat.coeff(M + steps // K, y_first))
        num = M + N + (K - 1 if n % 2 == 0 else 1)
        assert num % K == 0, "no lattice slot at the designated base offset"
        c_prime = int(f_rat.coeff(M - num // K, 0))

        # independent recurrence route
        prev = rows[n - 1]
        eint, erat = epsilon_int(K, n), epsilon_rat(K, n)
        assert delta == -erat * (-1) ** (M + N), "delta sign rule failed"
        rhs = prev.c ** K if n % 2 == 1 else 0
        assert delta * prev.a + prev.delta * a == rhs, "a recurrence failed"
        assert c * prev.c == a, "c recurrence failed"
        rhs_p = prev.c_prime ** K if n % 2 == 0 else 0
        assert delta * prev.a_prime + prev.delta * a_prime == rhs_p, \
            "a' recurrence failed"
        assert c_prime * prev.c_prime == a_prime, "c' recurrence failed"

        rows.append(EdgeRow(n, delta, a, a_prime, c, c_prime, b, eint, erat))

    for row in rows:
        n = row.n
        half = (n + 1) // 2
        assert abs(row.a) <= half, "bound on a failed"
        if n >= 1:
            assert abs(row.a_prime) <= n // 2 + 1, "bound on a' failed"
        if n >= 1 and n % 2 == 0:
            assert abs(row.a) == abs(rows[n - 1].a), "pairing of a failed"
        if n >= 1 and n % 2 == 1:
            assert abs(row.a_prime) == abs(rows[n - 1].a_prime), \
                "pairing of a' failed"
        if n >= 2:
            assert abs(row.b) == fs[n - 1] + fs[n - 2], "b closed form failed"
    return EdgeCoefficients(K, tuple(rows))
