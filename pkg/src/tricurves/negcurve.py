"""Detection and certification of negative curves.

A negative curve candidate is a polynomial vanishing to order m at
e = (1, 1) and supported in a triangle of area at most m^2/2.  This module
builds the interpolation (vanishing) linear systems, solves them exactly,
computes deficiencies by two independent routes, issues evidence-bearing
irreducibility verdicts, evaluates canonical degree and arithmetic genus,
and searches for the Cox-ring degree of a curve in a weighted projective
plane.

Large systems (thousands of unknowns) are handled by modular linear
algebra: word-size primes with CRT lifting for exact kernels, and small
primes with blocked float64 elimination for certified rank lower bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .exactmath import (
    QMatrix,
    kernel_basis,
    kernel_multimodular,
    rank_exact,
    rank_mod_p_blocked,
)
from .exactmath import _BLOCKED_PRIMES, _MODULAR_PRIMES
from .lattice import (
    LatticePoint,
    indecomposable,
    lattice_length,
    lattice_perimeter,
    lattice_points,
    pick_stats,
)
from .laurent import (
    LaurentPoly,
    ONE,
    X,
    Y,
    divides,
    newton_polygon,
    taylor_coefficient,
    vanishing_order,
)
from .trispace import SlopeTriangle, WppWeights, minimal_triangle

# systems up to this many unknowns go through the exact kernel/rank route;
# larger ones use modular linear algebra with explicit certificates
_EXACT_COLS = 600

# vanishing order is re-verified from scratch when the support bounding box
# is at most this many cells
_ORDER_CHECK_CELLS = 30_000


# ---------------------------------------------------------------------------
# Verdicts and result records.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Irreducible:
    reason: str


@dataclass(frozen=True)
class Reducible:
    witness: LaurentPoly


@dataclass(frozen=True)
class Unknown:
    note: str = ""


Verdict = Union[Irreducible, Reducible, Unknown]


@dataclass(frozen=True)
class NegativeCurveCandidate:
    """A curve equation with its multiplicity and certified invariants."""

    poly: LaurentPoly
    m: int
    triangle: SlopeTriangle  # minimal supporting triangle at its slopes
    self_intersection: Fraction
    irreducibility: Verdict
    kernel_dimension: int

    @property
    def ambiguous(self) -> bool:
        return self.kernel_dimension > 1


@dataclass(frozen=True)
class Deficiency:
    """binom(m+1,2)+1 minus the lattice point count, cross-checked against
    binom(m+1,2) minus the rank of the vanishing system."""

    value: int
    lattice_point_count: int
    rank: int


# ---------------------------------------------------------------------------
# Vanishing systems.
# ---------------------------------------------------------------------------


def _taylor_rows(m: int):
    """Row index order: all (i, j) with i + j < m, by total degree then i."""
    return [(i, t - i) for t in range(m) for i in range(t + 1)]


def vanishing_system(points: Sequence[LatticePoint], m: int) -> QMatrix:
    """Matrix of the conditions "vanishing to order m at (1,1)".

    One row per Taylor condition (i, j) with i + j < m (ordered by total
    degree, then i), one column per lattice point (sorted, translated to
    the nonnegative quadrant); the entry is binom(p, i) * binom(q, j).
    """
    if not points:
        raise ValueError("vanishing system needs at least one point")
    if m < 1:
        raise ValueError("order must be at least 1")
    pts = sorted(points)
    x0 = min(p for p, _ in pts)
    y0 = min(q for _, q in pts)
    shifted = [(p - x0, q - y0) for p, q in pts]
    rows = []
    for i, j in _taylor_rows(m):
        rows.append([math.comb(p, i) * math.comb(q, j) for p, q in shifted])
    return QMatrix.from_rows(rows)


def _binom_columns(coords: np.ndarray, m: int, p: int) -> np.ndarray:
    """B[i, c] = binom(coords[c], i) mod p for 0 <= i < m.

    Uses the single-digit case of Lucas' theorem when coordinates reach p,
    so it is valid for the small blocked-elimination primes as well.
    """
    n = coords % p
    # factorials are only needed up to the largest reduced coordinate (and
    # the largest row index), never up to a word-size prime itself
    size = min(p, max(int(n.max()), m - 1) + 1)
    fact = np.ones(size, dtype=np.int64)
    for k in range(2, size):
        fact[k] = fact[k - 1] * k % p
    inv_fact = np.empty(size, dtype=np.int64)
    inv_fact[size - 1] = pow(int(fact[size - 1]), p - 2, p)
    for k in range(size - 1, 0, -1):
        inv_fact[k - 1] = inv_fact[k] * k % p
    out = np.zeros((m, len(coords)), dtype=np.int64)
    for i in range(m):
        ok = n >= i
        vals = fact[n[ok]] * inv_fact[i] % p * inv_fact[n[ok] - i] % p
        out[i, ok] = vals
    return out


def _system_mod(shifted: list, m: int, p: int, dtype) -> np.ndarray:
    px = np.array([a for a, _ in shifted], dtype=np.int64)
    py = np.array([b for _, b in shifted], dtype=np.int64)
    bx = _binom_columns(px, m, p)
    by = _binom_columns(py, m, p)
    rows = _taylor_rows(m)
    out = np.empty((len(rows), len(shifted)), dtype=dtype)
    for r, (i, j) in enumerate(rows):
        out[r] = (bx[i] * by[j] % p).astype(dtype)
    return out


def _shift_points(points: Sequence[LatticePoint]):
    pts = sorted(points)
    x0 = min(p for p, _ in pts)
    y0 = min(q for _, q in pts)
    return pts, [(p - x0, q - y0) for p, q in pts]


def _exact_kernel_large(shifted: list, m: int) -> tuple[int, list]:
    """Exact (rank, kernel basis) of a big system via CRT over word primes.

    Candidate vectors are verified exactly through the Taylor-coefficient
    functional of the reconstructed polynomial, so no exact copy of the
    matrix is ever materialized.
    """
    ncols = len(shifted)

    def mat_mod(p: int) -> np.ndarray:
        return _system_mod(shifted, m, p, np.int64)

    def verify(vec) -> bool:
        f = LaurentPoly({pt: c for pt, c in zip(shifted, vec) if c})
        if not f:
            return True
        return all(taylor_coefficient(f, i, j) == 0
                   for i, j in _taylor_rows(m))

    return kernel_multimodular(mat_mod, ncols, verify,
                               primes=_MODULAR_PRIMES)


def detect_negative_curve(tri: SlopeTriangle,
                          m: int) -> Optional[NegativeCurveCandidate]:
    """Solve the vanishing system over the triangle's lattice points.

    Returns None when the area precondition fails or the kernel is zero.
    The canonical kernel vector gives coefficient 1 to its first nonzero
    entry in lexicographic point order; a kernel of dimension > 1 is
    returned with the dimension recorded (``ambiguous``), never silently
    collapsed.
    """
    if m < 1:
        raise ValueError("order must be at least 1")
    if 2 * tri.area() > m * m:
        return None
    points = lattice_points(tri.polygon())
    if not points:
        return None
    pts, shifted = _shift_points(points)
    if len(pts) <= _EXACT_COLS:
        basis = kernel_basis(vanishing_system(pts, m))
    else:
        _, basis = _exact_kernel_large(shifted, m)
    if not basis:
        return None
    vec = basis[0]
    poly = LaurentPoly({pt: c for pt, c in zip(pts, vec) if c})
    x0, x1, y0, y1 = poly.bounding_box()
    if (x1 - x0 + 1) * (y1 - y0 + 1) <= _ORDER_CHECK_CELLS:
        assert vanishing_order(poly) >= m
    mintri = minimal_triangle(list(poly.support), tri.slopes)
    self_int = 2 * mintri.area() - m * m
    assert self_int <= 0, "candidate escaped the negative region"
    verdict = irreducibility_verdict(poly, order=m, triangle=mintri)
    return NegativeCurveCandidate(poly, m, mintri, self_int, verdict,
                                  len(basis))


# ---------------------------------------------------------------------------
# Deficiency.
# ---------------------------------------------------------------------------


def deficiency(tri: SlopeTriangle, m: int,
               witness: Optional[LaurentPoly] = None) -> Deficiency:
    """Deficiency of the triangle at order m, by two independent routes.

    The count route is binom(m+1,2)+1 minus the number of lattice points;
    the rank route is binom(m+1,2) minus the rank of the vanishing system.
    A mismatch (equivalently, kernel dimension differing from 1) raises.

    For systems beyond the exact-rank limit a ``witness`` polynomial must
    be supplied: a nonzero polynomial supported in the triangle whose
    vanishing order at (1,1) is at least m (certified by its constructor).
    It bounds the rank from above while blocked modular elimination bounds
    it from below.
    """
    if m < 1:
        raise ValueError("order must be at least 1")
    points = lattice_points(tri.polygon())
    if not points:
        raise ValueError("triangle contains no lattice points")
    conditions = math.comb(m + 1, 2)
    pts, shifted = _shift_points(points)
    if len(pts) <= _EXACT_COLS:
        rank = rank_exact(vanishing_system(pts, m))
    else:
        rank = _rank_large(pts, shifted, m, witness)
    value_rank = conditions - rank
    value_count = conditions + 1 - len(pts)
    if value_rank != value_count:
        raise ArithmeticError(
            f"deficiency characterizations disagree: rank route gives "
            f"{value_rank}, count route gives {value_count}"
        )
    return Deficiency(value_rank, len(pts), rank)


def _rank_large(pts, shifted, m: int,
                witness: Optional[LaurentPoly]) -> int:
    ncols = len(pts)
    upper = ncols
    if witness is not None:
        if not witness:
            raise ValueError("witness must be nonzero")
        point_set = set(map(tuple, pts))
        if not set(witness.support) <= point_set:
            raise ValueError("witness support leaves the triangle")
        upper = ncols - 1  # one exact kernel vector
    for p in _BLOCKED_PRIMES:
        a = _system_mod(shifted, m, p, np.int16)
        lower = rank_mod_p_blocked(a, p)
        del a
        if lower == upper:
            return lower
    raise ArithmeticError(
        "rank not certified: modular lower bound never met the witness "
        "upper bound"
    )


# ---------------------------------------------------------------------------
# Irreducibility verdicts.
# ---------------------------------------------------------------------------


def _screen_divisors():
    """Cheap candidate factors: axis binomials and small torus-invariant
    binomial curves."""
    out = [ONE - X, ONE - Y, ONE - X * Y]
    for a in range(0, 4):
        for b in range(-3, 4):
            if math.gcd(a, abs(b)) != 1 or (a, b) in ((0, 1), (1, 0), (1, 1)):
                continue
            if a == 0 and b <= 0:
                continue
            out.append(ONE - LaurentPoly.monomial(1, a, b))
    return out


def _family_screen_divisors():
    from . import families

    out = []
    for K in (3, 4, 5):
        for n in (1, 2):
            for kind in ("int", "rat"):
                try:
                    out.append(families.xi(K, n, kind))
                except ValueError:
                    continue
    return out


def irreducibility_verdict(f: LaurentPoly, *,
                           order: Optional[int] = None,
                           triangle: Optional[SlopeTriangle] = None,
                           screen_families: bool = False) -> Verdict:
    """Evidence-bearing irreducibility cascade.

    Sufficient tests, in order: a divisibility screen against axis and
    binomial curves (plus, optionally, the catalogued recurrence curves);
    a primitive-segment Newton polygon; an integrally indecomposable
    Newton polygon; and the unit-edge criterion for curves of strictly
    negative self-intersection (an edge of lattice length 1 with unit
    vertex coefficients, with the gcd of all edge lattice lengths equal
    to 1 so no proper power can carry the polygon).  ``order`` and
    ``triangle``, when provided by a constructor that has already
    certified them, stand in for the (possibly infeasible) direct
    recomputation.  Anything else is Unknown.
    """
    g = f.normalize_monomial()
    if len(g) <= 1:
        raise ValueError("verdict needs a nonconstant polynomial")

    divisors = list(_screen_divisors())
    if screen_families:
        divisors += _family_screen_divisors()
    for d in divisors:
        q = divides(d, g)
        if q is not None and len(q.normalize_monomial()) >= 2:
            return Reducible(d)

    np_poly = newton_polygon(g)
    if np_poly.is_segment:
        (x1, y1), (x2, y2) = np_poly.vertices
        if np_poly.integral_vertices() and lattice_length(
                LatticePoint(int(x1), int(y1)),
                LatticePoint(int(x2), int(y2))) == 1:
            return Irreducible("primitive segment")
        return Unknown("non-primitive segment")

    if np_poly.integral_vertices():
        result = indecomposable(np_poly)
        if result is True:
            return Irreducible("integrally indecomposable Newton polygon")

    m = order
    if m is None:
        x0, x1, y0, y1 = g.bounding_box()
        if (x1 - x0 + 1) * (y1 - y0 + 1) <= _ORDER_CHECK_CELLS:
            m = vanishing_order(g)
    if m is None or m < 1 or triangle is None:
        return Unknown("no applicable sufficient test")
    if 2 * triangle.area() - m * m >= 0:
        return Unknown("self-intersection not strictly negative")
    if not np_poly.integral_vertices():
        return Unknown("Newton polygon has rational vertices")

    verts = np_poly.vertices
    lengths = []
    unit_edge = None
    nverts = len(verts)
    for k in range(nverts):
        a = LatticePoint(int(verts[k][0]), int(verts[k][1]))
        b = LatticePoint(int(verts[(k + 1) % nverts][0]),
                         int(verts[(k + 1) % nverts][1]))
        ell = lattice_length(a, b)
        lengths.append(ell)
        if (ell == 1 and abs(g.coeff(*a)) == 1 and abs(g.coeff(*b)) == 1
                and unit_edge is None):
            unit_edge = (a, b)
    if unit_edge is not None and _gcd_all(lengths) == 1:
        a, b = unit_edge
        return Irreducible(
            f"unit edge {tuple(a)}-{tuple(b)} (lattice length 1, vertex "
            f"coefficients +-1), edge lengths coprime, self-intersection "
            f"{2 * triangle.area() - m * m} < 0"
        )
    return Unknown("no applicable sufficient test")


def _gcd_all(values) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return g


# ---------------------------------------------------------------------------
# Canonical degree and genus.
# ---------------------------------------------------------------------------


def canonical_degree_and_genus(f: LaurentPoly, *,
                               order: Optional[int] = None
                               ) -> tuple[int, int]:
    """(K_Y . C, arithmetic genus) from the Newton polygon.

    K_Y . C = m minus the lattice perimeter of the Newton polygon; the
    arithmetic genus is the interior lattice point count minus m(m-1)/2.
    Requires m > 1 and a full-dimensional Newton polygon.
    """
    g = f.normalize_monomial()
    m = order if order is not None else vanishing_order(g)
    if m <= 1:
        raise ValueError("canonical degree needs vanishing order > 1")
    np_poly = newton_polygon(g)
    if len(np_poly.vertices) < 3:
        raise ValueError("degenerate Newton polygon")
    kyc = m - lattice_perimeter(np_poly)
    _, _, interior = pick_stats(np_poly)
    pa = interior - m * (m - 1) // 2
    return kyc, pa


# ---------------------------------------------------------------------------
# Cox-ring degree search on a weighted projective plane.
# ---------------------------------------------------------------------------


def _weight_kernel_basis(a: int, b: int, c: int):
    """Integer basis of {(i,j,k) : ai + bj + ck = 0} by column reduction."""
    v = [a, b, c]
    u = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]  # columns track the reduction
    while True:
        nz = [t for t in range(3) if v[t] != 0]
        if len(nz) <= 1:
            break
        nz.sort(key=lambda t: abs(v[t]))
        s, t = nz[0], nz[1]
        q = v[t] // v[s]
        v[t] -= q * v[s]
        for r in range(3):
            u[r][t] -= q * u[r][s]
    zero_cols = [t for t in range(3) if v[t] == 0]
    assert len(zero_cols) == 2
    basis = [tuple(u[r][t] for r in range(3)) for t in zero_cols]
    for w in basis:
        assert a * w[0] + b * w[1] + c * w[2] == 0
    return basis


def _plane_solver(w1, w2):
    """Expresses vectors of the weight relation lattice in the basis
    (w1, w2), via one invertible pair of coordinates."""
    for r, s in ((0, 1), (0, 2), (1, 2)):
        det = w1[r] * w2[s] - w1[s] * w2[r]
        if det:
            def solve(delta, r=r, s=s, det=det):
                lam_num = delta[r] * w2[s] - delta[s] * w2[r]
                mu_num = w1[r] * delta[s] - w1[s] * delta[r]
                if lam_num % det or mu_num % det:
                    raise ArithmeticError("vector outside the lattice")
                return lam_num // det, mu_num // det
            return solve
    raise ArithmeticError("degenerate kernel basis")


def _degree_monomials(a: int, b: int, c: int, d: int):
    """Exponent triples (i,j,k) >= 0 with ai + bj + ck = d.

    Enumerates over the two largest weights and solves for the smallest,
    using that the weights are pairwise coprime.
    """
    (wa, ia), (wb, ib), (wc, ic) = sorted(
        ((a, 0), (b, 1), (c, 2)), key=lambda t: t[0])
    inv_b = pow(wb % wa, -1, wa) if wa > 1 else 0
    out = []
    for k in range(d // wc + 1):
        rem = d - wc * k
        j0 = (rem * inv_b) % wa if wa > 1 else 0
        for j in range(j0, rem // wb + 1, wa):
            i = (rem - wb * j) // wa
            triple = [0, 0, 0]
            triple[ia], triple[ib], triple[ic] = i, j, k
            out.append(tuple(triple))
    return out


def wpp_degree_search(w: WppWeights, m: int,
                      dmax: int) -> Optional[tuple[int, LaurentPoly]]:
    """Smallest degree d <= dmax whose monomials admit a nonzero
    combination vanishing to order m at the identity of the torus.

    Monomials of weighted degree d are mapped to the plane through an
    integer basis of the weight relation lattice; vanishing order is
    invariant under this identification.  Candidate degrees are screened
    by a term-count bound (a polynomial with at most m terms cannot
    vanish to order m) and a certified modular rank rejection; survivors
    get an exact kernel computation.
    """
    if m < 1:
        raise ValueError("order must be at least 1")
    a, b, c = w.a, w.b, w.c
    w1, w2 = _weight_kernel_basis(a, b, c)
    solve = _plane_solver(w1, w2)
    conditions = math.comb(m + 1, 2)
    for d in range(1, dmax + 1):
        triples = _degree_monomials(a, b, c, d)
        if len(triples) <= m:
            continue
        base = triples[0]
        pts = []
        for t in triples:
            delta = (t[0] - base[0], t[1] - base[1], t[2] - base[2])
            pts.append(LatticePoint(*solve(delta)))
        assert len(set(pts)) == len(pts), "monomial map not injective"
        pts, shifted = _shift_points(pts)
        if len(pts) <= conditions:
            p = _BLOCKED_PRIMES[0]
            mat = _system_mod(shifted, m, p, np.int16)
            if rank_mod_p_blocked(mat, p) == len(pts):
                continue  # full column rank mod p: kernel is trivial
        basis = kernel_basis(vanishing_system(pts, m))
        if basis:
            vec = basis[0]
            poly = LaurentPoly({pt: x for pt, x in zip(pts, vec) if x})
            return d, poly
    return None
