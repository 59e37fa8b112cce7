"""Intersection theory and Mori-Dream-Space certificates.

Curve classes live in the rank-2 lattice spanned by H (a fixed reference
triangle, H.H = base x height) and the exceptional class E (E.E = -1,
H.E = 0).  A diamond is the region of the slope plane where a fixed
polynomial defines a curve of nonpositive self-intersection; its boundary
points solve a quadratic and may be quadratic irrationals, stored exactly.

Certificates either exhibit an explicit curve orthogonal to the negative
curve (two diamonds meeting at a point, or a constructed D-curve when the
right slope is an integer), or chain triangle containments to such a point
through axis-aligned pivot rules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .exactmath import kernel_basis
from .families import (
    edge_coefficients,
    family_triangle,
    mn_pairs,
    nonspecial_parameters,
    special_upsilon,
    xi,
)
from .laurent import (
    LaurentPoly,
    ONE,
    Y,
    divides,
    newton_polygon,
    vanishing_order,
)
from .negcurve import vanishing_system
from .trispace import SlopePair, SlopeTriangle, minimal_triangle

_ONE_MINUS_Y = ONE - Y


# ---------------------------------------------------------------------------
# Exact quadratic irrationals.
# ---------------------------------------------------------------------------


def _sign_two(p: Fraction, q: Fraction, d: int) -> int:
    """Sign of p + q*sqrt(d)."""
    if q == 0 or d == 0:
        return (p > 0) - (p < 0)
    if p == 0:
        return 1 if q > 0 else -1
    if p > 0 and q > 0:
        return 1
    if p < 0 and q < 0:
        return -1
    inner = p * p - q * q * d
    sign = (inner > 0) - (inner < 0)
    return sign if p > 0 else -sign


def _sign_three(p: Fraction, q: Fraction, d1: int,
                r: Fraction, d2: int) -> int:
    """Sign of p + q*sqrt(d1) + r*sqrt(d2)."""
    if q == 0 or d1 == 0:
        return _sign_two(p, r, d2)
    if r == 0 or d2 == 0:
        return _sign_two(p, q, d1)
    if d1 == d2:
        return _sign_two(p, q + r, d1)
    s1 = _sign_two(p, q, d1)
    s2 = 1 if r > 0 else -1
    if s1 == 0:
        return s2
    if s1 == s2:
        return s1
    # opposite signs: compare |p + q*sqrt(d1)| with |r*sqrt(d2)| by squaring
    t = _sign_two(p * p + q * q * d1 - r * r * d2, 2 * p * q, d1)
    if t > 0:
        return s1
    if t < 0:
        return s2
    return 0


def _reduce_radicand(coeff: Fraction, d: int) -> tuple[Fraction, int]:
    """Pull square factors of the radicand into the coefficient."""
    if d < 0:
        raise ValueError("negative radicand")
    f = 2
    while f * f <= d and f <= 1000:
        while d % (f * f) == 0:
            d //= f * f
            coeff *= f
        f += 1
    root = math.isqrt(d)
    if root * root == d:
        return coeff * root, 0
    return coeff, d


@dataclass(frozen=True)
class QuadraticNumber:
    """The exact real number rational + coeff * sqrt(radicand)."""

    rational: Fraction
    coeff: Fraction
    radicand: int

    @staticmethod
    def make(rational, coeff, radicand: int):
        """Normalized constructor; collapses to Fraction when possible."""
        rational, coeff = Fraction(rational), Fraction(coeff)
        coeff, radicand = _reduce_radicand(coeff, radicand)
        if coeff == 0 or radicand == 0:
            return rational + coeff
        return QuadraticNumber(rational, coeff, radicand)

    def _cmp(self, other) -> int:
        if isinstance(other, QuadraticNumber):
            if other.radicand == self.radicand:
                return _sign_two(self.rational - other.rational,
                                 self.coeff - other.coeff, self.radicand)
            return _sign_three(self.rational - other.rational,
                               self.coeff, self.radicand,
                               -other.coeff, other.radicand)
        return _sign_two(self.rational - Fraction(other), self.coeff,
                         self.radicand)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (QuadraticNumber, int, Fraction)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.rational, self.coeff, self.radicand))

    def __neg__(self):
        return QuadraticNumber(-self.rational, -self.coeff, self.radicand)

    def reciprocal(self):
        den = self.rational ** 2 - self.coeff ** 2 * self.radicand
        if den == 0:
            raise ZeroDivisionError("reciprocal of zero")
        return QuadraticNumber.make(self.rational / den, -self.coeff / den,
                                    self.radicand)

    def __float__(self):
        return float(self.rational) + \
            float(self.coeff) * math.sqrt(self.radicand)

    def __repr__(self):
        return f"({self.rational} + {self.coeff}*sqrt({self.radicand}))"


Endpoint = Union[Fraction, QuadraticNumber, None]  # None = unbounded side


def _reciprocal(x: Endpoint) -> Endpoint:
    if x is None:
        return Fraction(0)
    if isinstance(x, QuadraticNumber):
        return x.reciprocal()
    if x == 0:
        return None
    return 1 / x


# ---------------------------------------------------------------------------
# Curve classes.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CurveClass:
    """h*H + e*E in the rank-2 lattice with H.H = h2, E.E = -1, H.E = 0."""

    h: Fraction
    e: Fraction
    h2: Fraction

    def __init__(self, h, e, h2):
        object.__setattr__(self, "h", Fraction(h))
        object.__setattr__(self, "e", Fraction(e))
        object.__setattr__(self, "h2", Fraction(h2))

    def self_intersection(self) -> Fraction:
        return intersect(self, self)


def intersect(c1: CurveClass, c2: CurveClass) -> Fraction:
    """Exact intersection pairing; both classes must share the reference."""
    if c1.h2 != c2.h2:
        raise ValueError("classes use different reference triangles")
    return c1.h * c2.h * c1.h2 - c1.e * c2.e


def exceptional_class(h2) -> CurveClass:
    return CurveClass(0, 1, h2)


def curve_class(poly: LaurentPoly, m: int,
                reference: SlopeTriangle) -> CurveClass:
    """Class of the curve cut by ``poly`` with multiplicity m at e,
    expressed against the reference triangle (H = its class)."""
    tri = minimal_triangle(newton_polygon(poly), reference.slopes)
    return CurveClass(tri.height / reference.height, -m,
                      2 * reference.area())


# ---------------------------------------------------------------------------
# Diamonds.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Diamond:
    """All slope pairs at which ``poly`` cuts a nonpositive curve."""

    poly: LaurentPoly
    m: int

    def min_triangle(self, p: SlopePair) -> SlopeTriangle:
        return minimal_triangle(newton_polygon(self.poly), p)

    def contains(self, p: SlopePair) -> bool:
        if not 0 < p.s < p.t:
            raise ValueError("expects normalized slopes 0 < s < t")
        return 2 * self.min_triangle(p).area() <= self.m * self.m


def diamond_contains(d: Diamond, p: SlopePair) -> bool:
    return d.contains(p)


def one_minus_y_diamond() -> Diamond:
    return Diamond(_ONE_MINUS_Y, 1)


def family_diamond(K: int, n: int, kind: str) -> Diamond:
    """Diamond of the curve supported in IT_K(M_n,N_n) or RT_K(M_n,N_n)."""
    sol = mn_pairs(K, n)[n]
    if kind == "IT":
        return Diamond(xi(K, n, "int"), sol.M + sol.N)
    if kind == "RT":
        return Diamond(xi(K, n, "rat"), sol.M)
    raise ValueError("kind must be IT or RT")


def special_diamond(K: int) -> Diamond:
    ups, _, m, _ = special_upsilon(K)
    return Diamond(ups, m)


def diamond_section(d: Diamond, axis: str, value) -> list:
    """Intersection of the diamond with an axis-parallel line.

    axis "vertical" fixes s = value and returns intervals in t; axis
    "horizontal" fixes t = value and returns intervals in s.  Endpoints
    are exact (Fraction or QuadraticNumber); None marks an unbounded side
    (t -> infinity, s -> 0).  The diamond condition is convex along any
    line, so at most one interval is returned.
    """
    value = Fraction(value)
    if value <= 0:
        raise ValueError("slopes are positive")
    verts = [(Fraction(x), Fraction(y))
             for x, y in newton_polygon(d.poly).vertices]
    gamma = min(y for _, y in verts)
    m2 = Fraction(d.m * d.m)

    # Express the squared-base function g(theta) = base of the minimal
    # triangle as max_i(A_i + B_i * theta) over the free variable
    # theta = v (vertical) or theta = u (horizontal); membership is
    # g(theta)^2 <= m^2 * w(theta) with w = u - v linear in theta.
    if axis == "vertical":
        u0 = 1 / value
        alpha0 = min(x - y * u0 for x, y in verts)
        lines = [(x - alpha0 - gamma * u0, gamma - y) for x, y in verts]
        wc, w0 = Fraction(-1), u0
        lo, hi = Fraction(0), u0
    elif axis == "horizontal":
        v0 = 1 / value
        beta0 = max(x - y * v0 for x, y in verts)
        lines = [(beta0 + gamma * v0 - x, y - gamma) for x, y in verts]
        wc, w0 = Fraction(1), -v0
        lo, hi = v0, None
    else:
        raise ValueError("axis must be 'vertical' or 'horizontal'")

    breaks = {lo}
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            a1, b1 = lines[i]
            a2, b2 = lines[j]
            if b1 != b2:
                theta = (a2 - a1) / (b1 - b2)
                if theta > lo and (hi is None or theta < hi):
                    breaks.add(theta)
    cuts = sorted(breaks)
    pieces = []
    for k, p in enumerate(cuts):
        q = cuts[k + 1] if k + 1 < len(cuts) else hi
        pieces.append((p, q))

    intervals = []  # feasible sub-intervals in increasing theta order
    for p, q in pieces:
        mid = (p + q) / 2 if q is not None else p + 1
        a, b = max(lines, key=lambda ln: ln[0] + ln[1] * mid)
        # (a + b t)^2 - m2 (wc t + w0) <= 0
        qa = b * b
        qb = 2 * a * b - m2 * wc
        qc = a * a - m2 * w0
        sol = _solve_quadratic_leq(qa, qb, qc)
        if sol is None:
            continue
        r1, r2 = sol
        # clip to the piece
        if r1 is None or _lt(r1, p):
            r1 = p
        if q is not None and (r2 is None or _lt(q, r2)):
            r2 = q
        if r2 is not None and _lt(r2, r1):
            continue
        intervals.append((r1, r2))
    if not intervals:
        return []
    # membership is convex along the line, so the pieces are contiguous
    found_lo = intervals[0][0]
    found_hi = intervals[-1][1]  # None only on an unbounded last piece
    # convert theta back to the requested coordinate (reciprocal flips)
    if axis == "vertical":
        t_lo = _reciprocal(found_hi)
        t_hi = None if found_lo == 0 else _reciprocal(found_lo)
        return [(t_lo, t_hi)]
    s_lo = None if found_hi is None else _reciprocal(found_hi)
    s_hi = _reciprocal(found_lo)
    return [(s_lo, s_hi)]


def _lt(x, y) -> bool:
    if isinstance(x, QuadraticNumber):
        return x < y
    if isinstance(y, QuadraticNumber):
        return y > x
    return x < y


def _solve_quadratic_leq(qa: Fraction, qb: Fraction, qc: Fraction):
    """Solution interval of qa t^2 + qb t + qc <= 0 (qa >= 0).

    Returns None (empty), or (lo, hi) with None meaning unbounded.
    """
    if qa == 0:
        if qb == 0:
            return (None, None) if qc <= 0 else None
        root = -qc / qb
        return (root, None) if qb < 0 else (None, root)
    disc = qb * qb - 4 * qa * qc
    if disc < 0:
        return None
    # roots (-qb +- sqrt(disc)) / (2 qa)
    num, den = disc.numerator, disc.denominator
    rad = num * den
    center = -qb / (2 * qa)
    spread = 1 / (2 * qa * den)
    r1 = QuadraticNumber.make(center, -spread, rad)
    r2 = QuadraticNumber.make(center, spread, rad)
    return (r1, r2)


def reposition(poly: LaurentPoly, target: SlopePair,
               triangle=None) -> LaurentPoly:
    """Unimodular change of torus coordinates after which the given
    triangle (default: the support hull) is horizontal-based with the
    given slope pair.

    Vanishing order at the torus identity is invariant, so the result
    defines the same curve in the chart where the diamond machinery
    applies.  Raises if no edge of the triangle can be made the base
    with the requested slopes.
    """
    from .trispace import _gcdext

    if triangle is None:
        triangle = newton_polygon(poly).vertices
    verts = [(Fraction(x), Fraction(y)) for x, y in triangle]
    if len(verts) != 3:
        raise ValueError("the chart triangle must have three vertices")
    flip = (-1, 0, 0, 1)
    for i in range(3):
        p1, p2 = verts[i], verts[(i + 1) % 3]
        dx, dy = p2[0] - p1[0], p2[1] - p1[1]
        den = dx.denominator * dy.denominator // math.gcd(
            dx.denominator, dy.denominator)
        ix, iy = int(dx * den), int(dy * den)
        g = math.gcd(abs(ix), abs(iy))
        ix, iy = ix // g, iy // g
        _, wc, rc = _gcdext(ix, iy)
        base = (wc, rc, -iy, ix)  # unimodular, sends (ix,iy) to (1,0)
        for mat in (base, _mat_neg(base), _mat_mul(flip, base),
                    _mat_neg(_mat_mul(flip, base))):
            mv = [_mat_apply(mat, v) for v in verts]
            base_y = min(y for _, y in mv)
            base_xs = sorted(x for x, y in mv if y == base_y)
            apex = [v for v in mv if v[1] != base_y]
            if len(base_xs) != 2 or len(apex) != 1:
                continue
            (xa, ya) = apex[0]
            h = ya - base_y
            u = (xa - base_xs[0]) / h
            v = (xa - base_xs[1]) / h
            shear = target.u - u
            if shear.denominator != 1 or v + shear != target.v:
                continue
            shear = int(shear)
            out = {}
            for (x, y), c in poly.support.items():
                tx, ty = _mat_apply(mat, (x, y))
                out[(tx + shear * ty, ty)] = c
            shifted = LaurentPoly(out)
            x0, _, y0, _ = shifted.bounding_box()
            return LaurentPoly({(x - x0, y - y0): c
                                for (x, y), c in shifted.support.items()})
    raise ValueError(f"no chart gives the slopes {target}")


def wpp_curve(w, m: int, dmax: int, target: SlopePair):
    """Negative-curve polynomial of the weighted plane in the slope chart.

    Runs the degree search, then maps the curve to the chart in which the
    degree-d triangle of P(a,b,c) is horizontal-based with the target
    slopes.  Returns (d, poly); the minimal triangle of the result has
    normalized area d^2/(abc).
    """
    from .negcurve import (
        _degree_monomials,
        _plane_solver,
        _weight_kernel_basis,
        wpp_degree_search,
    )

    found = wpp_degree_search(w, m, dmax)
    if found is None:
        raise ArithmeticError(f"no curve of order {m} up to degree {dmax}")
    d, poly = found
    a, b, c = w.a, w.b, w.c
    w1, w2 = _weight_kernel_basis(a, b, c)
    base = _degree_monomials(a, b, c, d)[0]
    solver = _plane_solver(w1, w2)
    # rational plane coordinates of the degree-triangle corners,
    # through the same lattice identification as the search
    rs_pairs = [(r, s) for r in range(3) for s in range(r + 1, 3)
                if w1[r] * w2[s] - w1[s] * w2[r] != 0]
    r, s = rs_pairs[0]
    det = w1[r] * w2[s] - w1[s] * w2[r]
    corners = []
    for j, weight in enumerate((a, b, c)):
        triple = [Fraction(0)] * 3
        triple[j] = Fraction(d, weight)
        delta = [triple[k] - base[k] for k in range(3)]
        lam = (delta[r] * w2[s] - delta[s] * w2[r]) / det
        mu = (w1[r] * delta[s] - w1[s] * delta[r]) / det
        corners.append((lam, mu))
    # integer points must agree with the solver's integer route
    out = reposition(poly, target, triangle=corners)
    tri = minimal_triangle(newton_polygon(out).vertices, target)
    assert 2 * tri.area() == Fraction(d * d, a * b * c), \
        "chart triangle area mismatch"
    return d, out


def _mat_apply(m, pt):
    return (m[0] * pt[0] + m[1] * pt[1], m[2] * pt[0] + m[3] * pt[1])


def _mat_mul(m, n):
    return (m[0] * n[0] + m[1] * n[2], m[0] * n[1] + m[1] * n[3],
            m[2] * n[0] + m[3] * n[2], m[2] * n[1] + m[3] * n[3])


def _mat_neg(m):
    return tuple(-x for x in m)


# ---------------------------------------------------------------------------
# Containment pivot rules.
# ---------------------------------------------------------------------------


def supports_containment(inner: SlopeTriangle, target: SlopePair) -> bool:
    """Whether the pivot rules certify that the minimal triangle at the
    target slopes contains ``inner`` (given at its own slopes).

    Pivoting around an integral vertex keeps the curve inside; the case
    s2 > s1, t2 > t1 is never certified (the intermediate vertex may
    become rational).
    """
    s1, t1 = inner.slopes.s, inner.slopes.t
    s2, t2 = Fraction(target.s), Fraction(target.t)
    bl_i, br_i, top_i = inner.vertex_integral
    if (s2, t2) == (s1, t1):
        return True
    if top_i and s2 <= s1 and t2 >= t1:
        return True
    if bl_i and br_i and s2 >= s1 and t2 <= t1:
        return True
    if bl_i and s2 > s1 and t2 == t1:
        return True
    if br_i and s2 == s1 and t2 < t1:
        return True
    return False


# ---------------------------------------------------------------------------
# Certificates.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Mds:
    """Positive certificate: a point carrying a curve orthogonal to the
    negative curve, with the containment chain leading to it."""

    point: SlopePair
    chain: tuple
    orthogonality: Fraction
    note: str = ""


@dataclass(frozen=True)
class NonMds:
    case: str
    coefficients: tuple
    note: str = ""


@dataclass(frozen=True)
class Inconclusive:
    note: str = ""


def _disjointness(d1: Diamond, d2: Diamond, p: SlopePair) -> Fraction:
    """Intersection number of the two curves at the point's triangles."""
    t1 = d1.min_triangle(p)
    t2 = d2.min_triangle(p)
    v1 = t2.base_length * t1.height - d1.m * d2.m
    v2 = t1.base_length * t2.height - d1.m * d2.m
    assert v1 == v2, "parallel triangles must give a symmetric pairing"
    return v1


def certify_mds(target: SlopePair, d_home: Diamond,
                d_neighbor: Optional[Diamond] = None):
    """MDS certificate for the point ``target`` of the home diamond.

    Routes, in order: an explicit D-curve when the home curve is 1-y and
    the right slope is an integer; a second negative curve at the point
    itself; an axis-aligned containment chain to a point met by both
    diamonds.  Every certificate carries a recomputed zero intersection
    number.  Anything else is Inconclusive.
    """
    if not d_home.contains(target):
        raise ValueError("target lies outside the home diamond")
    if d_home.poly == _ONE_MINUS_Y and target.t.denominator == 1:
        _, dcls = d_curve_integer_t(d_home.min_triangle(target))
        return Mds(point=target, chain=(), orthogonality=Fraction(0),
                   note=f"explicit D-curve of class H'-{-dcls.e}E")
    if d_neighbor is None:
        return Inconclusive("no neighbor diamond supplied")
    if d_neighbor.poly != d_home.poly and d_neighbor.contains(target):
        val = _disjointness(d_home, d_neighbor, target)
        if val == 0:
            return Mds(point=target, chain=(), orthogonality=val,
                       note="second negative curve at the point")
    inner = d_home.min_triangle(target)
    for axis in ("vertical", "horizontal"):
        line_val = target.s if axis == "vertical" else target.t
        candidates = []
        for dd in (d_home, d_neighbor):
            for interval in diamond_section(dd, axis, line_val):
                for e in interval:
                    if isinstance(e, Fraction) and e not in candidates:
                        candidates.append(e)
        for e in candidates:
            s, t = (target.s, e) if axis == "vertical" else (e, target.t)
            if not 0 < s < t or (s, t) == (target.s, target.t):
                continue
            p = SlopePair(s, t)
            if not (d_home.contains(p) and d_neighbor.contains(p)):
                continue
            if not supports_containment(inner, p):
                continue
            val = _disjointness(d_home, d_neighbor, p)
            if val == 0:
                return Mds(point=p, chain=((target, p),),
                           orthogonality=val,
                           note="axis-aligned chain to a diamond "
                                "meeting point")
    return Inconclusive("no axis-aligned certificate found")


# ---------------------------------------------------------------------------
# The explicit D-curve for integer right slope.
# ---------------------------------------------------------------------------


def d_curve_integer_t(tri: SlopeTriangle) -> tuple[LaurentPoly, CurveClass]:
    """Curve D orthogonal to the curve 1-y when the right slope is integral.

    D has class H' - nE where H' is the smallest triangle parallel to the
    input with integral left edge and horizontal width n.  The defining
    polynomial is interpolated on a point set with column counts
    1, 1, 2, 3, ..., n, which pins it down uniquely.  Verified: vanishing
    order exactly n, 1-y does not divide D, and [C].[D] = 0.
    """
    s, t = tri.slopes.s, tri.slopes.t
    if t.denominator != 1:
        raise ValueError("right slope must be an integer")
    if not 0 < s < t:
        raise ValueError("expects normalized slopes 0 < s < t")
    n = s.denominator
    b = n * (t - s) / t  # base length; horizontal width is n
    points = _d_curve_points(s, t, n, b)
    counts = {}
    for x, _ in points:
        counts[x] = counts.get(x, 0) + 1
    expected = sorted([1, 1] + list(range(2, n + 1)))
    if sorted(counts.values()) != expected or \
            len(points) != n * (n + 1) // 2 + 1:
        raise ArithmeticError(
            f"column counts {sorted(counts.values())} not achievable "
            f"(need {expected})"
        )
    basis = kernel_basis(vanishing_system(points, n)) if n > 0 else []
    if len(basis) != 1:
        raise ArithmeticError(
            f"pruned interpolation kernel has dimension {len(basis)}, not 1"
        )
    pts = sorted(points)
    poly = LaurentPoly({pt: c for pt, c in zip(pts, basis[0]) if c})
    if vanishing_order(poly) != n:
        raise ArithmeticError("D-curve vanishing order is not exactly n")
    if divides(_ONE_MINUS_Y, poly) is not None:
        raise ArithmeticError("1 - y divides the D-curve polynomial")
    mt = minimal_triangle(list(poly.support), tri.slopes)
    if mt.height != n * s or mt.base_length != b:
        raise ArithmeticError("D-curve support does not fill its triangle")
    h2 = b * n * s  # twice the area of the width-n triangle
    dcls = CurveClass(1, -n, h2)
    ccls = CurveClass((t / (t - s)) / (n * s), -1, h2)
    assert intersect(ccls, dcls) == 0
    return poly, dcls


def _d_curve_points(s: Fraction, t: Fraction, n: int, b: Fraction) -> list:
    """Lattice points supporting the D-curve, column counts 1,1,2,...,n.

    The width-n triangle (0,0), (b,0), (n, ns) is cut by the vertical
    line x = b and the right part sheared lattice-preservingly to make
    the slope-t edge horizontal.  When the sheared triangle has height at
    least n, points are taken from its base-[0,n], height-n sub-triangle
    (left-edge points above the origin dropped) and unsheared; otherwise
    the full triangle must already have the right counts.
    """
    shear_at = int(n * (t - s))  # t*b; shear offset at column x is t*x - t*b

    def unshear(x: int, y: int) -> tuple:
        return (x, y + max(0, t.numerator * x - shear_at))

    if s * b >= n:
        points = []
        for row in range(n + 1):
            x_lo = math.ceil(Fraction(row) / s)
            x_hi = math.floor(n - row * (s - 1) / s)
            for x in range(x_lo, x_hi + 1):
                if x > 0 and row == s * x:
                    continue  # left-edge point above the origin
                points.append(unshear(x, row))
        return points
    points = []
    for x in range(n + 1):
        y_lo = max(0, t.numerator * x - shear_at)
        y_hi = math.floor(s * x)
        points.extend((x, y) for y in range(y_lo, y_hi + 1))
    return points


# ---------------------------------------------------------------------------
# The non-MDS screen.
# ---------------------------------------------------------------------------


def non_mds_screen(K: int, M: int, N: int, kind: str, target: SlopePair):
    """Screen for the non-MDS property inside a family diamond.

    Fires when the diamond and quadrant hypotheses hold: every off-axis
    point for IT with N > K-2 (horizontal axis and upper vertical axis
    excluded), and the upper half off the vertical axis for IT with
    N = K-2 or RT with M+N > 1.  Evidence records the quadrant mechanism
    and the designated edge coefficients (the lower half needs
    |b_n| > |a_n|, recomputed from the recurrences).
    """
    pairs = mn_pairs(K, 16)
    n = next((i for i, sol in enumerate(pairs)
              if (sol.M, sol.N) == (M, N)), None)
    if n is None:
        raise ValueError(
            "only solutions with M > N are screened; swapped triangles "
            "reduce to them by the lattice isomorphism"
        )
    m = M + N if kind == "IT" else M
    if m <= 1:
        raise ValueError("the screen needs vanishing order m > 1")
    dia = family_diamond(K, n, kind)
    if not dia.contains(target):
        raise ValueError("target lies outside the named diamond")
    s0 = family_triangle(K, M, N, kind).slopes.s
    row = edge_coefficients(K, n).rows[n]
    coeffs = (row.a, row.b)
    on_haxis = target.t == K
    on_vaxis = target.s == s0
    if kind == "IT" and N > K - 2:
        if on_haxis or (on_vaxis and target.t > K):
            return Inconclusive("horizontal axis and upper vertical axis "
                                "carry the MDS chains")
        if target.t > K:
            return NonMds(
                case="upper half off the vertical axis: left-edge "
                     "two-term restriction",
                coefficients=coeffs,
            )
        if abs(row.b) <= abs(row.a):
            return Inconclusive(
                f"right-edge coefficient bound fails: |b_{n}| = "
                f"{abs(row.b)} <= |a_{n}| = {abs(row.a)}"
            )
        return NonMds(
            case="lower half: right-edge restriction with |b_n| > |a_n|",
            coefficients=coeffs,
            note=f"|b_{n}| = {abs(row.b)} > |a_{n}| = {abs(row.a)}",
        )
    if (kind == "IT" and N == K - 2) or (kind == "RT" and M + N > 1):
        if target.t > K and not on_vaxis:
            return NonMds(
                case="upper half off the vertical axis: left-edge "
                     "two-term restriction",
                coefficients=coeffs,
            )
        return Inconclusive("only the upper half off the vertical axis "
                            "is screened for this diamond")
    return Inconclusive("no screening hypothesis applies")


# ---------------------------------------------------------------------------
# Class computations for the non-special family.
# ---------------------------------------------------------------------------


def new_family_orthogonality(K: int) -> tuple[Fraction, Fraction]:
    """(b_D, [C].[D]) for the even-K non-special curve against the curve
    of IT_{K-1}(K-3, 1); the intersection number must vanish."""
    if K % 2:
        raise ValueError("orthogonality route applies to even K")
    _, _, _, _, m = nonspecial_parameters(K)
    tri, _, _ = _nonspecial_triangle_only(K)
    dpoly = xi(K - 1, 1, "int")
    dtri = minimal_triangle(newton_polygon(dpoly), tri.slopes)
    b_d = dtri.base_length
    ccls = CurveClass(1, -m, 2 * tri.area())
    dcls = curve_class(dpoly, K - 2, tri)
    return b_d, intersect(ccls, dcls)


def odd_k_obstruction(K: int) -> Fraction:
    """[C_1].[C_2] for the odd-K divisibility contradiction.

    Writing C = (2K-5) C_1 + C_2 with C_1 the curve of 1-y, the product
    must be negative to rule out 1-y dividing the curve equation.
    """
    if K % 2 == 0 or K < 5:
        raise ValueError("the obstruction applies to odd K >= 5")
    a, b, c, d, m = nonspecial_parameters(K)
    h2 = Fraction(a * c, b)  # H from the lattice-length-1 left edge
    c1 = CurveClass(Fraction(b * d, a * c), -1, h2)
    cc = CurveClass(Fraction(K - 1, 2) + Fraction(1, c), -m, h2)
    c2 = CurveClass(cc.h - d * c1.h, cc.e - d * c1.e, h2)
    return intersect(c1, c2)


def _nonspecial_triangle_only(K: int):
    """Triangle and parameters of the non-special family, no kernel solve."""
    a, b, c, d, m = nonspecial_parameters(K)
    if K % 2 == 0:
        tri = SlopeTriangle.from_vertices(
            (Fraction(-1, a), 0), (m - K + 2, 0),
            (m, Fraction((K - 2) * b, 2)))
    else:
        lam = Fraction(K - 1, 2) + Fraction(1, c)
        tri = SlopeTriangle.from_vertices(
            (0, 0), (m - K + 2, 0), (lam * d, lam * a))
    return tri, m, (a, b, c, d)
