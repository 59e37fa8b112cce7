"""The parameter space of rational plane triangles with a horizontal base.

A triangle with base on a horizontal line, left-edge slope s and right-edge
slope t (0 < s < t, apex beyond the right base vertex) is recorded by its
slope pair.  In the coordinates u = 1/s, v = 1/t, the unimodular maps that
preserve some horizontal edge act by integer shears (u,v) -> (u+l, v+l), the
reflection (u,v) -> (-v,-u) and the coordinate swap; one representative per
orbit lies in the closed triangle {0 <= v <= u, u+v <= 1}.

Orbits that meet the closed domain only in degenerate positions (infinite
right slope, or no representative at all because the horizontal edge is
longer than the triangle's height) are flagged :class:`Degenerate`, not
raised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Union

from .lattice import QPolygon


@dataclass(frozen=True)
class Degenerate:
    """A flagged degenerate outcome (mixed signs / infinite slope)."""

    reason: str


@dataclass(frozen=True)
class SlopePair:
    """Left and right edge slopes of a horizontal-base triangle."""

    s: Fraction
    t: Fraction

    def __init__(self, s, t):
        s, t = Fraction(s), Fraction(t)
        if s == t:
            raise ValueError("degenerate triangle: s = t")
        if s == 0 or t == 0:
            raise ValueError("zero slope")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)

    @property
    def u(self) -> Fraction:
        return 1 / self.s

    @property
    def v(self) -> Fraction:
        return 1 / self.t

    def in_fundamental_domain(self) -> bool:
        u, v = self.u, self.v
        return 0 <= v <= u and u + v <= 1

    def __repr__(self):
        return f"SlopePair({self.s}, {self.t})"


@dataclass(frozen=True)
class GroupElement:
    """(u,v) -> (swap?) -> (negate?) -> +(shift, shift)."""

    swap: bool
    negate: bool
    shift: int

    def apply(self, u: Fraction, v: Fraction) -> tuple[Fraction, Fraction]:
        if self.swap:
            u, v = v, u
        if self.negate:
            u, v = -u, -v
        return u + self.shift, v + self.shift


@dataclass(frozen=True)
class SlopeTriangle:
    """A horizontal-base triangle: base-left, base-right and apex vertices."""

    slopes: SlopePair
    vertices: tuple  # (bl, br, apex), rational points

    @classmethod
    def from_slopes(cls, p: SlopePair) -> "SlopeTriangle":
        """The unit-base triangle with base (0,0)-(1,0)."""
        s, t = p.s, p.t
        apex = (t / (t - s), s * t / (t - s))
        return cls(p, ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)),
                       apex))

    @classmethod
    def from_vertices(cls, bl, br, apex) -> "SlopeTriangle":
        bl = (Fraction(bl[0]), Fraction(bl[1]))
        br = (Fraction(br[0]), Fraction(br[1]))
        apex = (Fraction(apex[0]), Fraction(apex[1]))
        if bl[1] != br[1]:
            raise ValueError("base edge must be horizontal")
        if bl[0] >= br[0]:
            raise ValueError("base vertices must be ordered left to right")
        s = (apex[1] - bl[1]) / (apex[0] - bl[0])
        t = (apex[1] - br[1]) / (apex[0] - br[0])
        return cls(SlopePair(s, t), (bl, br, apex))

    @property
    def base_length(self) -> Fraction:
        return self.vertices[1][0] - self.vertices[0][0]

    @property
    def height(self) -> Fraction:
        return self.vertices[2][1] - self.vertices[0][1]

    def area(self) -> Fraction:
        return self.base_length * self.height / 2

    @cached_property
    def vertex_integral(self) -> tuple[bool, bool, bool]:
        return tuple(
            x.denominator == 1 and y.denominator == 1
            for x, y in self.vertices
        )

    def polygon(self) -> QPolygon:
        return QPolygon.hull_of(self.vertices)

    @property
    def is_degenerate(self) -> bool:
        return self.area() == 0


# ---------------------------------------------------------------------------
# Fundamental domain reduction.
# ---------------------------------------------------------------------------


def to_fundamental_domain(
    p: SlopePair,
) -> tuple[Union[SlopePair, Degenerate], GroupElement]:
    """Reduce a slope pair to its fundamental-domain representative.

    The invariant |u - v| is preserved; among all w = u + v reachable as
    ±(u+v) + 2Z, a representative needs |u-v| <= w <= 1.  When the only
    reachable value is w = |u-v| the right slope becomes infinite and the
    orbit is flagged Degenerate, likewise when no reachable w is <= 1.
    Boundary ties prefer minimal u+v, then minimal u.
    """
    s, t = p.s, p.t
    if (s > 0) != (t > 0):
        raise ValueError("slopes must have the same sign")
    u, v = p.u, p.v
    w = u + v
    d = u - v
    swap = d < 0
    d0 = abs(d)
    candidates = []
    for negate in (False, True):
        base = -w if negate else w
        # smallest integer l with base + 2l >= d0
        l = math.ceil((d0 - base) / 2)
        wprime = base + 2 * l
        assert wprime >= d0 and wprime - 2 < d0
        if wprime <= 1:
            candidates.append((wprime, negate, int(l)))
    if not candidates:
        return (
            Degenerate("orbit meets only the mixed-sign region (|u-v| > 1)"),
            GroupElement(swap, False, 0),
        )
    candidates.sort(key=lambda c: (c[0], c[1]))
    wprime, negate, l = candidates[0]
    # negation flips the sign of u - v, so it needs a compensating swap
    elem = GroupElement(swap != negate, negate, l)
    if wprime == d0:
        return (
            Degenerate("fundamental-domain representative has infinite "
                       "right slope (v = 0)"),
            elem,
        )
    unew = (wprime + d0) / 2
    vnew = (wprime - d0) / 2
    return SlopePair(1 / unew, 1 / vnew), elem


# ---------------------------------------------------------------------------
# Edge rebasing.
# ---------------------------------------------------------------------------


def _normalize_horizontal_triangle(base1, base2, apex):
    """Slope pair of the triangle presented with the given edge horizontal.

    The presentation class (modulo shears, reflection and rotation) has the
    invariant d = u - v = base/height; when d >= 1 the class contains no
    triangle with 0 < s < t whose shear orbit meets the fundamental domain,
    and a Degenerate flag is returned.  Otherwise the two orientations
    ((u,v) and its reflection (-v,-u)) are each sheared so v lands in
    (0, 1], and the one with smaller u is returned.
    """
    (x1, y0), (x2, _) = sorted([base1, base2])
    xa, ya = apex
    if ya < y0:
        # rotate by 180 degrees (orientation-preserving)
        x1, x2, xa = -x2, -x1, -xa
        ya = 2 * y0 - ya
    h = ya - y0
    u = (xa - x1) / h
    v = (xa - x2) / h
    if u - v >= 1:
        return Degenerate(
            "base longer than height: no fundamental-domain representative"
        )
    best = None
    for cu, cv in ((u, v), (-v, -u)):
        l = -math.ceil(cv - 1)
        cu, cv = cu + l, cv + l
        if best is None or cu < best[0]:
            best = (cu, cv)
    return SlopePair(1 / best[0], 1 / best[1])


def edge_rebasings(p: SlopePair) -> dict:
    """The up-to-three slope pairs obtained by making each edge horizontal.

    Keys "base", "left", "right"; values SlopePair or Degenerate.
    """
    tri = SlopeTriangle.from_slopes(p)
    bl, br, apex = tri.vertices
    out = {}
    out["base"] = _normalize_horizontal_triangle(bl, br, apex)
    for key, (e1, e2, other) in (
        ("left", (bl, apex, br)),
        ("right", (br, apex, bl)),
    ):
        dx = e2[0] - e1[0]
        dy = e2[1] - e1[1]
        # primitive integer direction of the edge
        den = dx.denominator * dy.denominator // math.gcd(
            dx.denominator, dy.denominator)
        ix, iy = int(dx * den), int(dy * den)
        g = math.gcd(abs(ix), abs(iy))
        ix, iy = ix // g, iy // g
        # unimodular U sending (ix, iy) to (1, 0)
        gg, wcoef, rcoef = _gcdext(ix, iy)
        assert gg == 1
        # U = [[w, r], [-iy, ix]] with w*ix + r*iy = 1
        def U(pt):
            x, y = pt
            return (wcoef * x + rcoef * y, -iy * x + ix * y)

        out[key] = _normalize_horizontal_triangle(U(e1), U(e2), U(other))
    return out


def _gcdext(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


# ---------------------------------------------------------------------------
# Weighted projective planes.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WppWeights:
    a: int
    b: int
    c: int

    def __init__(self, a: int, b: int, c: int):
        if a <= 0 or b <= 0 or c <= 0:
            raise ValueError("weights must be positive")
        if math.gcd(math.gcd(a, b), c) != 1:
            raise ValueError("weights must have gcd 1")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    def sorted(self) -> tuple[int, int, int]:
        return tuple(sorted((self.a, self.b, self.c)))

    def __repr__(self):
        return f"P({self.a},{self.b},{self.c})"


def wpp_of_slopes(p: SlopePair) -> Optional[WppWeights]:
    """The weighted projective plane of the triangle, when it is one.

    With s = a/p and t = b/q in lowest terms the toric surface is
    P(a, b, bp-aq) precisely when gcd(a, b) = 1; otherwise it is a finite
    quotient and None is returned.
    """
    if not (0 < p.s < p.t):
        raise ValueError("expects normalized slopes 0 < s < t")
    a, pden = p.s.numerator, p.s.denominator
    b, qden = p.t.numerator, p.t.denominator
    if math.gcd(a, b) != 1:
        return None
    c = b * pden - a * qden
    return WppWeights(a, b, c)


def slopes_of_wpp(w: WppWeights) -> list:
    """Fundamental-domain representatives of the triangles of P(a,b,c).

    One candidate per (horizontal edge, ordering of the two other weights);
    each is reduced to the fundamental domain and the results deduplicated.
    Degenerate orbits are kept as flags.
    """
    ws = (w.a, w.b, w.c)
    for i in range(3):
        for j in range(i + 1, 3):
            if math.gcd(ws[i], ws[j]) != 1:
                raise ValueError(
                    "weights must be pairwise coprime for a weighted "
                    "projective plane"
                )
    results = []
    seen = set()
    degenerate_seen = set()
    for horiz in range(3):
        others = [ws[k] for k in range(3) if k != horiz]
        cw = ws[horiz]
        for aw, bw in (others, others[::-1]):
            # solve bw*p - aw*q = cw with p, q > 0
            binv = pow(bw % aw, -1, aw) if aw > 1 else 0
            p0 = (cw * binv) % aw if aw > 1 else 1
            # ensure positivity of p and q
            while bw * p0 - cw <= 0 or p0 <= 0:
                p0 += aw
            q0 = (bw * p0 - cw) // aw
            if bw * p0 - aw * q0 != cw or q0 <= 0:
                continue
            pair = SlopePair(Fraction(aw, p0), Fraction(bw, q0))
            if pair.s == pair.t:
                continue
            rep, _ = to_fundamental_domain(pair)
            if isinstance(rep, Degenerate):
                if rep.reason not in degenerate_seen:
                    degenerate_seen.add(rep.reason)
                    results.append(rep)
            elif (rep.s, rep.t) not in seen:
                seen.add((rep.s, rep.t))
                results.append(rep)
    return results


# ---------------------------------------------------------------------------
# Minimal supporting triangle.
# ---------------------------------------------------------------------------


def minimal_triangle(P, p: SlopePair) -> SlopeTriangle:
    """Smallest triangle with slopes (s, t) and horizontal base containing P.

    P may be a QPolygon or any iterable of rational points.  All three
    support lines touch P.
    """
    if not (0 < p.s < p.t):
        raise ValueError("expects normalized slopes 0 < s < t")
    pts = list(P.vertices) if isinstance(P, QPolygon) else \
        [(Fraction(x), Fraction(y)) for x, y in P]
    if not pts:
        raise ValueError("empty point set")
    u, v = p.u, p.v
    alpha = min(x - y * u for x, y in pts)
    beta = max(x - y * v for x, y in pts)
    gamma = min(y for x, y in pts)
    bl = (alpha + u * gamma, gamma)
    br = (beta + v * gamma, gamma)
    ya = (beta - alpha) / (u - v)
    apex = (alpha + u * ya, ya)
    return SlopeTriangle(p, (bl, br, apex))
