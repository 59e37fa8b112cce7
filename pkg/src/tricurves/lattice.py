"""Exact lattice geometry: points, rational-vertex convex polygons,
Pick statistics and integral indecomposability.

All coordinates are exact rationals; lattice enumeration scans integer rows
between exact ceilings/floors of edge intersections, with no floating point
anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .exactmath import Rational


class LatticePoint(NamedTuple):
    x: int
    y: int


QPoint = tuple[Fraction, Fraction]


def _qpoint(p) -> QPoint:
    return (Fraction(p[0]), Fraction(p[1]))


def _cross(o: QPoint, a: QPoint, b: QPoint) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Sequence) -> list[QPoint]:
    """Convex hull in counterclockwise order, starting at the
    lexicographically smallest point; collinear boundary points dropped."""
    # Hull arithmetic runs on the raw coordinates (usually plain ints);
    # only the surviving vertices are converted to exact rationals.
    pts = sorted({(p[0], p[1]) for p in points})
    if len(pts) <= 2:
        return [_qpoint(p) for p in pts]
    lower: list[QPoint] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[QPoint] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return [_qpoint(p) for p in lower[:-1] + upper[:-1]]


@dataclass(frozen=True)
class QPolygon:
    """A convex polygon with rational vertices, counterclockwise.

    Degenerate cases (segments and single points) are allowed as values; the
    operations that need full dimension reject them explicitly.
    """

    vertices: tuple[QPoint, ...]

    def __init__(self, vertices: Sequence):
        verts = tuple(_qpoint(v) for v in vertices)
        if not verts:
            raise ValueError("polygon needs at least one vertex")
        if len(verts) >= 3:
            n = len(verts)
            for i in range(n):
                c = _cross(verts[i], verts[(i + 1) % n],
                           verts[(i + 2) % n])
                if c <= 0:
                    raise ValueError(
                        "vertices must be strictly convex counterclockwise"
                    )
        object.__setattr__(self, "vertices", verts)

    def __eq__(self, other):
        if not isinstance(other, QPolygon):
            return NotImplemented
        return self._canonical() == other._canonical()

    def __hash__(self):
        return hash(self._canonical())

    def _canonical(self) -> tuple[QPoint, ...]:
        """Vertex tuple rotated to start at the lexicographic minimum."""
        v = self.vertices
        i = v.index(min(v))
        return v[i:] + v[:i]

    @classmethod
    def hull_of(cls, points: Sequence) -> "QPolygon":
        return cls(convex_hull(points))

    # -- basic geometry ----------------------------------------------------

    @property
    def is_point(self) -> bool:
        return len(self.vertices) == 1

    @property
    def is_segment(self) -> bool:
        return len(self.vertices) == 2

    def area(self) -> Fraction:
        v = self.vertices
        n = len(v)
        if n < 3:
            return Fraction(0)
        s = Fraction(0)
        for i in range(n):
            x1, y1 = v[i]
            x2, y2 = v[(i + 1) % n]
            s += x1 * y2 - x2 * y1
        return s / 2

    def integral_vertices(self) -> bool:
        return all(x.denominator == 1 and y.denominator == 1
                   for x, y in self.vertices)

    def edges(self) -> list[tuple[QPoint, QPoint]]:
        v = self.vertices
        if len(v) == 1:
            return []
        if len(v) == 2:
            return [(v[0], v[1])]
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def contains(self, p) -> bool:
        q = _qpoint(p)
        v = self.vertices
        if len(v) == 1:
            return q == v[0]
        if len(v) == 2:
            if _cross(v[0], v[1], q) != 0:
                return False
            lo = min(v)
            hi = max(v)
            return lo <= q <= hi
        return all(_cross(a, b, q) >= 0 for a, b in self.edges())

    def translate(self, dx, dy) -> "QPolygon":
        dx, dy = Fraction(dx), Fraction(dy)
        return QPolygon([(x + dx, y + dy) for x, y in self.vertices])


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def _row_span(P: QPolygon, y: int) -> Optional[tuple[Fraction, Fraction]]:
    """Exact x-interval of the intersection of P with the line at height y."""
    yq = Fraction(y)
    lo = None
    hi = None
    verts = P.vertices
    n = len(verts)
    pairs = P.edges() if n > 1 else [(verts[0], verts[0])]
    for (x1, y1), (x2, y2) in pairs:
        if y1 == y2:
            if y1 == yq:
                for x in (x1, x2):
                    lo = x if lo is None or x < lo else lo
                    hi = x if hi is None or x > hi else hi
            continue
        if min(y1, y2) <= yq <= max(y1, y2):
            x = x1 + (yq - y1) * (x2 - x1) / (y2 - y1)
            lo = x if lo is None or x < lo else lo
            hi = x if hi is None or x > hi else hi
    if n == 1:
        x1, y1 = verts[0]
        if y1 == yq:
            lo = hi = x1
    if lo is None:
        return None
    return lo, hi


def lattice_points(P: QPolygon) -> list[LatticePoint]:
    """All integer points inside or on P, in row-major order."""
    ys = [y for _, y in P.vertices]
    y0, y1 = _ceil(min(ys)), _floor(max(ys))
    out = []
    for y in range(y0, y1 + 1):
        span = _row_span(P, y)
        if span is None:
            continue
        lo, hi = span
        out.extend(LatticePoint(x, y) for x in range(_ceil(lo), _floor(hi) + 1))
    return out


def lattice_length(a: LatticePoint, b: LatticePoint) -> int:
    """Number of primitive lattice segments on the edge a→b."""
    if a == b:
        raise ValueError("endpoints coincide")
    return math.gcd(abs(b[0] - a[0]), abs(b[1] - a[1]))


def boundary_lattice_count(P: QPolygon) -> int:
    """Lattice points on the boundary of an integral polygon."""
    if P.is_point:
        return 1
    total = 0
    for (x1, y1), (x2, y2) in P.edges():
        total += math.gcd(abs(int(x2 - x1)), abs(int(y2 - y1)))
    if P.is_segment:
        total += 1  # open chain, not a closed loop
    return total


def pick_stats(P: QPolygon) -> tuple[Fraction, int, int]:
    """(area, boundary count, interior count) for an integral polygon.

    The Pick identity area = interior + boundary/2 - 1 is asserted.
    """
    if not P.integral_vertices():
        raise ValueError("pick_stats needs integral vertices")
    if len(P.vertices) < 3:
        raise ValueError("pick_stats needs a full-dimensional polygon")
    area = P.area()
    boundary = boundary_lattice_count(P)
    interior = area - Fraction(boundary, 2) + 1
    if interior.denominator != 1 or interior < 0:
        raise ArithmeticError("Pick identity violated (internal error)")
    interior = int(interior)
    assert area == interior + Fraction(boundary, 2) - 1
    return area, boundary, interior


def lattice_perimeter(P: QPolygon) -> int:
    """Sum of lattice lengths of the edges of an integral polygon."""
    if not P.integral_vertices():
        raise ValueError("lattice perimeter needs integral vertices")
    if P.is_point:
        return 0
    if P.is_segment:
        return boundary_lattice_count(P) - 1
    return boundary_lattice_count(P)


# ---------------------------------------------------------------------------
# Integral indecomposability (Minkowski sums).
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DecompositionWitness:
    left: QPolygon
    right: QPolygon


INDECOMPOSABLE_BUDGET = 64


def _edge_multiset(P: QPolygon) -> list[tuple[tuple[int, int], int]]:
    """Primitive edge directions with multiplicities, in boundary order."""
    out = []
    if P.is_segment:
        (x1, y1), (x2, y2) = P.vertices
        dx, dy = int(x2 - x1), int(y2 - y1)
        g = math.gcd(abs(dx), abs(dy))
        out.append(((dx // g, dy // g), g))
        out.append(((-dx // g, -dy // g), g))
        return out
    for (x1, y1), (x2, y2) in P.edges():
        dx, dy = int(x2 - x1), int(y2 - y1)
        g = math.gcd(abs(dx), abs(dy))
        out.append(((dx // g, dy // g), g))
    return out


def _polygon_from_edges(edges: list[tuple[tuple[int, int], int]]) -> QPolygon:
    """Convex polygon (or segment) traced by angle-ordered closed edges."""
    pts = [(Fraction(0), Fraction(0))]
    x, y = Fraction(0), Fraction(0)
    for (dx, dy), k in edges:
        if k == 0:
            continue
        x += dx * k
        y += dy * k
        pts.append((x, y))
    return QPolygon.hull_of(pts)


def _lex_min(P: QPolygon) -> QPoint:
    return min((y, x) for x, y in P.vertices)[::-1]


def minkowski_sum(A: QPolygon, B: QPolygon) -> QPolygon:
    return QPolygon.hull_of(
        [(ax + bx, ay + by) for ax, ay in A.vertices for bx, by in B.vertices]
    )


def indecomposable(P: QPolygon):
    """Whether P is *not* a Minkowski sum of two integral polygons with at
    least two lattice points each.

    Returns True, a :class:`DecompositionWitness`, or the string "TooLarge"
    when the total boundary lattice length exceeds the search budget.
    """
    if not P.integral_vertices():
        raise ValueError("indecomposable needs integral vertices")
    if P.is_point:
        return True
    edges = _edge_multiset(P)
    total = sum(k for _, k in edges)
    if total > INDECOMPOSABLE_BUDGET:
        return "TooLarge"
    # A summand corresponds to a closed sub-multiset of the edge vectors:
    # dynamic programming over partial vector sums, keeping one witness
    # choice per reachable sum.
    states: dict[tuple[int, int], tuple] = {(0, 0): ()}
    closed: list[tuple] = []
    for idx, ((dx, dy), k) in enumerate(edges):
        new_states = dict(states)
        for (sx, sy), choice in states.items():
            for c in range(1, k + 1):
                key = (sx + dx * c, sy + dy * c)
                if key == (0, 0):
                    closed.append(choice + ((idx, c),))
                elif key not in new_states:
                    new_states[key] = choice + ((idx, c),)
        states = new_states
    for choice in closed:
        counts = dict(choice)
        if all(counts.get(i, 0) == k for i, (_, k) in enumerate(edges)):
            continue  # the full multiset, not a proper summand
        part_a = [(d, counts.get(i, 0)) for i, (d, _) in enumerate(edges)]
        part_b = [(d, k - counts.get(i, 0)) for i, (d, k) in enumerate(edges)]
        if not any(k for _, k in part_b):
            continue
        A = _polygon_from_edges(part_a)
        B = _polygon_from_edges(part_b)
        # Anchor so the Minkowski sum reproduces P exactly.
        ax, ay = _lex_min(A)
        A = A.translate(-ax, -ay)
        bx, by = _lex_min(B)
        px, py = _lex_min(P)
        B = B.translate(px - bx, py - by)
        if minkowski_sum(A, B) == P:
            return DecompositionWitness(A, B)
    return True
