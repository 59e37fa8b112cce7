"""Exact Laurent polynomials on the integer lattice.

Coefficients are exact rationals; the support is a finite map
(x-exponent, y-exponent) -> coefficient with no zeros stored.  Equality of
:class:`LaurentPoly` values is strict (coefficient-wise); use
:meth:`LaurentPoly.normalize_monomial` / :func:`same_up_to_monomial` for the
curve-level identification that quotients out unit monomials.

Large integer-coefficient products and exact divisions run through Kronecker
substitution: the polynomial is packed into one big integer (fixed-width
signed digits, one per lattice point of the bounding box), multiplied with
gmpy2, and unpacked.  The packed routes are verified against the schoolbook
route in the test suite, and exact division re-checks its quotient by
multiplying back.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import gmpy2
import numpy as np

from .lattice import LatticePoint, QPolygon, convex_hull

_PACK_THRESHOLD = 5000  # use Kronecker packing when len(f)*len(g) exceeds


class LaurentPoly:
    """A finitely supported map from Z^2 to the rationals."""

    __slots__ = ("support",)

    def __init__(self, support: Optional[dict] = None):
        clean = {}
        if support:
            for (a, b), c in support.items():
                c = c if isinstance(c, Fraction) else Fraction(c)
                if c:
                    clean[(int(a), int(b))] = c
        self.support = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls({})

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls({(0, 0): Fraction(c)})

    @classmethod
    def monomial(cls, c, a: int, b: int) -> "LaurentPoly":
        return cls({(a, b): Fraction(c)})

    @classmethod
    def from_terms(cls, terms: Iterable[tuple]) -> "LaurentPoly":
        support: dict = {}
        for c, a, b in terms:
            key = (int(a), int(b))
            support[key] = support.get(key, Fraction(0)) + Fraction(c)
        return cls(support)

    # -- basic structure ---------------------------------------------------

    def __bool__(self):
        return bool(self.support)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.support == other.support

    def __hash__(self):
        return hash(frozenset(self.support.items()))

    def __len__(self):
        return len(self.support)

    def __repr__(self):
        if len(self.support) > 8:
            return f"LaurentPoly(<{len(self.support)} terms>)"
        return f"LaurentPoly({to_text(self)!r})"

    def coeff(self, a: int, b: int) -> Fraction:
        return self.support.get((a, b), Fraction(0))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.support.values())

    def bounding_box(self) -> tuple[int, int, int, int]:
        if not self.support:
            raise ValueError("zero polynomial has no bounding box")
        xs = [a for a, _ in self.support]
        ys = [b for _, b in self.support]
        return min(xs), max(xs), min(ys), max(ys)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        support = dict(self.support)
        for k, c in other.support.items():
            s = support.get(k, Fraction(0)) + c
            if s:
                support[k] = s
            elif k in support:
                del support[k]
        return LaurentPoly(support)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.support.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        return multiply(self, _coerce(other))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return power(self, n)

    def shift(self, dx: int, dy: int) -> "LaurentPoly":
        return LaurentPoly({(a + dx, b + dy): c
                            for (a, b), c in self.support.items()})

    def normalize_monomial(self) -> "LaurentPoly":
        """Divide out the monomial gcd: translate so min x = min y = 0."""
        if not self.support:
            return self
        x0, _, y0, _ = self.bounding_box()
        return self.shift(-x0, -y0)


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    return LaurentPoly.constant(x)


def same_up_to_monomial(f: LaurentPoly, g: LaurentPoly,
                        up_to_scalar: bool = False) -> bool:
    """Equality after dividing out unit monomials (and optionally a scalar)."""
    fn = f.normalize_monomial()
    gn = g.normalize_monomial()
    if fn == gn:
        return True
    if not up_to_scalar or not fn or not gn:
        return False
    key = min(fn.support)
    if key not in gn.support:
        return False
    ratio = gn.support[key] / fn.support[key]
    return gn == LaurentPoly({k: c * ratio for k, c in fn.support.items()})


ONE = LaurentPoly.constant(1)
X = LaurentPoly.monomial(1, 1, 0)
Y = LaurentPoly.monomial(1, 0, 1)


# ---------------------------------------------------------------------------
# Multiplication.
# ---------------------------------------------------------------------------


def _convolve(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    support: dict = {}
    small, large = (f, g) if len(f) <= len(g) else (g, f)
    for (a1, b1), c1 in small.support.items():
        for (a2, b2), c2 in large.support.items():
            key = (a1 + a2, b1 + b2)
            s = support.get(key, Fraction(0)) + c1 * c2
            if s:
                support[key] = s
            elif key in support:
                del support[key]
    return LaurentPoly(support)


def _int_coeffs(f: LaurentPoly) -> dict:
    return {k: c.numerator for k, c in f.support.items()}


def _pack(coeffs: dict, x0: int, y0: int, stride_x: int, ndigits: int,
          bits: int) -> gmpy2.mpz:
    """Pack integer coefficients into one big integer.

    Digit i holds the coefficient at packed index (x-x0) + stride_x*(y-y0);
    negative coefficients are packed by splitting into positive and negative
    parts and subtracting once.
    """
    nbytes = bits // 8
    pos = bytearray(ndigits * nbytes)
    neg = bytearray(ndigits * nbytes)
    for (a, b), c in coeffs.items():
        idx = (a - x0) + stride_x * (b - y0)
        off = idx * nbytes
        if c >= 0:
            pos[off:off + nbytes] = int(c).to_bytes(nbytes, "little")
        else:
            neg[off:off + nbytes] = int(-c).to_bytes(nbytes, "little")
    return gmpy2.mpz(int.from_bytes(bytes(pos), "little")
                     - int.from_bytes(bytes(neg), "little"))


def _unpack(z: gmpy2.mpz, ndigits: int, bits: int) -> list[int]:
    """Recover signed fixed-width digits from a packed integer."""
    nbytes = bits // 8
    half = 1 << (bits - 1)
    # Adding half to every digit makes them all nonnegative.
    offset_digit = half.to_bytes(nbytes, "little")
    offset = int.from_bytes(offset_digit * ndigits, "little")
    shifted = int(z) + offset
    if shifted < 0:
        raise OverflowError("digit width too small for unpacking")
    raw = shifted.to_bytes(ndigits * nbytes + 1, "little")
    out = []
    for i in range(ndigits):
        d = int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little")
        out.append(d - half)
    if int.from_bytes(raw[ndigits * nbytes:], "little"):
        raise OverflowError("digit width too small for unpacking")
    return out


def _max_abs_num(f: LaurentPoly) -> int:
    return max(abs(c.numerator) for c in f.support.values())


def _digit_bits(f: LaurentPoly, g: LaurentPoly) -> int:
    bound = (_max_abs_num(f).bit_length() + _max_abs_num(g).bit_length()
             + max(1, min(len(f), len(g))).bit_length() + 2)
    return ((bound + 7) // 8) * 8


def _multiply_packed(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    fx0, fx1, fy0, fy1 = f.bounding_box()
    gx0, gx1, gy0, gy1 = g.bounding_box()
    dx = (fx1 - fx0) + (gx1 - gx0)
    dy = (fy1 - fy0) + (gy1 - gy0)
    stride = dx + 1
    bits = _digit_bits(f, g)
    zf = _pack(_int_coeffs(f), fx0, fy0, stride, stride * (fy1 - fy0 + 1),
               bits)
    zg = _pack(_int_coeffs(g), gx0, gy0, stride, stride * (gy1 - gy0 + 1),
               bits)
    ndigits = stride * (dy + 1)
    digits = _unpack(zf * zg, ndigits, bits)
    support = {}
    for idx, c in enumerate(digits):
        if c:
            support[(fx0 + gx0 + idx % stride, fy0 + gy0 + idx // stride)] = \
                Fraction(c)
    return LaurentPoly(support)


def multiply(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Exact product; big integral operands go through Kronecker packing."""
    if not f or not g:
        return LaurentPoly.zero()
    if (len(f) * len(g) > _PACK_THRESHOLD
            and f.is_integral() and g.is_integral()):
        return _multiply_packed(f, g)
    return _convolve(f, g)


def power(f: LaurentPoly, n: int) -> LaurentPoly:
    if n < 0:
        raise ValueError("negative power")
    result = LaurentPoly.constant(1)
    base = f
    while n:
        if n & 1:
            result = multiply(result, base)
        n >>= 1
        if n:
            base = multiply(base, base)
    return result


# ---------------------------------------------------------------------------
# Vanishing order at e = (1,1).
# ---------------------------------------------------------------------------


def _shift_rows_inplace(grid: list[list]) -> None:
    """Replace each row p(x) by p(x+1) via Ruffini-Horner accumulation."""
    for row in grid:
        n = len(row)
        for k in range(n - 1):
            for j in range(n - 2, k - 1, -1):
                row[j] += row[j + 1]


def vanishing_order(f: LaurentPoly) -> int:
    """Largest m such that all Taylor coefficients of f(1+u, 1+v) with total
    degree < m vanish.  Multiplication by unit monomials does not change the
    order, so the support is first translated into the nonnegative quadrant.
    """
    if not f:
        raise ValueError("vanishing order of the zero polynomial")
    g = f.normalize_monomial()
    x0, x1, y0, y1 = g.bounding_box()
    nx, ny = x1 - x0 + 1, y1 - y0 + 1
    denom = 1
    for c in g.support.values():
        denom = denom * c.denominator // math.gcd(denom, c.denominator)
    grid = [[0] * nx for _ in range(ny)]
    for (a, b), c in g.support.items():
        grid[b - y0][a - x0] = int(c * denom)
    _shift_rows_inplace(grid)
    cols = [list(col) for col in zip(*grid)]
    _shift_rows_inplace(cols)
    best = nx + ny
    for i, col in enumerate(cols):
        for j, v in enumerate(col):
            if v and i + j < best:
                best = i + j
                break
    if best > nx + ny - 2:
        raise ArithmeticError("nonzero polynomial with no Taylor support")
    return best


def taylor_coefficient(f: LaurentPoly, i: int, j: int) -> Fraction:
    """The (i, j) Taylor coefficient of f(1+u, 1+v) at u = v = 0.

    Equals sum over support of c_{p,q} * binom(p, i) * binom(q, j), where
    the binomials extend to negative exponents in the usual way.
    """
    total = Fraction(0)
    for (p, q), c in f.support.items():
        total += c * _generalized_binomial(p, i) * _generalized_binomial(q, j)
    return total


def _generalized_binomial(p: int, i: int) -> int:
    if p >= 0:
        return math.comb(p, i) if i <= p else 0
    # binom(p, i) = (-1)^i binom(i - p - 1, i) for negative p
    return (-1) ** i * math.comb(i - p - 1, i)


# ---------------------------------------------------------------------------
# Newton polygon and edge restrictions.
# ---------------------------------------------------------------------------


def newton_polygon(f: LaurentPoly) -> QPolygon:
    if not f:
        raise ValueError("Newton polygon of the zero polynomial")
    return QPolygon.hull_of(list(f.support))


def edge_restriction(f: LaurentPoly,
                     edge: tuple[LatticePoint, LatticePoint]) -> list[Fraction]:
    """Coefficients of f at the lattice points of a segment, walking from the
    first endpoint in primitive steps."""
    (ax, ay), (bx, by) = edge
    if (ax, ay) == (bx, by):
        raise ValueError("zero-length edge")
    g = math.gcd(abs(bx - ax), abs(by - ay))
    sx, sy = (bx - ax) // g, (by - ay) // g
    return [f.coeff(ax + k * sx, ay + k * sy) for k in range(g + 1)]


# ---------------------------------------------------------------------------
# Exact division.
# ---------------------------------------------------------------------------


def _divide_binomial(g: LaurentPoly, f: LaurentPoly) -> Optional[LaurentPoly]:
    """Exact division by a 1- or 2-term divisor, along the edge direction."""
    terms = sorted(g.support.items())
    if len(terms) == 1:
        (e0, c0) = terms[0]
        return LaurentPoly({(a - e0[0], b - e0[1]): c / c0
                            for (a, b), c in f.support.items()})
    (e0, c0), (e1, c1) = terms
    d = (e1[0] - e0[0], e1[1] - e0[1])
    # Order the dividend terms along a linear functional that makes the
    # e0 term of g leading: any w with w·d < 0 works.
    w = (-d[0], -d[1])

    def order(k):
        return (w[0] * k[0] + w[1] * k[1], k)

    fx0, fx1, fy0, fy1 = f.bounding_box()
    limit = (fx1 - fx0 + 1) * (fy1 - fy0 + 1) + len(f) + 16
    q: dict = {}
    rem = dict(f.support)
    steps = 0
    while rem:
        k = max(rem, key=order)
        c = rem.pop(k)
        qk = (k[0] - e0[0], k[1] - e0[1])
        qc = c / c0
        q[qk] = q.get(qk, Fraction(0)) + qc
        other = (qk[0] + e1[0], qk[1] + e1[1])
        s = rem.get(other, Fraction(0)) - qc * c1
        if s:
            rem[other] = s
        elif other in rem:
            del rem[other]
        steps += 1
        if steps > limit:
            return None  # marching out of the box: not divisible
    return LaurentPoly(q)


def _divide_dense_y(g: LaurentPoly, f: LaurentPoly) -> Optional[LaurentPoly]:
    """Exact division of integral polynomials via Kronecker substitution.

    Both operands are evaluated at (x, y) = (2^bits, 2^(bits*stride)); since
    substitution is a ring homomorphism, an exact quotient polynomial packs
    to the exact big-integer quotient.  The result is verified by multiplying
    back; on digit overflow the width is doubled and retried.
    """
    gx0, gx1, gy0, gy1 = g.bounding_box()
    fx0, fx1, fy0, fy1 = f.bounding_box()
    # Newton polygons add under multiplication, so a quotient never exceeds
    # the dividend's bounding box in either direction.
    if fx1 - fx0 < gx1 - gx0 or fy1 - fy0 < gy1 - gy0:
        return None
    stride = (fx1 - fx0) + 1
    bits = _digit_bits(f, g) + 64
    while True:
        try:
            return _divide_dense_y_attempt(g, f, stride, bits)
        except OverflowError:
            bits *= 2
            if bits > 1 << 22:
                raise


def _divide_dense_y_attempt(g, f, stride, bits):
    gx0, gx1, gy0, gy1 = g.bounding_box()
    fx0, fx1, fy0, fy1 = f.bounding_box()
    zf = _pack(_int_coeffs(f), fx0, fy0, stride, stride * (fy1 - fy0 + 1),
               bits)
    zg = _pack(_int_coeffs(g), gx0, gy0, stride, stride * (gy1 - gy0 + 1),
               bits)
    if zg == 0:
        raise OverflowError("divisor evaluated to zero; retry wider")
    zq, rem = divmod(zf, zg)
    if rem != 0:
        return None
    qdy = (fy1 - fy0) - (gy1 - gy0)
    # Unpacking raises on digit overflow, which restarts with wider digits.
    digits = _unpack(zq, stride * (qdy + 1), bits)
    support = {}
    for idx, c in enumerate(digits):
        if c:
            support[(fx0 - gx0 + idx % stride, fy0 - gy0 + idx // stride)] = \
                Fraction(c)
    quotient = LaurentPoly(support)
    if multiply(g, quotient) != f:
        raise OverflowError("verification failed; retry with wider digits")
    return quotient


def divides(g: LaurentPoly, f: LaurentPoly) -> Optional[LaurentPoly]:
    """Some(q) with f = g*q exactly, else None."""
    if not g:
        raise ValueError("division by zero polynomial")
    if not f:
        return LaurentPoly.zero()
    if len(g) <= 2:
        q = _divide_binomial(g, f)
        return q if q is not None and multiply(g, q) == f else None
    if f.is_integral() and g.is_integral():
        # The dense route verifies its quotient internally.
        q = _divide_dense_y(g, f)
        if q is not None:
            return q
    return _divide_generic(g, f)


def _divide_generic(g: LaurentPoly, f: LaurentPoly) -> Optional[LaurentPoly]:
    """Schoolbook multivariate division with a fixed generic term order."""
    fx0, fx1, fy0, fy1 = f.bounding_box()
    span = (fx1 - fx0) + (fy1 - fy0) + 2

    def order(k):
        return (k[0] + span * k[1], k[0])

    glead = max(g.support, key=order)
    gc = g.support[glead]
    rem = dict(f.support)
    q: dict = {}
    steps = 0
    limit = 8 * (len(f) + len(g) + 4) ** 2
    while rem:
        k = max(rem, key=order)
        qk = (k[0] - glead[0], k[1] - glead[1])
        qc = rem[k] / gc
        q[qk] = q.get(qk, Fraction(0)) + qc
        for gk, c in g.support.items():
            tgt = (qk[0] + gk[0], qk[1] + gk[1])
            s = rem.get(tgt, Fraction(0)) - qc * c
            if s:
                rem[tgt] = s
            elif tgt in rem:
                del rem[tgt]
        steps += 1
        if steps > limit:
            return None
    quotient = LaurentPoly(q)
    return quotient if multiply(g, quotient) == f else None


# ---------------------------------------------------------------------------
# Text serialization.
# ---------------------------------------------------------------------------


def to_text(f: LaurentPoly) -> str:
    """Deterministic text form: sorted ``coeff*x^a*y^b`` terms."""
    if not f:
        return "0"
    parts = []
    for (a, b) in sorted(f.support):
        c = f.support[(a, b)]
        parts.append(f"{c}*x^{a}*y^{b}")
    return " + ".join(parts)


def from_text(text: str) -> LaurentPoly:
    text = text.strip()
    if text == "0":
        return LaurentPoly.zero()
    support = {}
    for term in text.split(" + "):
        cpart, xpart, ypart = term.split("*")
        a = int(xpart[2:])
        b = int(ypart[2:])
        support[(a, b)] = Fraction(cpart)
    return LaurentPoly(support)
