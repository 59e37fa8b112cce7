"""Exact rationals and exact linear algebra over the rationals.

The only scalar type in the core is :data:`Rational` (an arbitrary-precision
fraction, always stored reduced with positive denominator).  Matrices are
exact; rank and kernel are computed either by fraction-free (Bareiss-style)
elimination for small systems, or by a modular fast path whose answers are
certified exactly:

* a lower bound on the rank comes from a minor whose determinant is nonzero
  modulo a prime (a nonzero residue proves the integer determinant is nonzero);
* an upper bound comes from an exact rational kernel basis of the implied
  dimension, verified by multiplying back against the matrix.

Together the two bounds pin the rank exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

import gmpy2
import numpy as np

Rational = Fraction

# Primes just below 2^29: small enough that a*b mod p stays inside int64
# during elimination, large enough that a handful suffice for CRT lifting.
_MODULAR_PRIMES = [
    536870909, 536870879, 536870869, 536870849, 536870839, 536870837,
    536870819, 536870813, 536870791, 536870779, 536870767, 536870743,
    536870729, 536870723, 536870717, 536870701, 536870683, 536870657,
    536870641, 536870627, 536870611, 536870603, 536870599, 536870573,
    536870569, 536870563, 536870561, 536870513, 536870501, 536870497,
]

_BAREISS_COL_LIMIT = 200
_SPARSE_DENSITY = 0.25


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class QMatrix:
    """An exact matrix over the rationals.

    Entries are stored densely (tuple of row tuples) or sparsely (a map
    (row, col) -> value) depending on density; unstored sparse entries are
    zero.  Instances are immutable.
    """

    __slots__ = ("rows", "cols", "_dense", "_sparse")

    def __init__(self, rows: int, cols: int, *, dense=None, sparse=None):
        self.rows = rows
        self.cols = cols
        self._dense = dense
        self._sparse = sparse

    # -- construction ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "QMatrix":
        data = [tuple(_as_fraction(x) for x in row) for row in rows]
        nrows = len(data)
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        nonzero = sum(1 for row in data for x in row if x)
        if nrows * ncols > 0 and nonzero < _SPARSE_DENSITY * nrows * ncols:
            entries = {
                (i, j): x
                for i, row in enumerate(data)
                for j, x in enumerate(row)
                if x
            }
            return cls(nrows, ncols, sparse=entries)
        return cls(nrows, ncols, dense=tuple(data))

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: dict) -> "QMatrix":
        entries = {k: _as_fraction(v) for k, v in entries.items() if v}
        for (i, j) in entries:
            if not (0 <= i < rows and 0 <= j < cols):
                raise ValueError("entry outside matrix")
        if len(entries) >= _SPARSE_DENSITY * rows * cols:
            dense = tuple(
                tuple(entries.get((i, j), Fraction(0)) for j in range(cols))
                for i in range(rows)
            )
            return cls(rows, cols, dense=dense)
        return cls(rows, cols, sparse=entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, sparse={})

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls.from_entries(n, n, {(i, i): 1 for i in range(n)})

    # -- access ------------------------------------------------------------

    @property
    def is_sparse(self) -> bool:
        return self._sparse is not None

    def entry(self, i: int, j: int) -> Fraction:
        if self._dense is not None:
            return self._dense[i][j]
        return self._sparse.get((i, j), Fraction(0))

    def row(self, i: int) -> tuple:
        if self._dense is not None:
            return self._dense[i]
        return tuple(
            self._sparse.get((i, j), Fraction(0)) for j in range(self.cols)
        )

    def iter_rows(self):
        for i in range(self.rows):
            yield self.row(i)

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(
            self.entry(i, j) == other.entry(i, j)
            for i in range(self.rows)
            for j in range(self.cols)
        )

    def __repr__(self):
        kind = "sparse" if self.is_sparse else "dense"
        return f"QMatrix({self.rows}x{self.cols}, {kind})"

    # -- conversions -------------------------------------------------------

    def integer_rows(self) -> list[list[int]]:
        """Rows with denominators cleared (row-wise), as plain integers."""
        out = []
        for row in self.iter_rows():
            lcm = 1
            for x in row:
                if x:
                    lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
            out.append([int(x * lcm) for x in row])
        return out

    def mod_array(self, p: int) -> np.ndarray:
        """The matrix reduced mod p (denominators inverted mod p)."""
        a = np.zeros((self.rows, self.cols), dtype=np.int64)
        if self._sparse is not None:
            for (i, j), x in self._sparse.items():
                a[i, j] = _frac_mod(x, p)
        else:
            for i, row in enumerate(self._dense):
                for j, x in enumerate(row):
                    if x:
                        a[i, j] = _frac_mod(x, p)
        return a

    def mult_vector(self, v: Sequence[Fraction]) -> list[Fraction]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        if self._sparse is not None:
            out = [Fraction(0)] * self.rows
            for (i, j), x in self._sparse.items():
                out[i] += x * v[j]
            return out
        return [
            sum((x * vj for x, vj in zip(row, v) if x), Fraction(0))
            for row in self._dense
        ]


def _frac_mod(x: Fraction, p: int) -> int:
    num = x.numerator % p
    den = x.denominator % p
    if den == 0:
        raise ZeroDivisionError(f"denominator divisible by prime {p}")
    return (num * pow(den, p - 2, p)) % p


# ---------------------------------------------------------------------------
# Fraction-free (Bareiss) elimination — exact route for small systems.
# ---------------------------------------------------------------------------


def _bareiss_echelon(int_rows: list[list[int]]):
    """Fraction-free row echelon form of an integer matrix.

    Returns (echelon_rows, pivot_cols).  Row i of the result has its leading
    nonzero entry in column pivot_cols[i]; entries stay integral throughout
    (Bareiss division is exact).
    """
    a = [list(map(gmpy2.mpz, row)) for row in int_rows]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    pivot_cols: list[int] = []
    prev = gmpy2.mpz(1)
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pc = a[r][c]
        for i in range(r + 1, nrows):
            fi = a[i][c]
            row_i = a[i]
            row_r = a[r]
            for j in range(c, ncols):
                row_i[j] = (pc * row_i[j] - fi * row_r[j]) // prev
        prev = pc
        pivot_cols.append(c)
        r += 1
        if r == nrows:
            break
    return [[int(x) for x in row] for row in a[:r]], pivot_cols


def _kernel_from_echelon(echelon: list[list[int]], pivot_cols: list[int],
                         ncols: int) -> list[list[Fraction]]:
    """Back-substitute a kernel basis from an echelon form.

    Each free column yields one basis vector with a 1 in that column and 0 in
    every other free column.
    """
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i in reversed(range(len(pivot_cols))):
            pc = pivot_cols[i]
            row = echelon[i]
            s = sum(
                (Fraction(row[j]) * v[j] for j in range(pc + 1, ncols) if row[j]),
                Fraction(0),
            )
            v[pc] = -s / row[pc]
        basis.append(v)
    return basis


def _normalize_first_nonzero(v: Sequence[Fraction]) -> list[Fraction]:
    lead = next((x for x in v if x), None)
    if lead is None:
        return list(v)
    return [x / lead for x in v]


# ---------------------------------------------------------------------------
# Modular elimination kernels (numba-accelerated).
# ---------------------------------------------------------------------------

try:  # pragma: no cover - exercised indirectly
    from numba import njit

    _HAVE_NUMBA = True
except Exception:  # pragma: no cover
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


@njit(cache=True)
def _rref_mod_inplace(a, p):  # pragma: no cover - numba compiled
    nrows, ncols = a.shape
    pivot_cols = np.empty(min(nrows, ncols), dtype=np.int64)
    r = 0
    for c in range(ncols):
        piv = -1
        for i in range(r, nrows):
            if a[i, c] % p != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(ncols):
                tmp = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = tmp
        # scale pivot row to make pivot 1
        inv = 1
        base = a[r, c] % p
        e = p - 2
        while e > 0:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for j in range(c, ncols):
            a[r, j] = (a[r, j] * inv) % p
        for i in range(nrows):
            if i != r and a[i, c] % p != 0:
                f = a[i, c] % p
                for j in range(c, ncols):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
        pivot_cols[r] = c
        r += 1
        if r == nrows:
            break
    return pivot_cols[:r]


def rref_mod_p(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` mod ``p``; returns (rref, pivots)."""
    work = np.ascontiguousarray(a.astype(np.int64) % p)
    pivots = _rref_mod_inplace(work, p)
    return work, [int(c) for c in pivots]


def rank_mod_p(a: np.ndarray, p: int) -> int:
    """Rank of ``a`` mod ``p`` — a certified lower bound for the exact rank."""
    return len(rref_mod_p(a, p)[1])


def kernel_mod_p(a: np.ndarray, p: int):
    """Kernel basis of ``a`` mod ``p``.

    Returns (pivot_cols, basis) where each basis vector has a 1 in "its" free
    column and 0 in all other free columns — the same normalization for every
    prime, so vectors can be CRT-combined across primes entrywise.
    """
    rref, pivots = rref_mod_p(a, p)
    ncols = a.shape[1]
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        v = np.zeros(ncols, dtype=np.int64)
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-int(rref[i, fc])) % p
        basis.append(v)
    return pivots, basis


# -- blocked float64 elimination: rank of very large mod-p matrices ---------

# With p <= 2861 every product is < 2^23.1 and a dot product of length <= 1024
# stays below 2^33.1, far inside float64's exact-integer range (2^53).
_BLOCKED_PRIMES = [2861, 2857, 2851, 2843, 2837]
_BLOCK = 512


@njit(cache=True)
def _panel_factor(panel, p):  # pragma: no cover - numba compiled
    """Unblocked LU of a tall panel mod p; multipliers stored in place.

    Returns (pivot row permutation applied, list of pivot local columns).
    """
    nrows, ncols = panel.shape
    perm = np.arange(nrows)
    piv_cols = np.empty(ncols, dtype=np.int64)
    npiv = 0
    for c in range(ncols):
        piv = -1
        for i in range(npiv, nrows):
            if panel[i, c] != 0:
                piv = i
                break
        if piv < 0:
            piv_cols[c] = -1
            continue
        if piv != npiv:
            for j in range(ncols):
                tmp = panel[npiv, j]
                panel[npiv, j] = panel[piv, j]
                panel[piv, j] = tmp
            tmp2 = perm[npiv]
            perm[npiv] = perm[piv]
            perm[piv] = tmp2
        # invert pivot mod p
        inv = 1
        base = panel[npiv, c] % p
        e = p - 2
        while e > 0:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for i in range(npiv + 1, nrows):
            if panel[i, c] != 0:
                f = (panel[i, c] * inv) % p
                panel[i, c] = f  # store multiplier
                for j in range(c + 1, ncols):
                    panel[i, j] = (panel[i, j] - f * panel[npiv, j]) % p
            else:
                panel[i, c] = 0
        piv_cols[c] = npiv
        npiv += 1
        if npiv == nrows:
            for c2 in range(c + 1, ncols):
                piv_cols[c2] = -1
            break
    return perm, piv_cols, npiv


@njit(cache=True)
def _tri_solve_u12(panel, piv_cols, u12, p):  # pragma: no cover - numba
    """Unit-lower-triangular solve on the pivot rows: u12 <- L11^{-1} u12."""
    ncols = panel.shape[1]
    tcols = u12.shape[1]
    k = 0
    for c in range(ncols):
        if piv_cols[c] < 0:
            continue
        for i in range(k + 1, u12.shape[0]):
            f = panel[i, c]
            if f != 0:
                for j in range(tcols):
                    u12[i, j] = (u12[i, j] - f * u12[k, j]) % p
        k += 1


def rank_mod_p_blocked(a_mod: np.ndarray, p: int, block: int = _BLOCK) -> int:
    """Rank mod ``p`` of a large dense matrix via blocked elimination.

    The trailing update uses float64 matrix products (exact for p in
    ``_BLOCKED_PRIMES`` with the default block size); panel factorization runs
    in int64.  Still a certified lower bound for the exact rational rank.
    """
    if p * p * block >= 2 ** 52:
        raise ValueError("prime/block combination can overflow float64")
    a = np.ascontiguousarray(a_mod.astype(np.float64) % p)
    nrows, ncols = a.shape
    rank = 0
    row0 = 0
    col0 = 0
    while row0 < nrows and col0 < ncols:
        nb = min(block, ncols - col0)
        panel = np.ascontiguousarray(a[row0:, col0:col0 + nb].astype(np.int64))
        perm, piv_cols, npiv = _panel_factor(panel, p)
        if npiv:
            sub = a[row0:, col0 + nb:]
            if sub.shape[1]:
                sub_perm = np.ascontiguousarray(sub[perm].astype(np.int64))
                u12 = sub_perm[:npiv]
                _tri_solve_u12(panel, piv_cols, u12, p)
                piv_mask = np.asarray(piv_cols) >= 0
                l21 = panel[npiv:, piv_mask].astype(np.float64)
                if l21.shape[0]:
                    upd = l21 @ u12.astype(np.float64)
                    tail = (sub_perm[npiv:] - upd.astype(np.int64)) % p
                    a[row0 + npiv:, col0 + nb:] = tail.astype(np.float64)
                a[row0:row0 + npiv, col0 + nb:] = u12.astype(np.float64)
        rank += npiv
        row0 += npiv
        col0 += nb
    return rank


# ---------------------------------------------------------------------------
# CRT + rational reconstruction.
# ---------------------------------------------------------------------------


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    """Combine residues r1 mod m1 and r2 mod m2 (coprime moduli)."""
    g, s, _ = gmpy2.gcdext(gmpy2.mpz(m1), gmpy2.mpz(m2))
    if g != 1:
        raise ValueError("moduli not coprime")
    m = m1 * m2
    x = (r1 + (r2 - r1) * s % m2 * m1) % m
    return int(x), int(m)


def rational_reconstruct(a: int, m: int) -> Optional[Fraction]:
    """Find n/d with n ≡ a·d (mod m), |n|, d ≤ sqrt(m/2), gcd(d, m) = 1."""
    a %= m
    if a == 0:
        return Fraction(0)
    bound = gmpy2.isqrt(gmpy2.mpz(m // 2))
    r0, r1 = gmpy2.mpz(m), gmpy2.mpz(a)
    t0, t1 = gmpy2.mpz(0), gmpy2.mpz(1)
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound:
        return None
    if gmpy2.gcd(t1, gmpy2.mpz(m)) != 1:
        return None
    n, d = int(r1), int(t1)
    if d < 0:
        n, d = -n, -d
    if math.gcd(abs(n), d) != 1:
        return None
    return Fraction(n, d)


def kernel_multimodular(
    mat_mod: Callable[[int], np.ndarray],
    ncols: int,
    verify: Callable[[list[Fraction]], bool],
    primes: Iterable[int] = _MODULAR_PRIMES,
    max_new_primes_without_progress: int = 30,
) -> tuple[int, list[list[Fraction]]]:
    """Exact kernel via Chinese remaindering over word-size primes.

    ``mat_mod(p)`` must return the matrix reduced mod p.  Per prime the kernel
    is normalized by free columns, so entries can be CRT-combined; entries are
    lifted by rational reconstruction and the candidate basis is accepted only
    once ``verify`` confirms every vector exactly.  Returns (rank, basis);
    the rank equals the max modular rank and is certified from both sides
    (nonzero modular minor below, exact kernel of complementary dimension
    above).
    """
    best_rank = -1
    best_pivots: Optional[list[int]] = None
    residues: Optional[list[list[int]]] = None
    modulus = 1
    used = 0
    for p in primes:
        used += 1
        try:
            pivots, basis = kernel_mod_p(mat_mod(p), p)
        except ZeroDivisionError:
            continue  # unlucky prime divides a denominator
        rank = len(pivots)
        if rank > best_rank:
            best_rank = rank
            best_pivots = pivots
            residues = [[int(x) for x in v] for v in basis]
            modulus = p
        elif rank == best_rank and pivots == best_pivots:
            for vres, vnew in zip(residues, basis):
                for j in range(ncols):
                    vres[j] = crt_pair(vres[j], modulus, int(vnew[j]), p)[0]
            modulus *= p
        else:
            continue  # unlucky prime (lower rank / different pivots)
        candidate = []
        ok = True
        for vres in residues:
            vec = []
            for x in vres:
                f = rational_reconstruct(x, modulus)
                if f is None:
                    ok = False
                    break
                vec.append(f)
            if not ok:
                break
            candidate.append(vec)
        if ok and all(verify(v) for v in candidate):
            return best_rank, [_normalize_first_nonzero(v) for v in candidate]
        if used > max_new_primes_without_progress and best_rank < 0:
            break
    raise ArithmeticError(
        "kernel reconstruction did not converge with available primes"
    )


# ---------------------------------------------------------------------------
# Public rank / kernel API.
# ---------------------------------------------------------------------------


def rank_exact(M: QMatrix) -> int:
    """Rank of ``M`` over the rationals, certified.

    Fraction-free elimination when the system is small; otherwise modular
    rank plus an exact kernel certificate of the complementary dimension.
    """
    if M.rows == 0 or M.cols == 0:
        return 0
    if M.cols <= _BAREISS_COL_LIMIT:
        _, pivots = _bareiss_echelon(M.integer_rows())
        return len(pivots)
    rank, _ = _kernel_certified(M)
    return rank


def kernel_basis(M: QMatrix) -> list[list[Fraction]]:
    """Basis of the right kernel; each vector's first nonzero entry is 1."""
    if M.cols == 0:
        return []
    if M.rows == 0:
        basis = []
        for c in range(M.cols):
            v = [Fraction(0)] * M.cols
            v[c] = Fraction(1)
            basis.append(v)
        return basis
    if M.cols <= _BAREISS_COL_LIMIT:
        echelon, pivots = _bareiss_echelon(M.integer_rows())
        basis = _kernel_from_echelon(echelon, pivots, M.cols)
        return [_normalize_first_nonzero(v) for v in basis]
    _, basis = _kernel_certified(M)
    return basis


def _kernel_certified(M: QMatrix) -> tuple[int, list[list[Fraction]]]:
    def verify(v: list[Fraction]) -> bool:
        return not any(M.mult_vector(v))

    return kernel_multimodular(M.mod_array, M.cols, verify)
