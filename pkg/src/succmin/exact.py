"""Exact rational scalars, dense matrices, Hermite normal form and a small
simplex solver.

Scalars are :class:`fractions.Fraction`; vectors are tuples, matrices are
tuples of row tuples.  Nothing in here touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Rat = Fraction
RatVec = tuple  # tuple[Fraction, ...]
IntVec = tuple  # tuple[int, ...]
Matrix = tuple  # tuple[tuple[Fraction | int, ...], ...]


class NoSolution(ValueError):
    """Raised by :func:`solve` for an inconsistent linear system."""


def rat(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, an int or a Fraction into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational")
        # Fraction() also accepts "1.5" and "1e3"; only p/q is part of the format
        if any(c in text for c in ".eE"):
            raise ValueError(f"not a rational of the form p/q: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def fmt(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def vec(values: Iterable) -> tuple:
    return tuple(rat(v) for v in values)


def mat(rows: Iterable[Iterable]) -> tuple:
    out = tuple(vec(r) for r in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    return out


def identity(n: int) -> tuple:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def int_identity(n: int) -> tuple:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(zip(*m)) if m else ()


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Sequence[Sequence], x: Sequence) -> tuple:
    return tuple(sum(p * q for p, q in zip(row, x)) for row in a)


def dot(x: Sequence, y: Sequence):
    return sum(p * q for p, q in zip(x, y))


def add(x: Sequence, y: Sequence) -> tuple:
    return tuple(p + q for p, q in zip(x, y))


def sub(x: Sequence, y: Sequence) -> tuple:
    return tuple(p - q for p, q in zip(x, y))


def smul(c, x: Sequence) -> tuple:
    return tuple(c * p for p in x)


def lcm_denominators(values: Iterable) -> int:
    out = 1
    for v in values:
        d = Fraction(v).denominator
        out = out * d // math.gcd(out, d)
    return out


def _echelon(m: Sequence[Sequence]):
    """Row-reduce a copy of ``m`` over Q; returns (rows, pivot_columns, sign)."""
    rows = [[Fraction(v) for v in r] for r in m]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    sign = 1
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
            sign = -sign
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            f = rows[i][c]
            if f:
                f /= piv
                ri, rr = rows[i], rows[r]
                for j in range(c, ncols):
                    ri[j] -= f * rr[j]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots, sign


def rank(m: Sequence[Sequence]) -> int:
    if not m or not m[0]:
        return 0
    return len(_echelon(m)[1])


def pivot_columns(m: Sequence[Sequence]) -> list:
    if not m or not m[0]:
        return []
    return _echelon(m)[1]


def det(m: Sequence[Sequence]) -> Fraction:
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("det needs a square matrix")
    if n == 0:
        return Fraction(1)
    # Bareiss on the integer matrix obtained by clearing denominators
    scale = lcm_denominators(v for r in m for v in r)
    a = [[int(Fraction(v) * scale) for v in r] for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return Fraction(0)
            a[k], a[p] = a[p], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ai, ak = a[i], a[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * akk - aik * ak[j]) // prev
        prev = akk
    return Fraction(sign * a[n - 1][n - 1], scale ** n)


def solve(m: Sequence[Sequence], b: Sequence) -> tuple:
    """Solve ``m x = b`` exactly for square, nonsingular or consistent ``m``.

    For singular but consistent systems the free variables are set to zero.
    """
    n = len(m)
    if any(len(r) != n for r in m) or len(b) != n:
        raise ValueError("solve needs a square system")
    aug = [list(r) + [b[i]] for i, r in enumerate(m)]
    rows, pivots, _ = _echelon(aug)
    if pivots and pivots[-1] == n:
        raise NoSolution("inconsistent system")
    x = [Fraction(0)] * n
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        s = rows[r][n] - sum(rows[r][j] * x[j] for j in range(c + 1, n))
        x[c] = s / rows[r][c]
    return tuple(x)


def inverse(m: Sequence[Sequence]) -> tuple:
    n = len(m)
    aug = [[Fraction(v) for v in r] + [Fraction(int(i == j)) for j in range(n)]
           for i, r in enumerate(m)]
    for c in range(n):
        p = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if p is None:
            raise NoSolution("singular matrix")
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [v / piv for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [vi - f * vc for vi, vc in zip(aug[i], aug[c])]
    return tuple(tuple(r[n:]) for r in aug)


def to_int_matrix(m: Sequence[Sequence]) -> tuple:
    out = []
    for r in m:
        row = []
        for v in r:
            v = Fraction(v)
            if v.denominator != 1:
                raise ValueError(f"non-integer entry {fmt(v)}")
            row.append(v.numerator)
        out.append(tuple(row))
    return tuple(out)


# --------------------------------------------------------------------------
# Hermite normal form
# --------------------------------------------------------------------------

def xgcd(a: int, b: int):
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def hnf(m: Sequence[Sequence[int]]):
    """Column-style Hermite normal form.

    Returns ``(H, U)`` with ``M U = H``, ``U`` unimodular and ``H`` in lower
    echelon form: each nonzero column has a positive pivot strictly below the
    previous column's pivot, zero columns come last, and the entries of a
    pivot row to the left of its pivot lie in ``[0, pivot)``.
    """
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    # work on columns for cheap column operations
    cols = [[int(m[i][j]) for i in range(nrows)] for j in range(ncols)]
    ucols = [[int(i == j) for i in range(ncols)] for j in range(ncols)]

    def combine(j, k, a, b, c, d):
        # (col_j, col_k) <- (a col_j + b col_k, c col_j + d col_k)
        for store in (cols, ucols):
            cj, ck = store[j], store[k]
            store[j] = [a * x + b * y for x, y in zip(cj, ck)]
            store[k] = [c * x + d * y for x, y in zip(cj, ck)]

    pivot_rows = []
    k = 0
    for i in range(nrows):
        if k == ncols:
            break
        for j in range(k + 1, ncols):
            b = cols[j][i]
            if b == 0:
                continue
            a = cols[k][i]
            g, s, t = xgcd(a, b)
            combine(k, j, s, t, -b // g, a // g)
        piv = cols[k][i]
        if piv == 0:
            continue
        if piv < 0:
            cols[k] = [-x for x in cols[k]]
            ucols[k] = [-x for x in ucols[k]]
            piv = -piv
        for j in range(k):
            q = cols[j][i] // piv
            if q:
                cols[j] = [x - q * y for x, y in zip(cols[j], cols[k])]
                ucols[j] = [x - q * y for x, y in zip(ucols[j], ucols[k])]
        pivot_rows.append(i)
        k += 1
    h = tuple(tuple(cols[j][i] for j in range(ncols)) for i in range(nrows))
    u = tuple(tuple(ucols[j][i] for j in range(ncols)) for i in range(ncols))
    return h, u


def hnf_pivots(h: Sequence[Sequence[int]]) -> list:
    """(row, column) positions of the pivots of a column HNF."""
    out = []
    ncols = len(h[0]) if h else 0
    row = 0
    for j in range(ncols):
        while row < len(h) and h[row][j] == 0:
            row += 1
        if row == len(h):
            break
        out.append((row, j))
        row += 1
    return out


def is_unimodular(u: Sequence[Sequence[int]]) -> bool:
    return abs(det(u)) == 1


# --------------------------------------------------------------------------
# Linear programming
# --------------------------------------------------------------------------

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    optimum: Optional[Fraction] = None
    solution: Optional[tuple] = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


def _pivot(t, basis, row, col):
    piv = t[row][col]
    prow = t[row]
    if piv != 1:
        prow = [v / piv for v in prow]
        t[row] = prow
    nz = [(j, v) for j, v in enumerate(prow) if v]
    for i, r in enumerate(t):
        if i == row:
            continue
        f = r[col]
        if f:
            for j, v in nz:
                r[j] -= f * v
    basis[row] = col


def _simplex(t, basis, ncols):
    """Bland's-rule simplex on tableau ``t`` whose last row is the reduced cost
    row (objective value in the last column, stored negated)."""
    m = len(t) - 1
    obj = t[m]
    while True:
        col = next((j for j in range(ncols) if obj[j] < 0), None)
        if col is None:
            return OPTIMAL
        best = None
        for i in range(m):
            a = t[i][col]
            if a > 0:
                ratio = t[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return UNBOUNDED
        _pivot(t, basis, best[1], col)
        obj = t[m]


def lp_min(cost: Sequence, a_eq: Sequence[Sequence], b_eq: Sequence) -> LPResult:
    """Minimize ``cost . x`` subject to ``a_eq x = b_eq`` and ``x >= 0``.

    Two-phase tableau simplex with Bland's rule, so the pivot sequence (and
    the returned vertex) is a deterministic function of the input.
    """
    n = len(cost)
    m = len(a_eq)
    if any(len(r) != n for r in a_eq) or len(b_eq) != m:
        raise ValueError("inconsistent LP dimensions")
    rows = []
    for r, b in zip(a_eq, b_eq):
        r = [Fraction(v) for v in r]
        b = Fraction(b)
        if b < 0:
            r = [-v for v in r]
            b = -b
        rows.append((r, b))

    # phase 1: artificials n..n+m-1
    width = n + m
    t = []
    for i, (r, b) in enumerate(rows):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        t.append(r + art + [b])
    obj = [Fraction(0)] * (width + 1)
    for r in t:
        for j in range(n):
            obj[j] -= r[j]
        obj[width] -= r[width]
    t.append(obj)
    basis = list(range(n, n + m))
    _simplex(t, basis, width)
    if t[m][width] != 0:
        return LPResult(INFEASIBLE)

    # drive artificials out of the basis; drop redundant rows
    keep = []
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if t[i][j] != 0), None)
            if col is None:
                continue
            _pivot(t, basis, i, col)
        keep.append(i)
    t2 = [t[i][:n] + [t[i][width]] for i in keep]
    basis2 = [basis[i] for i in keep]
    obj = [Fraction(c) for c in cost] + [Fraction(0)]
    for i, bcol in enumerate(basis2):
        c = obj[bcol]
        if c:
            obj = [o - c * v for o, v in zip(obj, t2[i])]
    t2.append(obj)
    status = _simplex(t2, basis2, n)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for i, bcol in enumerate(basis2):
        x[bcol] = t2[i][n]
    optimum = sum(Fraction(c) * v for c, v in zip(cost, x))
    return LPResult(OPTIMAL, optimum, tuple(x))


def lp_max(cost: Sequence, a_eq: Sequence[Sequence], b_eq: Sequence) -> LPResult:
    res = lp_min([-Fraction(c) for c in cost], a_eq, b_eq)
    if res.status != OPTIMAL:
        return res
    return LPResult(OPTIMAL, -res.optimum, res.solution)


def floor(x) -> int:
    return math.floor(Fraction(x))


def ceil(x) -> int:
    return math.ceil(Fraction(x))
