"""Exact integer matrices: minor gcds, invariant factors, Smith normal form.

All arithmetic uses Python ints. ``Δ_i`` is the gcd of all order-i minors,
normalized nonnegative, with ``Δ_0 = 1`` and ``Δ_i = 0`` whenever no i×i
submatrix exists.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from typing import NamedTuple, Sequence

from .errors import PreconditionViolated, TheoremViolation

MINOR_ENUMERATION_CAP = 10**6


@dataclass(frozen=True)
class IntMatrix:
    entries: tuple
    cols: int = None

    def __init__(self, entries=(), cols=None):
        rows = tuple(tuple(int(v) for v in row) for row in entries)
        if cols is None:
            if not rows:
                raise ValueError("an empty matrix needs an explicit column count")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("matrix rows must all have the same length")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "cols", int(cols))

    @property
    def rows(self):
        return len(self.entries)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def tolist(self):
        return [list(r) for r in self.entries]

    @property
    def T(self):
        return IntMatrix([[row[j] for row in self.entries] for j in range(self.cols)],
                         cols=self.rows)

    def __matmul__(self, other):
        other = as_intmatrix(other)
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.entries],
                         cols=other.cols)

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def diagonal(cls, values, rows, cols):
        return cls([[values[i] if i == j and i < len(values) else 0 for j in range(cols)]
                    for i in range(rows)], cols=cols)


def as_intmatrix(a, cols=None) -> IntMatrix:
    if isinstance(a, IntMatrix):
        return a
    if hasattr(a, "tolist"):
        a = a.tolist()
    return IntMatrix(a, cols=cols)


def bareiss_det(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    a = m.tolist() if hasattr(m, "tolist") else [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]) // prev
        prev = piv
    return sign * a[n - 1][n - 1]


def _minors_gcd_enumerated(a: IntMatrix, i: int) -> int:
    g = 0
    rows = a.entries
    for rs in combinations(range(a.rows), i):
        sub_rows = [rows[r] for r in rs]
        for cs in combinations(range(a.cols), i):
            g = math.gcd(g, bareiss_det([[row[c] for c in cs] for row in sub_rows]))
            if g == 1:
                return 1
    return g


def minors_gcd(a, i: int, method: str = "auto") -> int:
    """``Δ_i``: gcd of the absolute values of all i×i minors.

    ``method`` is ``"minors"`` (direct enumeration), ``"snf"`` (product of
    Smith diagonal entries) or ``"auto"`` (enumerate when the minor count is
    at most ``MINOR_ENUMERATION_CAP``).
    """
    a = as_intmatrix(a)
    if i < 0:
        raise ValueError("minor order must be nonnegative")
    if i == 0:
        return 1
    if i > a.rows or i > a.cols:
        return 0
    if method == "auto":
        count = math.comb(a.rows, i) * math.comb(a.cols, i)
        method = "minors" if count <= MINOR_ENUMERATION_CAP else "snf"
    if method == "minors":
        return _minors_gcd_enumerated(a, i)
    diag = smith_normal_form(a).diagonal
    return math.prod(diag[:i])


def invariant_factor(a, m: int, method: str = "auto") -> int:
    """``Δ_m / Δ_{m-1}`` with the convention ``0/0 = 0``."""
    if m < 1:
        raise ValueError("invariant factors are indexed from 1")
    prev = minors_gcd(a, m - 1, method)
    if prev == 0:
        return 0
    cur = minors_gcd(a, m, method)
    if cur % prev:
        raise TheoremViolation(f"Δ_{m - 1}={prev} does not divide Δ_{m}={cur}")
    return cur // prev


def lattice_quotient_period(a) -> int:
    """Exponent of ``Z^c / (row lattice)``; 0 when the quotient is infinite."""
    a = as_intmatrix(a)
    if a.cols == 0:
        return 1
    return invariant_factor(a, a.cols)


class SmithForm(NamedTuple):
    diagonal: tuple
    left: IntMatrix
    right: IntMatrix


def smith_normal_form(a) -> SmithForm:
    """Return ``(d, L, R)`` with ``L·A·R = diag(d)``, ``d_i | d_{i+1}``, L and R unimodular."""
    a = as_intmatrix(a)
    r, c = a.shape
    m = [list(row) for row in a.entries]
    left = [[int(i == j) for j in range(r)] for i in range(r)]
    right = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):      # row_dst += k * row_src
        m[dst] = [x + k * y for x, y in zip(m[dst], m[src])]
        left[dst] = [x + k * y for x, y in zip(left[dst], left[src])]

    def add_col(src, dst, k):      # col_dst += k * col_src
        for row in m:
            row[dst] += k * row[src]
        for row in right:
            row[dst] += k * row[src]

    for t in range(min(r, c)):
        while True:
            pivots = [(abs(m[i][j]), i, j) for i in range(t, r) for j in range(t, c) if m[i][j]]
            if not pivots:
                break
            _, pi, pj = min(pivots)
            swap_rows(t, pi)
            swap_cols(t, pj)
            piv = m[t][t]
            dirty = False
            for i in range(t + 1, r):
                if m[i][t]:
                    add_row(t, i, -(m[i][t] // piv))
                    dirty |= m[i][t] != 0
            for j in range(t + 1, c):
                if m[t][j]:
                    add_col(t, j, -(m[t][j] // piv))
                    dirty |= m[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c)
                        if m[i][j] % piv), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            left[t] = [-x for x in left[t]]
    diag = tuple(m[i][i] for i in range(min(r, c)))
    L, R = IntMatrix(left, cols=r), IntMatrix(right, cols=c)
    if abs(bareiss_det(L.entries)) != 1 or abs(bareiss_det(R.entries)) != 1:
        raise TheoremViolation("Smith transformation is not unimodular")
    return SmithForm(diag, L, R)


class FactCheck(NamedTuple):
    passed: bool
    factor: int
    gcd_bound: int
    lcm_bound: int | None
    witness: str | None


def row_divisible_fact_check(a, divisors: Sequence[int]) -> FactCheck:
    """Check the divisibility of the last invariant factor of a k×m matrix whose
    i-th row is a multiple of ``divisors[i]``: by gcd(l) always, by lcm(l) when
    k = m, and vanishing when k < m."""
    a = as_intmatrix(a)
    k, m = a.shape
    if len(divisors) != k:
        raise PreconditionViolated("need one divisor per row")
    for i, (row, l) in enumerate(zip(a.entries, divisors)):
        if any(x % l if l else x for x in row):
            raise PreconditionViolated(f"row {i} is not divisible by {l}")
    f = invariant_factor(a, m) if m else 1
    g = reduce(math.gcd, divisors, 0)
    lcm = reduce(math.lcm, divisors, 1) if k == m else None
    witness = None
    if not _divides(g, f):
        witness = f"factor {f} not divisible by gcd {g}"
    elif lcm is not None and not _divides(lcm, f):
        witness = f"factor {f} not divisible by lcm {lcm}"
    elif k < m and f != 0:
        witness = f"factor {f} should vanish for k < m"
    return FactCheck(witness is None, f, g, lcm, witness)


def _divides(d, n):
    return n == 0 if d == 0 else n % d == 0
