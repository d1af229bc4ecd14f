"""Brute-force solution counting and the divisibility verdicts for group equations."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .errors import SearchSpaceTooLarge, TheoremViolation
from .groups import FiniteGroup, Subgroup, centralizer, group_gcd, normalizer_of_subset
from .intlinalg import invariant_factor, minors_gcd
from .words import (
    GeneralizedSystem,
    Word,
    coefficient_set,
    evaluate_many,
    exponent_sum,
    system_matrix,
)

DEFAULT_CAP = 10**8
CHUNK = 1 << 16


@dataclass
class DivisibilityReport:
    solution_count: int
    bound: int
    breakdown: dict = field(default_factory=dict)

    @property
    def divides(self) -> bool:
        return divides(self.bound, self.solution_count)

    def to_json(self):
        return {"solution_count": self.solution_count, "bound": self.bound,
                "divides": self.divides, "breakdown": self.breakdown}


def divides(d: int, n: int) -> bool:
    """Divisibility with zero divisible by everything and 0 dividing only 0."""
    if d == 0:
        return n == 0
    return n % d == 0


def _tuple_columns(order, m, start, stop):
    idx = np.arange(start, stop, dtype=np.int64)
    cols = []
    for j in range(m):
        # row-major: x_1 is the most significant digit
        cols.append((idx // order ** (m - 1 - j)) % order)
    return cols


def _count_range(system, masks, start, stop):
    g = system.group
    total = 0
    for lo in range(start, stop, CHUNK):
        hi = min(stop, lo + CHUNK)
        cols = _tuple_columns(g.order, system.arity, lo, hi)
        ok = np.ones(hi - lo, dtype=bool)
        for eq, mask in zip(system.equations, masks):
            ok &= mask[evaluate_many(eq.word, cols, g)]
            if not ok.any():
                break
        total += int(ok.sum())
    return total


def partition(n: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, n)) if n else 1
    step, extra = divmod(n, parts)
    out, lo = [], 0
    for k in range(parts):
        hi = lo + step + (k < extra)
        out.append((lo, hi))
        lo = hi
    return out


def count_solutions(system: GeneralizedSystem, cap: int = DEFAULT_CAP, workers: int = 1,
                    parts: int | None = None) -> int:
    """Number of tuples in ``G^m`` satisfying every ``u_i ∈ H_i g_i H_i``.

    The tuple space is split into ``parts`` index ranges (default: one per
    worker); the total does not depend on the split.
    """
    space = system.group.order ** system.arity
    if space > cap:
        raise SearchSpaceTooLarge(f"|G|^m = {space} exceeds cap {cap}")
    masks = [eq.coset.mask for eq in system.equations]
    ranges = partition(space, parts or workers)
    if workers <= 1:
        return sum(_count_range(system, masks, lo, hi) for lo, hi in ranges)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(lambda r: _count_range(system, masks, *r), ranges))


def solution_tuples(system: GeneralizedSystem, cap: int = DEFAULT_CAP) -> list[tuple]:
    """Every solution as a tuple of element ids, in row-major order."""
    g, m = system.group, system.arity
    space = g.order ** m
    if space > cap:
        raise SearchSpaceTooLarge(f"|G|^m = {space} exceeds cap {cap}")
    masks = [eq.coset.mask for eq in system.equations]
    out = []
    for lo in range(0, space, CHUNK):
        hi = min(space, lo + CHUNK)
        cols = _tuple_columns(g.order, m, lo, hi)
        ok = np.ones(hi - lo, dtype=bool)
        for eq, mask in zip(system.equations, masks):
            ok &= mask[evaluate_many(eq.word, cols, g)]
        hits = np.flatnonzero(ok)
        out += [tuple(int(c[i]) for c in cols) for i in hits]
    return out


def _matrix_info(matrix, m):
    d_m = minors_gcd(matrix, m)
    d_prev = minors_gcd(matrix, m - 1)
    n = invariant_factor(matrix, m)
    return {"matrix": matrix.tolist(), "delta_m": d_m, "delta_m_minus_1": d_prev,
            "invariant_factor": n}


def theorem1_verdict(system: GeneralizedSystem, cap: int = DEFAULT_CAP,
                     oracle: bool = False) -> DivisibilityReport:
    """Count is a multiple of GCD(C(coefficients), Δ_m/Δ_{m-1})."""
    if not system.all_plain:
        raise ValueError("theorem1_verdict needs plain equations w = 1")
    g = system.group
    c = centralizer(g, coefficient_set(system))
    info = _matrix_info(system_matrix(system), system.arity)
    bound = group_gcd(c, info["invariant_factor"], oracle=oracle)
    count = count_solutions(system, cap)
    info["centralizer_order"] = c.order
    return DivisibilityReport(count, bound, info)


def h_tilde(system: GeneralizedSystem) -> Subgroup:
    """Intersection of N(H_j g_j H_j) over the subsystem, H_i outside it, and
    the centralizer of the coefficients."""
    g = system.group
    members = set(range(g.order))
    for i, eq in enumerate(system.equations):
        if i in system.subsystem:
            members &= normalizer_of_subset(g, eq.coset.members).member_set
        else:
            members &= eq.subgroup.member_set
    members &= centralizer(g, coefficient_set(system)).member_set
    return Subgroup(g, members)


def theorem2_verdict(system: GeneralizedSystem, cap: int = DEFAULT_CAP,
                     oracle: bool = False) -> DivisibilityReport:
    ht = h_tilde(system)
    info = _matrix_info(system_matrix(system, system.subsystem), system.arity)
    bound = group_gcd(ht, info["invariant_factor"], oracle=oracle)
    count = count_solutions(system, cap)
    info["h_tilde_order"] = ht.order
    info["centralizer_order"] = centralizer(system.group, coefficient_set(system)).order
    info["subsystem"] = sorted(system.subsystem)
    return DivisibilityReport(count, bound, info)


def frobenius1903_verdict(group: FiniteGroup, n: int, g: int = 0) -> DivisibilityReport:
    """Solutions of ``x^n = g`` are divisible by gcd(n, |C(g)|)."""
    word = Word.var(1, 1).power(n) * Word.const(group.inv(g), 1)
    system = GeneralizedSystem.of_words(group, 1, [word])
    count = count_solutions(system)
    c = centralizer(group, [g])
    bound = math.gcd(n, c.order)
    return DivisibilityReport(count, bound, {"n": n, "centralizer_order": c.order})


def hall_verdict(system: GeneralizedSystem, oracle: bool = False) -> DivisibilityReport:
    """One unknown: count divisible by gcd(|C|, n_1, n_2, ...)."""
    if system.arity != 1:
        raise ValueError("Hall's setting has exactly one unknown")
    c = centralizer(system.group, coefficient_set(system))
    sums = [exponent_sum(eq.word.with_arity(1), 1) for eq in system.equations]
    bound = reduce(math.gcd, sums, c.order)
    t1 = theorem1_verdict(system, oracle=oracle)
    if t1.bound != bound:
        raise TheoremViolation(f"Hall bound {bound} disagrees with the general bound {t1.bound}")
    return DivisibilityReport(t1.solution_count, bound,
                              {"exponent_sums": sums, "centralizer_order": c.order})


def strengthened_bound(system: GeneralizedSystem, oracle: bool = False) -> int:
    """GCD(H̃, Δ_m) with the numerator in place of the ratio (open question)."""
    ht = h_tilde(system)
    d = minors_gcd(system_matrix(system, system.subsystem), system.arity)
    return group_gcd(ht, d, oracle=oracle)
