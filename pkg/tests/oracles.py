"""Slow reference implementations used only to cross-check the library.

Nothing here imports from divisorlab except for element access on groups,
so a bug in the fast code cannot hide behind the same bug in the oracle.
"""
import itertools
import math
from functools import reduce


def laplace_det(m):
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * laplace_det(minor)
    return total


def minors_gcd(a, i, cols=None):
    rows = len(a)
    cols = cols if cols is not None else (len(a[0]) if a else 0)
    if i == 0:
        return 1
    if i > rows or i > cols:
        return 0
    g = 0
    for rs in itertools.combinations(range(rows), i):
        for cs in itertools.combinations(range(cols), i):
            g = math.gcd(g, laplace_det([[a[r][c] for c in cs] for r in rs]))
    return g


def ratio(a, m, cols=None):
    prev = minors_gcd(a, m - 1, cols)
    return 0 if prev == 0 else minors_gcd(a, m, cols) // prev


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def perm_compose(p, q):
    """Apply p first, then q."""
    return tuple(q[i] for i in p)


def closure(mul, gens, identity):
    out = {identity}
    changed = True
    while changed:
        changed = False
        for a in list(out):
            for g in gens:
                c = mul(a, g)
                if c not in out:
                    out.add(c)
                    changed = True
    return out


def is_subgroup(g, subset):
    return all(g.mul(a, b) in subset for a in subset for b in subset)


def brute_subgroups(g):
    """Every subset that is closed under multiplication (finite ⇒ subgroup)."""
    others = list(range(1, g.order))
    found = set()
    for mask in range(1 << len(others)):
        subset = {0} | {others[i] for i in range(len(others)) if mask >> i & 1}
        if is_subgroup(g, subset):
            found.add(frozenset(subset))
    return found


def gcd_oracle(g, n):
    orders = {len(s) for s in brute_subgroups(g)}
    return reduce(math.lcm, [d for d in orders if n % d == 0], 1)


def count_solutions(g, words, m):
    """Evaluate each word (list of ('v', j, sign) / ('c', e) letters) on all tuples."""
    total = 0
    for t in itertools.product(range(g.order), repeat=m):
        ok = True
        for w in words:
            acc = 0
            for letter in w:
                if letter[0] == "v":
                    x = t[letter[1] - 1]
                    acc = g.mul(acc, x if letter[2] > 0 else g.inv(x))
                else:
                    acc = g.mul(acc, letter[1])
            if acc != 0:
                ok = False
                break
        total += ok
    return total
