"""Finite groups given by Cayley tables, and the subgroup-level primitives.

Element ids are integers ``0..order-1`` and id 0 is always the identity.
Conjugation follows the exponent convention ``x^y = y^-1 x y``.
"""
from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass
from functools import cached_property, reduce
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import BadNames, NotAGroup, NotNormal, SizeCapExceeded, TheoremViolation

CATALOG_CAP = 720
SUBGROUP_ENUMERATION_CAP = 48


class FiniteGroup:
    """Immutable finite group backed by a full multiplication table."""

    def __init__(self, table, names, label=None, _validate=True):
        table = np.asarray(table, dtype=np.int64)
        if _validate:
            table, names = _validated(table, names)
        self.table = table
        self.table.setflags(write=False)
        self.order = int(table.shape[0])
        self.names = tuple(names)
        self.label = label or f"group of order {self.order}"
        self._rows = tuple(tuple(int(v) for v in row) for row in table)
        inv = np.empty(self.order, dtype=np.int64)
        for a in range(self.order):
            inv[a] = self._rows[a].index(0)
        inv.setflags(write=False)
        self.inverse = inv
        self._inv = tuple(int(v) for v in inv)
        self._index = {name: i for i, name in enumerate(self.names)}

    def __repr__(self):
        return f"FiniteGroup({self.label!r}, order={self.order})"

    def __len__(self):
        return self.order

    @property
    def elements(self):
        return range(self.order)

    def mul(self, a, b):
        return self._rows[a][b]

    def inv(self, a):
        return self._inv[a]

    def prod(self, items: Iterable[int]) -> int:
        rows = self._rows
        acc = 0
        for x in items:
            acc = rows[acc][x]
        return acc

    def pow(self, a, k):
        if k < 0:
            a, k = self._inv[a], -k
        result, base = 0, a
        while k:
            if k & 1:
                result = self._rows[result][base]
            base = self._rows[base][base]
            k >>= 1
        return result

    def conj(self, x, y):
        """``x^y = y^-1 x y``."""
        return self._rows[self._inv[y]][self._rows[x][y]]

    def commutator(self, x, y):
        return self.prod((self._inv[x], self._inv[y], x, y))

    def element_order(self, a):
        k, x = 1, a
        while x != 0:
            x = self._rows[x][a]
            k += 1
        return k

    @cached_property
    def power_table(self):
        """``power_table[k, x] = x^k`` for ``0 <= k < exponent``."""
        e = self.exponent
        out = np.zeros((e, self.order), dtype=np.int64)
        cur = np.zeros(self.order, dtype=np.int64)
        ids = np.arange(self.order)
        for k in range(e):
            out[k] = cur
            cur = self.table[cur, ids]
        return out

    def power_map(self, n):
        """Vector of ``x^n`` over all elements (any integer n)."""
        return self.power_table[n % self.exponent]

    @cached_property
    def exponent(self):
        return reduce(math.lcm, (self.element_order(a) for a in self.elements), 1)

    @cached_property
    def is_abelian(self):
        return bool(np.array_equal(self.table, self.table.T))

    def index_of(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"{self.label} has no element named {name!r}") from None

    def to_json(self):
        return {"order": self.order, "names": list(self.names), "table": self.table.tolist()}


def _validated(table, names):
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise NotAGroup("closure", "table must be a nonempty square matrix")
    n = table.shape[0]
    names = [str(x) for x in names]
    if len(names) != n:
        raise BadNames(f"{len(names)} names for a table of order {n}")
    if len(set(names)) != n:
        raise BadNames("element names must be unique")
    if table.min() < 0 or table.max() >= n:
        raise NotAGroup("closure", "table entries out of range")
    ids = np.arange(n)
    identities = [e for e in range(n)
                  if np.array_equal(table[e], ids) and np.array_equal(table[:, e], ids)]
    if not identities:
        raise NotAGroup("identity")
    e = identities[0]
    if e != 0:
        # relabel so that the identity gets id 0
        perm = np.array([e] + [i for i in range(n) if i != e])
        where = np.empty(n, dtype=np.int64)
        where[perm] = ids
        table = where[table[np.ix_(perm, perm)]]
        names = [names[i] for i in perm]
    for a in range(n):
        right = np.flatnonzero(table[a] == 0)
        if not any(table[b, a] == 0 for b in right):
            raise NotAGroup("inverse", f"element {names[a]!r} has no inverse")
    for a in range(n):
        lhs = table[table[a]]          # (a b) c over all b, c
        rhs = table[a][table]          # a (b c)
        if not np.array_equal(lhs, rhs):
            raise NotAGroup("associativity", f"fails with left factor {names[a]!r}")
    return table, names


def build_group(table, names, label=None) -> FiniteGroup:
    """Validate a Cayley table and return the group it defines."""
    return FiniteGroup(table, names, label=label)


def load_group(source) -> FiniteGroup:
    """Read a group from a JSON file path, a JSON dict, or a catalog spec string."""
    if isinstance(source, dict):
        if "catalog" in source:
            return catalog(source["catalog"])
        if set(source) >= {"table", "names"}:
            if "order" in source and source["order"] != len(source["table"]):
                raise NotAGroup("closure", "declared order does not match table")
            return build_group(source["table"], source["names"], source.get("label"))
        raise ValueError("group document needs 'order', 'names' and 'table'")
    if isinstance(source, FiniteGroup):
        return source
    path = Path(str(source))
    if path.suffix == ".json" or path.exists():
        with open(path) as fh:
            return load_group(json.load(fh))
    return catalog(str(source))


# ---------------------------------------------------------------------------
# catalog

def _from_elements(elements, mul, names, label):
    index = {x: i for i, x in enumerate(elements)}
    table = [[index[mul(a, b)] for b in elements] for a in elements]
    return FiniteGroup(table, names, label=label, _validate=False)


def cyclic_group(n: int) -> FiniteGroup:
    _check_cap(n)
    names = ["1", "g"] + [f"g^{i}" for i in range(2, n)]
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteGroup(table, names[:n], label=f"Z{n}", _validate=False)


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; element ``r^i s^j`` has id ``i + n j``."""
    _check_cap(2 * n)
    elements = [(i, j) for j in range(2) for i in range(n)]

    def mul(a, b):
        return ((a[0] + (-1) ** a[1] * b[0]) % n, (a[1] + b[1]) % 2)

    def name(i, j):
        r = "" if i == 0 else ("r" if i == 1 else f"r^{i}")
        s = "s" if j else ""
        return " ".join(p for p in (r, s) if p) or "1"

    return _from_elements(elements, mul, [name(*e) for e in elements], f"D{n}")


def perm_name(p) -> str:
    seen, cycles = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = p[x]
        cycles.append("(" + "".join(cyc) + ")")
    return "".join(cycles) or "()"


def _perm_mul(p, q):
    # apply p first, then q
    return tuple(q[i] for i in p)


def _parity(p):
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j]) % 2


def symmetric_group(n: int) -> FiniteGroup:
    if n > 6:
        raise SizeCapExceeded(f"symmetric groups are capped at degree 6, got {n}")
    elements = list(itertools.permutations(range(n)))
    return _from_elements(elements, _perm_mul, [perm_name(p) for p in elements], f"S{n}")


def alternating_group(n: int) -> FiniteGroup:
    if n > 6:
        raise SizeCapExceeded(f"alternating groups are capped at degree 6, got {n}")
    elements = [p for p in itertools.permutations(range(n)) if _parity(p) == 0]
    return _from_elements(elements, _perm_mul, [perm_name(p) for p in elements], f"A{n}")


_QUAT_UNITS = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def quaternion_group() -> FiniteGroup:
    elements = [(s, u) for u in "1ijk" for s in (1, -1)]

    def mul(a, b):
        s, u = _QUAT_UNITS[a[1], b[1]]
        return (a[0] * b[0] * s, u)

    names = [("" if s == 1 else "-") + u for s, u in elements]
    return _from_elements(elements, mul, names, "Q8")


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    _check_cap(a.order * b.order)
    na, nb = a.order, b.order
    ia = np.repeat(np.arange(na), nb)
    ib = np.tile(np.arange(nb), na)
    table = a.table[ia[:, None], ia[None, :]] * nb + b.table[ib[:, None], ib[None, :]]
    names = [f"({x},{y})" for x in a.names for y in b.names]
    return FiniteGroup(table, names, label=f"{a.label}x{b.label}", _validate=False)


def _check_cap(order):
    if order > CATALOG_CAP:
        raise SizeCapExceeded(f"order {order} exceeds the catalog cap {CATALOG_CAP}")


_SPEC = re.compile(r"^(?:(Z|C|cyclic)|(D|dihedral)|(S|symmetric)|(A|alternating))\s*:?\s*(\d+)$")


def catalog(spec: str) -> FiniteGroup:
    """Build a group from a short spec.

    Accepted forms: ``Z6``/``C6``/``cyclic 6``, ``D4``/``dihedral 4`` (order 8),
    ``S3``/``symmetric 3``, ``A4``/``alternating 4``, ``Q8``/``quaternion8``,
    and products ``Z2xS3`` or ``direct_product(Z2,S3)``.
    """
    text = spec.strip()
    m = re.fullmatch(r"direct_product\((.*)\)", text)
    if m:
        depth, parts, cur = 0, [], ""
        for ch in m.group(1):
            if ch == "," and depth == 0:
                parts.append(cur)
                cur = ""
                continue
            depth += (ch == "(") - (ch == ")")
            cur += ch
        parts.append(cur)
        if len(parts) != 2:
            raise ValueError(f"direct_product needs two factors: {spec!r}")
        return direct_product(catalog(parts[0]), catalog(parts[1]))
    if "x" in text:
        factors = [catalog(p) for p in text.split("x")]
        return reduce(direct_product, factors)
    if text in ("Q8", "quaternion8", "quaternion 8"):
        return quaternion_group()
    m = _SPEC.match(text)
    if not m:
        raise ValueError(f"unknown catalog spec {spec!r}")
    n = int(m.group(5))
    if n < 1:
        raise ValueError("catalog size parameter must be positive")
    if m.group(1):
        return cyclic_group(n)
    if m.group(2):
        return dihedral_group(n)
    if m.group(3):
        return symmetric_group(n)
    return alternating_group(n)


_CORPUS_SPECS = [
    "S3", "S4", "A4", "Q8",
    "Z2xZ2", "Z2xZ4", "Z2xZ6", "Z3xZ3", "Z2xZ2xZ2", "Z2xS3", "Z2xD4", "Z2xQ8",
    "Z2xA4", "Z3xS3", "Z4xS3", "Z4xZ4", "Z2xZ8", "Z3xQ8", "Z3xD4", "Z2xZ12", "Z2xZ2xS3",
]


def catalog_corpus(max_order: int) -> list[FiniteGroup]:
    """Deterministic test corpus: every catalog group of order at most ``max_order``."""
    out = [cyclic_group(n) for n in range(1, max_order + 1)]
    out += [dihedral_group(n) for n in range(3, max_order // 2 + 1)]
    for spec in _CORPUS_SPECS:
        g = catalog(spec)
        if g.order <= max_order:
            out.append(g)
    return out


# ---------------------------------------------------------------------------
# subgroups

@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: tuple

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))

    @classmethod
    def checked(cls, parent, members):
        h = cls(parent, members)
        s = h.member_set
        if 0 not in s:
            raise ValueError("subgroup must contain the identity")
        for a in s:
            if parent.inv(a) not in s or any(parent.mul(a, b) not in s for b in s):
                raise ValueError("members are not closed under the group operation")
        if parent.order % h.order:
            raise TheoremViolation("Lagrange divisibility failed")
        return h

    @classmethod
    def whole(cls, group):
        return cls(group, range(group.order))

    @classmethod
    def trivial(cls, group):
        return cls(group, (0,))

    @property
    def order(self):
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x):
        return x in self.member_set

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and self.parent is other.parent
                and self.members == other.members)

    def __hash__(self):
        return hash((id(self.parent), self.members))

    def __repr__(self):
        return f"Subgroup(order={self.order} in {self.parent.label})"

    @cached_property
    def member_set(self):
        return frozenset(self.members)

    @cached_property
    def mask(self):
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.members)] = True
        return m

    @cached_property
    def is_normal(self):
        return normalizer_of_subset(self.parent, self.members).order == self.parent.order

    def intersect(self, other: Subgroup) -> Subgroup:
        return Subgroup(self.parent, self.member_set & other.member_set)

    def conjugate(self, a) -> Subgroup:
        """``H^a = a^-1 H a``."""
        return Subgroup(self.parent, (self.parent.conj(h, a) for h in self.members))

    def names(self):
        return [self.parent.names[i] for i in self.members]


def as_subgroup(g) -> Subgroup:
    return g if isinstance(g, Subgroup) else Subgroup.whole(g)


def _closure(group, gens, start=(0,)):
    rows = group._rows
    seen = set(start)
    seen.add(0)
    frontier = list(seen)
    gens = [g for g in set(gens) if g != 0]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = rows[a][g]
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def subgroup_generated(group: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = list(gens)
    return Subgroup(group, _closure(group, gens))


def centralizer(group: FiniteGroup, subset: Iterable[int]) -> Subgroup:
    s = np.array(sorted(set(subset)), dtype=np.int64)
    if s.size == 0:
        return Subgroup.whole(group)
    t = group.table
    ok = np.all(t[:, s] == t[s, :].T, axis=1)
    return Subgroup(group, np.flatnonzero(ok).tolist())


def normalizer_of_subset(group: FiniteGroup, subset: Iterable[int]) -> Subgroup:
    """``{g : g^-1 A g = A}`` for an arbitrary subset ``A``."""
    a = np.array(sorted(set(subset)), dtype=np.int64)
    if a.size == 0:
        return Subgroup.whole(group)
    t = group.table
    mask = np.zeros(group.order, dtype=bool)
    mask[a] = True
    conj = t[group.inverse[None, :], t[a, :]]   # conj[i, g] = g^-1 a_i g
    ok = np.all(mask[conj], axis=0)
    return Subgroup(group, np.flatnonzero(ok).tolist())


@dataclass(frozen=True, eq=False)
class DoubleCoset:
    subgroup: Subgroup
    representative: int
    members: frozenset

    @property
    def size(self):
        return len(self.members)

    @cached_property
    def mask(self):
        m = np.zeros(self.subgroup.parent.order, dtype=bool)
        m[list(self.members)] = True
        return m


def double_coset(h: Subgroup, g: int) -> DoubleCoset:
    group = h.parent
    hs = np.array(h.members, dtype=np.int64)
    left = group.table[hs, g]
    members = frozenset(group.table[left[:, None], hs[None, :]].ravel().tolist())
    inter = h.intersect(h.conjugate(g))
    if len(members) * inter.order != h.order ** 2:
        raise TheoremViolation("double coset size identity failed")
    return DoubleCoset(h, g, members)


def double_coset_representatives(h: Subgroup) -> list[int]:
    """Smallest id of every double coset ``HgH``, in increasing order."""
    covered, reps = set(), []
    for g in h.parent.elements:
        if g not in covered:
            reps.append(g)
            covered |= double_coset(h, g).members
    return reps


def all_subgroups(group, cap=SUBGROUP_ENUMERATION_CAP) -> list[Subgroup]:
    """Every subgroup exactly once, sorted by (order, members).

    Accepts a ``FiniteGroup`` or a ``Subgroup`` (then lists the subgroups of it).
    """
    ambient = as_subgroup(group)
    parent = ambient.parent
    if ambient.order > cap:
        raise SizeCapExceeded(f"subgroup enumeration is capped at order {cap}")
    cyclic = {}
    for g in ambient.members:
        cyclic.setdefault(frozenset(_closure(parent, [g])), g)
    found = {c: (g,) for c, g in cyclic.items()}
    frontier = list(found)
    while frontier:
        nxt = []
        for s in frontier:
            for c, g in cyclic.items():
                if c <= s:
                    continue
                gens = found[s] + (g,)
                j = frozenset(_closure(parent, gens))
                if j not in found:
                    found[j] = gens
                    nxt.append(j)
        frontier = nxt
    subs = sorted(found, key=lambda s: (len(s), sorted(s)))
    return [Subgroup(parent, s) for s in subs]


def group_gcd(g, n: int, oracle: bool = False) -> int:
    """GCD(G, n): lcm of the orders of subgroups whose order divides n.

    The fast path uses ``gcd(|G|, n)``, valid for finite groups (p-groups have
    subgroups of every order dividing theirs); ``oracle=True`` enumerates
    subgroups instead.
    """
    h = as_subgroup(g)
    if n < 0:
        n = -n
    if not oracle:
        return h.order if n == 0 else math.gcd(h.order, n)
    orders = {s.order for s in all_subgroups(h)}
    return reduce(math.lcm, (d for d in orders if n % d == 0), 1)


def brauer_check(V: FiniteGroup, U: Subgroup, v: int, u: int) -> int:
    """Return ``w`` in U with ``w^-1 v^|U| w = (vu)^|U|``.

    Raises ``NotNormal`` when U is not normal in V; a missing witness raises
    ``TheoremViolation``.
    """
    if U.parent is not V:
        raise ValueError("U must be a subgroup of V")
    if u not in U:
        raise ValueError("u must lie in U")
    if not U.is_normal:
        raise NotNormal("U is not normal in V")
    n = U.order
    x = V.pow(v, n)
    y = V.pow(V.mul(v, u), n)
    for w in U.members:
        if V.conj(x, w) == y:
            return w
    raise TheoremViolation(f"no Brauer witness for v={V.names[v]}, u={V.names[u]}")
