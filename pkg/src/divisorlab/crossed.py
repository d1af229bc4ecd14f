"""Crossed homomorphisms, semidirect products and abelianization.

Actions are right actions by automorphisms, ``(f, b) ↦ b^f``, stored as one
permutation of B's ids per element of F with ``perm[f][b] = b^f``.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import cached_property, reduce
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import InvalidAction, SearchSpaceTooLarge
from .groups import FiniteGroup, Subgroup, group_gcd, load_group, subgroup_generated
from .solver import DEFAULT_CAP, DivisibilityReport


@dataclass(frozen=True, eq=False)
class GroupAction:
    actor: FiniteGroup
    target: FiniteGroup
    perms: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.perms, dtype=np.int64)
        object.__setattr__(self, "perms", p)
        F, B = self.actor, self.target
        if p.shape != (F.order, B.order):
            raise InvalidAction("need one permutation of B per element of F")
        ids = np.arange(B.order)
        for f in F.elements:
            if sorted(p[f].tolist()) != list(range(B.order)):
                raise InvalidAction(f"image of {F.names[f]} is not a permutation")
            if not np.array_equal(p[f][B.table], B.table[p[f][:, None], p[f][None, :]]):
                raise InvalidAction(f"{F.names[f]} does not act by an automorphism")
        if not np.array_equal(p[0], ids):
            raise InvalidAction("the identity must act trivially")
        for f in F.elements:
            for g in F.elements:
                # right action: b^(fg) = (b^f)^g
                if not np.array_equal(p[F.mul(f, g)], p[g][p[f]]):
                    raise InvalidAction("not a right action")

    def act(self, b, f):
        return int(self.perms[f, b])

    @classmethod
    def trivial(cls, actor, target):
        return cls(actor, target, np.tile(np.arange(target.order), (actor.order, 1)))

    @cached_property
    def is_trivial(self):
        return bool(np.all(self.perms == np.arange(self.target.order)))


def semidirect_product(action: GroupAction):
    """``F ⋉ B`` with ``(f,b)(f',b') = (ff', b^{f'} b')``.

    Returns ``(group, projection, section)``: ``projection[g]`` is the F-part of
    element g and ``section(f, b)`` the id of ``(f, b)``.
    """
    F, B, p = action.actor, action.target, action.perms
    nf, nb = F.order, B.order
    f = np.repeat(np.arange(nf), nb)
    b = np.tile(np.arange(nb), nf)
    ff = F.table[f[:, None], f[None, :]]
    bb = B.table[p[f[None, :], b[:, None]], b[None, :]]
    table = ff * nb + bb
    names = [f"({x},{y})" for x in F.names for y in B.names]
    group = FiniteGroup(table, names, label=f"{F.label}⋉{B.label}", _validate=False)
    projection = f.copy()

    def section(fi, bi):
        return fi * nb + bi

    return group, projection, section


def generating_set(group: FiniteGroup) -> list[int]:
    """Greedy small generating set: repeatedly add the largest-order element outside."""
    gens, span = [], {0}
    by_order = sorted(group.elements, key=lambda a: (-group.element_order(a), a))
    for a in by_order:
        if a not in span:
            gens.append(a)
            span = subgroup_generated(group, gens).member_set
            if len(span) == group.order:
                break
    return gens


def extend_map(F: FiniteGroup, gens: Sequence[int], images: Sequence, step):
    """Propagate generator images along ``f -> f g``; ``step(value_f, g, image_g)``
    gives the value at ``f g``. Returns the full table or None on a clash."""
    values = {0: step.identity}
    frontier = [0]
    while frontier:
        nxt = []
        for f in frontier:
            for g, img in zip(gens, images):
                fg = F.mul(f, g)
                v = step(values[f], g, img)
                if fg in values:
                    if values[fg] != v:
                        return None
                else:
                    values[fg] = v
                    nxt.append(fg)
        frontier = nxt
    if len(values) != F.order:
        raise ValueError("generators do not generate the group")
    return [values[f] for f in F.elements]


class _CrossedStep:
    """α(f g) = α(f)^g α(g)."""

    identity = 0

    def __init__(self, action):
        self.a = action

    def __call__(self, alpha_f, g, alpha_g):
        return self.a.target.mul(self.a.act(alpha_f, g), alpha_g)


class _HomStep:
    identity = 0

    def __init__(self, group):
        self.g = group

    def __call__(self, phi_f, g, phi_g):
        return self.g.mul(phi_f, phi_g)


def _is_crossed(action, alpha):
    F, B = action.actor, action.target
    alpha = np.asarray(alpha)
    rhs = B.table[action.perms[np.arange(F.order)[None, :], alpha[:, None]], alpha[None, :]]
    return bool(np.array_equal(alpha[F.table], rhs))


def _is_hom(F, G, phi):
    phi = np.asarray(phi)
    return bool(np.array_equal(phi[F.table], G.table[phi[:, None], phi[None, :]]))


def crossed_homs(action: GroupAction, gens=None, cap: int = DEFAULT_CAP) -> list[tuple]:
    """All crossed homomorphisms as value tuples over F, found from generator images."""
    F, B = action.actor, action.target
    gens = list(gens) if gens is not None else generating_set(F)
    if B.order ** len(gens) > cap:
        raise SearchSpaceTooLarge("too many generator images")
    step = _CrossedStep(action)
    out = []
    for images in itertools.product(B.elements, repeat=len(gens)):
        alpha = extend_map(F, gens, images, step)
        if alpha is not None and _is_crossed(action, alpha):
            out.append(tuple(alpha))
    return out


def sections_via_semidirect(action: GroupAction, gens=None, cap: int = DEFAULT_CAP) -> list[tuple]:
    """Homomorphisms φ: F → F⋉B with π∘φ = id, as value tuples over F."""
    F, B = action.actor, action.target
    G, proj, section = semidirect_product(action)
    gens = list(gens) if gens is not None else generating_set(F)
    if B.order ** len(gens) > cap:
        raise SearchSpaceTooLarge("too many generator images")
    step = _HomStep(G)
    out = []
    for bs in itertools.product(B.elements, repeat=len(gens)):
        images = [section(g, b) for g, b in zip(gens, bs)]
        phi = extend_map(F, gens, images, step)
        if phi is None:
            continue
        if _is_hom(F, G, phi) and np.array_equal(proj[list(phi)], np.arange(F.order)):
            out.append(tuple(phi))
    return out


def count_crossed_homs(action: GroupAction, gens=None, cap: int = DEFAULT_CAP) -> int:
    """Count crossed homomorphisms by the definition and through the semidirect
    product; the two counts must agree."""
    direct = crossed_homs(action, gens, cap)
    via = sections_via_semidirect(action, gens, cap)
    nb = action.target.order
    if sorted(direct) != sorted(tuple(v % nb for v in phi) for phi in via):
        raise AssertionError("crossed homomorphisms disagree with semidirect sections")
    return len(direct)


def count_crossed_homs_brute(action: GroupAction) -> int:
    """Check every map F → B (tiny cases only)."""
    F, B = action.actor, action.target
    if B.order ** F.order > 10**6:
        raise SearchSpaceTooLarge("brute force over all maps is too large")
    return sum(1 for alpha in itertools.product(B.elements, repeat=F.order)
               if alpha[0] == 0 and _is_crossed(action, alpha))


def commutator_subgroup(group: FiniteGroup) -> Subgroup:
    comms = {group.commutator(x, y) for x in group.elements for y in group.elements}
    return subgroup_generated(group, comms)


def abelianization(group: FiniteGroup) -> tuple:
    """Invariant factors ``d_1 | d_2 | ...`` (all > 1) of ``G/[G,G]``."""
    d = commutator_subgroup(group)
    dset = d.member_set
    coset_of, reps = {}, []
    for a in group.elements:
        if a in coset_of:
            continue
        k = len(reps)
        reps.append(a)
        for x in dset:
            coset_of[group.mul(a, x)] = k
    q = len(reps)

    def mul(i, j):
        return coset_of[group.mul(reps[i], reps[j])]

    def order(i):
        k, x = 1, i
        while x != 0:
            x = mul(x, i)
            k += 1
        return k

    orders = [order(i) for i in range(q)]
    # p-primary parts from the counts of elements of p-power order
    factors = []
    for p in _primes(q):
        e = 0
        while q % p ** (e + 1) == 0:
            e += 1
        sizes = [sum(1 for o in orders if p ** i % o == 0) for i in range(e + 1)]
        logs = [round(math.log(s, p)) for s in sizes]
        # number of cyclic factors of order >= p^i is logs[i] - logs[i-1]
        at_least = [logs[i] - logs[i - 1] for i in range(1, e + 1)]
        parts = []
        for i in range(1, e + 1):
            more = at_least[i] if i < e else 0
            parts += [p ** i] * (at_least[i - 1] - more)
        factors.append(sorted(parts, reverse=True))
    width = max((len(f) for f in factors), default=0)
    out = []
    for pos in range(width):
        out.append(math.prod(f[pos] for f in factors if pos < len(f)))
    return tuple(sorted(out))


def _primes(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def abelian_exponent(group: FiniteGroup) -> int:
    f = abelianization(group)
    return f[-1] if f else 1


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def theorem4_verdict(action: GroupAction, cap: int = DEFAULT_CAP,
                     oracle: bool = False) -> list[DivisibilityReport]:
    """One report per n dividing exp(F/F'), bound GCD(B, n), plus the corollary
    bound gcd(exp(F/F'), |B|) as the last report."""
    count = count_crossed_homs(action, cap=cap)
    e = abelian_exponent(action.actor)
    reports = []
    for n in _divisors(e):
        reports.append(DivisibilityReport(count, group_gcd(action.target, n, oracle=oracle),
                                          {"n": n, "kind": "epimorphism"}))
    reports.append(DivisibilityReport(count, math.gcd(e, action.target.order),
                                      {"exp_abelianization": e, "kind": "corollary"}))
    return reports


# ---------------------------------------------------------------------------
# automorphisms and action corpus

def homomorphisms(F: FiniteGroup, G: FiniteGroup, gens=None) -> list[tuple]:
    """Every homomorphism F → G as a value tuple over F.

    Generator images are limited to elements whose order divides the
    generator's order, which is necessary and prunes most candidates.
    """
    gens = list(gens) if gens is not None else generating_set(F)
    choices = [[x for x in G.elements if F.element_order(g) % G.element_order(x) == 0]
               for g in gens]
    step = _HomStep(G)
    out = []
    for images in itertools.product(*choices):
        phi = extend_map(F, gens, images, step)
        if phi is not None and _is_hom(F, G, phi):
            out.append(tuple(phi))
    return out


def automorphisms(group: FiniteGroup) -> list[tuple]:
    """Every automorphism as an image tuple."""
    return sorted(phi for phi in homomorphisms(group, group) if len(set(phi)) == group.order)


def all_actions(actor: FiniteGroup, target: FiniteGroup) -> list[GroupAction]:
    """Every right action of ``actor`` on ``target`` by automorphisms."""
    auts = automorphisms(target)
    index = {a: i for i, a in enumerate(auts)}
    # compose as "apply left first" so that right actions are homomorphisms
    table = [[index[tuple(b[x] for x in a)] for b in auts] for a in auts]
    aut_group = FiniteGroup(table, [str(i) for i in range(len(auts))], _validate=False)
    return [GroupAction(actor, target, np.array([auts[i] for i in phi]))
            for phi in homomorphisms(actor, aut_group)]


def load_action(source) -> GroupAction:
    """``{"actor": <group>, "target": <group>, "perms": {"<actor name>": [ids]}}``;
    actor elements left out act trivially only if they are the identity."""
    if not isinstance(source, dict):
        with open(Path(source)) as fh:
            source = json.load(fh)
    F, B = load_group(source["actor"]), load_group(source["target"])
    perms = np.tile(np.arange(B.order), (F.order, 1))
    given = source.get("perms", {})
    for name, img in given.items():
        perms[F.index_of(name)] = img
    missing = [F.names[f] for f in F.elements if f and F.names[f] not in given]
    if missing and given:
        # fill the rest from the generators supplied
        gens = [F.index_of(n) for n in given]
        step = _PermStep(B.order)
        full = extend_map(F, gens, [tuple(perms[g]) for g in gens], step)
        if full is None:
            raise InvalidAction("supplied permutations do not define an action")
        perms = np.array(full)
    return GroupAction(F, B, perms)


class _PermStep:
    def __init__(self, n):
        self.identity = tuple(range(n))

    def __call__(self, p_f, g, p_g):
        return tuple(p_g[x] for x in p_f)
