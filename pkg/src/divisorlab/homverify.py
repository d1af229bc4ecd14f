"""Homomorphisms from finitely presented n-indexed groups, φ-cores, and the
closure conditions under which |Φ| is divisible by |H|.

A presentation is ``<x_1..x_k | r_1, r_2, ...>`` with relators as
coefficient-free words. An indexing assigns each generator a degree in Z/n;
relators must have degree 0 and the degrees must generate Z/n.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import cached_property, reduce
from pathlib import Path
from typing import NamedTuple, Sequence

from .errors import DegreeMismatch, PreconditionViolated, TheoremViolation
from .groups import FiniteGroup, Subgroup, centralizer
from .intlinalg import invariant_factor, smith_normal_form
from .solver import DEFAULT_CAP, solution_tuples
from .words import GeneralizedSystem, Variable, Word, evaluate, parse_word, system_matrix


@dataclass(frozen=True)
class FinitePresentation:
    generators: tuple
    relators: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(r.with_arity(self.k) for r in self.relators))
        for r in self.relators:
            if not r.is_coefficient_free():
                raise ValueError("relators must be coefficient-free")

    @property
    def k(self):
        return len(self.generators)

    @classmethod
    def parse(cls, generators: Sequence[str], relators: Sequence[str]):
        return cls(tuple(generators), tuple(parse_word(r, list(generators)) for r in relators))

    @classmethod
    def free(cls, k):
        from .words import default_variable_names
        return cls(tuple(default_variable_names(k)), ())

    def word(self, text: str) -> Word:
        return parse_word(text, list(self.generators))


def word_degree(word: Word, degrees: Sequence[int], n: int) -> int:
    return sum(x.sign * degrees[x.index - 1] for x in word.letters
               if isinstance(x, Variable)) % n


def is_indexing(p: FinitePresentation, degrees: Sequence[int], n: int) -> bool:
    if n < 1 or len(degrees) != p.k:
        return False
    if any(word_degree(r, degrees, n) for r in p.relators):
        return False
    return reduce(math.gcd, degrees, n) == 1


def indexings(p: FinitePresentation, n: int) -> list[tuple]:
    """Every degree assignment making ``p`` an n-indexed group."""
    return [d for d in itertools.product(range(n), repeat=p.k) if is_indexing(p, d, n)]


def enumerate_homs(p: FinitePresentation, group: FiniteGroup, cap: int = DEFAULT_CAP) -> list[tuple]:
    """All generator-image tuples that send every relator to the identity."""
    system = GeneralizedSystem.of_words(group, max(p.k, 1), p.relators)
    if p.k == 0:
        return [()]
    return solution_tuples(system, cap)


@dataclass(frozen=True, eq=False)
class IndexedHom:
    presentation: FinitePresentation
    group: FiniteGroup
    n: int
    degrees: tuple
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(d % self.n for d in self.degrees))
        object.__setattr__(self, "images", tuple(self.images))
        p = self.presentation
        if not is_indexing(p, self.degrees, self.n):
            raise DegreeMismatch("degrees do not define an epimorphism onto Z/n")
        if len(self.images) != p.k:
            raise PreconditionViolated("one image per generator required")
        for r in p.relators:
            if evaluate(r, self.images, self.group) != 0:
                raise PreconditionViolated("images do not satisfy the relators")

    def __call__(self, word: Word) -> int:
        return evaluate(word.with_arity(self.presentation.k), self.images, self.group)

    def degree(self, word: Word) -> int:
        return word_degree(word, self.degrees, self.n)

    @cached_property
    def _image_with_degrees(self):
        """The subgroup K of G × Z/n generated by (φ(x_i), deg x_i), as a set of pairs."""
        g, n = self.group, self.n
        gens = list(zip(self.images, self.degrees))
        seen = {(0, 0)}
        frontier = [(0, 0)]
        while frontier:
            nxt = []
            for a, d in frontier:
                for b, e in gens:
                    c = (g.mul(a, b), (d + e) % n)
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
            frontier = nxt
        return frozenset(seen)

    @cached_property
    def image(self) -> frozenset:
        return frozenset(a for a, _ in self._image_with_degrees)

    @cached_property
    def kernel_image(self) -> frozenset:
        """φ(ker deg)."""
        return frozenset(a for a, d in self._image_with_degrees if d == 0)


def phi_core(phi: IndexedHom, h: Subgroup) -> Subgroup:
    """``H_φ = ∩_{f} H^{φ(f)} ∩ C(φ(ker deg))``."""
    g = phi.group
    if h.parent is not g:
        raise ValueError("H must be a subgroup of the target group")
    members = set(h.member_set)
    for a in phi.image:
        members &= h.conjugate(a).member_set
    members &= centralizer(g, phi.kernel_image).member_set
    return Subgroup(g, members)


def degree_one_word(p: FinitePresentation, degrees: Sequence[int], n: int,
                    max_length: int | None = None) -> Word:
    """First word of degree 1 in shortlex order over x_1, x_1^-1, x_2, ...

    The empty word counts when n = 1.
    """
    letters = [Variable(i + 1, s) for i in range(p.k) for s in (1, -1)]
    limit = max_length if max_length is not None else n + 1
    for length in range(limit + 1):
        for combo in itertools.product(letters, repeat=length):
            w = Word(p.k, combo)
            if word_degree(w, degrees, n) == 1 % n:
                return w
    raise DegreeMismatch("no word of degree one found")


class Lemma0Context:
    """Precomputed data for twisting one homomorphism φ by elements g."""

    def __init__(self, phi: IndexedHom, f1: Word):
        if phi.degree(f1) != 1 % phi.n:
            raise DegreeMismatch("f1 must have degree one")
        self.phi = phi
        g, p, n = phi.group, phi.presentation, phi.n
        self.f1 = f1.with_arity(p.k)
        self.phi_f1 = phi(self.f1)
        self.phi_f1_n = g.pow(self.phi_f1, n)
        self.centralizer = centralizer(g, phi.kernel_image).member_set
        # Schreier generators of ker deg for the transversal {f1^d}
        self.schreier = []
        for d in range(n):
            for i in range(p.k):
                e = (d + phi.degrees[i]) % n
                w = self.f1.power(d) * Word.var(i + 1, p.k) * self.f1.power(-e)
                self.schreier.append((w, phi(w)))
        self.base = [g.prod((g.pow(self.phi_f1, -d), phi.images[i]))
                     for i, d in enumerate(phi.degrees)]

    def condition(self, x: int) -> bool:
        g = self.phi.group
        return x in self.centralizer and g.pow(g.mul(self.phi_f1, x), self.phi.n) == self.phi_f1_n

    def construct(self, x: int):
        """Images of the twisted homomorphism ψ, or None if it does not exist."""
        g, p = self.phi.group, self.phi.presentation
        psi_f1 = g.mul(self.phi_f1, x)
        images = tuple(g.mul(g.pow(psi_f1, d), b) for d, b in zip(self.phi.degrees, self.base))
        if any(evaluate(r, images, g) != 0 for r in p.relators):
            return None
        if evaluate(self.f1, images, g) != psi_f1:
            return None
        if any(evaluate(w, images, g) != v for w, v in self.schreier):
            return None
        return images

    def check(self, x: int):
        cond = self.condition(x)
        images = self.construct(x)
        if cond != (images is not None):
            raise TheoremViolation(
                f"Lemma 0 disagreement for g={self.phi.group.names[x]}: condition={cond}")
        return cond, images


def lemma0_check(phi: IndexedHom, f1: Word, g: int):
    """``(exists, ψ images or None)``; the condition test and the construction must agree."""
    return Lemma0Context(phi, f1).check(g)


class NotClosed(NamedTuple):
    """Witness that Φ is not closed under condition ``"I"`` or ``"II"``."""
    condition: str
    phi: tuple
    h: int


@dataclass
class ConditionsVerdict:
    size: int
    h_order: int
    closed_conjugation: bool
    closed_twist: bool
    lemma1_holds: bool
    witness: NotClosed | None = None
    divisible: bool | None = None
    twists_checked: int = 0

    @property
    def closed(self):
        return self.closed_conjugation and self.closed_twist

    def to_json(self):
        return {"size": self.size, "h_order": self.h_order,
                "closed_conjugation": self.closed_conjugation,
                "closed_twist": self.closed_twist, "lemma1_holds": self.lemma1_holds,
                "divisible": self.divisible, "twists_checked": self.twists_checked,
                "witness": None if self.witness is None else self.witness._asdict()}


def conditions_check(phis, h: Subgroup, p: FinitePresentation, degrees: Sequence[int], n: int,
                     f1: Word | None = None) -> ConditionsVerdict:
    """Check closure of Φ under conjugation by H (I) and under degree-one twists by
    the φ-core (II); if both hold, |H| must divide |Φ|. Lemma 1 is checked on the
    generators for every twist."""
    g = h.parent
    if n % h.order:
        raise PreconditionViolated("|H| must divide n")
    degrees = tuple(d % n for d in degrees)
    phis = {tuple(t) for t in phis}
    homs = [IndexedHom(p, g, n, degrees, t) for t in sorted(phis)]
    f1 = f1 if f1 is not None else degree_one_word(p, degrees, n)
    verdict = ConditionsVerdict(len(phis), h.order, True, True, True)
    for phi in homs:
        for x in h.members:
            conj = tuple(g.conj(a, x) for a in phi.images)
            if conj not in phis and verdict.closed_conjugation:
                verdict.closed_conjugation = False
                verdict.witness = verdict.witness or NotClosed("I", phi.images, x)
        core = phi_core(phi, h)
        ctx = Lemma0Context(phi, f1)
        for x in core.members:
            exists, psi = ctx.check(x)
            if not exists:
                raise TheoremViolation("twist by a core element is not a homomorphism")
            verdict.twists_checked += 1
            for a, b in zip(phi.images, psi):
                if g.mul(g.inv(a), b) not in core:
                    verdict.lemma1_holds = False
            if psi not in phis and verdict.closed_twist:
                verdict.closed_twist = False
                verdict.witness = verdict.witness or NotClosed("II", phi.images, x)
    if not verdict.lemma1_holds:
        raise TheoremViolation("Lemma 1 containment failed")
    if verdict.closed:
        verdict.divisible = len(phis) % h.order == 0
        if not verdict.divisible:
            raise TheoremViolation(f"|Φ|={len(phis)} not divisible by |H|={h.order}")
    return verdict


def subsystem_indexing(system: GeneralizedSystem, n: int | None = None):
    """An epimorphism deg: F(x_1..x_m) → Z/n killing every subsystem word.

    ``n`` defaults to the invariant factor of the subsystem matrix; when that
    factor is 0 any positive ``n`` works and must be supplied.
    Returns ``(n, degrees)``.
    """
    a = system_matrix(system, system.subsystem)
    m = system.arity
    factor = invariant_factor(a, m)
    if n is None:
        if factor == 0:
            raise ValueError("invariant factor is 0; pass an explicit n")
        n = factor
    elif factor and factor % n:
        raise ValueError(f"n={n} must divide the invariant factor {factor}")
    right = smith_normal_form(a).right
    degrees = tuple(right[i, m - 1] % n for i in range(m))
    return n, degrees


def load_presentation(source):
    """``{"generators": [...], "relators": [...], "deg": {...}, "n": 2}`` →
    ``(presentation, degrees, n)``."""
    if not isinstance(source, dict):
        with open(Path(source)) as fh:
            source = json.load(fh)
    p = FinitePresentation.parse(source["generators"], source.get("relators", []))
    n = int(source.get("n", 1))
    deg = source.get("deg", {})
    degrees = tuple(int(deg.get(x, 0)) % n for x in p.generators)
    if not is_indexing(p, degrees, n):
        raise DegreeMismatch("deg does not define an epimorphism onto Z/n")
    return p, degrees, n


CURATED_PRESENTATIONS = [
    (["x"], []), (["x"], ["x^2"]), (["x"], ["x^3"]), (["x"], ["x^4"]), (["x"], ["x^6"]),
    (["x", "y"], []), (["x", "y"], ["[x,y]"]), (["x", "y"], ["x^2", "y^2"]),
    (["x", "y"], ["x^2", "y^3"]), (["x", "y"], ["x^2", "(x y)^2"]),
    (["x", "y"], ["x^4", "x^2 y^-2"]), (["x", "y"], ["x^2 y^2"]), (["x", "y"], ["x y x^-1 y"]),
]


def random_presentations(rng, count: int, max_length: int = 6) -> list[FinitePresentation]:
    """Seeded presentations with k ≤ 2 and one or two relators of length ≤ max_length."""
    out = []
    for _ in range(count):
        k = int(rng.integers(1, 3))
        letters = [Variable(i + 1, s) for i in range(k) for s in (1, -1)]
        relators = []
        for _ in range(int(rng.integers(1, 3))):
            length = int(rng.integers(1, max_length + 1))
            word = []
            while len(word) < length:
                x = letters[int(rng.integers(len(letters)))]
                if word and word[-1] == Variable(x.index, -x.sign):
                    continue
                word.append(x)
            relators.append(Word(k, tuple(word)))
        out.append(FinitePresentation(tuple(["x", "y"][:k]), tuple(relators)))
    return out


@dataclass
class SweepStats:
    cases: int = 0
    twists: int = 0
    extensions: int = 0
    core_checks: int = 0


def lemma0_sweep(group: FiniteGroup, presentations, ns=(1, 2, 3, 4),
                 subgroups=None, stats: SweepStats | None = None) -> SweepStats:
    """Exhaustively compare the two Lemma 0 answers for every indexing, every hom
    and every twisting element; for each subgroup H with |H| dividing n also check
    the power identity and Lemma 1 containment on the φ-core."""
    from .groups import all_subgroups
    stats = stats or SweepStats()
    subgroups = subgroups if subgroups is not None else all_subgroups(group)
    for p in presentations:
        homs = enumerate_homs(p, group)
        for n in ns:
            hs = [h for h in subgroups if n % h.order == 0]
            for degrees in indexings(p, n):
                f1 = degree_one_word(p, degrees, n)
                for images in homs:
                    phi = IndexedHom(p, group, n, degrees, images)
                    ctx = Lemma0Context(phi, f1)
                    stats.cases += 1
                    for x in range(group.order):
                        exists, psi = ctx.check(x)
                        stats.twists += 1
                        stats.extensions += exists
                    for h in hs:
                        core = phi_core(phi, h)
                        for x in core.members:
                            if not ctx.condition(x):
                                raise TheoremViolation(
                                    "power identity fails for a core element")
                            psi = ctx.construct(x)
                            for a, b in zip(phi.images, psi):
                                if group.mul(group.inv(a), b) not in core:
                                    raise TheoremViolation("Lemma 1 containment failed")
                            stats.core_checks += 1
    return stats
