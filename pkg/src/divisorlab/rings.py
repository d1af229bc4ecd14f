"""Equations over finite rings with solutions taken in a unit subgroup.

Three ring backends, each with canonical hashable elements:

* ``ModIntRing(k)``: ints ``0..k-1``
* ``MatrixRing(k, d)``: d×d matrices over Z/k as tuples of row tuples
* ``GroupRing(k, G)``: coefficient tuples indexed by element ids of G
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import reduce
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

from .errors import PreconditionViolated, SearchSpaceTooLarge
from .groups import FiniteGroup, Subgroup, centralizer, group_gcd, load_group
from .intlinalg import IntMatrix, bareiss_det, invariant_factor, minors_gcd
from .solver import DEFAULT_CAP, DivisibilityReport, divides
from .words import Coefficient, Variable, Word, exponent_vector


class FiniteRing:
    kind = "ring"

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def scalar(self, n: int):
        raise NotImplementedError

    @property
    def zero(self):
        return self.scalar(0)

    @property
    def one(self):
        return self.scalar(1)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def power(self, a, k: int):
        if k < 0:
            raise ValueError("negative powers need an inverse; use the unit group")
        out = self.one
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def product(self, items):
        return reduce(self.mul, items, self.one)

    def total(self, items):
        return reduce(self.add, items, self.zero)

    def elements(self):
        raise NotImplementedError

    def random_element(self, rng):
        raise NotImplementedError

    def inverse(self, a):
        """Two-sided inverse by search (small rings only), or None."""
        for b in self.elements():
            if self.mul(a, b) == self.one and self.mul(b, a) == self.one:
                return b
        return None


class ModIntRing(FiniteRing):
    kind = "modint"

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("modulus must be positive")
        self.k = k

    def __repr__(self):
        return f"Z/{self.k}"

    def add(self, a, b):
        return (a + b) % self.k

    def mul(self, a, b):
        return (a * b) % self.k

    def neg(self, a):
        return (-a) % self.k

    def scalar(self, n):
        return n % self.k

    def elements(self):
        return range(self.k)

    def random_element(self, rng):
        return int(rng.integers(self.k))

    def to_json(self, a):
        return a

    def from_json(self, v):
        return int(v) % self.k

    def spec(self):
        return {"kind": "modint", "k": self.k}


class MatrixRing(FiniteRing):
    kind = "matrix"

    def __init__(self, k: int, d: int):
        self.k, self.d = k, d

    def __repr__(self):
        return f"M_{self.d}(Z/{self.k})"

    def add(self, a, b):
        return tuple(tuple((x + y) % self.k for x, y in zip(r, s)) for r, s in zip(a, b))

    def mul(self, a, b):
        cols = list(zip(*b))
        return tuple(tuple(sum(x * y for x, y in zip(r, c)) % self.k for c in cols) for r in a)

    def neg(self, a):
        return tuple(tuple((-x) % self.k for x in r) for r in a)

    def scalar(self, n):
        return tuple(tuple((n if i == j else 0) % self.k for j in range(self.d))
                     for i in range(self.d))

    def elements(self):
        for flat in itertools.product(range(self.k), repeat=self.d * self.d):
            yield tuple(tuple(flat[i * self.d:(i + 1) * self.d]) for i in range(self.d))

    def random_element(self, rng):
        v = rng.integers(self.k, size=(self.d, self.d))
        return tuple(tuple(int(x) for x in r) for r in v)

    def to_json(self, a):
        return [list(r) for r in a]

    def from_json(self, v):
        if isinstance(v, int):
            return self.scalar(v)
        return tuple(tuple(int(x) % self.k for x in r) for r in v)

    def spec(self):
        return {"kind": "matrix", "k": self.k, "d": self.d}


class GroupRing(FiniteRing):
    kind = "groupring"

    def __init__(self, k: int, group: FiniteGroup):
        self.k, self.group = k, group
        n = group.order
        self._n = n

    def __repr__(self):
        return f"(Z/{self.k})[{self.group.label}]"

    def add(self, a, b):
        return tuple((x + y) % self.k for x, y in zip(a, b))

    def mul(self, a, b):
        t = self.group._rows
        out = [0] * self._n
        for g, x in enumerate(a):
            if x:
                row = t[g]
                for h, y in enumerate(b):
                    if y:
                        out[row[h]] += x * y
        return tuple(v % self.k for v in out)

    def neg(self, a):
        return tuple((-x) % self.k for x in a)

    def scalar(self, n):
        return tuple([n % self.k] + [0] * (self._n - 1))

    def basis(self, g: int):
        out = [0] * self._n
        out[g] = 1 % self.k
        return tuple(out)

    def elements(self):
        return itertools.product(range(self.k), repeat=self._n)

    def random_element(self, rng):
        return tuple(int(x) for x in rng.integers(self.k, size=self._n))

    def to_json(self, a):
        return {self.group.names[g]: x for g, x in enumerate(a) if x}

    def from_json(self, v):
        if isinstance(v, int):
            return self.scalar(v)
        if isinstance(v, str):
            return self.basis(self.group.index_of(v))
        if isinstance(v, (list, tuple)):
            if len(v) != self._n:
                raise ValueError("coefficient vector has the wrong length")
            return tuple(int(x) % self.k for x in v)
        out = [0] * self._n
        for name, x in v.items():
            out[self.group.index_of(name)] = int(x) % self.k
        return tuple(out)

    def spec(self):
        return {"kind": "groupring", "k": self.k, "group": self.group.label}


def ring_from_spec(spec: dict) -> FiniteRing:
    kind = spec["kind"]
    if kind == "modint":
        return ModIntRing(int(spec["k"]))
    if kind == "matrix":
        return MatrixRing(int(spec["k"]), int(spec["d"]))
    if kind == "groupring":
        return GroupRing(int(spec["k"]), load_group(spec["group"]))
    raise ValueError(f"unknown ring kind {kind!r}")


# ---------------------------------------------------------------------------
# unit subgroups

class UnitEmbedding(NamedTuple):
    group: FiniteGroup
    images: tuple       # element id -> ring element


def check_embedding(ring: FiniteRing, emb: UnitEmbedding) -> None:
    g, img = emb.group, emb.images
    if len(img) != g.order:
        raise PreconditionViolated("one image per group element required")
    if img[0] != ring.one:
        raise PreconditionViolated("the identity must map to the ring's unity")
    for a in g.elements:
        for b in g.elements:
            if ring.mul(img[a], img[b]) != img[g.mul(a, b)]:
                raise PreconditionViolated("embedding does not preserve products")
    if len(set(img)) != g.order:
        raise PreconditionViolated("embedding is not injective")


def _group_from_units(ring, units, label):
    units = sorted(units, key=lambda u: u != ring.one)
    index = {u: i for i, u in enumerate(units)}
    table = [[index[ring.mul(a, b)] for b in units] for a in units]
    names = [_unit_name(ring, u) for u in units]
    return UnitEmbedding(FiniteGroup(table, names, label=label), tuple(units))


def _unit_name(ring, u):
    if isinstance(u, int):
        return str(u)
    return json.dumps(ring.to_json(u), separators=(",", ":"))


def modint_units(ring: ModIntRing) -> UnitEmbedding:
    units = [u for u in range(ring.k) if math.gcd(u, ring.k) == 1] if ring.k > 1 else [0]
    return _group_from_units(ring, units, f"(Z/{ring.k})*")


def general_linear(ring: MatrixRing) -> UnitEmbedding:
    units = [a for a in ring.elements() if math.gcd(bareiss_det(a) % ring.k, ring.k) == 1]
    return _group_from_units(ring, units, f"GL_{ring.d}(Z/{ring.k})")


def group_basis(ring: GroupRing) -> UnitEmbedding:
    """G inside (Z/k)[G] via g ↦ g."""
    return UnitEmbedding(ring.group, tuple(ring.basis(g) for g in ring.group.elements))


# ---------------------------------------------------------------------------
# equations

class ScalarFactor(NamedTuple):
    value: object


class VariablePower(NamedTuple):
    index: int      # 1-based
    exponent: int


@dataclass(frozen=True)
class RingTerm:
    factors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    def exponent_sums(self, m):
        out = [0] * m
        for f in self.factors:
            if isinstance(f, VariablePower):
                out[f.index - 1] += f.exponent
        return out

    def scalars(self):
        return [f.value for f in self.factors if isinstance(f, ScalarFactor)]


@dataclass(frozen=True, eq=False)
class RingEquationSystem:
    """Each equation is a list of terms whose sum is set to zero."""

    ring: FiniteRing
    arity: int
    equations: tuple
    units: UnitEmbedding
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        eqs = tuple(tuple(t if isinstance(t, RingTerm) else RingTerm(t) for t in eq)
                    for eq in self.equations)
        object.__setattr__(self, "equations", eqs)
        for eq in eqs:
            for t in eq:
                for f in t.factors:
                    if isinstance(f, VariablePower) and not 1 <= f.index <= self.arity:
                        raise PreconditionViolated(f"variable index {f.index} exceeds arity")
        if self.check:
            check_embedding(self.ring, self.units)

    @property
    def coefficients(self):
        return [c for eq in self.equations for t in eq for c in t.scalars()]


def homogeneity_matrix(system: RingEquationSystem) -> IntMatrix:
    """One row per monomial: exponent sums, then a 1 in the column of its equation."""
    m, s = system.arity, len(system.equations)
    rows = []
    for p, eq in enumerate(system.equations):
        for term in eq:
            tail = [0] * s
            tail[p] = 1
            rows.append(term.exponent_sums(m) + tail)
    return IntMatrix(rows, cols=m + s)


def homogeneity_modulus(system: RingEquationSystem) -> int:
    return invariant_factor(homogeneity_matrix(system), system.arity + len(system.equations))


def _term_value(ring, term, values, pow_img):
    acc = ring.one
    for f in term.factors:
        if isinstance(f, ScalarFactor):
            acc = ring.mul(acc, f.value)
        else:
            acc = ring.mul(acc, pow_img(values[f.index - 1], f.exponent))
    return acc


def ring_solutions(system: RingEquationSystem, cap: int = DEFAULT_CAP):
    """Yield every solution tuple (element ids of the unit group) in row-major order."""
    g = system.units.group
    space = g.order ** system.arity
    if space > cap:
        raise SearchSpaceTooLarge(f"|G|^m = {space} exceeds cap {cap}")
    ring, img = system.ring, system.units.images
    cache = {}

    def pow_img(x, k):
        key = (x, k)
        if key not in cache:
            cache[key] = img[g.pow(x, k)]
        return cache[key]

    zero = ring.zero
    for t in itertools.product(g.elements, repeat=system.arity):
        if all(ring.total(_term_value(ring, term, t, pow_img) for term in eq) == zero
               for eq in system.equations):
            yield t


def count_ring_solutions(system: RingEquationSystem, cap: int = DEFAULT_CAP) -> int:
    return sum(1 for _ in ring_solutions(system, cap))


def coefficient_centralizer(system: RingEquationSystem) -> Subgroup:
    """Elements of G whose images commute in R with every scalar coefficient."""
    ring, g, img = system.ring, system.units.group, system.units.images
    coeffs = list({c for c in system.coefficients})
    members = [a for a in g.elements
               if all(ring.mul(img[a], c) == ring.mul(c, img[a]) for c in coeffs)]
    return Subgroup(g, members)


def theorem3_verdict(system: RingEquationSystem, cap: int = DEFAULT_CAP,
                     oracle: bool = False) -> DivisibilityReport:
    g0 = coefficient_centralizer(system)
    a = homogeneity_matrix(system)
    ms = system.arity + len(system.equations)
    modulus = invariant_factor(a, ms)
    bound = group_gcd(g0, modulus, oracle=oracle)
    count = count_ring_solutions(system, cap)
    return DivisibilityReport(count, bound, {
        "homogeneity_matrix": a.tolist(),
        "delta_top": minors_gcd(a, ms),
        "delta_top_minus_1": minors_gcd(a, ms - 1),
        "homogeneity_modulus": modulus,
        "g0_order": g0.order,
        "unit_group_order": system.units.group.order,
        "centralizer_note": "centralizer computed in the ring, then intersected with G",
    })


def word_to_term(word: Word, images: Sequence) -> RingTerm:
    """Translate a group word letter by letter; coefficients go through ``images``."""
    factors = []
    for x in word.letters:
        if isinstance(x, Variable):
            factors.append(VariablePower(x.index, x.sign))
        else:
            factors.append(ScalarFactor(images[x.element]))
    return RingTerm(factors)


def group_ring_translation(group: FiniteGroup, arity: int, words: Sequence[Word],
                           k: int = 2) -> RingEquationSystem:
    """The system ``{w_i - 1 = 0}`` over ``(Z/k)[G]`` with G embedded as its basis."""
    ring = GroupRing(k, group)
    emb = group_basis(ring)
    eqs = [[word_to_term(w.with_arity(arity), emb.images), RingTerm([ScalarFactor(ring.neg(ring.one))])]
           for w in words]
    return RingEquationSystem(ring, arity, eqs, emb, check=False)


def representation_example_verdict(ring: FiniteRing, units: UnitEmbedding, words: Sequence[Word],
                                   exponents: Sequence[int], arity: int | None = None,
                                   cap: int = DEFAULT_CAP, oracle: bool = False) -> DivisibilityReport:
    """Count solutions of ``Σ ρ(u_i(x))^{l_i} = 1`` and check every applicable case bound:
    GCD(G, gcd l) always, GCD(G, lcm l) when k <= m, |G| when k < m."""
    if len(words) != len(exponents):
        raise ValueError("one exponent per word")
    if any(not w.is_coefficient_free() for w in words):
        raise ValueError("words must be coefficient-free")
    m = arity if arity is not None else max(w.arity for w in words)
    terms = []
    for w, l in zip(words, exponents):
        base = w.with_arity(m).power(l)
        terms.append(word_to_term(base, ()))
    terms.append(RingTerm([ScalarFactor(ring.neg(ring.one))]))
    system = RingEquationSystem(ring, m, [terms], units)
    count = count_ring_solutions(system, cap)
    g = units.group
    k = len(words)
    ls = [abs(l) for l in exponents]
    cases = {"gcd": group_gcd(g, reduce(math.gcd, ls, 0), oracle=oracle)}
    if k <= m:
        cases["lcm"] = group_gcd(g, reduce(math.lcm, ls, 1), oracle=oracle)
    if k < m:
        cases["order"] = g.order
    bound = reduce(math.lcm, cases.values(), 1)
    t3 = theorem3_verdict(system, cap, oracle=oracle)
    return DivisibilityReport(count, bound, {
        "case_bounds": cases,
        "case_divides": {name: divides(b, count) for name, b in cases.items()},
        "homogeneity_modulus": t3.breakdown["homogeneity_modulus"],
        "theorem3_bound": t3.bound,
        "k": k, "m": m, "exponents": list(exponents),
    })


# ---------------------------------------------------------------------------
# the monoid fact

class _GroupMonoid:
    def __init__(self, g: FiniteGroup):
        self.g = g
        self.one = 0

    def mul(self, a, b):
        return self.g.table[a, b] if isinstance(a, np.ndarray) or isinstance(b, np.ndarray) \
            else self.g.mul(a, b)

    def inv(self, a):
        return self.g.inv(a)


class _RingMonoid:
    def __init__(self, r: FiniteRing):
        self.r = r
        self.one = r.one

    def mul(self, a, b):
        return self.r.mul(a, b)

    def inv(self, a):
        b = self.r.inverse(a)
        if b is None:
            raise PreconditionViolated("element is not invertible")
        return b


def _monoid(M):
    return _GroupMonoid(M) if isinstance(M, FiniteGroup) else _RingMonoid(M)


def _mpow(mon, a, k):
    if k < 0:
        a, k = mon.inv(a), -k
    out = mon.one
    for _ in range(k):
        out = mon.mul(out, a)
    return out


def _conj(mon, x, y):
    """``x^y = y^-1 x y``."""
    return mon.mul(mon.mul(mon.inv(y), x), y)


def _eval_u(mon, bs, t, exps):
    acc = bs[0]
    for b, e in zip(bs[1:], exps):
        acc = mon.mul(mon.mul(acc, _mpow(mon, t, e)), b)
    return acc


def km17_prefix(mon, a, h, k):
    """The product of conjugates of h that multiplies ``u(a)`` in ``u(ah)``."""
    out = mon.one
    if k > 0:
        for s in range(1, k + 1):
            out = mon.mul(out, _conj(mon, h, _mpow(mon, a, -s)))
    elif k < 0:
        hinv = mon.inv(h)
        for s in range(0, -k):
            out = mon.mul(out, _conj(mon, hinv, _mpow(mon, a, s)))
    return out


def _conjugate_orbit(mon, a, h):
    seen, x, ainv = [], h, mon.inv(a)
    while x not in seen:
        seen.append(x)
        x = mon.mul(mon.mul(a, x), ainv)     # a^{-s} h a^{s} for s = -1, -2, ...
    return seen


def km17_fact_check(M, b: Sequence, a, h, exponents: Sequence[int]) -> bool:
    """Check ``u(ah) = prefix(a, h, k) · u(a)`` for ``u(t) = b_0 t^{m_1} b_1 ... t^{m_l} b_l``.

    ``M`` is a FiniteGroup or a FiniteRing (as a multiplicative monoid). For a
    group, the ``b_i`` may be numpy arrays of element ids to check many
    instances at once; the return value is then True only if all hold.
    """
    if len(b) != len(exponents) + 1:
        raise ValueError("need one more b than exponents")
    mon = _monoid(M)
    mon.inv(a), mon.inv(h)      # raises when either is not invertible
    orbit = _conjugate_orbit(mon, a, h)
    for bi in b:
        for c in orbit:
            lhs, rhs = mon.mul(c, bi), mon.mul(bi, c)
            if not np.all(np.asarray(lhs == rhs)):
                raise PreconditionViolated("conjugates of h must commute with every b_i")
    k = sum(exponents)
    lhs = _eval_u(mon, b, mon.mul(a, h), exponents)
    rhs = mon.mul(km17_prefix(mon, a, h, k), _eval_u(mon, b, a, exponents))
    return bool(np.all(np.asarray(lhs == rhs)))


def km17_sweep(group: FiniteGroup, max_exp: int = 3, max_len: int = 2) -> tuple[int, int]:
    """Exhaustive check over all a, h, b (satisfying the commuting precondition)
    and exponent vectors. Returns ``(instances checked, failures)``."""
    mon = _GroupMonoid(group)
    checked = failures = 0
    exps_range = range(-max_exp, max_exp + 1)
    for a in group.elements:
        for h in group.elements:
            cent = np.array(centralizer(group, _conjugate_orbit(mon, a, h)).members)
            for l in range(max_len + 1):
                grids = np.meshgrid(*([cent] * (l + 1)), indexing="ij")
                bs = [x.ravel() for x in grids]
                for exps in itertools.product(exps_range, repeat=l):
                    checked += len(bs[0])
                    if not km17_fact_check(group, bs, a, h, exps):
                        failures += 1
    return checked, failures


# ---------------------------------------------------------------------------
# JSON

def load_ring_system(source) -> RingEquationSystem:
    """Read a ring system document.

    ``{"ring": {"kind": ...}, "unknowns": ["x"], "units": {"kind": "modunits"|"gl"|"basis"}
      | {"group": <group>, "images": [<ring element>...]},
      "equations": [[[{"c": <ring element>} | {"var": "x", "exp": 3}, ...], ...], ...]}``

    Each equation is a list of terms; a term is a list of factors.
    """
    if not isinstance(source, dict):
        with open(Path(source)) as fh:
            source = json.load(fh)
    ring = ring_from_spec(source["ring"])
    unknowns = source.get("unknowns", ["x"])
    units = _units_from_spec(ring, source.get("units", {"kind": "default"}))
    pos = {n: i + 1 for i, n in enumerate(unknowns)}
    eqs = []
    for eq in source["equations"]:
        terms = []
        for term in eq:
            factors = []
            for f in term:
                if "var" in f:
                    factors.append(VariablePower(pos[f["var"]], int(f.get("exp", 1))))
                else:
                    factors.append(ScalarFactor(ring.from_json(f["c"])))
            terms.append(RingTerm(factors))
        eqs.append(terms)
    return RingEquationSystem(ring, len(unknowns), eqs, units)


def _units_from_spec(ring, spec):
    kind = spec.get("kind", "default")
    if "images" in spec:
        g = load_group(spec["group"])
        return UnitEmbedding(g, tuple(ring.from_json(v) for v in spec["images"]))
    if kind in ("default", "modunits") and isinstance(ring, ModIntRing):
        return modint_units(ring)
    if kind in ("default", "gl") and isinstance(ring, MatrixRing):
        return general_linear(ring)
    if kind in ("default", "basis") and isinstance(ring, GroupRing):
        return group_basis(ring)
    raise ValueError(f"unit subgroup {spec!r} does not fit ring {ring!r}")

