"""Words in ``G * F(x_1..x_m)``, the equation DSL, and generalized systems.

Grammar (juxtaposition is multiplication)::

    word   := factor+
    factor := atom ["^" int]
    atom   := ident | "(" word ")" | "[" word "," word "]"

``[u, v]`` expands to ``u^-1 v^-1 u v``. Words are kept unreduced.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .errors import ArityExceeded, UnboundName, WordSyntaxError
from .groups import (
    DoubleCoset,
    FiniteGroup,
    Subgroup,
    double_coset,
    load_group,
    subgroup_generated,
)
from .intlinalg import IntMatrix


class Variable(NamedTuple):
    index: int      # 1-based
    sign: int       # +1 or -1


class Coefficient(NamedTuple):
    element: int


@dataclass(frozen=True)
class Word:
    arity: int
    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for x in self.letters:
            if isinstance(x, Variable) and not 1 <= x.index <= self.arity:
                raise ArityExceeded(f"variable x{x.index} in a word of arity {self.arity}")

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: Word) -> Word:
        return Word(max(self.arity, other.arity), self.letters + other.letters)

    def inverse(self, group: FiniteGroup | None = None) -> Word:
        out = []
        for x in reversed(self.letters):
            if isinstance(x, Variable):
                out.append(Variable(x.index, -x.sign))
            else:
                if group is None:
                    raise ValueError("inverting a coefficient letter needs the group")
                out.append(Coefficient(group.inv(x.element)))
        return Word(self.arity, out)

    def power(self, k: int, group: FiniteGroup | None = None) -> Word:
        base = self if k >= 0 else self.inverse(group)
        return Word(self.arity, base.letters * abs(k))

    @classmethod
    def var(cls, j, arity, sign=1):
        return cls(arity, (Variable(j, sign),))

    @classmethod
    def const(cls, element, arity):
        return cls(arity, (Coefficient(element),))

    def with_arity(self, arity) -> Word:
        return Word(arity, self.letters)

    def coefficients(self) -> set:
        return {x.element for x in self.letters if isinstance(x, Coefficient)}

    def is_coefficient_free(self) -> bool:
        return not self.coefficients()


# ---------------------------------------------------------------------------
# DSL

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>[+-]?\d+)|(?P<punct>[\^()\[\],]))")
_DEFAULT_VARS = ("x", "y", "z", "t", "u", "v", "w")


def default_variable_names(m: int) -> list[str]:
    if m <= len(_DEFAULT_VARS):
        return list(_DEFAULT_VARS[:m])
    return [f"x{i}" for i in range(1, m + 1)]


def _tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WordSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, variables, coefficients, group, arity):
        self.tokens = _tokenize(text)
        self.i = 0
        self.variables = variables
        self.coefficients = coefficients
        self.group = group
        self.arity = arity

    def peek(self):
        return self.tokens[self.i]

    def take(self, value=None):
        tok = self.tokens[self.i]
        if value is not None and tok[1] != value:
            raise WordSyntaxError(f"expected {value!r}, found {tok[1] or 'end'!r}", tok[2])
        self.i += 1
        return tok

    def word(self, stop):
        letters = []
        while self.peek()[1] not in stop and self.peek()[0] != "end":
            letters += self.factor()
        return letters

    def factor(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take("^")
            kind, val, pos = self.take()
            if kind != "int":
                raise WordSyntaxError("exponent must be an integer", pos)
            base = Word(self.arity, base).power(int(val), self.group).letters
        return list(base)

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "ident":
            self.take()
            return [self.letter(val, pos)]
        if val == "(":
            self.take("(")
            inner = self.word({")"})
            self.take(")")
            return inner
        if val == "[":
            self.take("[")
            u = Word(self.arity, self.word({","}))
            self.take(",")
            v = Word(self.arity, self.word({"]"}))
            self.take("]")
            g = self.group
            return list((u.inverse(g) * v.inverse(g) * u * v).letters)
        raise WordSyntaxError(f"unexpected token {val or 'end'!r}", pos)

    def letter(self, name, pos):
        if name in self.variables:
            return Variable(self.variables[name], 1)
        if name in self.coefficients:
            return Coefficient(self.coefficients[name])
        m = re.fullmatch(r"x(\d+)", name)
        if m and int(m.group(1)) > self.arity:
            raise ArityExceeded(f"{name} exceeds arity {self.arity}")
        raise UnboundName(f"unbound name {name!r} at position {pos}")


def parse_word(text: str, variables, coefficients: Mapping[str, int] | None = None,
               group: FiniteGroup | None = None) -> Word:
    """Parse a DSL word.

    ``variables`` is either the arity m (default names x, y, z, ...) or a
    sequence of variable names. ``coefficients`` maps names to element ids;
    the group is needed whenever a coefficient gets inverted.
    """
    if isinstance(variables, int):
        names = default_variable_names(variables)
    else:
        names = list(variables)
    arity = len(names)
    coefficients = dict(coefficients or {})
    clash = set(names) & set(coefficients)
    if clash:
        raise ValueError(f"names bound both as unknowns and coefficients: {sorted(clash)}")
    if text.strip() in ("", "1"):
        return Word(arity, ())
    p = _Parser(text, {n: i + 1 for i, n in enumerate(names)}, coefficients, group, arity)
    letters = p.word(set())
    kind, val, pos = p.peek()
    if kind != "end":
        raise WordSyntaxError(f"unexpected token {val!r}", pos)
    return Word(arity, letters)


def format_word(word: Word, group: FiniteGroup | None = None, variables=None,
                coefficient_names: Mapping[int, str] | None = None) -> str:
    names = list(variables) if variables else default_variable_names(word.arity)
    parts = []
    for x in word.letters:
        if isinstance(x, Variable):
            parts.append(names[x.index - 1] + ("" if x.sign > 0 else "^-1"))
        elif coefficient_names and x.element in coefficient_names:
            parts.append(coefficient_names[x.element])
        else:
            parts.append(group.names[x.element] if group else f"<{x.element}>")
    return " ".join(parts) if parts else "1"


# ---------------------------------------------------------------------------
# evaluation

def evaluate(word: Word, assignment: Sequence[int], group: FiniteGroup) -> int:
    if len(assignment) != word.arity:
        raise ValueError(f"expected {word.arity} values, got {len(assignment)}")
    rows, inv = group._rows, group._inv
    acc = 0
    for x in word.letters:
        if isinstance(x, Variable):
            v = assignment[x.index - 1]
            acc = rows[acc][v if x.sign > 0 else inv[v]]
        else:
            acc = rows[acc][x.element]
    return acc


def _compiled(word: Word, group: FiniteGroup):
    """Merge runs of coefficients into single constants."""
    out, const = [], None
    for x in word.letters:
        if isinstance(x, Coefficient):
            const = x.element if const is None else group.mul(const, x.element)
        else:
            if const is not None:
                out.append(("c", const))
                const = None
            out.append(("v", x.index - 1, x.sign))
    if const is not None:
        out.append(("c", const))
    return out


def evaluate_many(word: Word, columns: Sequence[np.ndarray], group: FiniteGroup) -> np.ndarray:
    """Vectorized ``evaluate``: ``columns[j]`` holds the values of ``x_{j+1}``."""
    t, inv = group.table, group.inverse
    n = len(columns[0]) if len(columns) else 1
    inverted = {}
    acc = np.zeros(n, dtype=np.int64)
    for op in _compiled(word, group):
        if op[0] == "c":
            acc = t[acc, op[1]]
        else:
            _, j, sign = op
            if sign > 0:
                col = columns[j]
            else:
                if j not in inverted:
                    inverted[j] = inv[columns[j]]
                col = inverted[j]
            acc = t[acc, col]
    return acc


def exponent_sum(word: Word, j: int) -> int:
    if not 1 <= j <= word.arity:
        raise ValueError(f"variable index {j} outside 1..{word.arity}")
    return sum(x.sign for x in word.letters if isinstance(x, Variable) and x.index == j)


def exponent_vector(word: Word) -> list[int]:
    out = [0] * word.arity
    for x in word.letters:
        if isinstance(x, Variable):
            out[x.index - 1] += x.sign
    return out


# ---------------------------------------------------------------------------
# generalized systems

@dataclass(frozen=True, eq=False)
class GeneralizedEquation:
    """``word ∈ H g H``; a plain equation ``word = 1`` has H trivial and g = 1."""

    word: Word
    subgroup: Subgroup
    representative: int = 0

    @classmethod
    def plain(cls, word: Word, group: FiniteGroup):
        return cls(word, Subgroup.trivial(group), 0)

    @property
    def is_plain(self):
        return self.subgroup.order == 1 and self.representative == 0

    @cached_property
    def coset(self) -> DoubleCoset:
        return double_coset(self.subgroup, self.representative)


@dataclass(frozen=True, eq=False)
class GeneralizedSystem:
    group: FiniteGroup
    arity: int
    equations: tuple
    subsystem: frozenset = field(default=None)
    variable_names: tuple = None

    def __post_init__(self):
        eqs = tuple(self.equations)
        object.__setattr__(self, "equations", eqs)
        if self.arity < 1:
            raise ValueError("a system needs at least one unknown")
        sub = frozenset(range(len(eqs))) if self.subsystem is None else frozenset(self.subsystem)
        if not sub <= set(range(len(eqs))):
            raise ValueError("subsystem indices must index equations")
        object.__setattr__(self, "subsystem", sub)
        if self.variable_names is None:
            object.__setattr__(self, "variable_names", tuple(default_variable_names(self.arity)))
        for e in eqs:
            if e.subgroup.parent is not self.group:
                raise ValueError("constraint subgroup from a different group")
            if e.word.arity > self.arity:
                raise ArityExceeded("equation word has more unknowns than the system")

    @classmethod
    def of_words(cls, group, arity, words, subsystem=None):
        eqs = [GeneralizedEquation.plain(w.with_arity(arity), group) for w in words]
        return cls(group, arity, eqs, subsystem)

    @property
    def all_plain(self):
        return all(e.is_plain for e in self.equations)

    def __len__(self):
        return len(self.equations)


def system_matrix(system: GeneralizedSystem, rows=None) -> IntMatrix:
    """Exponent-sum matrix restricted to ``rows`` (default: all equations)."""
    idx = range(len(system.equations)) if rows is None else sorted(rows)
    data = [exponent_vector(system.equations[i].word.with_arity(system.arity)) for i in idx]
    return IntMatrix(data, cols=system.arity)


def coefficient_set(system: GeneralizedSystem) -> set:
    out = set()
    for e in system.equations:
        out |= e.word.coefficients()
    return out


def load_system(source, group: FiniteGroup | None = None) -> GeneralizedSystem:
    """Read a system document (path or dict).

    Format::

        {"group": <catalog spec | group file | inline group>,
         "unknowns": ["x", "y"],
         "coefficients": {"a": "<element name>"},
         "equations": [{"word": "...", "H": ["<gen>"], "g": "<name>"} | {"word": "...", "eq1": true}],
         "subsystem": [indices]}
    """
    if not isinstance(source, dict):
        with open(Path(source)) as fh:
            source = json.load(fh)
    doc = source
    if group is None:
        group = load_group(doc["group"])
    unknowns = doc.get("unknowns") or default_variable_names(int(doc.get("arity", 1)))
    coeffs = {k: group.index_of(v) for k, v in (doc.get("coefficients") or {}).items()}
    eqs = []
    for item in doc.get("equations", []):
        if isinstance(item, str):
            item = {"word": item, "eq1": True}
        w = parse_word(item["word"], unknowns, coeffs, group)
        if item.get("eq1"):
            eqs.append(GeneralizedEquation.plain(w, group))
            continue
        gens = [_element(group, coeffs, n) for n in item.get("H", [])]
        h = subgroup_generated(group, gens)
        g = _element(group, coeffs, item.get("g", group.names[0]))
        eqs.append(GeneralizedEquation(w, h, g))
    return GeneralizedSystem(group, len(unknowns), eqs, doc.get("subsystem"),
                             tuple(unknowns))


def _element(group, coeffs, name):
    if name in coeffs:
        return coeffs[name]
    return group.index_of(name)
