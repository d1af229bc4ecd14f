"""Seeded counterexample search for the strengthened divisibility bounds.

Every trial draws one instance from its own child stream of a single
``SeedSequence``, so a report depends only on the configuration. Instances are
stored as the same JSON documents the loaders accept, which makes every record
replayable on its own with :func:`evaluate_instance`.
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .crossed import (
    abelian_exponent,
    abelianization,
    all_actions,
    automorphisms,
    count_crossed_homs,
    generating_set,
    load_action,
)
from .errors import TheoremViolation
from .groups import catalog, catalog_corpus, group_gcd
from .intlinalg import minors_gcd
from .rings import (
    coefficient_centralizer,
    homogeneity_matrix,
    load_ring_system,
    theorem3_verdict,
)
from .solver import divides, strengthened_bound, theorem1_verdict, theorem2_verdict
from .words import load_system

SCHEMA = "divisor-lab/1"
QUESTIONS = ("Q1", "Q2", "Q3", "Q4")
VARIABLES = ("x", "y", "z")
# tuple-space ceiling per trial, keeps a 500-trial run well under a minute
TRIAL_SPACE = 5000
ACTION_SPACE = 4096


@dataclass
class ExplorationConfig:
    question: str = "Q1"
    max_order: int = 12
    trials: int = 100
    seed: int = 0
    out: str | None = None
    workers: int = 1
    oracle: bool = False

    def __post_init__(self):
        if self.question not in QUESTIONS:
            raise ValueError(f"question must be one of {', '.join(QUESTIONS)}")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if self.max_order < 1:
            raise ValueError("max_order must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")


@dataclass
class ExplorationReport:
    config: ExplorationConfig
    records: list = field(default_factory=list)

    @property
    def violations(self):
        return [r for r in self.records if not r["strong_divides"]]

    def summary(self):
        bad = self.violations
        n = len(self.records)
        if bad:
            statement = f"{len(bad)} counterexample(s) found in {n} trials"
        else:
            statement = f"no counterexample found in {n} trials"
        return {"trials": n, "violations": len(bad),
                "weak_bound_always_divides": all(r["weak_divides"] for r in self.records),
                "violating_instances": bad, "statement": statement}

    def to_json(self):
        c = self.config
        return {"schema": SCHEMA, "command": "explore",
                "config": {"question": c.question, "max_order": c.max_order,
                           "trials": c.trials, "seed": c.seed},
                "records": self.records, "summary": self.summary()}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


@lru_cache(maxsize=None)
def _group(label):
    return catalog(label)


@lru_cache(maxsize=None)
def _actions(actor, target):
    return all_actions(_group(actor), _group(target))


@lru_cache(maxsize=None)
def _action_space(actor, target):
    return len(automorphisms(_group(target))) ** len(generating_set(_group(actor)))


@lru_cache(maxsize=None)
def _corpus(max_order, limit=None):
    top = max_order if limit is None else min(max_order, limit)
    return tuple(g.label for g in catalog_corpus(top) if g.order > 1)


def _random_word_text(rng, unknowns, coeffs, length, coefficient_rate=0.3):
    parts = []
    for _ in range(length):
        if coeffs and rng.random() < coefficient_rate:
            parts.append(str(rng.choice(coeffs)))
        else:
            v = str(rng.choice(unknowns))
            parts.append(v if rng.random() < 0.6 else f"{v}^-1")
    return " ".join(parts) if parts else "1"


def _arity_for(order, rng):
    m = 3
    while m > 1 and order ** m > TRIAL_SPACE:
        m -= 1
    return int(rng.integers(1, m + 1))


def _group_equation_instance(rng, labels, generalized):
    label = str(rng.choice(labels))
    g = _group(label)
    m = _arity_for(g.order, rng)
    unknowns = list(VARIABLES[:m])
    n_coeffs = int(rng.integers(0, 3))
    coeffs = {f"c{i + 1}": g.names[int(rng.integers(g.order))] for i in range(n_coeffs)}
    eqs = []
    for _ in range(int(rng.integers(1, 4))):
        text = _random_word_text(rng, unknowns, sorted(coeffs), int(rng.integers(1, 9)))
        if not generalized:
            eqs.append({"word": text, "eq1": True})
            continue
        gens = [g.names[int(rng.integers(g.order))] for _ in range(int(rng.integers(0, 3)))]
        eqs.append({"word": text, "H": gens, "g": g.names[int(rng.integers(g.order))]})
    doc = {"group": {"catalog": label}, "unknowns": unknowns, "coefficients": coeffs,
           "equations": eqs}
    if generalized:
        doc["subsystem"] = [i for i in range(len(eqs)) if rng.random() < 0.5]
    return doc


def _ring_choices(max_order):
    out = [{"kind": "modint", "k": k} for k in range(3, 2 * max_order + 2)
           if _units_order(k) <= max_order]
    out.append({"kind": "matrix", "k": 2, "d": 2})
    for label in ("Z2", "Z3", "Z2xZ2", "Z4", "S3"):
        g = _group(label)
        # the basis unit group has |G| elements
        if g.order <= max_order:
            out.append({"kind": "groupring", "k": 2, "group": {"catalog": label}})
            out.append({"kind": "groupring", "k": 3, "group": {"catalog": label}})
    return out


def _units_order(k):
    return sum(1 for a in range(1, k) if math.gcd(a, k) == 1)


def _ring_scalar_json(ring_spec, rng):
    kind = ring_spec["kind"]
    k = ring_spec["k"]
    if kind == "modint":
        return int(rng.integers(k))
    if kind == "matrix":
        d = ring_spec["d"]
        return [[int(rng.integers(k)) for _ in range(d)] for _ in range(d)]
    n = _group(ring_spec["group"]["catalog"]).order
    return [int(rng.integers(k)) for _ in range(n)]


def _ring_instance(rng, max_order):
    choices = _ring_choices(max_order)
    ring_spec = choices[int(rng.integers(len(choices)))]
    units = _units_for(ring_spec)
    m = _arity_for(units, rng)
    unknowns = list(VARIABLES[:m])
    eqs = []
    for _ in range(int(rng.integers(1, 3))):
        terms = []
        for _ in range(int(rng.integers(1, 4))):
            factors = []
            if rng.random() < 0.5:
                factors.append({"c": _ring_scalar_json(ring_spec, rng)})
            for _ in range(int(rng.integers(1, 3))):
                e = int(rng.integers(-3, 4)) or 1
                factors.append({"var": str(rng.choice(unknowns)), "exp": e})
            terms.append(factors)
        eqs.append(terms)
    return {"ring": ring_spec, "unknowns": unknowns, "equations": eqs}


def _units_for(ring_spec):
    if ring_spec["kind"] == "modint":
        return _units_order(ring_spec["k"])
    if ring_spec["kind"] == "matrix":
        return 6
    return _group(ring_spec["group"]["catalog"]).order


def _action_instance(rng, max_order):
    labels = _corpus(max_order, limit=8)
    while True:
        actor = str(rng.choice(labels))
        target = str(rng.choice(labels))
        # skip pairs whose action enumeration is too large
        if _action_space(actor, target) <= ACTION_SPACE:
            break
    actions = _actions(actor, target)
    act = actions[int(rng.integers(len(actions)))]
    F = _group(actor)
    perms = {F.names[f]: [int(v) for v in act.perms[f]] for f in F.elements}
    return {"actor": {"catalog": actor}, "target": {"catalog": target}, "perms": perms}


def make_instance(question, rng, max_order):
    if question == "Q1":
        return _group_equation_instance(rng, _corpus(max_order), generalized=False)
    if question == "Q2":
        return _group_equation_instance(rng, _corpus(max_order), generalized=True)
    if question == "Q3":
        return _ring_instance(rng, max_order)
    return _action_instance(rng, max_order)


def evaluate_instance(question: str, instance: dict, oracle: bool = False) -> dict:
    """Count, weak bound and strengthened bound for one instance document."""
    if question in ("Q1", "Q2"):
        system = load_system(instance, group=_group(instance["group"]["catalog"]))
        rep = (theorem1_verdict if question == "Q1" else theorem2_verdict)(system, oracle=oracle)
        count, weak = rep.solution_count, rep.bound
        strong = strengthened_bound(system, oracle=oracle)
        extra = {"delta_m": rep.breakdown["delta_m"],
                 "delta_m_minus_1": rep.breakdown["delta_m_minus_1"]}
    elif question == "Q3":
        system = load_ring_system(instance)
        rep = theorem3_verdict(system, oracle=oracle)
        count, weak = rep.solution_count, rep.bound
        a = homogeneity_matrix(system)
        top = minors_gcd(a, system.arity + len(system.equations))
        strong = group_gcd(coefficient_centralizer(system), top, oracle=oracle)
        extra = {"delta_top": top, "homogeneity_modulus": rep.breakdown["homogeneity_modulus"]}
    else:
        action = load_action(instance)
        count = count_crossed_homs(action)
        e = abelian_exponent(action.actor)
        ab = math.prod(abelianization(action.actor))
        weak = math.gcd(e, action.target.order)
        strong = group_gcd(action.target, ab, oracle=oracle)
        extra = {"exp_abelianization": e, "abelianization_order": ab}
    record = {"count": count, "weak_bound": weak, "strong_bound": strong,
              "weak_divides": divides(weak, count), "strong_divides": divides(strong, count)}
    record.update(extra)
    if not record["weak_divides"]:
        raise TheoremViolation(f"weak bound {weak} does not divide {count} for {instance}")
    return record


def _trial(question, index, seed_seq, max_order, oracle):
    rng = np.random.default_rng(seed_seq)
    instance = make_instance(question, rng, max_order)
    record = {"trial": index, "instance": instance}
    record.update(evaluate_instance(question, instance, oracle))
    return record


def explore(config: ExplorationConfig) -> ExplorationReport:
    children = np.random.SeedSequence(config.seed).spawn(config.trials)
    args = [(config.question, i, s, config.max_order, config.oracle)
            for i, s in enumerate(children)]
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            records = list(pool.map(lambda a: _trial(*a), args))
    else:
        records = [_trial(*a) for a in args]
    report = ExplorationReport(config, records)
    if config.out:
        Path(config.out).write_text(report.dumps(), encoding="utf-8")
    return report


def replay(question: str, record: dict, oracle: bool = False) -> bool:
    """True when re-evaluating a stored record reproduces its verdict fields."""
    fresh = evaluate_instance(question, record["instance"], oracle)
    return all(record[k] == v for k, v in fresh.items())
