import itertools

import numpy as np
import pytest

from divisorlab.crossed import (
    GroupAction,
    abelian_exponent,
    abelianization,
    all_actions,
    automorphisms,
    commutator_subgroup,
    count_crossed_homs,
    count_crossed_homs_brute,
    crossed_homs,
    load_action,
    sections_via_semidirect,
    semidirect_product,
    theorem4_verdict,
)
from divisorlab.errors import InvalidAction
from divisorlab.groups import catalog, group_gcd

Z2, Z3 = catalog("Z2"), catalog("Z3")


def inversion_action():
    return GroupAction(Z2, Z3, [[0, 1, 2], [0, 2, 1]])


def hom_count(F, B):
    return sum(
        all(phi[F.mul(a, b)] == B.mul(phi[a], phi[b]) for a in F.elements for b in F.elements)
        for phi in itertools.product(B.elements, repeat=F.order))


def test_trivial_action_gives_direct_product():
    g, proj, section = semidirect_product(GroupAction.trivial(Z2, Z3))
    assert g.order == 6 and g.is_abelian


def test_inversion_gives_nonabelian_group():
    g, proj, section = semidirect_product(inversion_action())
    assert g.order == 6 and not g.is_abelian
    assert len(commutator_subgroup(g).members) == 3


def test_projection_is_homomorphism_and_section_splits():
    act = all_actions(catalog("Z4"), catalog("Z2xZ2"))[-1]
    g, proj, section = semidirect_product(act)
    F = act.actor
    for x in g.elements:
        for y in g.elements:
            assert proj[g.mul(x, y)] == F.mul(proj[x], proj[y])
    assert [proj[section(f, 0)] for f in F.elements] == list(F.elements)


def test_invalid_actions_rejected():
    with pytest.raises(InvalidAction):
        GroupAction(Z2, Z3, [[0, 1, 2], [1, 0, 2]])        # not an automorphism
    with pytest.raises(InvalidAction):
        GroupAction(Z2, Z3, [[0, 2, 1], [0, 2, 1]])        # identity acts nontrivially
    with pytest.raises(InvalidAction):
        # generator of Z3 acting by inversion is not an action (order mismatch)
        GroupAction(Z3, Z3, [[0, 1, 2], [0, 2, 1], [0, 2, 1]])


def test_counts_examples():
    assert count_crossed_homs(GroupAction.trivial(Z3, Z3)) == 3
    assert count_crossed_homs(inversion_action()) == 3
    s3 = catalog("S3")
    assert count_crossed_homs(GroupAction.trivial(s3, catalog("Z2"))) == hom_count(s3, Z2)


def test_trivial_action_counts_homs():
    for fl, bl in [("Z4", "Z2xZ2"), ("S3", "Z3"), ("Z2xZ2", "S3"), ("Q8", "Z2")]:
        F, B = catalog(fl), catalog(bl)
        assert count_crossed_homs(GroupAction.trivial(F, B)) == hom_count(F, B)


def test_routes_agree_with_brute_force():
    for fl, bl in [("Z2", "Z3"), ("Z3", "Z2xZ2"), ("Z2", "S3"), ("Z4", "Z4")]:
        for act in all_actions(catalog(fl), catalog(bl)):
            direct = crossed_homs(act)
            nb = act.target.order
            via = [tuple(x % nb for x in phi) for phi in sections_via_semidirect(act)]
            assert sorted(direct) == sorted(via)
            assert len(direct) == count_crossed_homs_brute(act)


def test_all_elements_as_generators():
    act = all_actions(Z2, catalog("S3"))[-1]
    every = list(act.actor.elements)
    assert count_crossed_homs(act, gens=every) == count_crossed_homs(act)


def test_abelianizations():
    assert abelianization(catalog("Z6")) == (6,)
    assert abelianization(catalog("S3")) == (2,)
    assert abelianization(catalog("A4")) == (3,)
    assert abelianization(catalog("Q8")) == (2, 2)
    assert abelianization(catalog("Z2xZ4")) == (2, 4)
    assert abelianization(catalog("A5")) == ()
    assert abelian_exponent(catalog("A5")) == 1


def test_abelianization_order_matches_commutator_index():
    for label in ("S4", "D6", "Z2xS3", "Z3xQ8", "Z2xZ12"):
        g = catalog(label)
        ab = abelianization(g)
        assert int(np.prod(ab)) * commutator_subgroup(g).order == g.order
        assert all(b % a == 0 for a, b in zip(ab, ab[1:]))


def test_theorem4_examples():
    reps = theorem4_verdict(GroupAction.trivial(Z3, Z3))
    assert [r.bound for r in reps] == [1, 3, 3] and all(r.divides for r in reps)
    reps = theorem4_verdict(inversion_action())
    assert [r.breakdown.get("n") for r in reps[:-1]] == [1, 2]
    assert reps[1].bound == 1 and all(r.divides for r in reps)


def test_perfect_actor_only_n_one():
    a5 = catalog("A5")
    reps = theorem4_verdict(GroupAction.trivial(a5, Z2))
    assert [r.breakdown.get("n") for r in reps[:-1]] == [1]
    assert reps[-1].bound == 1


def test_automorphism_counts():
    assert len(automorphisms(catalog("Z2xZ2"))) == 6
    assert len(automorphisms(catalog("S3"))) == 6
    assert len(automorphisms(catalog("Q8"))) == 24
    assert len(automorphisms(catalog("Z8"))) == 4


def test_corpus_theorem4():
    labels = ["Z2", "Z3", "Z4", "Z2xZ2", "S3"]
    for fl in labels:
        for bl in labels:
            for act in all_actions(catalog(fl), catalog(bl)):
                reps = theorem4_verdict(act)
                assert all(r.divides for r in reps)
                assert reps[-1].bound == group_gcd(act.target, abelian_exponent(act.actor))


def test_load_action_from_generator():
    doc = {"actor": {"catalog": "Z4"}, "target": {"catalog": "Z2xZ2"},
           "perms": {"g": [0, 2, 1, 3]}}
    act = load_action(doc)
    assert act.perms[2].tolist() == [0, 1, 2, 3]
    assert count_crossed_homs(act) == count_crossed_homs_brute(act)
