import itertools
import json

import numpy as np
import pytest

from divisorlab.errors import BadNames, NotAGroup, NotNormal, SizeCapExceeded
from divisorlab.groups import (
    Subgroup,
    all_subgroups,
    brauer_check,
    build_group,
    catalog,
    catalog_corpus,
    centralizer,
    double_coset,
    double_coset_representatives,
    group_gcd,
    load_group,
    normalizer_of_subset,
    subgroup_generated,
)

from . import oracles


@pytest.fixture(scope="module")
def s3():
    return catalog("S3")


def el(g, name):
    return g.index_of(name)


# construction and validation

def test_trivial_table():
    g = build_group([[0]], ["e"])
    assert g.order == 1 and g.exponent == 1


def test_z2_table():
    g = build_group([[0, 1], [1, 0]], ["e", "a"])
    assert g.order == 2 and g.is_abelian


def test_missing_inverse_rejected():
    with pytest.raises(NotAGroup) as err:
        build_group([[0, 1], [1, 1]], ["e", "a"])
    assert err.value.reason == "inverse"


def test_out_of_range_entry_is_closure_failure():
    with pytest.raises(NotAGroup) as err:
        build_group([[0, 2], [1, 0]], ["e", "a"])
    assert err.value.reason == "closure"


def test_non_associative_table_rejected():
    # a loop of order 5 with identity and inverses that is not associative
    t = [[0, 1, 2, 3, 4],
         [1, 0, 3, 4, 2],
         [2, 4, 0, 1, 3],
         [3, 2, 4, 0, 1],
         [4, 3, 1, 2, 0]]
    with pytest.raises(NotAGroup) as err:
        build_group(t, list("eabcd"))
    assert err.value.reason == "associativity"


def test_no_identity_rejected():
    with pytest.raises(NotAGroup) as err:
        build_group([[1, 1], [1, 1]], ["a", "b"])
    assert err.value.reason in ("identity", "inverse")


def test_duplicate_names_rejected():
    with pytest.raises(BadNames):
        build_group([[0, 1], [1, 0]], ["e", "e"])


def test_identity_moved_to_front():
    # Z/2 written with the identity second
    g = build_group([[1, 0], [0, 1]], ["a", "e"])
    assert g.names[0] == "e"
    assert g.mul(1, 1) == 0


def test_table_is_read_only():
    g = catalog("Z4")
    with pytest.raises(ValueError):
        g.table[0, 0] = 1


def test_json_roundtrip(tmp_path):
    g = catalog("D4")
    path = tmp_path / "d4.json"
    path.write_text(json.dumps(g.to_json()))
    h = load_group(str(path))
    assert h.names == g.names and np.array_equal(h.table, g.table)


def test_declared_order_mismatch():
    with pytest.raises(NotAGroup):
        load_group({"order": 3, "names": ["e", "a"], "table": [[0, 1], [1, 0]]})


# catalog

def test_catalog_sizes():
    assert catalog("cyclic 1").order == 1
    assert catalog("symmetric 3").order == 6
    assert catalog("S4").order == 24
    assert catalog("A5").order == 60
    assert catalog("D5").order == 10
    assert catalog("Q8").order == 8


def test_direct_product_of_cyclics():
    g = catalog("direct_product(Z2,Z3)")
    assert g.order == 6 and g.is_abelian


def test_catalog_cap():
    with pytest.raises(SizeCapExceeded):
        catalog("S7")


def test_dihedral_names():
    g = catalog("D4")
    r, s = el(g, "r"), el(g, "s")
    assert g.mul(r, s) == el(g, "r s")
    assert g.mul(s, r) == el(g, "r^3 s")


def test_permutation_composition_left_first():
    g = catalog("S3")
    # apply (12) first, then (23): 1->2->3, 2->1, 3->2, i.e. (132) in cycle notation
    p = oracles.perm_compose((1, 0, 2), (0, 2, 1))
    assert p == (2, 0, 1)
    assert g.mul(el(g, "(12)"), el(g, "(23)")) == el(g, "(132)")


def test_symmetric_group_matches_naive_table():
    g = catalog("S4")
    perms = list(itertools.permutations(range(4)))
    # rebuild from names: parse cycle notation independently
    def parse(name):
        p = list(range(4))
        for cyc in name.strip("()").split(")("):
            if not cyc:
                continue
            pts = [int(c) - 1 for c in cyc]
            for a, b in zip(pts, pts[1:] + pts[:1]):
                p[a] = b
        return tuple(p)
    as_perm = [parse(n) for n in g.names]
    assert sorted(as_perm) == perms
    idx = {p: i for i, p in enumerate(as_perm)}
    for a in range(24):
        for b in range(24):
            assert g.mul(a, b) == idx[oracles.perm_compose(as_perm[a], as_perm[b])]


def test_quaternion_relations():
    q = catalog("Q8")
    i, j, k, m = (el(q, n) for n in ("i", "j", "k", "-1"))
    assert q.pow(i, 2) == q.pow(j, 2) == q.pow(k, 2) == m
    assert q.prod([i, j, k]) == m


# subgroup primitives

def test_subgroup_generated(s3):
    assert subgroup_generated(s3, []).members == (0,)
    assert subgroup_generated(s3, [el(s3, "(123)")]).order == 3
    assert subgroup_generated(s3, [el(s3, "(12)"), el(s3, "(13)")]).order == 6


def test_subgroup_generated_matches_naive_closure():
    for g in catalog_corpus(12):
        for a in g.elements:
            for b in g.elements:
                ref = oracles.closure(g.mul, [a, b], 0)
                assert subgroup_generated(g, [a, b]).member_set == ref


def test_centralizer(s3):
    assert centralizer(s3, []).order == 6
    assert centralizer(catalog("Z6"), [1, 2]).order == 6
    c = centralizer(s3, [el(s3, "(123)")])
    assert c.member_set == {0, el(s3, "(123)"), el(s3, "(132)")}


def test_centralizer_matches_filter():
    g = catalog("D6")
    for s in g.elements:
        ref = {x for x in g.elements if g.mul(x, s) == g.mul(s, x)}
        assert centralizer(g, [s]).member_set == ref


def test_normalizer(s3):
    assert normalizer_of_subset(s3, [0]).order == 6
    assert normalizer_of_subset(s3, s3.elements).order == 6
    h = subgroup_generated(s3, [el(s3, "(12)")])
    dc = double_coset(h, el(s3, "(123)"))
    ref = {g for g in s3.elements
           if {s3.conj(a, g) for a in dc.members} == set(dc.members)}
    assert normalizer_of_subset(s3, dc.members).member_set == ref


def test_double_coset(s3):
    h = subgroup_generated(s3, [el(s3, "(12)")])
    g = el(s3, "(123)")
    dc = double_coset(h, g)
    ref = {s3.prod([a, g, b]) for a in h.members for b in h.members}
    assert set(dc.members) == ref and dc.size == 4
    assert set(double_coset(Subgroup.trivial(s3), g).members) == {g}
    assert double_coset(Subgroup.whole(s3), g).size == 6


def test_double_cosets_partition_group():
    g = catalog("S4")
    for h in all_subgroups(g):
        reps = double_coset_representatives(h)
        sizes = sum(double_coset(h, r).size for r in reps)
        assert sizes == g.order


def test_double_coset_size_identity_sweep():
    for g in catalog_corpus(24):
        if g.order > 24:
            continue
        for h in all_subgroups(g):
            for x in double_coset_representatives(h):
                inter = len(h.member_set & h.conjugate(x).member_set)
                assert double_coset(h, x).size * inter == h.order ** 2


def test_all_subgroup_counts():
    counts = {"Z1": 1, "Z6": 4, "S3": 6, "D4": 10, "Q8": 6, "A4": 10, "S4": 30,
              "Z2xZ2xZ2": 16, "Z2xD4": 35}
    for label, n in counts.items():
        assert len(all_subgroups(catalog(label))) == n, label


def test_all_subgroups_match_brute_force():
    for g in catalog_corpus(12):
        found = {frozenset(s.members) for s in all_subgroups(g)}
        assert found == oracles.brute_subgroups(g), g.label


def test_lagrange_everywhere():
    for g in catalog_corpus(24):
        for h in all_subgroups(g):
            assert g.order % h.order == 0


def test_subgroup_checked_rejects_non_subgroup(s3):
    with pytest.raises(ValueError):
        Subgroup.checked(s3, [0, el(s3, "(12)"), el(s3, "(13)")])


# GCD(G, n)

def test_group_gcd_examples(s3):
    assert group_gcd(s3, 1) == 1
    assert group_gcd(s3, 0) == 6
    assert group_gcd(s3, 4) == 2
    assert group_gcd(s3, 4, oracle=True) == 2
    assert group_gcd(s3, 0, oracle=True) == 6


def test_group_gcd_against_brute_oracle():
    for g in catalog_corpus(12):
        for n in range(0, 13):
            assert group_gcd(g, n) == oracles.gcd_oracle(g, n), (g.label, n)


# Brauer lemma

def test_brauer_examples(s3):
    a3 = subgroup_generated(s3, [el(s3, "(123)")])
    v, u = el(s3, "(12)"), el(s3, "(123)")
    w = brauer_check(s3, a3, v, u)
    assert w in a3
    assert s3.conj(s3.pow(v, 3), w) == s3.pow(s3.mul(v, u), 3)
    assert brauer_check(s3, a3, v, 0) in a3
    assert brauer_check(s3, Subgroup.trivial(s3), v, 0) == 0


def test_brauer_requires_normal(s3):
    h = subgroup_generated(s3, [el(s3, "(12)")])
    with pytest.raises(NotNormal):
        brauer_check(s3, h, el(s3, "(123)"), el(s3, "(12)"))


def test_oracle_mode_cap():
    with pytest.raises(SizeCapExceeded):
        group_gcd(catalog("S5"), 6, oracle=True)
