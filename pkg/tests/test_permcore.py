import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from hgs.grouplab import construct_named, regular_representation
from hgs.permcore import (Perm, PermGroup, format_cycles, generate_closure, is_regular, normalizes,
                          normalizes_all_pairs, parse_cycles, product_embedding, semiregular_perms)

perms = st.integers(1, 7).flatmap(lambda n: st.permutations(range(n)).map(Perm))


def brute_closure(gens):
    # repeated multiplication until nothing new appears
    elems = set(gens) | {Perm.identity(len(gens[0]))}
    while True:
        new = {a * b for a in elems for b in elems} - elems
        if not new:
            return elems
        elems |= new


def test_perm_rejects_non_bijection():
    with pytest.raises(ValueError):
        Perm([0, 0, 1])


def test_composition_applies_right_factor_first():
    a = parse_cycles("(0 1)", 3)
    b = parse_cycles("(1 2)", 3)
    assert (a * b)(1) == a(b(1)) == 2


@given(perms)
def test_inverse_and_identity(p):
    e = Perm.identity(p.degree)
    assert p * p.inverse() == e == p.inverse() * p
    assert p * e == p


@given(perms)
def test_cycle_notation_round_trips(p):
    assert parse_cycles(format_cycles(p), p.degree) == p


def test_identity_spelling():
    assert format_cycles(Perm.identity(4)) == "()"
    assert parse_cycles("()", 4) == Perm.identity(4)


@pytest.mark.parametrize("text", ["(0 1", "(0 0)", "(0 5)", "abc", ""])
def test_parse_rejects_malformed(text):
    with pytest.raises(ValueError):
        parse_cycles(text, 4)


def test_closure_of_3_cycle():
    assert len(generate_closure(3, [parse_cycles("(0 1 2)", 3)])) == 3


def test_closure_dihedral_against_brute_force():
    gens = [parse_cycles("(0 1 2 3)", 4), parse_cycles("(0 2)", 4)]
    g = generate_closure(4, gens)
    assert len(g) == 8
    assert g.element_set() == brute_closure(gens)


def test_closure_degree_mismatch():
    with pytest.raises(ValueError):
        generate_closure(3, [Perm.identity(4)])


@given(st.lists(st.permutations(range(5)).map(Perm), min_size=1, max_size=3))
@settings(max_examples=40, deadline=None)
def test_closure_is_a_group(gens):
    g = generate_closure(5, gens)
    s = g.element_set()
    assert Perm.identity(5) in s
    assert all(a * b in s for a in g for b in g)
    assert all(a.inverse() in s for a in g)
    assert 120 % len(g) == 0
    assert g.elements == tuple(sorted(s))


def test_regular_examples():
    assert is_regular(regular_representation(construct_named("C3")).image)
    a4 = generate_closure(4, [parse_cycles("(0 1 2)", 4), parse_cycles("(0 1)(2 3)", 4)])
    assert len(a4) == 12 and not is_regular(a4)


def test_regular_implies_one_element_per_point():
    n = regular_representation(construct_named("D8")).image
    assert sorted(p[0] for p in n) == list(range(8))


def test_quaternion_example_group():
    gens = [parse_cycles(c, 8) for c in ("(0 2)(1 3)(4 6)(5 7)", "(0 3)(1 2)(4 5)(6 7)", "(0 7)(1 4)(2 5)(3 6)")]
    n = generate_closure(8, gens)
    assert len(n) == 8
    assert all(p.order() == 2 for p in n if not p.is_identity())
    assert is_regular(n)
    lam = regular_representation(construct_named("Q8")).image
    assert normalizes(lam, n) and normalizes_all_pairs(lam, n)


def test_group_normalizes_itself():
    g = regular_representation(construct_named("A4")).image
    assert normalizes(g, g)


def test_normalizes_degree_mismatch():
    with pytest.raises(ValueError):
        normalizes(PermGroup(2, [Perm.identity(2)]), PermGroup(3, [Perm.identity(3)]))


def test_normalizes_generators_agree_with_all_pairs():
    rng = random.Random(3)
    for degree in range(2, 7):
        for _ in range(12):
            a = generate_closure(degree, [Perm(rng.sample(range(degree), degree)) for _ in range(rng.randint(1, 2))])
            b = generate_closure(degree, [Perm(rng.sample(range(degree), degree))])
            assert normalizes(a, b) == normalizes_all_pairs(a, b)


def test_product_embedding_examples():
    assert product_embedding(Perm.identity(2), Perm.identity(3)) == Perm.identity(6)
    t = parse_cycles("(0 1)", 2)
    assert product_embedding(t, t) == parse_cycles("(0 3)(1 2)", 4)


@given(st.permutations(range(2)), st.permutations(range(3)), st.permutations(range(2)), st.permutations(range(3)))
def test_product_embedding_is_a_homomorphism(a, b, c, d):
    a, b, c, d = map(Perm, (a, b, c, d))
    assert product_embedding(a, b) * product_embedding(c, d) == product_embedding(a * c, b * d)


def _small_groups(degree):
    seen = {}
    all_perms = [Perm(p) for p in itertools.permutations(range(degree))]
    for p, q in itertools.product(all_perms, repeat=2):
        g = generate_closure(degree, [p, q])
        seen[g.element_set()] = g
    return list(seen.values())


def test_embedded_products_regular_iff_factors_regular():
    for t in range(1, 5):
        for r in range(1, 5):
            for a in _small_groups(t):
                for b in _small_groups(r):
                    elems = [product_embedding(x, y) for x in a for y in b]
                    g = generate_closure(t * r, elems)
                    assert len(g) == len(a) * len(b)
                    assert is_regular(g) == (is_regular(a) and is_regular(b))


def test_semiregular_perms_counts():
    # fixed-point-free with equal cycles on 4 points: three (2,2) and six 4-cycles
    assert len(list(semiregular_perms(4))) == 9
    assert all(p[0] == 2 for p in semiregular_perms(4, base_image=2))
    assert len(list(semiregular_perms(4, base_image=2))) == 3
