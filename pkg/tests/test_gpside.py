import itertools
import json

import pytest

from hgs.errors import PreconditionError
from hgs.grouplab import SubgroupHandle, all_subgroups, catalog, catalog_group, construct_named, normal_subgroups, \
    regular_representation, right_regular_representation
from hgs.gpside import (InducedRecipe, classify_structure, construct_induced, count_by_type, enumerate_induced,
                        enumerate_regular_normalized, enumerate_structures, g_stable_subgroups,
                        guaranteed_split_structure, recipe_pairs, relabel_transversal, restrict_structure,
                        split_decompositions)
from hgs.permcore import generate_closure, is_regular, normalizes, semiregular_perms
from hgs.structures import GaloisContext, make_structure, structure_from_json


def galois(spec):
    return GaloisContext.galois(construct_named(spec))


def brute_structures(context):
    # regular subgroups of Sym(d) generated by at most two semiregular elements
    d = context.degree
    cands = list(semiregular_perms(d))
    seen = set()
    for a, b in itertools.combinations_with_replacement(cands, 2):
        if not (a * b).is_semiregular():
            continue
        N = generate_closure(d, [a, b])
        if len(N) == d and is_regular(N) and normalizes(context.image, N):
            seen.add(N.element_set())
    return seen


def test_enumeration_examples():
    assert len(enumerate_structures(galois("C6"))) == 3
    ss = enumerate_structures(galois("S3"))
    assert len(ss) == 5 and count_by_type(ss) == {"C6": 3, "S3": 2}
    assert sum(s.flags.classical for s in ss) == 1 and sum(s.flags.canonical_nonclassical for s in ss) == 1
    a4 = construct_named("A4")
    ctx = GaloisContext(a4, a4.subgroup([a4.labels.index("(1 2 3)")]))
    assert [s.type for s in enumerate_structures(ctx, "direct")] == ["C2xC2"]
    assert len(enumerate_structures(galois("C1"))) == 1


@pytest.mark.parametrize("spec", ["C2", "C3", "C4", "V4", "C5", "S3", "C6"])
def test_direct_engine_matches_brute_force(spec):
    ctx = galois(spec)
    assert {s.N.element_set() for s in enumerate_regular_normalized(ctx)} == brute_structures(ctx)


@pytest.mark.parametrize("spec", [s for _, s in catalog(8)])
def test_engines_agree(spec):
    ctx = GaloisContext.galois(catalog_group(spec))
    a = enumerate_structures(ctx, "direct")
    b = enumerate_structures(ctx, "holomorph")
    assert [s.N for s in a] == [s.N for s in b]
    assert len({s.N.element_set() for s in a}) == len(a)


def test_engines_agree_on_coset_contexts():
    for spec in ("S3", "A4", "D8"):
        G = construct_named(spec)
        for Gp in (h for h in all_subgroups(G) if 1 < h.order < G.order):
            ctx = GaloisContext(G, Gp)
            a = {s.N.element_set() for s in enumerate_structures(ctx, "direct")}
            b = {s.N.element_set() for s in enumerate_structures(ctx, "holomorph")}
            assert a == b


def test_stable_subgroups():
    G = construct_named("S3")
    rho = make_structure(GaloisContext.galois(G), right_regular_representation(G).image)
    assert len(g_stable_subgroups(rho)) == len(all_subgroups(G))
    lam = make_structure(GaloisContext.galois(G), regular_representation(G).image)
    assert sorted(h.order for h in g_stable_subgroups(lam)) == sorted(h.order for h in normal_subgroups(G))


def test_split_decompositions():
    G = construct_named("C6")
    s = make_structure(GaloisContext.galois(G), right_regular_representation(G).image)
    assert sorted((u.order, v.order) for u, v in split_decompositions(s)) == [(2, 3)]
    q = construct_named("Q8")
    s = make_structure(GaloisContext.galois(q), right_regular_representation(q).image)
    assert split_decompositions(s) == []


def test_relabel_transversal_keeps_structure():
    a4 = construct_named("A4")
    gp = a4.subgroup([a4.labels.index("(1 2 3)")])
    v4 = next(h for h in normal_subgroups(a4) if h.order == 4)
    s = enumerate_structures(GaloisContext(a4, gp))[0]
    t = relabel_transversal(s, v4.members)
    assert t.context.transversal == v4.members and t.type == s.type


def test_construct_induced_s3():
    G = construct_named("S3")
    H = next(h for h in normal_subgroups(G) if h.order == 3)
    Gp = next(h for h in all_subgroups(G) if h.order == 2)
    s = guaranteed_split_structure(G, H, Gp)
    assert s.flags.induced and s.type == "C6"
    recipe = s.recipes[0]
    assert recipe.N1.type == "C3" and recipe.N2.type == "C2"


def test_construct_induced_rejects_bad_recipes():
    G = construct_named("S3")
    H = next(h for h in normal_subgroups(G) if h.order == 3)
    Gp = next(h for h in all_subgroups(G) if h.order == 2)
    with pytest.raises(PreconditionError):
        guaranteed_split_structure(G, H, G.subgroup(range(6)))
    with pytest.raises(PreconditionError):
        guaranteed_split_structure(G, Gp, H)  # Gp is not normal
    with pytest.raises(PreconditionError):
        guaranteed_split_structure(G, H, G.trivial_subgroup())
    good = guaranteed_split_structure(G, H, Gp).recipes[0]
    with pytest.raises(PreconditionError):
        construct_induced(InducedRecipe(H, Gp, good.N2, good.N1))


def n2_factor(s, Gp):
    # elements of N sending 1 into G' form the second factor
    inside = Gp.member_set()
    return SubgroupHandle(s.abstract, [k for k, p in enumerate(s.N.elements) if p[0] in inside])


@pytest.mark.parametrize("spec", [s for _, s in catalog(12, complete_only=True)])
def test_induced_structures_are_structures(spec):
    G = catalog_group(spec)
    entries = enumerate_induced(G)
    assert len({s.N.element_set() for s, _ in entries}) == len(entries)
    for s, recipes in entries:
        assert is_regular(s.N) and normalizes(s.context.image, s.N)
        for r in recipes:
            assert construct_induced(r).N.element_set() == s.N.element_set()
            Gp, back = restrict_structure(s, n2_factor(s, r.Gp))
            assert Gp.members == r.Gp.members and back.N.element_set() == r.N2.N.element_set()
        c = classify_structure(s)
        assert c.flags.induced and c.flags.split_gstable
        assert {r.key() for r in recipes} <= {r.key() for r in c.recipes}


def test_classification_matches_enumeration():
    for spec in ("C6", "S3", "Q8", "A4", "D8", "Dic3"):
        G = construct_named(spec)
        induced = {s.N.element_set() for s, _ in enumerate_induced(G)}
        for s in enumerate_structures(GaloisContext.galois(G)):
            c = classify_structure(s)
            assert c.flags.induced == (s.N.element_set() in induced)
            if c.flags.induced:
                assert c.flags.split_gstable
            if c.flags.split_gstable:
                assert c.flags.split_abstract


def test_guaranteed_split_over_catalog():
    for name, spec in catalog(24):
        G = catalog_group(spec)
        for H, Gp in recipe_pairs(G):
            s = guaranteed_split_structure(G, H, Gp)
            assert s.flags.induced and s.N.degree == G.order


def test_no_induced_structures_for_quaternions():
    assert enumerate_induced(construct_named("Q8")) == []
    assert recipe_pairs(construct_named("Q8")) == []


def test_json_round_trip():
    G = construct_named("D8")
    for s in enumerate_structures(GaloisContext.galois(G)):
        data = json.loads(json.dumps(s.to_json()))
        back = structure_from_json(data, G)
        assert back.N.element_set() == s.N.element_set() and back.type == s.type


def test_restrict_classical():
    G = construct_named("S3")
    s = make_structure(GaloisContext.galois(G), right_regular_representation(G).image)
    two = next(h for h in all_subgroups(s.abstract) if h.order == 2)
    Gp, r = restrict_structure(s, two)
    assert Gp.order == 2 and r.flags.classical


def test_restrict_rejects_unstable_subgroup():
    G = construct_named("S3")
    s = make_structure(GaloisContext.galois(G), regular_representation(G).image)
    two = next(h for h in all_subgroups(s.abstract) if h.order == 2)
    with pytest.raises(PreconditionError):
        restrict_structure(s, two)


def test_jobs_do_not_change_output():
    G = construct_named("D12")
    a = enumerate_induced(G, jobs=1)
    b = enumerate_induced(G, jobs=3)
    assert [s.to_json() for s, _ in a] == [s.to_json() for s, _ in b]
