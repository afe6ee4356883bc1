"""Acceptance criteria 1-12, each printing one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py`` or directly as a script.
"""

import contextlib
import io
import itertools
import json
import sys
import time

import pytest

from hgs.cli import main
from hgs.grouplab import (are_conjugate, catalog, catalog_group, complements_of_normal, construct_named,
                          groups_of_order, identify_type, is_hall, normal_subgroups, regular_representation,
                          CayleyGroup)
from hgs.gpside import (classify_structure, count_by_type, count_induced_route, enumerate_induced,
                        enumerate_structures)
from hgs.holoside import count_e
from hgs.paperlab import QUATERNION_GENERATORS
from hgs.permcore import generate_closure, is_regular, normalizes, parse_cycles
from hgs.structures import GaloisContext, make_structure


def _say(line, capsys):
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)


def check(number, title, budget, body, capsys=None):
    t0 = time.perf_counter()
    detail, ok = "", False
    try:
        ok, detail = body()
    except Exception as e:  # reported, then re-raised by the assert below
        detail = f"{type(e).__name__}: {e}"
    dt = time.perf_counter() - t0
    in_time = dt < budget
    status = "PASS" if ok and in_time else "FAIL"
    _say(f"[criterion {number:2d}] {status}  {title}  ({dt:.1f}s of {budget}s)  {detail}", capsys)
    assert ok, detail
    assert in_time, f"took {dt:.1f}s, budget {budget}s"


def gal(spec):
    return GaloisContext.galois(construct_named(spec))


def p_part(n, p):
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


# -- bodies ----------------------------------------------------------------------

def c1():
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["count", "A4", "A4", "--format", "json"])
    e = json.loads(buf.getvalue())[0]["e"]
    return code == 0 and e == 10, f"hgs count A4 A4 -> {e}"


def c2():
    entries = enumerate_induced(construct_named("A4"))
    types = count_by_type(entries)
    complements = {r.Gp.members for _, recipes in entries for r in recipes}
    return (len(entries) == 4 and types == {"C2xC2xC3": 4} and len(complements) == 4,
            f"{len(entries)} structures {types}, {len(complements)} complements")


def c3():
    A4 = construct_named("A4")
    types = [catalog_group(spec) for _, spec in groups_of_order(12)]
    values = {identify_type(N): count_e(A4, N) for N in types}
    positive = sorted(t for t, e in values.items() if e > 0)
    return len(types) == 5 and positive == ["A4", "C2xC2xC3"], f"{values}"


def c4():
    ss = [classify_structure(s) for s in enumerate_structures(gal("S3"))]
    split = [s for s in ss if s.flags.split_abstract]
    ok = (len(ss) == 5 and count_by_type(ss) == {"C6": 3, "S3": 2}
          and len(split) == 3 and all(s.flags.induced for s in split))
    return ok, f"{count_by_type(ss)}, {len(split)} split, {sum(s.flags.induced for s in split)} induced"


def c5():
    ss = [classify_structure(s) for s in enumerate_structures(gal("C6"))]
    split = count_by_type([s for s in ss if s.flags.split_abstract])
    nonsplit = count_by_type([s for s in ss if not s.flags.split_abstract])
    return len(ss) == 3 and split == {"C6": 1} and nonsplit == {"S3": 2}, f"split {split}, nonsplit {nonsplit}"


def c6():
    c = construct_named
    got = [count_e(c("C4"), c("C4")), count_e(c("C4"), c("V4")), count_e(c("V4"), c("C4")),
           count_e(c("V4"), c("V4"))]
    return got == [1, 1, 3, 1], f"{got}"


def c7():
    out = {}
    for spec in ("Dic3", "D12"):
        G = construct_named(spec)
        entries = enumerate_induced(G)
        sylow = count_induced_route(entries, lambda r: r.H.order == p_part(G.order, 3))
        out[spec] = (sylow.get("C12", 0), sylow.get("C2xC2xC3", 0))
        if spec == "D12":
            centre = G.center().members
            out["D12-centre"] = count_induced_route(entries, lambda r: r.Gp.members == centre)
    ok = (out["Dic3"] == (3, 3) and out["D12"] == (9, 3)
          and out["D12-centre"] == {"D12": 2, "C2xC2xC3": 3})
    return ok, f"{out}"


def c8():
    Q = construct_named("Q8")
    N = generate_closure(8, [parse_cycles(c, 8) for c in QUATERNION_GENERATORS])
    lam = regular_representation(Q).image
    elementary = all(p.order() == 2 for p in N.elements if not p.is_identity())
    kind = identify_type(CayleyGroup.from_perm_group(N))
    s = classify_structure(make_structure(GaloisContext.galois(Q), N))
    induced = enumerate_induced(Q)
    ok = (len(N) == 8 and is_regular(N) and elementary and kind == "C2xC2xC2" and normalizes(lam, N)
          and induced == [] and s.flags.split_abstract is True and s.flags.induced is False)
    return ok, f"|N| = {len(N)} {kind}, induced Q8 = {len(induced)}, split {s.flags.split_abstract}, " \
               f"induced flag {s.flags.induced}"


def c9():
    out = {}
    for spec, p, types in (("F20", 5, ("C20", "C2xC2xC5")), ("F42", 7, ("C42", "C7xS3"))):
        G = construct_named(spec)
        entries = enumerate_induced(G)
        route = count_induced_route(entries, lambda r: r.H.order == p)
        out[spec] = tuple(route.get(t, 0) for t in types)
    return out == {"F20": (5, 5), "F42": (7, 14)}, f"{out}"


def c10():
    bad = []
    checked = 0
    for name, spec in catalog(8):
        G = catalog_group(spec)
        direct = count_by_type(enumerate_structures(GaloisContext.galois(G), "direct"))
        hol = {}
        for _, nspec in groups_of_order(G.order):
            N = catalog_group(nspec)
            e = count_e(G, N)
            if e:
                hol[identify_type(N)] = e
        checked += 1
        if direct != dict(sorted(hol.items())):
            bad.append((name, direct, hol))
    return not bad, f"{checked} groups, mismatches {bad}"


def c11():
    groups = recipes = structures = 0
    bad = []
    for name, spec in catalog(24):
        G = catalog_group(spec)
        groups += 1
        for s, rs in enumerate_induced(G):
            structures += 1
            recipes += len(rs)
            c = classify_structure(s, all_recipes=False)
            if not (is_regular(s.N) and normalizes(s.context.image, s.N) and c.flags.induced):
                bad.append(name)
    return not bad, f"{groups} groups, {recipes} recipes, {structures} structures, failures {bad}"


def c12():
    bad = []
    checked = 0
    for name, spec in catalog(24):
        G = catalog_group(spec)
        for H in normal_subgroups(G):
            if H.is_trivial() or H.order == G.order or not is_hall(G, H):
                continue
            checked += 1
            comps = complements_of_normal(G, H)
            if not comps or not all(are_conjugate(G, a, b) for a, b in itertools.combinations(comps, 2)):
                bad.append((name, H.members))
    return not bad, f"{checked} normal Hall subgroups, violations {bad}"


CRITERIA = [
    (1, "e(A4, A4) = 10", 60, c1),
    (2, "induced A4: 4 structures of type C2xC2xC3 on 4 complements", 10, c2),
    (3, "A4 type spectrum is {A4, C2xC2xC3}", 300, c3),
    (4, "S3: 5 structures, the 3 split ones induced", 5, c4),
    (5, "C6: 3 structures, 1 split and 2 nonsplit", 5, c5),
    (6, "order-4 table", 5, c6),
    (7, "order 4p induced counts for p = 3", 120, c7),
    (8, "quaternion example", 5, c8),
    (9, "Frobenius F20 and F42 induced counts", 300, c9),
    (10, "direct and holomorph counts agree for |G| <= 8", 300, c10),
    (11, "induced construction over catalog groups of order <= 24", 600, c11),
    (12, "Schur-Zassenhaus over catalog groups of order <= 24", 120, c12),
]


@pytest.mark.parametrize("number,title,budget,body", CRITERIA, ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(number, title, budget, body, capsys):
    check(number, title, budget, body, capsys)


if __name__ == "__main__":
    failed = 0
    for number, title, budget, body in CRITERIA:
        try:
            check(number, title, budget, body)
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
