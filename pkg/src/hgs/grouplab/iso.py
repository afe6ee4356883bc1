"""Isomorphisms and automorphisms by backtracking over generator images."""

from __future__ import annotations

from collections import Counter
from typing import Iterator, Sequence

from ..config import get_caps
from ..permcore import Perm, PermGroup
from .cayley import CayleyGroup, GroupHom


def _profile(g: CayleyGroup) -> list[tuple[int, int]]:
    return list(zip(g.element_orders, g.class_size))


def generating_set(g: CayleyGroup) -> list[int]:
    """A small generating set, built greedily.

    Each step adds the element enlarging the generated subgroup the most;
    ties go to elements whose (order, class size) profile is rarest, which
    keeps backtracking searches over generator images narrow.
    """
    cached = g.__dict__.get("_generating_set")
    if cached is not None:
        return list(cached)
    if g.order == 1:
        return []
    prof = _profile(g)
    rarity = Counter(prof)
    gens: list[int] = []
    current = frozenset([0])
    while len(current) < g.order:
        best = None
        for x in range(1, g.order):
            if x in current:
                continue
            size = len(g.closure(gens + [x]))
            key = (-size, rarity[prof[x]], -g.element_orders[x], x)
            if best is None or key < best[0]:
                best = (key, x, size)
        gens.append(best[1])
        current = g.closure(gens)
    g.__dict__["_generating_set"] = tuple(gens)
    return gens


def extend_hom(src: CayleyGroup, dst: CayleyGroup, gens: Sequence[int], imgs: Sequence[int],
               injective: bool = True) -> dict[int, int] | None:
    """Extend gens -> imgs to a homomorphism on the subgroup the gens generate.

    Returns the map on that subgroup, or None if the assignment is not
    consistent (or, with ``injective``, not one-to-one).  Consistency on every
    edge x -> x*g of the Cayley graph is equivalent to being a homomorphism.
    """
    ts, td = src.table, dst.table
    phi = {0: 0}
    used = {0: 0} if injective else None
    stack = [0]
    while stack:
        x = stack.pop()
        fx = phi[x]
        rowx = ts[x]
        rowf = td[fx]
        for gi, hi in zip(gens, imgs):
            y = rowx[gi]
            fy = rowf[hi]
            prev = phi.get(y)
            if prev is None:
                if injective:
                    if fy in used:
                        return None
                    used[fy] = y
                phi[y] = fy
                stack.append(y)
            elif prev != fy:
                return None
    return phi


def _iter_isomorphisms(a: CayleyGroup, b: CayleyGroup, first_only: bool) -> Iterator[tuple[int, ...]]:
    if a.order != b.order or a.fingerprint != b.fingerprint:
        return
    if a.order == 1:
        yield (0,)
        return
    gens = generating_set(a)
    pa, pb = _profile(a), _profile(b)
    by_prof: dict[tuple[int, int], list[int]] = {}
    for y in range(b.order):
        by_prof.setdefault(pb[y], []).append(y)
    cands = [by_prof.get(pa[x], []) for x in gens]
    n = a.order
    imgs: list[int] = []

    def rec(k):
        if k == len(gens):
            phi = extend_hom(a, b, gens, imgs)
            if phi is not None and len(phi) == n:
                yield tuple(phi[x] for x in range(n))
            return
        for y in cands[k]:
            imgs.append(y)
            # prune on the subgroup generated so far
            if k + 1 == len(gens) or extend_hom(a, b, gens[:k + 1], imgs) is not None:
                yield from rec(k + 1)
            imgs.pop()

    for iso in rec(0):
        yield iso
        if first_only:
            return


def find_isomorphism(a: CayleyGroup, b: CayleyGroup) -> GroupHom | None:
    for images in _iter_isomorphisms(a, b, first_only=True):
        return GroupHom(a, b, images, check=False)
    return None


def are_isomorphic(a: CayleyGroup, b: CayleyGroup) -> bool:
    return find_isomorphism(a, b) is not None


def all_isomorphisms(a: CayleyGroup, b: CayleyGroup) -> list[tuple[int, ...]]:
    return list(_iter_isomorphisms(a, b, first_only=False))


def automorphism_group(g: CayleyGroup) -> PermGroup:
    """Aut(G) as permutations of the element indices."""
    get_caps().check_group(g.order)
    auts = [Perm._raw(im) for im in _iter_isomorphisms(g, g, first_only=False)]
    return PermGroup(g.order, auts, _aut_generators(g, auts))


def _aut_generators(g: CayleyGroup, auts) -> list[Perm]:
    # generators keep normalizer checks cheap; pick greedily from the sorted list
    from ..permcore import generate_closure

    auts = sorted(auts)
    gens: list[Perm] = []
    current = {Perm.identity(g.order)}
    for a in auts[1:]:
        if len(current) == len(auts):
            break
        if a in current:
            continue
        gens.append(a)
        current = generate_closure(g.order, gens).element_set()
    return gens
