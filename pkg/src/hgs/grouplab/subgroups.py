"""Subgroup lattice, complements, Sylow subgroups and the parity kernel."""

from __future__ import annotations

from math import gcd

from ..config import get_caps
from ..errors import InvariantViolation, PreconditionError
from .cayley import CayleyGroup, SubgroupHandle, regular_representation


def all_subgroups(g: CayleyGroup) -> list[SubgroupHandle]:
    """Every subgroup, sorted by (order, members).

    Built bottom-up: cyclic subgroups first, then joins with cyclic subgroups
    until nothing new appears (every subgroup is a join of cyclic ones).
    """
    cached = g.__dict__.get("_all_subgroups")
    if cached is not None:
        return list(cached)
    get_caps().check_group(g.order)
    cyclic: dict[frozenset, int] = {}
    for x in range(g.order):
        c = g.closure([x])
        if c not in cyclic:
            cyclic[c] = x
    found: dict[frozenset, list[int]] = {c: [x] for c, x in cyclic.items()}
    queue = list(found)
    cyc_items = list(cyclic.items())
    while queue:
        s = queue.pop()
        gens = found[s]
        for c, x in cyc_items:
            if x in s:
                continue
            j = g.closure(gens + [x])
            if j not in found:
                found[j] = gens + [x]
                queue.append(j)
    result = sorted((SubgroupHandle(g, s) for s in found), key=lambda h: (h.order, h.members))
    g.__dict__["_all_subgroups"] = tuple(result)
    return result


def normal_subgroups(g: CayleyGroup) -> list[SubgroupHandle]:
    return [h for h in all_subgroups(g) if h.is_normal]


def _check_parent(g: CayleyGroup, h: SubgroupHandle) -> None:
    if h.parent is not g and h.parent.table != g.table:
        raise PreconditionError("subgroup belongs to a different group")
    if not h.is_closed():
        raise PreconditionError("member set is not a subgroup")


def _rehome(g: CayleyGroup, h: SubgroupHandle) -> SubgroupHandle:
    return h if h.parent is g else SubgroupHandle(g, h.members)


def normal_complements(g: CayleyGroup, gp: SubgroupHandle) -> list[SubgroupHandle]:
    """Normal H with H n G' = 1 and |H||G'| = |G|."""
    _check_parent(g, gp)
    need = g.order // gp.order
    return [h for h in normal_subgroups(g)
            if h.order == need and len(h.member_set() & gp.member_set()) == 1]


def complements_of_normal(g: CayleyGroup, h: SubgroupHandle) -> list[SubgroupHandle]:
    """Subgroups K with K n H = 1 and |K||H| = |G|, for H normal."""
    _check_parent(g, h)
    h = _rehome(g, h)
    if not h.is_normal:
        raise PreconditionError("subgroup is not normal")
    need = g.order // h.order
    return [k for k in all_subgroups(g)
            if k.order == need and len(k.member_set() & h.member_set()) == 1]


def is_hall(g: CayleyGroup, h: SubgroupHandle) -> bool:
    return gcd(h.order, g.order // h.order) == 1


def are_conjugate(g: CayleyGroup, a: SubgroupHandle, b: SubgroupHandle) -> bool:
    if a.order != b.order:
        return False
    target = b.member_set()
    return any(frozenset(g.conj(x, m) for m in a.members) == target for x in range(g.order))


def normal_core(g: CayleyGroup, h: SubgroupHandle) -> SubgroupHandle:
    core = set(h.members)
    for x in range(g.order):
        core &= {g.conj(x, m) for m in h.members}
    return SubgroupHandle(g, core)


def _prime_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def sylow_subgroups(g: CayleyGroup, p: int) -> list[SubgroupHandle]:
    if not _is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if g.order % p:
        raise PreconditionError(f"{p} does not divide |G| = {g.order}")
    q = _prime_part(g.order, p)
    return [h for h in all_subgroups(g) if h.order == q]


def parity_kernel(g: CayleyGroup) -> SubgroupHandle:
    """Elements acting as even permutations in the left regular representation.

    For |G| = 2m with m odd an involution acts as a product of m
    transpositions, hence oddly, so this kernel has index exactly 2.
    """
    if g.order % 2 or (g.order // 2) % 2 == 0:
        raise PreconditionError(f"|G| = {g.order} is not twice an odd number")
    lam = regular_representation(g)
    kern = SubgroupHandle(g, [x for x in range(g.order) if lam(x).sign() == 1])
    if kern.order * 2 != g.order:
        raise InvariantViolation("parity kernel does not have index 2")
    return kern
