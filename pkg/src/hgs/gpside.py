"""The permutation side: regular subgroups of Sym(G/G') normalized by G, and induced structures."""

from __future__ import annotations

import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable

from .config import get_caps, set_caps
from .errors import InvariantViolation, PreconditionError, SpecError
from .grouplab import (CayleyGroup, SubgroupHandle, all_subgroups, complements_of_normal, generating_set,
                       groups_of_order, is_complete_order, normal_complements, normal_subgroups,
                       right_regular_representation)
from .permcore import (Perm, PermGroup, close_by_base_image, format_cycles, is_regular, normalizes,
                       product_embedding, semiregular_perms)
from .structures import Flags, GaloisContext, HgsStructure, make_structure


# -- direct enumeration --------------------------------------------------------

def _conjugation_orbit(p: Perm, gens: list[Perm]) -> frozenset:
    seen = {p}
    stack = [p]
    while stack:
        x = stack.pop()
        for g in gens:
            y = x.conjugate(g)
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(seen)


def _valid_atom(atom: frozenset, degree: int) -> bool:
    if len(atom) >= degree:
        return False
    if len({p[0] for p in atom}) != len(atom):
        return False
    elems = list(atom)
    for i, a in enumerate(elems):
        for b in elems[i + 1:]:
            if any(a[k] == b[k] for k in range(degree)):
                return False
    return True


def enumerate_regular_normalized(context: GaloisContext) -> list[HgsStructure]:
    """Every regular N <= Sym(d) normalized by the context action, by direct search.

    N minus the identity is a union of orbits of the action image under
    conjugation ("atoms"), each made of semiregular elements with distinct
    images of 0.  The search picks the smallest point m not yet reached from
    0, branches over the atoms holding an element that sends 0 to m, and
    closes after each choice.  The element of N sending 0 to m is unique, so
    every N is reached along exactly one path.
    """
    d = context.degree
    get_caps().check_direct(d)
    L = context.image
    gens = [g for g in L.generators if not g.is_identity()]
    ident = Perm.identity(d)
    if d == 1:
        return [make_structure(context, PermGroup(1, [ident]))]
    atom_of: dict[Perm, frozenset | None] = {}
    by_point: dict[int, list[frozenset]] = {}
    for m in range(1, d):
        atoms = []
        for p in semiregular_perms(d, base_image=m):
            if p in atom_of:
                a = atom_of[p]
            else:
                a = _conjugation_orbit(p, gens)
                if not _valid_atom(a, d):
                    a = None
                for q in (a or (p,)):
                    atom_of[q] = a
            if a is not None and a not in atoms:
                atoms.append(a)
        by_point[m] = sorted(atoms, key=lambda a: min(a))
    found = []

    def rec(elems):
        if len(elems) == d:
            found.append(PermGroup(d, elems.values()))
            return
        m = next(k for k in range(1, d) if k not in elems)
        for atom in by_point[m]:
            if any(p[0] in elems for p in atom):
                continue
            nxt = close_by_base_image(elems, sorted(atom), d)
            if nxt is not None:
                rec(nxt)

    rec({0: ident})
    return sorted((make_structure(context, N) for N in found), key=HgsStructure.key)


def enumerate_structures(context: GaloisContext, via: str = "auto") -> list[HgsStructure]:
    """All structures on a context with the chosen engine.

    ``auto`` prefers the holomorph engine and falls back to the direct one
    when the catalog of groups of the degree is incomplete.
    """
    from .holoside import structures_via_holomorph

    if via == "direct":
        return enumerate_regular_normalized(context)
    if via == "holomorph":
        return structures_via_holomorph(context)
    if via == "both":
        a = enumerate_regular_normalized(context)
        b = structures_via_holomorph(context)
        if [s.N for s in a] != [s.N for s in b]:
            raise InvariantViolation(f"engines disagree on {context!r}: {len(a)} direct, {len(b)} holomorph")
        return b
    if via != "auto":
        raise SpecError(f"unknown engine {via!r}")
    if is_complete_order(context.degree) or context.degree > get_caps().max_direct_degree:
        return structures_via_holomorph(context)
    return enumerate_regular_normalized(context)


def relabel_transversal(s: HgsStructure, transversal) -> HgsStructure:
    """The same structure with cosets indexed by another left transversal."""
    new = GaloisContext(s.context.G, s.context.Gp, transversal)
    if new.transversal == s.context.transversal:
        return s
    coset = s.context.coset_of()
    pi = [0] * s.N.degree  # old point -> new point
    for c, x in enumerate(new.transversal):
        pi[coset[x]] = c
    pi = Perm._raw(pi)
    N = PermGroup(s.N.degree, [p.conjugate(pi) for p in s.N.elements],
                  [p.conjugate(pi) for p in s.N.generators])
    return make_structure(new, N, s.type)


# -- stable subgroups and decompositions --------------------------------------

def _is_stable(s: HgsStructure, members: Iterable[int]) -> bool:
    elems = s.N.elements
    sub = {elems[k] for k in members}
    return all(p.conjugate(g) in sub for g in s.context.image.generators for p in sub)


def g_stable_subgroups(s: HgsStructure) -> list[SubgroupHandle]:
    """Subgroups of N (indices into ``s.N.elements``) stable under conjugation by G."""
    return [h for h in all_subgroups(s.abstract) if _is_stable(s, h.members)]


def split_decompositions(s: HgsStructure, require_stable: bool = False) -> list[tuple[SubgroupHandle, SubgroupHandle]]:
    """Unordered pairs of nontrivial subgroups with N their internal direct product."""
    A = s.abstract
    subs = g_stable_subgroups(s) if require_stable else all_subgroups(A)
    subs = [h for h in subs if 1 < h.order < A.order]
    t = A.table
    out = []
    for i, u in enumerate(subs):
        for v in subs[i + 1:]:
            if u.order * v.order != A.order or len(u.member_set() & v.member_set()) != 1:
                continue
            if all(t[a][b] == t[b][a] for a in u.members for b in v.members):
                out.append((u, v))
    return out


# -- the induced construction ---------------------------------------------------

@dataclass
class InducedRecipe:
    H: SubgroupHandle
    Gp: SubgroupHandle
    N1: HgsStructure  # on the context (G, Gp)
    N2: HgsStructure  # on the Galois context of Gp

    @property
    def G(self) -> CayleyGroup:
        return self.H.parent

    def key(self) -> tuple:
        return (self.H.members, self.Gp.members, self.N1.key(), self.N2.key())

    def describe(self) -> dict:
        return {"H": list(self.H.members), "Gp": list(self.Gp.members),
                "N1_type": self.N1.type, "N2_type": self.N2.type,
                "N1_ref": [format_cycles(p) for p in self.N1.N.generators],
                "N2_ref": [format_cycles(p) for p in self.N2.N.generators]}


def _check_recipe(recipe: InducedRecipe) -> None:
    H, Gp = recipe.H, recipe.Gp
    G = H.parent
    if Gp.parent is not G and Gp.parent.table != G.table:
        raise PreconditionError("H and G' live in different groups")
    if H.is_trivial() or Gp.is_trivial():
        raise PreconditionError("an induced recipe needs k < F < K, so H and G' must both be nontrivial")
    if not H.is_normal:
        raise PreconditionError("H is not normal")
    if H.order * Gp.order != G.order or len(H.member_set() & Gp.member_set()) != 1:
        raise PreconditionError("G' is not a complement of H")
    c1 = recipe.N1.context
    if c1.G.table != G.table or c1.Gp.members != Gp.members:
        raise PreconditionError("N1 does not live on the context (G, G')")
    if recipe.N2.context.G.table != Gp.as_group().table or not recipe.N2.context.is_galois:
        raise PreconditionError("N2 does not live on the Galois context of G'")
    for s, what in ((recipe.N1, "N1"), (recipe.N2, "N2")):
        img = s.context.image
        for g in img.generators:
            for p in s.N.generators:
                if p.conjugate(g) not in s.N:
                    raise PreconditionError(f"{what} is not normalized: {g} conjugates {p} outside it")


def construct_induced(recipe: InducedRecipe) -> HgsStructure:
    """N1 x N2 embedded in Sym(G) through x_i y_j <-> (i, j).

    Cosets xG' are indexed by H (members in index order) and G' by its
    members in index order; the pair (i, j) sits at i*r + j.
    """
    _check_recipe(recipe)
    H, Gp = recipe.H, recipe.Gp
    G = H.parent
    t = G.table
    N1 = relabel_transversal(recipe.N1, H.members)
    tt, r = H.order, Gp.order
    n = G.order
    psi, lam_pair = _pair_frame(G, H, Gp, N1.context)

    def to_g(pair_perm: Perm) -> Perm:
        out = [0] * n
        for k in range(n):
            out[psi[k]] = psi[pair_perm[k]]
        return Perm._raw(out)

    def joined(a: Perm, b: Perm) -> Perm:
        # to_g(product_embedding(a, b)) without the intermediate
        out = [0] * n
        for i in range(tt):
            ai = a[i] * r
            for j in range(r):
                out[psi[i * r + j]] = psi[ai + b[j]]
        return Perm._raw(out)

    id_t, id_r = Perm.identity(tt), Perm.identity(r)
    elems = [joined(a, b) for a in N1.N.elements for b in recipe.N2.N.elements]
    gens = ([to_g(product_embedding(a, id_r)) for a in N1.N.generators]
            + [to_g(product_embedding(id_t, b)) for b in recipe.N2.N.generators])
    N = PermGroup(n, elems, gens)
    if len(N) != tt * r:
        raise InvariantViolation("embedded product has the wrong order")
    # conjugation acts factor by factor
    n1, n2 = N1.N, recipe.N2.N
    for g in generating_set(G) or [0]:
        direct, lt, lr = lam_pair[g]
        for a in n1.generators:
            if product_embedding(a, id_r).conjugate(direct) != product_embedding(a.conjugate(lt), id_r) \
                    or a.conjugate(lt) not in n1:
                raise InvariantViolation(f"conjugation by {G.labels[g]} moves {a} out of N1")
        for b in n2.generators:
            if product_embedding(id_t, b).conjugate(direct) != product_embedding(id_t, b.conjugate(lr)) \
                    or b.conjugate(lr) not in n2:
                raise InvariantViolation(f"conjugation by {G.labels[g]} moves {b} out of N2")
    s = make_structure(GaloisContext.galois(G), N)
    recipe = InducedRecipe(H, Gp, N1, recipe.N2)
    return HgsStructure(s.context, s.N, s.type,
                        Flags(s.flags.classical, s.flags.canonical_nonclassical, True, True, True),
                        [recipe])


def _pair_frame(G: CayleyGroup, H: SubgroupHandle, Gp: SubgroupHandle, ctx: GaloisContext):
    """Pair indexing psi and the factored left translations, cached per (H, G')."""
    cache = G.__dict__.setdefault("_pair_frames", {})
    key = (H.members, Gp.members)
    hit = cache.get(key)
    if hit is not None:
        return hit
    t = G.table
    n = G.order
    psi = [t[x][y] for x in H.members for y in Gp.members]  # pair index -> element
    psi_inv = [0] * n
    for k, g in enumerate(psi):
        psi_inv[g] = k
    ypos = {y: j for j, y in enumerate(Gp.members)}
    split = {}
    for x in H.members:
        for y in Gp.members:
            split[t[x][y]] = (x, y)
    lam_t = ctx.action
    gp_table = Gp.as_group().table
    lam_pair = []
    for g in range(n):
        x, y = split[g]
        direct = Perm._raw([psi_inv[t[g][psi[k]]] for k in range(n)])
        lr = Perm._raw(gp_table[ypos[y]])
        if direct != product_embedding(lam_t(g), lr):
            raise InvariantViolation(f"left translation by {G.labels[g]} does not factor through the pairs")
        lam_pair.append((direct, lam_t(g), lr))
    cache[key] = psi, lam_pair
    return psi, lam_pair


def guaranteed_split_structure(G: CayleyGroup, H: SubgroupHandle, Gp: SubgroupHandle) -> HgsStructure:
    """H acting on the cosets of G' joined with the classical structure of G'."""
    if H.is_trivial() or Gp.is_trivial() or not H.is_normal or H.order * Gp.order != G.order \
            or len(H.member_set() & Gp.member_set()) != 1:
        raise PreconditionError("G is not H x| G' for the given subgroups")
    ctx = GaloisContext(G, Gp, H.members)
    t = G.table
    pos = {x: i for i, x in enumerate(H.members)}
    n1 = PermGroup(H.order, [Perm._raw([pos[t[h][x]] for x in H.members]) for h in H.members])
    N1 = make_structure(ctx, n1)
    gpg = Gp.as_group()
    N2 = make_structure(GaloisContext.galois(gpg), right_regular_representation(gpg).image)
    return construct_induced(InducedRecipe(H, Gp, N1, N2))


# -- enumeration of induced structures -----------------------------------------

def recipe_pairs(G: CayleyGroup) -> list[tuple[SubgroupHandle, SubgroupHandle]]:
    """(H, G') with H normal, nontrivial and proper, and G' a complement of H."""
    out = []
    for H in normal_subgroups(G):
        if H.is_trivial() or H.order == G.order:
            continue
        out.extend((H, Gp) for Gp in complements_of_normal(G, H))
    return out


def _pair_worker(args):
    table, h_members, gp_members, caps, via = args
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        set_caps(caps)
    return _pair_compute(CayleyGroup(table, check=False), h_members, gp_members, via)


def _pair_compute(G, h_members, gp_members, via):
    Gp = SubgroupHandle(G, gp_members)
    s1 = enumerate_structures(GaloisContext(G, Gp, h_members), via)
    s2 = enumerate_structures(GaloisContext.galois(Gp.as_group()), via)
    return [tuple(s.N.elements) for s in s1], [tuple(s.N.elements) for s in s2]


def enumerate_induced(G: CayleyGroup, jobs: int = 1, via: str = "auto",
                      pairs: list | None = None) -> list[tuple[HgsStructure, list[InducedRecipe]]]:
    """Every induced structure on the Galois context of G, deduped by N, with all its recipes."""
    pairs = recipe_pairs(G) if pairs is None else pairs
    caps = get_caps()
    work = [(G.table, H.members, Gp.members, caps, via) for H, Gp in pairs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            raw = list(ex.map(_pair_worker, work))
    else:
        raw = [_sub_enumeration(G, H, Gp, via) for H, Gp in pairs]
    found: dict[frozenset, list] = {}
    for (H, Gp), (l1, l2) in zip(pairs, raw):
        ctx1 = GaloisContext(G, Gp, H.members)
        gpg = Gp.as_group()
        ctx2 = GaloisContext.galois(gpg)
        subs1 = [make_structure(ctx1, PermGroup(ctx1.degree, e)) for e in l1]
        subs2 = [make_structure(ctx2, PermGroup(ctx2.degree, e)) for e in l2]
        for s1 in subs1:
            for s2 in subs2:
                s = construct_induced(InducedRecipe(H, Gp, s1, s2))
                entry = found.setdefault(s.N.element_set(), [s, []])
                entry[1].extend(s.recipes)
    out = []
    for s, recipes in found.values():
        recipes = sorted(recipes, key=InducedRecipe.key)
        out.append((HgsStructure(s.context, s.N, s.type, s.flags, recipes), recipes))
    return sorted(out, key=lambda e: e[0].key())


_SUB_CACHE: dict = {}


def _sub_enumeration(G, H, Gp, via):
    key = (G.table, H.members, Gp.members, via, get_caps())
    hit = _SUB_CACHE.get(key)
    if hit is None:
        hit = _pair_compute(G, H.members, Gp.members, via)
        _SUB_CACHE[key] = hit
    return hit


def count_by_type(entries) -> dict[str, int]:
    out: dict[str, int] = {}
    for e in entries:
        s = e if isinstance(e, HgsStructure) else e[0]
        out[s.type] = out.get(s.type, 0) + 1
    return dict(sorted(out.items()))


def count_induced_route(entries, keep: Callable[[InducedRecipe], bool]) -> dict[str, int]:
    """Type counts of the distinct structures having at least one recipe accepted by ``keep``."""
    return count_by_type([e for e in entries if any(keep(r) for r in e[1])])


# -- classification --------------------------------------------------------------

def stabilizer_of_factor(s: HgsStructure, N2: SubgroupHandle) -> SubgroupHandle:
    """G' = b^-1(N2): the elements of G reached from 1 by N2."""
    G = s.context.G
    members = {s.N.elements[k][0] for k in N2.members}
    Gp = SubgroupHandle(G, members)
    if not Gp.is_closed() or Gp.order != N2.order:
        raise InvariantViolation("the orbit of 1 under a stable subgroup is not a subgroup of the same order")
    return Gp


def restrict_structure(s: HgsStructure, N2: SubgroupHandle) -> tuple[SubgroupHandle, HgsStructure]:
    """N2 acting on G' = b^-1(N2), as a structure on the Galois context of G'."""
    if not s.context.is_galois:
        raise PreconditionError("restriction needs a Galois context")
    if N2.parent is not s.abstract and N2.parent.table != s.abstract.table:
        raise PreconditionError("subgroup does not belong to this structure's N")
    if not N2.is_closed() or not _is_stable(s, N2.members):
        raise PreconditionError("subgroup is not G-stable")
    Gp = stabilizer_of_factor(s, N2)
    pos = {y: j for j, y in enumerate(Gp.members)}
    perms = [Perm._raw([pos[s.N.elements[k][y]] for y in Gp.members]) for k in N2.members]
    ctx = GaloisContext.galois(Gp.as_group())
    N = PermGroup(Gp.order, perms)
    if not is_regular(N) or not normalizes(ctx.image, N):
        raise InvariantViolation("restricted group is not a structure on G'")
    return Gp, make_structure(ctx, N)


def _restrict_to_cosets(s: HgsStructure, N1: SubgroupHandle, Gp: SubgroupHandle, H: SubgroupHandle) -> HgsStructure:
    ctx = GaloisContext(s.context.G, Gp, H.members)
    coset = ctx.coset_of()
    perms = set()
    for k in N1.members:
        p = s.N.elements[k]
        perms.add(Perm._raw([coset[p[x]] for x in H.members]))
    if len(perms) != N1.order:
        raise InvariantViolation("N1 does not act faithfully on the cosets of G'")
    return make_structure(ctx, PermGroup(ctx.degree, perms))


def _sub_generators(A: CayleyGroup, h: SubgroupHandle) -> list[int]:
    gens, cur = [], frozenset([0])
    for k in h.members:
        if k not in cur:
            gens.append(k)
            cur = A.closure(gens)
    return gens


def _rebuilds(s: HgsStructure, n1: SubgroupHandle, n2: SubgroupHandle, Gp: SubgroupHandle,
              H: SubgroupHandle, by_base: dict) -> bool:
    """Cheap test: does the recipe (H, G', n1, n2) give back N?

    The rebuilt group is regular of order |N|, so it equals N as soon as its
    generators lie in N.
    """
    t = s.context.G.table
    elems = s.N.elements
    split = {}
    for i, x in enumerate(H.members):
        for j, y in enumerate(Gp.members):
            split[t[x][y]] = (i, j)
    hm, gm = H.members, Gp.members
    for k in _sub_generators(s.abstract, n1):
        p = elems[k]
        img = [0] * len(t)
        for g, (i, j) in split.items():
            img[g] = t[hm[split[p[hm[i]]][0]]][gm[j]]
        if by_base[img[0]] != tuple(img):
            return False
    for k in _sub_generators(s.abstract, n2):
        p = elems[k]
        img = [0] * len(t)
        for g, (i, j) in split.items():
            img[g] = t[hm[i]][p[gm[j]]]
        if by_base[img[0]] != tuple(img):
            return False
    return True


def _rebuilding_recipes(s: HgsStructure, stable):
    """Yield each recipe over a stable decomposition that gives back N."""
    G = s.context.G
    by_base = {p[0]: tuple(p) for p in s.N.elements}
    target = s.N.element_set()
    candidates = found = 0
    for u, v in stable:
        for n1, n2 in ((u, v), (v, u)):
            Gp = stabilizer_of_factor(s, n2)
            s2 = None
            for H in normal_complements(G, Gp):
                candidates += 1
                if not _rebuilds(s, n1, n2, Gp, H, by_base):
                    continue
                if s2 is None:
                    _, s2 = restrict_structure(s, n2)
                built = construct_induced(InducedRecipe(H, Gp, _restrict_to_cosets(s, n1, Gp, H), s2))
                if built.N.element_set() != target:
                    raise InvariantViolation("fast rebuild test disagrees with the construction")
                found += 1
                yield built.recipes[0]
    if candidates and not found:
        raise InvariantViolation("a stable decomposition with a normal complement did not rebuild N")


def classify_structure(s: HgsStructure, all_recipes: bool = True) -> HgsStructure:
    """Fill in the split and induced flags, attaching every recipe that rebuilds N.

    With ``all_recipes=False`` the search stops at the first such recipe.
    """
    if not s.context.is_galois:
        raise PreconditionError("classification needs a Galois context")
    abstract = split_decompositions(s, require_stable=False)
    stable = split_decompositions(s, require_stable=True)
    gen = _rebuilding_recipes(s, stable)
    if all_recipes:
        recipes = sorted(gen, key=InducedRecipe.key)
    else:
        recipes = [r for r in [next(gen, None)] if r is not None]
    flags = Flags(s.flags.classical, s.flags.canonical_nonclassical, bool(abstract), bool(stable), bool(recipes))
    return HgsStructure(s.context, s.N, s.type, flags, recipes)


def classify_all(structures: Iterable[HgsStructure]) -> list[HgsStructure]:
    return [classify_structure(s) for s in structures]
