"""The holomorph side: Hol(N), its regular subgroups, and the Byott translation.

A regular subgroup R of Hol(N) contains exactly one element sending 1_N to
each m in N, namely (m, gamma(m)); the search below assigns gamma one element
at a time and closes the partial group after each assignment, so a wrong
choice is detected as soon as two elements of the closure send 1_N to the
same point.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from functools import lru_cache

from .config import get_caps
from .errors import InvariantViolation, PreconditionError
from .grouplab import (CayleyGroup, all_isomorphisms, automorphism_group, catalog_group, generating_set,
                       groups_of_order, identify_type)
from .permcore import Perm, PermGroup, close_by_base_image, generate_closure, is_regular
from .structures import GaloisContext, HgsStructure, make_structure


class HolGroup:
    """N x| Aut(N) acting on N by (n, s): x -> n s(x)."""

    def __init__(self, N: CayleyGroup):
        self.N = N
        self.autos = automorphism_group(N)
        t = N.table
        self.pairs = [(n, s) for s in self.autos.elements for n in range(N.order)]
        self.perms = tuple(Perm._raw([t[n][s[x]] for x in range(N.order)]) for n, s in self.pairs)
        left = [Perm._raw(row) for row in t]
        gens = [p for p in (generate_closure(N.order, left).generators + tuple(self.autos.generators))]
        self.image = PermGroup(N.order, self.perms, gens)
        if len(self.image) != len(self.perms):
            raise InvariantViolation("holomorph permutation image is not faithful")

    @property
    def order(self) -> int:
        return len(self.perms)

    def element(self, n: int, s: Perm) -> Perm:
        t = self.N.table
        return Perm._raw([t[n][s[x]] for x in range(self.N.order)])

    def translations(self) -> PermGroup:
        return PermGroup(self.N.order, [Perm._raw(row) for row in self.N.table])

    def mul_pairs(self, a, b):
        """(n, s)(n', s') = (n s(n'), s s')"""
        (n, s), (n2, s2) = a, b
        return (self.N.table[n][s[n2]], s * s2)


def build_holomorph(N: CayleyGroup) -> HolGroup:
    get_caps().check_hol(N.order)
    return _holomorph_cached(N.table, N)


@lru_cache(maxsize=64)
def _holomorph_cached(table, N):
    return HolGroup(N)


# -- regular subgroups of Hol(N) ---------------------------------------------

def gamma_search(N: CayleyGroup) -> list[PermGroup]:
    """All regular subgroups of Hol(N) via assignments m -> gamma(m)."""
    hol = build_holomorph(N)
    n = N.order
    t = N.table
    # candidates sending 0 to m: (m, s) for s in Aut(N), kept only if semiregular
    cands = {m: [p for p in (Perm._raw([t[m][s[x]] for x in range(n)]) for s in hol.autos.elements)
                 if p.is_semiregular()] for m in range(1, n)}
    ident = Perm.identity(n)
    found: list[PermGroup] = []

    def rec(elems):
        if len(elems) == n:
            found.append(PermGroup(n, elems.values()))
            return
        m = next(k for k in range(1, n) if k not in elems)
        for p in cands[m]:
            nxt = close_by_base_image(elems, (p,), n)
            if nxt is not None:
                rec(nxt)

    rec({0: ident})
    return sorted(found, key=PermGroup.key)


def regular_subgroups_of_hol(N: CayleyGroup) -> list[tuple[PermGroup, str]]:
    return [(R, identify_type(CayleyGroup.from_perm_group(R))) for R in gamma_search(N)]


def brute_force_regular_subgroups(N: CayleyGroup) -> list[PermGroup]:
    """Oracle: closures of all pairs of fixed-point-free Hol elements, filtered for regularity.

    Complete for groups whose regular subgroups are 2-generated (all |N| <= 8
    except C2^3, handled by a third generator).
    """
    hol = build_holomorph(N)
    n = N.order
    fpf = [p for p in hol.perms if p.is_semiregular() and not p.is_identity()]
    out = set()
    if n == 1:
        return [PermGroup(1, [Perm.identity(1)])]
    seen_groups = set()
    for i, a in enumerate(fpf):
        ga = generate_closure(n, [a])
        if len(ga) > n:
            continue
        _collect(ga, fpf, n, out, seen_groups, depth=2)
    return sorted(out, key=PermGroup.key)


def _collect(g, fpf, n, out, seen, depth):
    key = g.element_set()
    if key in seen:
        return
    seen.add(key)
    if len(g) == n:
        if is_regular(g):
            out.add(g)
        return
    if depth == 0:
        return
    for b in fpf:
        if b in g:
            continue
        # inside a regular group every product is fixed-point-free or trivial
        if any(not (x * b).is_semiregular() for x in g if x != b.inverse()):
            continue
        h = generate_closure(n, list(g.generators) + [b])
        if len(h) <= n and n % len(h) == 0:
            _collect(h, fpf, n, out, seen, depth - 1)


def aut_order(G: CayleyGroup) -> int:
    return len(automorphism_group(G))


def count_e(G: CayleyGroup, N: CayleyGroup) -> int:
    """Number of Hopf Galois structures of type N on a Galois extension with group G."""
    if G.order != N.order:
        raise PreconditionError(f"|G| = {G.order} differs from |N| = {N.order}")
    get_caps().check_hol(N.order)
    from .grouplab import are_isomorphic

    matches = sum(1 for R in gamma_search(N) if are_isomorphic(CayleyGroup.from_perm_group(R), G))
    num = matches * aut_order(G)
    den = aut_order(N)
    if num % den:
        raise InvariantViolation(f"non-integral count {num}/{den} for e({G.name}, {N.name})")
    return num // den


def count_table(G: CayleyGroup) -> dict[str, int]:
    """e(G, N) for every catalog type N of order |G|."""
    out = {}
    for name, spec in groups_of_order(G.order):
        out[name] = count_e(G, catalog_group(spec))
    return out


def count_rows(G_spec: str, N_spec: str = "all") -> list[dict]:
    """Rows (G spec, N type, e) for one N or for all catalog types of order |G|."""
    G = catalog_group(G_spec)
    if N_spec == "all":
        targets = [(name, catalog_group(spec)) for name, spec in groups_of_order(G.order)]
    else:
        N = catalog_group(N_spec)
        targets = [(identify_type(N), N)]
    return [{"G": G_spec, "N": name, "e": count_e(G, N)} for name, N in targets]


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=["G", "N", "e"], lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def rows_to_json(rows: list[dict]) -> str:
    return json.dumps(rows, indent=2, sort_keys=True)


# -- Byott embeddings ----------------------------------------------------------

@dataclass
class ByottEmbedding:
    """beta: G -> Hol(N) <= Sym(N), with beta(G') the stabilizer of 1_N."""

    G: CayleyGroup
    hol: HolGroup
    beta: tuple  # beta[g] is a Perm of N's element indices

    def __post_init__(self):
        self.beta = tuple(self.beta)
        t, n = self.G.table, self.G.order
        if len(self.beta) != n:
            raise PreconditionError("beta must be given on every element of G")
        if any(self.beta[t[a][b]] != self.beta[a] * self.beta[b] for a in range(n) for b in range(n)):
            raise PreconditionError("beta is not a homomorphism")
        if len(set(self.beta)) != n:
            raise PreconditionError("beta is not injective")
        if any(p not in self.hol.image for p in self.beta):
            raise PreconditionError("beta does not land in Hol(N)")

    @property
    def N(self) -> CayleyGroup:
        return self.hol.N

    def stabilizer(self) -> list[int]:
        return [g for g, p in enumerate(self.beta) if p[0] == 0]

    def b(self, g: int) -> int:
        return self.beta[g][0]

    def b_inverse(self) -> list[int]:
        inv = [0] * self.N.order
        for g in range(self.G.order):
            inv[self.b(g)] = g
        return inv


def bijection_b(emb: ByottEmbedding, g: int) -> int:
    """b(g) = beta(g)(1_N)."""
    return emb.b(g)


def beta_to_alpha(emb: ByottEmbedding) -> tuple[HgsStructure, tuple[Perm, ...]]:
    """Transport left translation of N through b: alpha(n) = b^-1 o lambda_N(n) o b.

    Returns the structure alpha(N) <= Sym(G) and alpha itself (indexed by N).
    """
    if emb.G.order != emb.N.order or len(emb.stabilizer()) != 1:
        raise PreconditionError("beta_to_alpha needs a Galois embedding (trivial stabilizer)")
    binv = emb.b_inverse()
    b = [emb.b(g) for g in range(emb.G.order)]
    tn = emb.N.table
    alpha = tuple(Perm._raw([binv[tn[m][b[g]]] for g in range(emb.G.order)]) for m in range(emb.N.order))
    s = make_structure(GaloisContext.galois(emb.G), PermGroup(emb.G.order, alpha))
    return s, alpha


def alpha_to_beta(s: HgsStructure, alpha=None, hol: HolGroup | None = None) -> ByottEmbedding:
    """Inverse translation: beta(g) = b o lambda(g) o b^-1 with b(g) the n having alpha(n)(1_G) = g.

    Without ``alpha`` the abstract N is the Cayley group of ``s.N`` and alpha
    its element list.
    """
    if not s.context.is_galois:
        raise PreconditionError("alpha_to_beta needs a Galois context")
    if alpha is None:
        alpha = s.N.elements
        if hol is None:
            hol = build_holomorph(s.abstract)
    elif hol is None:
        raise PreconditionError("an explicit alpha needs the holomorph of its source group")
    G = s.context.G
    n = G.order
    b = [0] * n
    for m, p in enumerate(alpha):
        b[p[0]] = m
    binv = [0] * n
    for g, m in enumerate(b):
        binv[m] = g
    lam = s.context.action
    beta = [Perm._raw([b[lam(g)[binv[m]]] for m in range(n)]) for g in range(n)]
    return ByottEmbedding(G, hol, beta)


def embeddings_from_regular(G: CayleyGroup, R: PermGroup, hol: HolGroup) -> list[ByottEmbedding]:
    """Every beta with image R, one per isomorphism G -> R."""
    Rg = CayleyGroup.from_perm_group(R)
    return [ByottEmbedding(G, hol, [R.elements[k] for k in iso]) for iso in all_isomorphisms(G, Rg)]


# -- enumeration of structures through the holomorph -------------------------

def galois_structures_via_holomorph(G: CayleyGroup) -> list[HgsStructure]:
    """All structures on the Galois context of G, found inside Hol(N) for every type N."""
    context = GaloisContext.galois(G)
    n = G.order
    found: dict[frozenset, HgsStructure] = {}
    for name, spec in groups_of_order(n):
        N = catalog_group(spec)
        get_caps().check_hol(n)
        hol = build_holomorph(N)
        tn = N.table
        for R in gamma_search(N):
            Rg = CayleyGroup.from_perm_group(R)
            for iso in all_isomorphisms(G, Rg):
                b = [R.elements[k][0] for k in iso]
                binv = [0] * n
                for g, m in enumerate(b):
                    binv[m] = g
                alpha = [Perm._raw([binv[tn[m][b[g]]] for g in range(n)]) for m in range(n)]
                key = frozenset(alpha)
                if key not in found:
                    found[key] = make_structure(context, PermGroup(n, alpha), name)
    return sorted(found.values(), key=HgsStructure.key)


def structures_via_holomorph(context: GaloisContext) -> list[HgsStructure]:
    """All structures on any context (G, G') via embeddings beta: G -> Hol(N).

    Works with the image L of G in Sym(G/G'); beta(g) must have the cycle
    type of L's g, and beta is taken up to conjugation by Aut(N) on the first
    generator (conjugate embeddings transport to the same subgroup).
    """
    t = context.degree
    if context.is_galois and context.transversal == tuple(range(context.G.order)):
        return galois_structures_via_holomorph(context.G)
    L = context.image
    Lg = CayleyGroup.from_perm_group(L)
    gens = generating_set(Lg)
    Lperm = L.elements
    stab = [k for k, p in enumerate(Lperm) if p[0] == 0]
    # one element of L per point, sending 0 there
    to_point = {}
    for k, p in enumerate(Lperm):
        to_point.setdefault(p[0], k)
    found: dict[frozenset, HgsStructure] = {}
    for name, spec in groups_of_order(t):
        N = catalog_group(spec)
        get_caps().check_hol(t)
        hol = build_holomorph(N)
        by_type: dict[tuple, list[Perm]] = {}
        for p in hol.perms:
            by_type.setdefault(p.cycle_type(), []).append(p)
        cands = [by_type.get(Lperm[g].cycle_type(), []) for g in gens]
        if gens:
            cands[0] = _aut_orbit_reps(cands[0], hol.autos.elements)
        tn = N.table
        for beta in _embeddings(Lg, gens, cands):
            if any(beta[k][0] != 0 for k in stab):
                continue
            b = [beta[to_point[c]][0] for c in range(t)]
            if len(set(b)) != t:
                continue
            binv = [0] * t
            for c, m in enumerate(b):
                binv[m] = c
            alpha = [Perm._raw([binv[tn[m][b[c]]] for c in range(t)]) for m in range(t)]
            key = frozenset(alpha)
            if key not in found:
                found[key] = make_structure(context, PermGroup(t, alpha), name)
    return sorted(found.values(), key=HgsStructure.key)


def _aut_orbit_reps(perms: list[Perm], autos) -> list[Perm]:
    pool = set(perms)
    reps = []
    for p in sorted(perms):
        if p not in pool:
            continue
        reps.append(p)
        for s in autos:
            pool.discard(p.conjugate(s))
    return reps


def _embeddings(Lg: CayleyGroup, gens: list[int], cands: list[list[Perm]]):
    """Injective homomorphisms L -> Sym(N) with gens[i] sent into cands[i]."""
    tl = Lg.table
    n = Lg.order
    if not gens:
        yield [Perm.identity(len(cands[0][0]) if cands and cands[0] else 1)] * n
        return
    imgs: list[Perm] = []

    def extend(k):
        phi = {0: Perm.identity(len(imgs[0]))}
        used = {phi[0]}
        stack = [0]
        gs = gens[:k]
        while stack:
            x = stack.pop()
            fx = phi[x]
            for gi, hi in zip(gs, imgs):
                y = tl[x][gi]
                fy = Perm._raw([fx[j] for j in hi])
                prev = phi.get(y)
                if prev is None:
                    if fy in used:
                        return None
                    used.add(fy)
                    phi[y] = fy
                    stack.append(y)
                elif prev != fy:
                    return None
        return phi

    def rec(k):
        if k == len(gens):
            phi = extend(k)
            if phi is not None and len(phi) == n:
                yield [phi[x] for x in range(n)]
            return
        for h in cands[k]:
            imgs.append(h)
            if k + 1 == len(gens) or extend(k + 1) is not None:
                yield from rec(k + 1)
            imgs.pop()

    yield from rec(0)
