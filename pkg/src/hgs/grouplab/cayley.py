"""Finite groups as multiplication tables, plus homomorphisms and actions."""

from __future__ import annotations

from collections import Counter
from functools import cached_property
from math import gcd
from typing import Callable, Iterable, Sequence

from ..errors import InvariantViolation, PreconditionError
from ..permcore import Perm, PermGroup


class CayleyGroup:
    """A group on element indices 0..order-1 with 0 the identity.

    ``table[i][j]`` is the index of the product i*j.
    """

    def __init__(self, table: Sequence[Sequence[int]], labels: Sequence[str] | Callable | None = None,
                 name: str | None = None, check: bool = True):
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.table)
        self.name = name
        if callable(labels):
            self._labels, self._make_labels = None, labels  # built on first use
        else:
            self._labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(self.order))
            self._make_labels = None
            if len(self._labels) != self.order:
                raise ValueError("label count does not match order")
        if check:
            self.verify(associativity=self.order <= 64)

    def __repr__(self) -> str:
        return f"CayleyGroup({self.name or '?'}, order={self.order})"

    def __getstate__(self):
        return {"table": self.table, "labels": self.labels, "name": self.name}

    @property
    def labels(self) -> tuple[str, ...]:
        if self._labels is None:
            self._labels = tuple(self._make_labels())
            self._make_labels = None
        return self._labels

    def __setstate__(self, state):
        self.table = state["table"]
        self._labels, self._make_labels = tuple(state["labels"]), None
        self.name = state["name"]
        self.order = len(self.table)

    def verify(self, associativity: bool = True) -> None:
        n = self.order
        t = self.table
        full = set(range(n))
        for i, row in enumerate(t):
            if len(row) != n or set(row) != full:
                raise InvariantViolation(f"row {i} is not a permutation of the elements")
        for j in range(n):
            if {t[i][j] for i in range(n)} != full:
                raise InvariantViolation(f"column {j} is not a permutation of the elements")
        if any(t[0][i] != i or t[i][0] != i for i in range(n)):
            raise InvariantViolation("index 0 is not the identity")
        if associativity:
            for a in range(n):
                ta = t[a]
                for b in range(n):
                    tab = t[ta[b]]
                    tb = t[b]
                    for c in range(n):
                        if tab[c] != ta[tb[c]]:
                            raise InvariantViolation(f"associativity fails at ({a},{b},{c})")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        inv = [0] * self.order
        for a, row in enumerate(self.table):
            inv[a] = row.index(0)
        return tuple(inv)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.table[self.table[g][x]][self.inverses[g]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverses[a], -k
        r = 0
        for _ in range(k):
            r = self.table[r][a]
        return r

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for a in range(self.order):
            k, x = 1, a
            while x != 0:
                x = self.table[x][a]
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    @cached_property
    def exponent(self) -> int:
        e = 1
        for k in set(self.element_orders):
            e = e * k // gcd(e, k)
        return e

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.order
        classes = []
        for x in range(self.order):
            if seen[x]:
                continue
            cls = sorted({self.conj(g, x) for g in range(self.order)})
            for y in cls:
                seen[y] = True
            classes.append(tuple(cls))
        return tuple(classes)

    @cached_property
    def class_size(self) -> tuple[int, ...]:
        sizes = [0] * self.order
        for cls in self.conjugacy_classes:
            for x in cls:
                sizes[x] = len(cls)
        return tuple(sizes)

    @cached_property
    def fingerprint(self) -> tuple:
        """Isomorphism invariant used to prune searches and name unknown groups."""
        prof = Counter(zip(self.element_orders, self.class_size))
        centre = sum(1 for s in self.class_size if s == 1)
        return (self.order, self.is_abelian, self.exponent, centre, tuple(sorted(prof.items())))

    def center(self) -> "SubgroupHandle":
        return SubgroupHandle(self, [x for x in range(self.order) if self.class_size[x] == 1])

    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        gens = [g for g in gens if g != 0]
        seen = {0}
        stack = [0]
        t = self.table
        while stack:
            x = stack.pop()
            row = t[x]
            for g in gens:
                y = row[g]
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return frozenset(seen)

    def subgroup(self, gens: Iterable[int]) -> "SubgroupHandle":
        return SubgroupHandle(self, self.closure(gens))

    def trivial_subgroup(self) -> "SubgroupHandle":
        return SubgroupHandle(self, [0])

    def whole(self) -> "SubgroupHandle":
        return SubgroupHandle(self, range(self.order))

    def relabel(self, perm: Sequence[int], name: str | None = None) -> "CayleyGroup":
        """Copy with element i renamed perm[i]; perm must fix 0."""
        if perm[0] != 0:
            raise ValueError("relabelling must fix the identity")
        n = self.order
        inv = [0] * n
        for i, j in enumerate(perm):
            inv[j] = i
        table = [[perm[self.table[inv[a]][inv[b]]] for b in range(n)] for a in range(n)]
        labels = [self.labels[inv[a]] for a in range(n)]
        return CayleyGroup(table, labels, name or self.name, check=False)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "labels": list(self.labels),
            "table": [x for row in self.table for x in row],
            "name": self.name,
        }

    @classmethod
    def from_json(cls, data: dict) -> "CayleyGroup":
        n = data["order"]
        flat = data["table"]
        table = [flat[i * n:(i + 1) * n] for i in range(n)]
        return cls(table, data.get("labels"), data.get("name"))

    @classmethod
    def from_perm_group(cls, group: PermGroup, name: str | None = None) -> "CayleyGroup":
        """Abstract group of ``group``; element i is ``group.elements[i]``."""
        elems = group.elements
        base = {p[0]: i for i, p in enumerate(elems)}
        if len(base) == len(elems):
            # semiregular: a product is pinned down by where it sends 0
            table = [[base[a[b[0]]] for b in elems] for a in elems]
        else:
            index = {p: i for i, p in enumerate(elems)}
            table = [[index[Perm._raw([a[x] for x in b])] for b in elems] for a in elems]
        return cls(table, lambda: [str(p) for p in elems], name, check=False)


class SubgroupHandle:
    """A subgroup of ``parent`` given by its sorted member indices."""

    __slots__ = ("parent", "members", "_set", "_normal")

    def __init__(self, parent: CayleyGroup, members: Iterable[int]):
        self.parent = parent
        self.members = tuple(sorted(set(members)))
        self._set = frozenset(self.members)
        self._normal = None
        if not self.members or self.members[0] != 0:
            raise PreconditionError("subgroup must contain the identity")

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self._set

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other) -> bool:
        return isinstance(other, SubgroupHandle) and self._set == other._set and self.parent is other.parent

    def __hash__(self) -> int:
        return hash(self._set)

    def __repr__(self) -> str:
        return f"SubgroupHandle(order={self.order}, members={list(self.members)})"

    def member_set(self) -> frozenset[int]:
        return self._set

    def is_closed(self) -> bool:
        t = self.parent.table
        s = self._set
        return all(t[a][b] in s for a in self.members for b in self.members)

    @property
    def is_normal(self) -> bool:
        if self._normal is None:
            g = self.parent
            self._normal = all(g.conj(x, h) in self._set for x in range(g.order) for h in self.members)
        return self._normal

    def is_trivial(self) -> bool:
        return len(self.members) == 1

    def index(self) -> int:
        return self.parent.order // self.order

    def conjugate(self, g: int) -> "SubgroupHandle":
        return SubgroupHandle(self.parent, [self.parent.conj(g, h) for h in self.members])

    def as_group(self, name: str | None = None) -> CayleyGroup:
        """The subgroup as a standalone group; element k is ``members[k]``."""
        pos = {m: k for k, m in enumerate(self.members)}
        t = self.parent.table
        table = [[pos[t[a][b]] for b in self.members] for a in self.members]
        labels = [self.parent.labels[m] for m in self.members]
        return CayleyGroup(table, labels, name, check=False)

    def intersection(self, other: "SubgroupHandle") -> "SubgroupHandle":
        return SubgroupHandle(self.parent, self._set & other._set)

    def labels(self) -> list[str]:
        return [self.parent.labels[m] for m in self.members]


class GroupHom:
    """A group homomorphism between Cayley groups, given on every element."""

    def __init__(self, source: CayleyGroup, target: CayleyGroup, images: Sequence[int], check: bool = True):
        self.source = source
        self.target = target
        self.images = tuple(images)
        if check and not self.is_homomorphism():
            raise PreconditionError("map is not a homomorphism")

    def __call__(self, x: int) -> int:
        return self.images[x]

    def is_homomorphism(self) -> bool:
        s, t, im = self.source.table, self.target.table, self.images
        n = self.source.order
        return len(im) == n and all(im[s[a][b]] == t[im[a]][im[b]] for a in range(n) for b in range(n))

    @property
    def injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    @property
    def bijective(self) -> bool:
        return self.injective and self.source.order == self.target.order

    def inverse(self) -> "GroupHom":
        if not self.bijective:
            raise PreconditionError("only bijections can be inverted")
        inv = [0] * len(self.images)
        for a, b in enumerate(self.images):
            inv[b] = a
        return GroupHom(self.target, self.source, inv, check=False)

    def compose(self, first: "GroupHom") -> "GroupHom":
        """self after first"""
        return GroupHom(first.source, self.target, [self.images[x] for x in first.images], check=False)


class PermRep:
    """A homomorphism from a Cayley group into Sym(degree).

    ``images[g]`` is the permutation of g.  ``transversal`` (for coset actions)
    lists the coset representatives in point order.
    """

    def __init__(self, group: CayleyGroup, degree: int, images: Sequence[Perm],
                 transversal: Sequence[int] | None = None):
        self.group = group
        self.degree = degree
        self.images = tuple(images)
        self.transversal = tuple(transversal) if transversal is not None else None

    def __call__(self, g: int) -> Perm:
        return self.images[g]

    def is_homomorphism(self) -> bool:
        t, im = self.group.table, self.images
        n = self.group.order
        return all(im[t[a][b]] == im[a] * im[b] for a in range(n) for b in range(n))

    @cached_property
    def image(self) -> PermGroup:
        gens = [self.images[g] for g in _small_generators(self.group)]
        return PermGroup(self.degree, set(self.images), [g for g in gens if not g.is_identity()])

    def kernel(self) -> SubgroupHandle:
        return SubgroupHandle(self.group, [g for g, p in enumerate(self.images) if p.is_identity()])

    @property
    def injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def generator_images(self) -> list[Perm]:
        return list(self.image.generators)


def _small_generators(group: CayleyGroup) -> list[int]:
    from .iso import generating_set

    return generating_set(group)


def direct_product(a: CayleyGroup, b: CayleyGroup, name: str | None = None) -> CayleyGroup:
    """Componentwise product; the pair (x, y) has index x + |a|*y."""
    na, nb = a.order, b.order
    ta, tb = a.table, b.table
    table = [[ta[x][x2] + na * tb[y][y2] for y2 in range(nb) for x2 in range(na)]
             for y in range(nb) for x in range(na)]
    labels = [_pair_label(a.labels[x], b.labels[y]) for y in range(nb) for x in range(na)]
    if name is None and a.name and b.name:
        name = f"{a.name}x{b.name}"
    return CayleyGroup(table, labels, name, check=False)


def semidirect_product(h: CayleyGroup, gp: CayleyGroup, action: Sequence[Sequence[int]],
                       name: str | None = None) -> CayleyGroup:
    """H x| G' with (x, y)(x', y') = (x * action[y](x'), y y'); index x + |H|*y.

    ``action[y]`` is the automorphism of H attached to y, as a sequence of
    images of H's element indices.
    """
    nh, ng = h.order, gp.order
    action = [tuple(a) for a in action]
    if len(action) != ng:
        raise PreconditionError("action must give an automorphism for every element of G'")
    th, tg = h.table, gp.table
    for y, phi in enumerate(action):
        if sorted(phi) != list(range(nh)) or any(phi[th[a][b]] != th[phi[a]][phi[b]]
                                                 for a in range(nh) for b in range(nh)):
            raise PreconditionError(f"action image of element {y} is not an automorphism of H")
    for y in range(ng):
        for y2 in range(ng):
            comp = tuple(action[y][action[y2][x]] for x in range(nh))
            if comp != action[tg[y][y2]]:
                raise PreconditionError("action is not a homomorphism into Aut(H)")
    table = [[th[x][action[y][x2]] + nh * tg[y][y2] for y2 in range(ng) for x2 in range(nh)]
             for y in range(ng) for x in range(nh)]
    labels = [_pair_label(h.labels[x], gp.labels[y]) for y in range(ng) for x in range(nh)]
    return CayleyGroup(table, labels, name, check=False)


def _pair_label(la: str, lb: str) -> str:
    if la == "1":
        return lb
    if lb == "1":
        return la
    return f"{la}{lb}" if len(la) == 1 and len(lb) == 1 else f"({la},{lb})"


def regular_representation(g: CayleyGroup) -> PermRep:
    """Left translation x -> g x on element indices."""
    return PermRep(g, g.order, [Perm._raw(row) for row in g.table], transversal=range(g.order))


def right_regular_representation(g: CayleyGroup) -> PermRep:
    """x -> x g^-1; commutes with the left regular representation."""
    t, inv = g.table, g.inverses
    return PermRep(g, g.order, [Perm._raw([t[x][inv[a]] for x in range(g.order)]) for a in range(g.order)])


def coset_action(g: CayleyGroup, gp: SubgroupHandle, transversal: Sequence[int] | None = None) -> PermRep:
    """Left translation on left cosets of ``gp``; point i is the coset transversal[i]*gp.

    Without an explicit transversal the representatives are the smallest
    element index of each coset, so the identity (coset gp) is point 0.
    """
    t = g.table
    members = gp.members
    coset_of = {}
    reps = []
    if transversal is None:
        for x in range(g.order):
            if x in coset_of:
                continue
            c = len(reps)
            reps.append(x)
            for h in members:
                coset_of[t[x][h]] = c
    else:
        reps = list(transversal)
        for c, x in enumerate(reps):
            for h in members:
                y = t[x][h]
                if y in coset_of:
                    raise PreconditionError("transversal has two elements in one coset")
                coset_of[y] = c
        if len(coset_of) != g.order:
            raise PreconditionError("transversal does not cover all cosets")
        if coset_of[0] != 0:
            raise PreconditionError("the first transversal element must lie in the subgroup")
    images = [Perm._raw([coset_of[t[a][x]] for x in reps]) for a in range(g.order)]
    return PermRep(g, len(reps), images, transversal=reps)
