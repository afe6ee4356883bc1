"""Permutations on {0..n-1} and explicitly stored permutation groups.

A permutation is a tuple of images.  Composition follows function
notation: ``(p * q)(x) == p(q(x))``, i.e. ``q`` is applied first.
"""

from __future__ import annotations

import re
from collections import deque
from typing import Iterable, Iterator, Sequence


class Perm(tuple):
    """Immutable bijection of {0..degree-1}, stored as its image sequence.

    Ordering and hashing are those of the underlying tuple, so sorting a
    collection of permutations sorts them lexicographically by images.
    """

    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()):
        p = super().__new__(cls, images)
        if sorted(p) != list(range(len(p))):
            raise ValueError(f"not a permutation: {tuple(p)}")
        return p

    @classmethod
    def _raw(cls, images) -> "Perm":
        # unchecked constructor for hot loops
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls._raw(range(degree))

    @property
    def degree(self) -> int:
        return len(self)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(self)

    def __call__(self, x: int) -> int:
        return self[x]

    def __mul__(self, other):
        if not isinstance(other, Perm):
            return NotImplemented
        if len(other) != len(self):
            raise ValueError("degree mismatch")
        return Perm._raw([self[i] for i in other])

    __rmul__ = None  # tuple repetition makes no sense here

    def __add__(self, other):
        return NotImplemented

    def inverse(self) -> "Perm":
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return Perm._raw(inv)

    def conjugate(self, by: "Perm") -> "Perm":
        """by * self * by^-1, i.e. self with points renamed through ``by``."""
        out = [0] * len(self)
        for i, j in enumerate(self):
            out[by[i]] = by[j]
        return Perm._raw(out)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self)
        out = []
        for start in range(len(self)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self[start]
            while j != start:
                seen[j] = True
                cyc.append(j)
                j = self[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles()))

    def order(self) -> int:
        from math import lcm

        return lcm(*(len(c) for c in self.cycles())) if len(self) else 1

    def is_semiregular(self) -> bool:
        """All cycles have the same length (every power is fixed-point free or trivial)."""
        return len(set(self.cycle_type())) <= 1

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def __repr__(self) -> str:
        return f"Perm({format_cycles(self)}, degree={len(self)})"

    def __str__(self) -> str:
        return format_cycles(self)


def format_cycles(p: Sequence[int]) -> str:
    parts = []
    for cyc in Perm.cycles(p):
        if len(cyc) > 1:
            parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse ``(0 1 2)(3 4)`` (0-based points, ``()`` for identity).

    Cycles are composed right to left, so non-disjoint input is accepted and
    means the product of the cycles.  Commas are allowed as separators.
    """
    if not text.strip() or _CYCLE_RE.sub("", text).strip():
        raise ValueError(f"malformed cycle notation: {text!r}")
    result = Perm.identity(degree)
    for body in reversed(_CYCLE_RE.findall(text)):
        pts = [int(tok) for tok in re.split(r"[\s,]+", body.strip()) if tok]
        if len(set(pts)) != len(pts):
            raise ValueError(f"repeated point in cycle ({body})")
        if any(not 0 <= x < degree for x in pts):
            raise ValueError(f"point out of range in cycle ({body}) for degree {degree}")
        img = list(range(degree))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
        result = Perm._raw(img) * result
    return result


class PermGroup:
    """A finite permutation group with its full element list.

    ``elements`` is sorted lexicographically; the identity is always first.
    """

    __slots__ = ("degree", "elements", "generators", "_set")

    def __init__(self, degree: int, elements: Iterable[Perm], generators: Iterable[Perm] = ()):
        self.degree = degree
        self.elements = tuple(sorted(elements))
        self._set = frozenset(self.elements)
        gens = tuple(generators)
        self.generators = gens if gens else _greedy_generators(degree, self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.elements)

    def __contains__(self, p) -> bool:
        return p in self._set

    def __eq__(self, other) -> bool:
        return isinstance(other, PermGroup) and self.degree == other.degree and self._set == other._set

    def __hash__(self) -> int:
        return hash((self.degree, self._set))

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order})"

    def key(self) -> tuple:
        """Canonical sort key: the smallest non-identity element, then the rest."""
        return (self.elements[1:2], self.elements)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self._set <= other._set

    def element_set(self) -> frozenset:
        return self._set


def _greedy_generators(degree: int, elements: Sequence[Perm]) -> tuple[Perm, ...]:
    # first elements (in sorted order) not already generated
    if len(elements) > 256:
        return tuple(e for e in elements if not e.is_identity())
    gens: list[Perm] = []
    current = {Perm.identity(degree)} if elements else set()
    for e in elements:
        if len(current) == len(elements):
            break
        if e in current:
            continue
        gens.append(e)
        current = set(generate_closure(degree, gens).elements)
    return tuple(gens)


def generate_closure(degree: int, gens: Iterable[Sequence[int]]) -> PermGroup:
    gens = [g if isinstance(g, Perm) else Perm(g) for g in gens]
    for g in gens:
        if len(g) != degree:
            raise ValueError(f"generator {g} has degree {len(g)}, expected {degree}")
    ident = Perm.identity(degree)
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = Perm._raw([x[i] for i in g])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return PermGroup(degree, seen, [g for g in gens if not g.is_identity()])


def orbit(group: PermGroup, point: int) -> set[int]:
    out = {point}
    queue = [point]
    for x in queue:
        for g in group.generators:
            y = g[x]
            if y not in out:
                out.add(y)
                queue.append(y)
    return out


def is_transitive(group: PermGroup) -> bool:
    return group.degree == 0 or len(orbit(group, 0)) == group.degree


def is_regular(group: PermGroup, on: Iterable[int] | None = None) -> bool:
    """Transitive with trivial point stabilizers on ``on`` (default: all points)."""
    if on is None:
        return group.order == group.degree and is_transitive(group)
    pts = set(on)
    # the group must preserve the point set and act regularly on it
    if any(g[x] not in pts for g in group.generators for x in pts):
        return False
    if group.order != len(pts):
        return False
    base = min(pts)
    return {g[base] for g in group.elements} == pts


def normalizes(a: PermGroup, b: PermGroup) -> bool:
    """True iff every generator of ``a`` conjugates every generator of ``b`` into ``b``."""
    if a.degree != b.degree:
        raise ValueError("degree mismatch")
    return all(y.conjugate(x) in b for x in a.generators for y in b.generators)


def normalizes_all_pairs(a: PermGroup, b: PermGroup) -> bool:
    if a.degree != b.degree:
        raise ValueError("degree mismatch")
    return all(y.conjugate(x) in b for x in a.elements for y in b.elements)


def product_embedding(a: Perm, b: Perm) -> Perm:
    """The permutation (i1, i2) -> (a(i1), b(i2)), pairs indexed as i1*r + i2."""
    r = len(b)
    return Perm._raw([a[i1] * r + b[i2] for i1 in range(len(a)) for i2 in range(r)])


def semiregular_perms(degree: int, base_image: int | None = None) -> Iterator[Perm]:
    """All permutations whose cycles share one common length, excluding the identity.

    If ``base_image`` is given, only those sending 0 to it.
    """
    for k in range(2, degree + 1):
        if degree % k:
            continue
        yield from _equal_cycles(degree, k, base_image)


def _equal_cycles(degree, k, base_image):
    img = [-1] * degree
    used = [False] * degree

    def rec():
        try:
            start = used.index(False)
        except ValueError:
            yield Perm._raw(img)
            return
        used[start] = True
        yield from fill(start, start, 1)
        used[start] = False

    def fill(start, prev, length):
        if length == k:
            img[prev] = start
            yield from rec()
            return
        choices = range(degree)
        if prev == 0 and base_image is not None:
            choices = (base_image,)
        for nxt in choices:
            if used[nxt] or nxt < start:
                continue
            used[nxt] = True
            img[prev] = nxt
            yield from fill(start, nxt, length + 1)
            used[nxt] = False
        img[prev] = -1

    if base_image is not None and base_image == 0:
        return
    if k == 1:
        return
    yield from rec()


def close_by_base_image(elems: dict, news: Iterable[Perm], degree: int) -> dict | None:
    """Extend the group ``elems`` (keyed by image of 0) by ``news`` and close.

    Returns None if two distinct elements of the closure send 0 to the same
    point, which means the closure cannot be semiregular.
    """
    out = dict(elems)
    fresh = []
    for p in news:
        prev = out.get(p[0])
        if prev is None:
            out[p[0]] = p
            fresh.append(p)
        elif prev != p:
            return None
    if not fresh:
        return out
    gens = fresh + [p for p in elems.values() if p[0] != 0]
    queue = list(out.values())
    i = 0
    while i < len(queue):
        x = queue[i]
        i += 1
        for g in gens:
            y = Perm._raw([x[k] for k in g])
            prev = out.get(y[0])
            if prev is None:
                if len(out) == degree:
                    return None
                out[y[0]] = y
                queue.append(y)
            elif prev != y:
                return None
    return out
