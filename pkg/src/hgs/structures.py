"""Galois contexts and Hopf Galois structures as regular permutation groups."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Sequence

from .errors import InvariantViolation, PreconditionError
from .grouplab import (CayleyGroup, PermRep, SubgroupHandle, coset_action, identify_type,
                       regular_representation, right_regular_representation)
from .permcore import Perm, PermGroup, format_cycles, is_regular, normalizes, parse_cycles


class GaloisContext:
    """G acting on the left cosets of G' (the extension K/k with K = closure^G').

    ``G' = 1`` is the Galois case, where the action is left translation.
    """

    def __init__(self, G: CayleyGroup, Gp: SubgroupHandle | None = None,
                 transversal: Sequence[int] | None = None):
        self.G = G
        self.Gp = Gp if Gp is not None else G.trivial_subgroup()
        if self.Gp.is_trivial() and transversal is None:
            self.action = regular_representation(G)
        else:
            self.action = coset_action(G, self.Gp, transversal)
        self.degree = self.action.degree

    @classmethod
    def galois(cls, G: CayleyGroup) -> "GaloisContext":
        return cls(G)

    @property
    def is_galois(self) -> bool:
        return self.Gp.is_trivial()

    @property
    def transversal(self) -> tuple[int, ...]:
        return self.action.transversal

    @cached_property
    def image(self) -> PermGroup:
        return self.action.image

    def coset_of(self) -> dict[int, int]:
        t = self.G.table
        out = {}
        for c, x in enumerate(self.transversal):
            for h in self.Gp.members:
                out[t[x][h]] = c
        return out

    def key(self) -> tuple:
        return (self.G.table, self.Gp.members, self.transversal)

    def describe(self) -> dict:
        return {"group": self.G.name, "stabilizer": list(self.Gp.members),
                "transversal": list(self.transversal)}

    def __repr__(self) -> str:
        return f"GaloisContext({self.G.name}, |G'|={self.Gp.order}, degree={self.degree})"


@dataclass
class Flags:
    classical: bool = False
    canonical_nonclassical: bool = False
    split_abstract: bool | None = None
    split_gstable: bool | None = None
    induced: bool | None = None  # None until classified

    def as_dict(self) -> dict:
        return {"classical": self.classical, "canonical_nonclassical": self.canonical_nonclassical,
                "split_abstract": self.split_abstract, "split_gstable": self.split_gstable,
                "induced": self.induced}


@dataclass
class HgsStructure:
    context: GaloisContext
    N: PermGroup
    type: str
    flags: Flags = field(default_factory=Flags)
    recipes: list = field(default_factory=list)

    @cached_property
    def abstract(self) -> CayleyGroup:
        """N as a Cayley group; element k is ``N.elements[k]``."""
        return CayleyGroup.from_perm_group(self.N, self.type)

    def key(self) -> tuple:
        return self.N.key()

    def with_flags(self, **changes) -> "HgsStructure":
        return replace(self, flags=replace(self.flags, **changes))

    def to_json(self) -> dict:
        return {
            "context": {"group": self.context.G.name, "stabilizer": list(self.context.Gp.members)},
            "degree": self.N.degree,
            "N": [format_cycles(p) for p in self.N.elements],
            "generators": [format_cycles(p) for p in self.N.generators],
            "type": self.type,
            "flags": self.flags.as_dict(),
            "recipes": [r.describe() for r in self.recipes],
        }


def make_structure(context: GaloisContext, N: PermGroup, type_name: str | None = None) -> HgsStructure:
    """Validate N against the Greither-Pareigis criterion and wrap it."""
    if N.degree != context.degree:
        raise PreconditionError("N and the context act on different degrees")
    if not is_regular(N):
        raise InvariantViolation("N is not regular")
    if not normalizes(context.image, N):
        raise InvariantViolation("N is not normalized by the action of G")
    if type_name is None:
        type_name = identify_type(CayleyGroup.from_perm_group(N))
    flags = Flags()
    if context.is_galois:
        rho = right_regular_representation(context.G)
        flags.classical = N.element_set() == frozenset(rho.images)
        flags.canonical_nonclassical = (not context.G.is_abelian
                                        and N.element_set() == context.image.element_set())
    return HgsStructure(context, N, type_name, flags)


def structure_from_json(data: dict, G: CayleyGroup | None = None) -> HgsStructure:
    from .grouplab import construct_named

    ctx = data["context"]
    if G is None:
        G = construct_named(ctx["group"])
    Gp = SubgroupHandle(G, ctx.get("stabilizer", [0]))
    context = GaloisContext(G, Gp)
    degree = data.get("degree", context.degree)
    elems = [parse_cycles(c, degree) for c in data["N"]]
    N = PermGroup(degree, elems)
    from .permcore import generate_closure

    if generate_closure(degree, elems).element_set() != N.element_set():
        raise PreconditionError("listed elements of N are not a group")
    return make_structure(context, N)


def perm_group_from_images(degree: int, elems) -> PermGroup:
    return PermGroup(degree, [e if isinstance(e, Perm) else Perm._raw(e) for e in elems])
