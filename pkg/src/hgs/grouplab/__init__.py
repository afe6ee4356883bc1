"""Abstract finite groups: construction, structure and identification."""

from .cayley import (CayleyGroup, GroupHom, PermRep, SubgroupHandle, coset_action, direct_product,
                     regular_representation, right_regular_representation, semidirect_product)
from .iso import (all_isomorphisms, are_isomorphic, automorphism_group, extend_hom, find_isomorphism,
                  generating_set)
from .named import (catalog, catalog_group, construct_named, groups_of_order, identify_type,
                    is_complete_order)
from .subgroups import (all_subgroups, are_conjugate, complements_of_normal, is_hall, normal_complements,
                        normal_core, normal_subgroups, parity_kernel, sylow_subgroups)

__all__ = [
    "CayleyGroup", "GroupHom", "PermRep", "SubgroupHandle", "coset_action", "direct_product",
    "regular_representation", "right_regular_representation", "semidirect_product",
    "all_isomorphisms", "are_isomorphic", "automorphism_group", "extend_hom", "find_isomorphism",
    "generating_set", "catalog", "catalog_group", "construct_named", "groups_of_order", "identify_type",
    "is_complete_order", "all_subgroups", "are_conjugate", "complements_of_normal", "is_hall",
    "normal_complements", "normal_core", "normal_subgroups", "parity_kernel", "sylow_subgroups",
]
