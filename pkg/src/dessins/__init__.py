"""Dessins d'enfants as pairs of permutations.

A dessin is a transitive pair (sigma_x, sigma_y) of permutations of its
edge set. This package computes the combinatorial invariants attached to
such pairs: passports, genus, monodromy (cartographic) groups, regular
covers, central quotients, isomorphism and Galois-orbit distinctness
certificates, plus triangle-group maximality data and bounded coset
enumeration for presentations of the free group on two generators.
"""

from dessins._kernel import BACKEND
from dessins.dessin import (
    CoveringMap,
    Dessin,
    NotTransitiveError,
    Passport,
    RegularType,
    automorphisms,
    canonical_form,
    enumerate_by_passport,
    euler_rh,
    genus_from_type,
    isomorphic,
    new_dessin,
    quotient_by_central,
    quotient_by_partition,
    quotient_with_map,
    regular_cover,
    regular_cover_with_map,
)
from dessins.errors import CapExceededError, DessinsError
from dessins.fpgroup import CosetCapExceededError, Presentation, coset_enumerate
from dessins.group import PermGroup
from dessins.moduli import (
    OrbitReport,
    distinguishing_witness,
    kernels_equal,
    orbit_report,
    subdirect_group,
)
from dessins.perm import (
    CycleType,
    Permutation,
    compose,
    direct_sum_pair,
    parse_cycles,
    print_cycles,
)
from dessins.triangle import Inclusion, find_inclusion, is_maximal, normal_in_supergroup
from dessins.words import Word, bundled_witness, commutator, parse_word

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CapExceededError",
    "CosetCapExceededError",
    "CoveringMap",
    "CycleType",
    "Dessin",
    "DessinsError",
    "Inclusion",
    "NotTransitiveError",
    "OrbitReport",
    "Passport",
    "PermGroup",
    "Permutation",
    "Presentation",
    "RegularType",
    "Word",
    "automorphisms",
    "bundled_witness",
    "canonical_form",
    "commutator",
    "compose",
    "coset_enumerate",
    "direct_sum_pair",
    "distinguishing_witness",
    "enumerate_by_passport",
    "euler_rh",
    "find_inclusion",
    "genus_from_type",
    "is_maximal",
    "isomorphic",
    "kernels_equal",
    "new_dessin",
    "normal_in_supergroup",
    "orbit_report",
    "parse_cycles",
    "parse_word",
    "print_cycles",
    "quotient_by_central",
    "quotient_by_partition",
    "quotient_with_map",
    "regular_cover",
    "regular_cover_with_map",
    "subdirect_group",
]
