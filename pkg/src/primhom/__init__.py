"""Primitive images, primitive homology and simple closed curve images for
finite covers of roses and the twice-punctured torus."""

from .characters import CharacterTable, character_table, dim_fixed_subspace, induced_trivial_character, load_table, save_table
from .covers import (
    build_cover, elevation_class, homology, homology_action, primitive_homology_span, quotient_fixed_check,
)
from .cyclo import CycloMatrix, CycloNumber, rank_and_nullspace
from .groups import (
    FiniteGroup, Homomorphism, abelian_group, closure_from_generators, cyclic_group, direct_product,
    is_redundant, metacyclic_group, nilpotent2_group, permutation_group, polycyclic_group,
)
from .orbits import (
    automorphism_orbit_images, frattini_basis_check, has_primitive_in_kernel, irrpr_set, primitive_image_set,
)
from .surfaces import irrscc_set, scc_image_set, sigma12_preset
from .words import Automorphism, Word, parse_word

__version__ = "0.1.0"
