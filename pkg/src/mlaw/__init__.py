"""Nonabelian tensor and exterior squares, Schur multipliers and
multiplicative Lie algebra structures on small finite groups."""

from .catalog import describe
from .cosets import CosetLimitError, CosetTable, EnumerationLimits, group_from_cosets, todd_coxeter
from .families import (
    alternating,
    builtin_family,
    cyclic,
    cyclic_product,
    dihedral,
    direct_product,
    group_from_permutations,
    klein,
    parse_cycles,
    quaternion,
    sl23,
    symmetric,
)
from .group import (
    AbelianInvariants,
    FiniteGroup,
    GroupError,
    GroupHom,
    OrderLimitError,
    Subgroup,
    abelian_invariants,
    commutator,
    conjugate,
    derived_subgroup,
    divisor_count,
    quotient_group,
    subgroup_generated,
)
from .mla import (
    AxiomReport,
    EnumerationMismatch,
    MlaStructure,
    StructureClass,
    classify_structures,
    commutator_structure,
    enumerate_structures,
    enumerate_structures_direct,
    enumerate_structures_via_wedge,
    is_lie_simple,
    trivial_structure,
    verify_axioms,
)
from .morphisms import are_isomorphic, enumerate_homs, find_isomorphism, hom_from_generator_images
from .presentation import Presentation, PresentationError, parse_presentation
from .wedge import WedgeSquare, commutator_hom, exterior_square, tensor_square

__all__ = [name for name in dir() if not name.startswith("_")]
