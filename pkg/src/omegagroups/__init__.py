"""Finite groups with operations, crossed modules, internal groupoids and their covers."""

from .actions import (
    ActionFamily,
    SplitExtension,
    check_split_extension,
    derived_actions_from_split_extension,
    semidirect,
    semidirect_extension,
    trivial_action,
    verify_derived_action,
)
from .covering import (
    ConstructedCover,
    characteristic_subobject,
    classify_covers,
    construct_cover,
    lift_operations,
)
from .equivalence import (
    IsoWitness,
    delta,
    delta_on_covering,
    eta,
    eta_on_cover,
    iso_delta_eta,
    iso_eta_delta,
)
from .groupoid import (
    FiniteGroupoid,
    GroupoidMorphism,
    check_groupoid,
    check_groupoid_morphism,
    connected_components,
    is_covering_morphism,
    star,
)
from .internal import (
    InternalGroupoid,
    check_internal_groupoid,
    check_internal_morphism,
    kernel_of_source,
    vertex_omega_group,
)
from .omega import (
    OmegaGroup,
    OmegaMorphism,
    Signature,
    Subobject,
    check_morphism,
    check_omega_group,
    enumerate_subobjects,
    is_subobject,
    kernel_image,
)
from .report import Report, StructureError, VerificationError
from .terms import Identity, check_identity, eval_term, parse_identity, parse_term
from .xmod import (
    CrossedModule,
    XModMorphism,
    check_crossed_module,
    check_xmod_morphism,
    is_cover,
)

__version__ = "0.1.0"
