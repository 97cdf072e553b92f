"""Exact counts of sections of surface bundles with finite fiber group."""

from .counting import brute_force_count, exists_section, fm_brute, fm_count, formula_count, lift_count_finite, q8_survey
from .exactfield import CycloMatrix, CycloNumber
from .geometry import SurfaceExtension, SurfaceSignature, extension_from_spec
from .groups import Automorphism, FiniteGroup, build_group
from .reps import Representation, irr_catalog
from .statesum import BiangularAlgebra, CWSurface, GSystem, g_center, group_algebra_biangular, state_sum

__version__ = "0.1.0"

__all__ = [
    "Automorphism",
    "BiangularAlgebra",
    "CWSurface",
    "CycloMatrix",
    "CycloNumber",
    "FiniteGroup",
    "GSystem",
    "Representation",
    "SurfaceExtension",
    "SurfaceSignature",
    "brute_force_count",
    "build_group",
    "exists_section",
    "extension_from_spec",
    "fm_brute",
    "fm_count",
    "formula_count",
    "g_center",
    "group_algebra_biangular",
    "irr_catalog",
    "lift_count_finite",
    "q8_survey",
    "state_sum",
]
