"""
Explicit constructions: solid tori, base surfaces, circle bundles, coned balls and Seifert fibred spaces.
"""

from src.core.builders.boundary import BuildReport, LabeledBoundary, propagate
from src.core.builders.bundle import circle_bundle, reduce_boundary_torus
from src.core.builders.cones import cone_annulus_to_d2xi, truncate_ideal
from src.core.builders.sfs import build_sfs
from src.core.builders.solid_torus import dehn_fill, layered_solid_torus, one_tet_solid_torus, standalone_lst
from src.core.builders.surfaces import base_surface, simplicial_annulus
from src.core.moves import cone_boundary

__all__ = [
    "BuildReport",
    "LabeledBoundary",
    "base_surface",
    "build_sfs",
    "circle_bundle",
    "cone_annulus_to_d2xi",
    "cone_boundary",
    "dehn_fill",
    "layered_solid_torus",
    "one_tet_solid_torus",
    "propagate",
    "reduce_boundary_torus",
    "simplicial_annulus",
    "standalone_lst",
    "truncate_ideal",
]
