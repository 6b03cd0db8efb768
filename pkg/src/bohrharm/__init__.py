"""Bohr-type inequalities for harmonic mappings, checked numerically with certified tails."""

from .families import ExtremalFamilyParams, corpus_generate, mapping_from_json, mobius, prop1
from .functionals import FunctionalId, evaluate
from .harmonic import HarmonicMapping, area_quadrature, area_series, dilatation_check
from .radii import compute_K, empirical_radius, solve_radius_prop1, solve_radius_thm4
from .series import AnalyticSeries, Enclosure, SchemaError, schur_synthesize

__all__ = [
    "AnalyticSeries",
    "Enclosure",
    "ExtremalFamilyParams",
    "FunctionalId",
    "HarmonicMapping",
    "SchemaError",
    "area_quadrature",
    "area_series",
    "compute_K",
    "corpus_generate",
    "dilatation_check",
    "empirical_radius",
    "evaluate",
    "mapping_from_json",
    "mobius",
    "prop1",
    "schur_synthesize",
    "solve_radius_prop1",
    "solve_radius_thm4",
]
__version__ = "0.1.0"
