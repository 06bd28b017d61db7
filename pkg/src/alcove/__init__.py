"""Exact computations for fusion categories of quantum groups at roots of unity."""

from __future__ import annotations

from .errors import AlcoveError
from .fusion import AlcoveContext, AffineRep, FusionTable, affine_dominant, enumerate_alcove, fuse
from .multiplicity import WeightDiagram, weight_diagram, weight_multiplicity
from .rootdata import LieType, RootSystem, build_root_system, center_group

__all__ = [
    "AffineRep",
    "AlcoveContext",
    "AlcoveError",
    "FusionTable",
    "LieType",
    "RootSystem",
    "WeightDiagram",
    "affine_dominant",
    "build_root_system",
    "center_group",
    "enumerate_alcove",
    "fuse",
    "weight_diagram",
    "weight_multiplicity",
]

__version__ = "0.1.0"
