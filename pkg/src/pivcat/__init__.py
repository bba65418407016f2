"""Exact inner-hom, trace and Frobenius-algebra computations for fusion rings,
their NIM-reps, and pointed categories ``Vect[G]``."""

from __future__ import annotations

from .cyclotomic import CyclotomicScalar
from .errors import PivcatError
from .fusion_ring import FusionRing, RingElement, build_fusion_ring
from .gr_modules import NimRep, build_nimrep, inner_hom_left, inner_hom_right
from .groups import FiniteGroup, builtin_group
from .pointed import Character, CosetModule, build_module_trace, module_trace_exists

__version__ = "0.1.0"

__all__ = [
    "Character", "CosetModule", "CyclotomicScalar", "FiniteGroup", "FusionRing", "NimRep",
    "PivcatError", "RingElement", "build_fusion_ring", "build_module_trace", "build_nimrep",
    "builtin_group", "inner_hom_left", "inner_hom_right", "module_trace_exists",
]
