"""Parameterized networks of synchronised LTSs.

Models are written as parameterized LTSs (``plts``) placed in the holes of
parameterized nets (``net``), instantiated to finite LTSs, composed by
synchronisation vectors, reduced by bisimulation and checked against a small
property language.
"""

from .aut import export_aut, export_dot, import_aut
from .check import (
    DeadlockFree,
    Inevitably,
    Never,
    Reachable,
    Result,
    Trace,
    check,
    expand_property_instances,
    replays,
)
from .core import DataDomain, LabelPattern, Lts, ModelError
from .dsl import ModelFile, parse_model, parse_props, print_model
from .expand import build_system, instantiate_plts
from .product import KERNEL, compose_flat, compose_hierarchy, hide, synch_product
from .reduce import branching_bisimilar, minimize_branching, minimize_strong, strongly_bisimilar

__version__ = "0.1.0"

__all__ = [
    "DataDomain", "DeadlockFree", "Inevitably", "KERNEL", "LabelPattern", "Lts", "ModelError", "ModelFile",
    "Never", "Reachable", "Result", "Trace", "branching_bisimilar", "build_system", "check", "compose_flat",
    "compose_hierarchy", "expand_property_instances", "export_aut", "export_dot", "hide", "import_aut",
    "instantiate_plts", "minimize_branching", "minimize_strong", "parse_model", "parse_props", "print_model",
    "replays", "strongly_bisimilar", "synch_product",
]
