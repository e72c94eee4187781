"""Oracle de linéarisation et validation croisée."""
from .linearize import (
    Linearization,
    enumerate_dependency_trees,
    enumerate_linearizations,
    read_dependency_triples,
    tree_is_licensed,
)
from .xcheck import XcheckReport, cross_validate, generate

__all__ = [
    "Linearization",
    "XcheckReport",
    "cross_validate",
    "enumerate_dependency_trees",
    "enumerate_linearizations",
    "generate",
    "read_dependency_triples",
    "tree_is_licensed",
]
