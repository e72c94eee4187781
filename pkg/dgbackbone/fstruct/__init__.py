"""Moteur de f-structures : unification, chemins réguliers, contraintes."""
from .constraints import (
    Constraint,
    ConstraintKind,
    PathSet,
    apply_defining,
    check_constraining,
    resolve_uncertainty,
)
from .nodes import FNode, UnificationFailure, canonical, subsumes, unify
from .paths import PathExpr, parse_regular_path

__all__ = [
    "Constraint",
    "ConstraintKind",
    "FNode",
    "PathExpr",
    "PathSet",
    "UnificationFailure",
    "apply_defining",
    "canonical",
    "check_constraining",
    "parse_regular_path",
    "resolve_uncertainty",
    "subsumes",
    "unify",
]
