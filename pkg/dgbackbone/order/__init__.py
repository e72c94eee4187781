"""Structures d'ordre : arbre de dépendances, arbre des domaines, contrôles."""
from .checks import Violation, ViolationCode, check_float_licensing, check_order, check_precedence
from .deptree import DepEdge, DepTree, Word, derive_dependency_tree
from .domains import Domain, DomainTree, ElementLabel, extract_domain_structure

__all__ = [
    "DepEdge",
    "DepTree",
    "Domain",
    "DomainTree",
    "ElementLabel",
    "Violation",
    "ViolationCode",
    "Word",
    "check_float_licensing",
    "check_order",
    "check_precedence",
    "derive_dependency_tree",
    "extract_domain_structure",
]
