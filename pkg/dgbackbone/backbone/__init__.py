"""Squelette hors-contexte compilé depuis les domaines d'ordre."""
from .compiler import build_backbone, compile_domains, expand_metacategories, landing_classes, specialize_domain_union
from .rules import Annotation, AnnotationKind, BackboneRule, BackboneRuleSet, Category, CategoryKind, Repetition, RhsItem

__all__ = [
    "Annotation",
    "AnnotationKind",
    "BackboneRule",
    "BackboneRuleSet",
    "Category",
    "CategoryKind",
    "Repetition",
    "RhsItem",
    "build_backbone",
    "compile_domains",
    "expand_metacategories",
    "landing_classes",
    "specialize_domain_union",
]
