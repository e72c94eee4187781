"""Grammaires de dépendance à domaines d'ordre : modèle, chargement, validation."""
from .dump import dump_grammar
from .loader import load_grammar, load_grammar_text, parse_grammar
from .model import Grammar, LexicalEntry
from .validate import ValidationReport, validate_grammar

__all__ = [
    "Grammar",
    "LexicalEntry",
    "ValidationReport",
    "dump_grammar",
    "load_grammar",
    "load_grammar_text",
    "parse_grammar",
    "validate_grammar",
]
