"""Traduction des entrées lexicales en contraintes fonctionnelles.

Un slot ``req`` devient ``(↑ d CLASS) = c`` + ``(↑ d LEXEME)`` ; un slot
``opt`` la disjonction ``~(↑ d)`` OU la même paire. Les attributs lexicaux
(CLASS, LEXEME, INDEX, traits) sont des définitions, les gouvernements
``=c`` des contraintes vérifiées après coup.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..fstruct.constraints import Constraint, constraining, defining, existential, negative
from ..fstruct.nodes import CLASS, INDEX, LEXEME
from .model import LexicalEntry, Optionality, ValencySlot


@dataclass(frozen=True)
class ValencySchema:
    slot: ValencySlot
    branches: tuple[tuple[Constraint, ...], ...]

    @staticmethod
    def is_present(branch: tuple[Constraint, ...]) -> bool:
        return any(c.kind != "negative" for c in branch)


def expand_valency(entry: LexicalEntry) -> tuple[ValencySchema, ...]:
    schemas = []
    for slot in entry.valency:
        present = (defining((slot.dep, CLASS), slot.mod_class), existential((slot.dep, LEXEME)))
        if slot.optionality is Optionality.OPT:
            branches = ((negative((slot.dep,)),), present)
        else:
            branches = (present,)
        schemas.append(ValencySchema(slot, branches))
    return tuple(schemas)


def lexical_definitions(entry: LexicalEntry, index: int) -> tuple[Constraint, ...]:
    out = [
        defining((CLASS,), entry.word_class),
        defining((LEXEME,), entry.lexeme),
        defining((INDEX,), str(index)),
    ]
    out += [defining((attr,), value) for attr, value in entry.features]
    return tuple(out)


def government_checks(entry: LexicalEntry) -> tuple[Constraint, ...]:
    return tuple(constraining(rule.path, rule.value) for rule in entry.government)
