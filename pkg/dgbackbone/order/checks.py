"""Contrôles d'ordre sur une analyse : prédicats de précédence et flottement.

Un prédicat de la classe C s'évalue dans l'unique domaine dont le mot de
classe C est membre direct, sur les éléments de ce domaine étiquetés par leur
dépendance entrante. Les violations sont des valeurs, triées de façon
déterministe ; une liste vide signifie « analyse acceptée ».
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum

from ..fstruct.paths import path_matches
from ..grammar.model import Grammar, PredicateKind
from .deptree import DepTree, Word
from .domains import DomainTree


class ViolationCode(StrEnum):
    PRED_SELF_FIRST = "PRED_SELF_FIRST"
    PRED_SELF_LAST = "PRED_SELF_LAST"
    PRED_DEP_ORDER = "PRED_DEP_ORDER"
    FLOAT_PATH = "FLOAT_PATH"
    FIELD_MISMATCH = "FIELD_MISMATCH"
    SLOT_CLASS = "SLOT_CLASS"


@dataclass(frozen=True, order=True)
class Violation:
    word: Word
    code: ViolationCode
    message: str

    def __str__(self) -> str:
        return f"{self.code} {self.word}: {self.message}"


def check_precedence(dt: DomainTree, dep: DepTree, g: Grammar) -> list[Violation]:
    out: list[Violation] = []
    for domain in dt.domains:
        member = domain.member
        if member is None:
            continue
        predicates = g.predicates_for(member.word_class)
        if not predicates:
            continue
        elements = dt.elements(domain, dep)
        mine = next(e for e in elements if e.word == member)
        others = [e for e in elements if e.word != member]
        for predicate in predicates:
            match predicate.kind:
                case PredicateKind.SELF_FIRST:
                    if any(e.start < mine.start for e in others):
                        out.append(Violation(member, ViolationCode.PRED_SELF_FIRST,
                                             f"{member.surface} is not first in {domain.label()}"))
                case PredicateKind.SELF_LAST:
                    if any(e.start > mine.start for e in others):
                        out.append(Violation(member, ViolationCode.PRED_SELF_LAST,
                                             f"{member.surface} is not last in {domain.label()}"))
                case PredicateKind.DEP_BEFORE_DEP:
                    lefts = [e for e in others if e.incoming_dep == predicate.left]
                    rights = [e for e in others if e.incoming_dep == predicate.right]
                    if any(r.start < lft.start for lft in lefts for r in rights):
                        out.append(Violation(member, ViolationCode.PRED_DEP_ORDER,
                                             f"{predicate.right} precedes {predicate.left} in {domain.label()}"))
    return sorted(out)


def check_float_licensing(dt: DomainTree, dep: DepTree, g: Grammar) -> list[Violation]:
    """Tête positionnelle, chemin de flottement, champ cible et classes admises du slot."""
    out: list[Violation] = []
    for word in dep.words:
        edge = dep.head_of(word)
        if edge is None:
            continue
        owned = dt.owned(word)
        if not owned:
            continue
        parent = owned[0].parent
        if parent is None or parent.owner is None:
            out.append(Violation(word, ViolationCode.FLOAT_PATH, f"{word.surface} is not placed in any domain"))
            continue
        positional = parent.owner
        spec = g.path_spec(edge.dep)
        path = dep.path_between(positional, edge.head)
        if spec is None or path is None or not path_matches(spec.float_path, path):
            shown = " ".join(path) if path else "-"
            out.append(Violation(word, ViolationCode.FLOAT_PATH,
                                 f"{edge.dep} placed in the domain of {positional.surface} (path {shown})"))
            continue
        if spec.target_field is not None and parent.field_label != spec.target_field:
            out.append(Violation(word, ViolationCode.FIELD_MISMATCH,
                                 f"{edge.dep} must land in field {spec.target_field}, found {parent.field_label}"))
        slot = g.slot_spec(positional.word_class, parent.slot)
        if slot is not None and slot.accepts and word.word_class not in slot.accepts:
            out.append(Violation(word, ViolationCode.SLOT_CLASS,
                                 f"slot {slot.name} does not accept class {word.word_class}"))
    return sorted(out)


def check_order(dt: DomainTree, dep: DepTree, g: Grammar) -> list[Violation]:
    return sorted(check_precedence(dt, dep, g) + check_float_licensing(dt, dep, g))
