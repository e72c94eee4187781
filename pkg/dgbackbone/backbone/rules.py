"""Squelette hors-contexte annoté : catégories, règles, unions, rendu texte.

Notation de sortie (celle des dumps ``dg dump-backbone``) ::

    domVfin = domINITIAL domMIDDLE domFINAL.
    domMIDDLE → DOMAIN* Vfin DOMAIN*.
    domFINAL → ( DOMAIN ).
    DOMAIN = { domVfin | domVpp | domN | domD | domI }.

Avec ``annotations=True`` chaque élément de partie droite est suivi de ses
annotations fonctionnelles (``@(HEAD)``, ``@(MODIFIER)``, ``(↓ FIELD) = x``,
``(↓ CLASS) =c {..}``).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum


class CategoryKind(StrEnum):
    DOMAIN = "domain"
    SLOT = "slot"
    PRETERMINAL = "preterminal"
    META = "metacategory"
    UNION = "union"
    START = "start"


@dataclass(frozen=True)
class Category:
    name: str
    kind: CategoryKind
    owner_class: str | None = None
    slot: str | None = None
    field_label: str | None = None
    holds_self: bool = False

    def __str__(self) -> str:
        return self.name

    @property
    def is_domain(self) -> bool:
        return self.kind in (CategoryKind.DOMAIN, CategoryKind.SLOT)


class Repetition(StrEnum):
    ONE = "one"
    OPTIONAL = "optional"
    STAR = "star"


class AnnotationKind(StrEnum):
    HEAD = "headIdentification"
    MODIFIER = "modifierPlacement"
    FIELD = "fieldAssignment"
    SCHEMA = "constraintSchema"


@dataclass(frozen=True)
class Annotation:
    """Annotation portée par l'élément de partie droite auquel elle est attachée."""

    kind: AnnotationKind
    field_label: str | None = None
    accepts: tuple[str, ...] = ()

    def __str__(self) -> str:
        match self.kind:
            case AnnotationKind.HEAD:
                return "@(HEAD)"
            case AnnotationKind.MODIFIER:
                return "@(MODIFIER)"
            case AnnotationKind.FIELD:
                return f"(↓ FIELD) = {self.field_label}"
            case _:
                return "(↓ CLASS) =c {" + "|".join(self.accepts) + "}"


HEAD = Annotation(AnnotationKind.HEAD)
MODIFIER = Annotation(AnnotationKind.MODIFIER)


def has(annotations: tuple[Annotation, ...], kind: AnnotationKind) -> bool:
    return any(a.kind is kind for a in annotations)


def field_of(annotations: tuple[Annotation, ...]) -> str | None:
    return next((a.field_label for a in annotations if a.kind is AnnotationKind.FIELD), None)


def accepts_of(annotations: tuple[Annotation, ...]) -> tuple[str, ...]:
    return next((a.accepts for a in annotations if a.kind is AnnotationKind.SCHEMA), ())


@dataclass(frozen=True)
class RhsItem:
    category: Category
    repetition: Repetition = Repetition.ONE
    annotations: tuple[Annotation, ...] = ()
    group: int | None = None

    def render(self, annotations: bool = False) -> str:
        match self.repetition:
            case Repetition.OPTIONAL:
                text = f"( {self.category} )"
            case Repetition.STAR:
                text = f"{self.category}*"
            case _:
                text = str(self.category)
        if annotations and self.annotations:
            text += ": " + " ".join(str(a) for a in self.annotations)
        return text


@dataclass(frozen=True)
class BackboneRule:
    lhs: Category
    rhs: tuple[RhsItem, ...]

    def render(self, annotations: bool = False) -> str:
        sep = "; " if annotations else " "
        return f"{self.lhs} → " + sep.join(i.render(annotations) for i in self.rhs) + "."


@dataclass(frozen=True)
class Metacategory:
    category: Category
    members: tuple[Category, ...]

    def render(self) -> str:
        return f"{self.category} = " + " ".join(str(m) for m in self.members) + "."


@dataclass(frozen=True)
class DomainUnion:
    category: Category
    alternatives: tuple[tuple[Category, ...], ...]

    def render(self) -> str:
        alts = " | ".join(" ".join(str(c) for c in alt) for alt in self.alternatives)
        return f"{self.category} = {{ {alts} }}." if alts else f"{self.category} = {{ }}."

    def owner_classes(self) -> tuple[str | None, ...]:
        return tuple(alt[0].owner_class if alt else None for alt in self.alternatives)


@dataclass(frozen=True)
class BackboneRuleSet:
    rules: tuple[BackboneRule, ...]
    start: Category | None
    unions: tuple[DomainUnion, ...] = ()
    metacategories: tuple[Metacategory, ...] = ()

    def rules_for(self, lhs: Category) -> tuple[BackboneRule, ...]:
        return tuple(r for r in self.rules if r.lhs == lhs)

    def union(self, name: str) -> DomainUnion | None:
        return next((u for u in self.unions if u.category.name == name), None)

    def render(self, annotations: bool = False) -> str:
        metas = {m.category.owner_class: m for m in self.metacategories}
        printed: set[str] = set()
        lines: list[str] = []
        for rule in self.rules:
            owner = rule.lhs.owner_class
            if rule.lhs.kind is CategoryKind.SLOT and owner in metas and owner not in printed:
                printed.add(owner)
                lines.append(metas[owner].render())
            lines.append(rule.render(annotations))
        lines += [m.render() for owner, m in metas.items() if owner not in printed]
        lines += [u.render() for u in self.unions]
        return "\n".join(lines)
