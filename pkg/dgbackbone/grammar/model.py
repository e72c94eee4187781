"""Modèle de grammaire : classes de mots, valences, domaines d'ordre, lexique.

Toutes les structures sont des dataclasses gelées ; les références entre
déclarations passent par le NOM (classe, dépendance), la cohérence étant
vérifiée par ``grammar.validate``. Le champ ``line`` (ligne source) est exclu
des comparaisons : une grammaire rechargée depuis sa propre sérialisation est
égale à l'originale.
"""
from __future__ import annotations

import functools
from collections.abc import Iterator
from dataclasses import dataclass, field
from enum import StrEnum

from ..fstruct.paths import PathExpr


class Cardinality(StrEnum):
    ZERO_OR_MORE = "*"
    AT_MOST_ONE = "?"
    AT_LEAST_ONE = "+"
    EXACTLY_ONE = "!"

    @property
    def minimum(self) -> int:
        return 1 if self in (Cardinality.AT_LEAST_ONE, Cardinality.EXACTLY_ONE) else 0

    @property
    def maximum(self) -> int | None:
        return 1 if self in (Cardinality.AT_MOST_ONE, Cardinality.EXACTLY_ONE) else None

    def admits(self, count: int) -> bool:
        return count >= self.minimum and (self.maximum is None or count <= self.maximum)


def admits(cardinality: Cardinality | None, count: int) -> bool:
    """Cardinalité absente (côté d'un slot ``@self`` sans marqueur) : aucun élément."""
    return count == 0 if cardinality is None else cardinality.admits(count)


class Optionality(StrEnum):
    OPT = "opt"
    REQ = "req"


class PredicateKind(StrEnum):
    SELF_FIRST = "self-first"
    SELF_LAST = "self-last"
    DEP_BEFORE_DEP = "dep-before-dep"


def _line():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class WordClass:
    name: str
    line: int | None = _line()


@dataclass(frozen=True)
class DependencyType:
    name: str
    line: int | None = _line()


@dataclass(frozen=True)
class ValencySlot:
    optionality: Optionality
    dep: str
    mod_class: str

    def __str__(self) -> str:
        return f"valency({self.optionality} {self.dep} {self.mod_class})"


@dataclass(frozen=True)
class DomainSlotSpec:
    """Un slot de domaine.

    Slot ordinaire : ``cardinality`` borne le nombre d'éléments. Slot
    ``holds_self`` : ``cardinality`` borne les éléments AVANT le mot,
    ``after`` ceux APRÈS (``None`` = aucun).
    """

    name: str
    cardinality: Cardinality | None
    holds_self: bool = False
    after: Cardinality | None = None
    field_label: str | None = None
    accepts: tuple[str, ...] = ()

    def admits_split(self, before: int, after: int) -> bool:
        if not self.holds_self:
            return after == 0 and admits(self.cardinality, before)
        return admits(self.cardinality, before) and admits(self.after, after)


@dataclass(frozen=True)
class DomainSpec:
    word_class: str
    slots: tuple[DomainSlotSpec, ...]
    line: int | None = _line()

    @property
    def is_single_slot(self) -> bool:
        return len(self.slots) == 1

    @property
    def self_slot(self) -> DomainSlotSpec | None:
        return next((s for s in self.slots if s.holds_self), None)

    def slot(self, name: str) -> DomainSlotSpec | None:
        return next((s for s in self.slots if s.name == name), None)


@dataclass(frozen=True)
class PrecedencePredicate:
    holder: str
    kind: PredicateKind
    left: str | None = None
    right: str | None = None
    line: int | None = _line()

    def __str__(self) -> str:
        if self.kind is PredicateKind.DEP_BEFORE_DEP:
            return f"{self.holder} {self.left} < {self.right}"
        return f"{self.holder} {self.kind}"


@dataclass(frozen=True)
class ModifierPathSpec:
    dep: str
    float_path: PathExpr
    target_field: str | None = None
    line: int | None = _line()


@dataclass(frozen=True)
class Government:
    """Contrainte ``=c`` portée par le gouverneur : ``(↑ path) =c value``."""

    path: tuple[str, ...]
    value: str

    def __str__(self) -> str:
        return f"({' '.join(self.path)}) =c {self.value}"


@dataclass(frozen=True)
class LexicalEntry:
    surface: str
    word_class: str
    lexeme: str
    valency: tuple[ValencySlot, ...] = ()
    features: tuple[tuple[str, str], ...] = ()
    government: tuple[Government, ...] = ()
    line: int | None = _line()

    def slot(self, dep: str) -> ValencySlot | None:
        return next((s for s in self.valency if s.dep == dep), None)

    def attribute(self, name: str) -> str | None:
        if name == "CLASS":
            return self.word_class
        if name == "LEXEME":
            return self.lexeme
        return dict(self.features).get(name)


@dataclass(frozen=True)
class Grammar:
    classes: tuple[WordClass, ...] = ()
    deps: tuple[DependencyType, ...] = ()
    domain_specs: tuple[DomainSpec, ...] = ()
    predicates: tuple[PrecedencePredicate, ...] = ()
    path_specs: tuple[ModifierPathSpec, ...] = ()
    lexicon: tuple[LexicalEntry, ...] = ()
    root_classes: tuple[str, ...] = ()

    # Index paresseux (cached_property écrit directement dans __dict__).

    @functools.cached_property
    def class_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.classes)

    @functools.cached_property
    def dep_names(self) -> tuple[str, ...]:
        return tuple(d.name for d in self.deps)

    @functools.cached_property
    def _domains(self) -> dict[str, DomainSpec]:
        return {spec.word_class: spec for spec in reversed(self.domain_specs)}

    @functools.cached_property
    def _paths(self) -> dict[str, ModifierPathSpec]:
        return {spec.dep: spec for spec in reversed(self.path_specs)}

    @functools.cached_property
    def _by_surface(self) -> dict[str, tuple[LexicalEntry, ...]]:
        index: dict[str, list[LexicalEntry]] = {}
        for entry in self.lexicon:
            index.setdefault(entry.surface, []).append(entry)
        return {k: tuple(v) for k, v in index.items()}

    @functools.cached_property
    def _by_class(self) -> dict[str, tuple[LexicalEntry, ...]]:
        index: dict[str, list[LexicalEntry]] = {}
        for entry in self.lexicon:
            index.setdefault(entry.word_class, []).append(entry)
        return {k: tuple(v) for k, v in index.items()}

    def domain_spec(self, word_class: str) -> DomainSpec | None:
        return self._domains.get(word_class)

    def path_spec(self, dep: str) -> ModifierPathSpec | None:
        return self._paths.get(dep)

    def entries_for(self, surface: str) -> tuple[LexicalEntry, ...]:
        return self._by_surface.get(surface, ())

    def entries_of_class(self, word_class: str) -> tuple[LexicalEntry, ...]:
        return self._by_class.get(word_class, ())

    def entry(self, surface: str, word_class: str) -> LexicalEntry | None:
        return next((e for e in self.entries_for(surface) if e.word_class == word_class), None)

    def predicates_for(self, word_class: str) -> tuple[PrecedencePredicate, ...]:
        # un prédicat répété ne compte qu'une fois
        return tuple(dict.fromkeys(p for p in self.predicates if p.holder == word_class))

    def slot_spec(self, word_class: str, slot_name: str) -> DomainSlotSpec | None:
        spec = self.domain_spec(word_class)
        return spec.slot(slot_name) if spec is not None else None

    def iter_valency(self, word_class: str) -> Iterator[ValencySlot]:
        for entry in self.entries_of_class(word_class):
            yield from entry.valency
