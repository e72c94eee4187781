"""Grammaire hors-contexte plate (sans ``*`` ni ``( )``) dérivée du squelette.

Chaque élément répété reçoit un symbole auxiliaire propre à son occurrence :
``X*`` devient ``A → ε | X A`` et ``( X )`` devient ``A → ε | X``. Les
auxiliaires et les unions sont « transparents » : ils disparaissent de la
c-structure construite par le chart.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum

from ..backbone.rules import Annotation, BackboneRuleSet, Category, CategoryKind, Repetition


class ProductionKind(StrEnum):
    RULE = "rule"
    UNION = "union"
    REPEAT = "repeat"


@dataclass(frozen=True)
class Production:
    lhs: str
    rhs: tuple[str, ...]
    kind: ProductionKind
    annotations: tuple[tuple[Annotation, ...], ...]
    groups: tuple[int | None, ...]


@dataclass
class FlatGrammar:
    productions: list[Production]
    start: str | None
    categories: dict[str, Category]
    terminals: frozenset[str]

    def __post_init__(self):
        self.by_lhs: dict[str, list[int]] = {}
        for index, production in enumerate(self.productions):
            self.by_lhs.setdefault(production.lhs, []).append(index)
        self.nullable = self._nullable()

    def _nullable(self) -> frozenset[str]:
        nullable: set[str] = set()
        changed = True
        while changed:
            changed = False
            for production in self.productions:
                if production.lhs not in nullable and all(s in nullable for s in production.rhs):
                    nullable.add(production.lhs)
                    changed = True
        return frozenset(nullable)

    def kind_of(self, symbol: str) -> ProductionKind | None:
        indexes = self.by_lhs.get(symbol)
        return self.productions[indexes[0]].kind if indexes else None


def flatten_backbone(rs: BackboneRuleSet) -> FlatGrammar:
    """``rs`` doit être développé (plus de métacatégories)."""
    productions: list[Production] = []
    categories: dict[str, Category] = {}
    terminals: set[str] = set()

    def symbol(cat: Category) -> str:
        categories.setdefault(cat.name, cat)
        if cat.kind is CategoryKind.PRETERMINAL:
            terminals.add(cat.name)
        return cat.name

    for r_index, rule in enumerate(rs.rules):
        rhs: list[str] = []
        annotations: list[tuple[Annotation, ...]] = []
        groups: list[int | None] = []
        for i_index, item in enumerate(rule.rhs):
            base = symbol(item.category)
            if item.repetition is Repetition.ONE:
                rhs.append(base)
                annotations.append(item.annotations)
            else:
                aux = f"{base}{'*' if item.repetition is Repetition.STAR else '?'}#{r_index}.{i_index}"
                productions.append(Production(aux, (), ProductionKind.REPEAT, (), ()))
                if item.repetition is Repetition.STAR:
                    productions.append(
                        Production(aux, (base, aux), ProductionKind.REPEAT, (item.annotations, ()), (None, None))
                    )
                else:
                    productions.append(
                        Production(aux, (base,), ProductionKind.REPEAT, (item.annotations,), (None,))
                    )
                rhs.append(aux)
                annotations.append(())
            groups.append(item.group)
        productions.append(
            Production(symbol(rule.lhs), tuple(rhs), ProductionKind.RULE, tuple(annotations), tuple(groups))
        )

    for union in rs.unions:
        name = symbol(union.category)
        for alternative in union.alternatives:
            rhs = tuple(symbol(c) for c in alternative)
            productions.append(
                Production(name, rhs, ProductionKind.UNION, tuple(() for _ in rhs), tuple(0 for _ in rhs))
            )

    start = symbol(rs.start) if rs.start is not None else None
    return FlatGrammar(productions, start, categories, frozenset(terminals))
