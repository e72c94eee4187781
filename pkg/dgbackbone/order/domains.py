"""Arbre des domaines d'ordre extrait d'une c-structure.

Un domaine correspond à un nœud de catégorie ``dom<Classe>`` ou ``dom<SLOT>`` ;
son propriétaire est le mot de la classe (trouvé dans le slot ``@self`` du
même groupe). Les éléments d'un domaine sont son mot membre éventuel et, pour
chaque propriétaire de domaines enfants, le bloc couvert par ces domaines.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..backbone.rules import CategoryKind
from ..errors import SolverInvariantError
from ..parser.chart import CNode
from .deptree import DepTree, Word


@dataclass(eq=False)
class Domain:
    ident: int
    category: str
    slot: str
    field_label: str | None
    holds_self: bool
    start: int
    end: int
    owner: Word | None = None
    parent: Domain | None = None
    items: list[Word | Domain] = field(default_factory=list)

    @property
    def member(self) -> Word | None:
        return next((i for i in self.items if isinstance(i, Word)), None)

    @property
    def subdomains(self) -> list[Domain]:
        return [i for i in self.items if isinstance(i, Domain)]

    def label(self) -> str:
        return self.category + (f"/{self.field_label}" if self.field_label else "")


@dataclass(frozen=True)
class ElementLabel:
    word: Word
    incoming_dep: str | None
    start: int
    end: int


@dataclass
class DomainTree:
    top: list[Domain]
    domains: list[Domain]
    # position linéaire des mots quand elle diffère de leur index (témoins de l'oracle)
    positions: dict[Word, int] = field(default_factory=dict)

    def position(self, word: Word) -> int:
        return self.positions.get(word, word.index)

    def member_domain(self, word: Word) -> Domain | None:
        return next((d for d in self.domains if d.member == word), None)

    def owned(self, word: Word) -> list[Domain]:
        return [d for d in self.domains if d.owner == word]

    def elements(self, domain: Domain, dep: DepTree) -> list[ElementLabel]:
        out: list[ElementLabel] = []
        blocks: dict[Word, list[int]] = {}
        for item in domain.items:
            if isinstance(item, Word):
                at = self.position(item)
                out.append(ElementLabel(item, dep.incoming(item), at, at + 1))
                continue
            if item.owner is None or item.start == item.end:
                continue
            span = blocks.setdefault(item.owner, [item.start, item.end])
            span[0] = min(span[0], item.start)
            span[1] = max(span[1], item.end)
        out += [ElementLabel(w, dep.incoming(w), s, e) for w, (s, e) in blocks.items()]
        return sorted(out, key=lambda el: el.start)

    def render(self) -> str:
        lines: list[str] = []

        def emit(domain: Domain, depth: int) -> None:
            owner = domain.owner.surface if domain.owner is not None else "?"
            lines.append("  " * depth + f"d{domain.ident} {domain.label()} owner={owner}")
            for item in domain.items:
                if isinstance(item, Word):
                    lines.append("  " * (depth + 1) + item.surface)
                else:
                    emit(item, depth + 1)

        for domain in self.top:
            emit(domain, 0)
        return "\n".join(lines)


def _word(node: CNode) -> Word:
    return Word(node.start, node.token or "", node.category.name)


def extract_domain_structure(tree: CNode) -> DomainTree:
    domains: list[Domain] = []
    top: list[Domain] = []
    counter = itertools.count(1)

    def visit(node: CNode, parent: Domain | None) -> list[Domain]:
        """Domaines créés pour ``node`` (liste vide si ce n'est pas un domaine)."""
        if not node.category.is_domain:
            made: list[Domain] = []
            for child in node.children:
                made += visit(child, parent)
            return made
        domain = Domain(
            next(counter), node.category.name, node.category.slot or "", node.category.field_label,
            node.category.holds_self, node.start, node.end, parent=parent,
        )
        domains.append(domain)
        if parent is None:
            top.append(domain)
        for child in node.children:
            if child.is_preterminal:
                word = _word(child)
                domain.items.append(word)
                domain.owner = word
            else:
                domain.items += visit(child, domain)
        return [domain]

    visit(tree, None)
    _resolve_owners(tree, domains)
    for domain in domains:
        if domain.owner is None:
            raise SolverInvariantError(f"domain {domain.category} has no owner")
    return DomainTree(top, domains)


def _resolve_owners(tree: CNode, domains: list[Domain]) -> None:
    """Slots sans ``@self`` : propriétaire = mot du slot ``@self`` frère (même groupe)."""
    by_position = iter(domains)
    node_domain: dict[int, Domain] = {}
    for node in tree.walk():
        if node.category.is_domain:
            node_domain[id(node)] = next(by_position)
    for node in tree.walk():
        siblings: dict[tuple[int | None, str | None], list[CNode]] = {}
        for child in node.children:
            if child.category.kind is CategoryKind.SLOT:
                siblings.setdefault((child.group, child.category.owner_class), []).append(child)
        for members in siblings.values():
            owner = next((node_domain[id(m)].owner for m in members if m.category.holds_self), None)
            for member in members:
                if node_domain[id(member)].owner is None:
                    node_domain[id(member)].owner = owner
