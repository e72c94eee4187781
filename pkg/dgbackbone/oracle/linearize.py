"""Oracle de linéarisation par force brute, indépendant de l'analyseur.

Pour un arbre de dépendances licite, on énumère : la tête positionnelle de
chaque mot (un ancêtre atteint par le chemin de flottement de sa dépendance),
son slot dans le domaine de cette tête (champ cible, classes admises), puis
l'ordre des éléments dans chaque slot sous ses cardinalités. Chaque
linéarisation est accompagnée d'un arbre de domaines témoin, filtré par
``check_precedence`` et ``check_float_licensing``.

Le coût est exponentiel : l'appelant borne la taille (``OracleBoundError``).
"""
from __future__ import annotations

import itertools
import logging
import re
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from ..errors import DgError, OracleBoundError, UnknownTokenError
from ..fstruct.paths import path_matches
from ..grammar.model import DomainSlotSpec, Grammar, Optionality
from ..order.checks import check_float_licensing, check_precedence
from ..order.deptree import DepEdge, DepTree, Word
from ..order.domains import Domain, DomainTree

logger = logging.getLogger("dg-backbone.oracle")

_SELF = None


@dataclass(frozen=True)
class Linearization:
    words: tuple[Word, ...]
    witness: DomainTree

    @property
    def surface(self) -> tuple[str, ...]:
        return tuple(w.surface for w in self.words)


# ── Licéité de l'arbre ──────────────────────────────────────────────────────

def _attribute(dep: DepTree, g: Grammar, word: Word, path: Sequence[str]) -> str | None:
    current = word
    for step in path[:-1]:
        edge = next((e for e in dep.children(current) if e.dep == step), None)
        if edge is None:
            return None
        current = edge.dependent
    entry = g.entry(current.surface, current.word_class)
    return entry.attribute(path[-1]) if entry is not None else None


def tree_is_licensed(dep: DepTree, g: Grammar) -> bool:
    """Valences (classes, req remplis, au plus un par slot), classe racine, gouvernement, acyclicité."""
    if dep.root.word_class not in g.root_classes:
        return False
    if any(dep.path_between(dep.root, w) is None for w in dep.words):
        return False
    for word in dep.words:
        entry = g.entry(word.surface, word.word_class)
        if entry is None:
            return False
        used = [e.dep for e in dep.children(word)]
        if len(used) != len(set(used)):
            return False
        for edge in dep.children(word):
            slot = entry.slot(edge.dep)
            if slot is None or slot.mod_class != edge.dependent.word_class:
                return False
        if any(s.optionality is Optionality.REQ and s.dep not in used for s in entry.valency):
            return False
        for rule in entry.government:
            if _attribute(dep, g, word, rule.path) != rule.value:
                return False
    return True


def enumerate_dependency_trees(surfaces: Sequence[str], g: Grammar) -> list[DepTree]:
    """Tous les arbres licites sur ``surfaces`` (les mots sont indexés par position)."""
    out: list[DepTree] = []
    choices = [[Word(i, s, e.word_class) for e in g.entries_for(s)] for i, s in enumerate(surfaces)]
    for words in itertools.product(*choices):
        slots = [(h, slot) for h in words for slot in g.entry(h.surface, h.word_class).valency]
        for tree in _attach(list(words), slots, 0, None, [], set()):
            if tree_is_licensed(tree, g):
                out.append(tree)
    return out


def _attach(words: list[Word], slots, position: int, root: Word | None,
            edges: list[DepEdge], used: set[int]) -> Iterator[DepTree]:
    if position == len(words):
        if root is not None:
            yield DepTree(root, tuple(sorted(edges, key=lambda e: e.dependent.index)))
        return
    word = words[position]
    if root is None:
        yield from _attach(words, slots, position + 1, word, edges, used)
    for k, (head, slot) in enumerate(slots):
        if k in used or head == word or slot.mod_class != word.word_class:
            continue
        used.add(k)
        edges.append(DepEdge(head, slot.dep, word))
        yield from _attach(words, slots, position + 1, root, edges, used)
        edges.pop()
        used.discard(k)


_WORD_RE = re.compile(r"^(\d+):(\S+)$")


def _triple_word(text: str, number: int) -> tuple[int, str]:
    match = _WORD_RE.match(text)
    if match is None:
        raise DgError("TRIPLES_SYNTAX", f"line {number}: expected index:surface, found {text!r}")
    return int(match.group(1)), match.group(2)


def read_dependency_triples(text: str, g: Grammar) -> list[DepTree]:
    """Arbres décrits au format ``dep-triples`` (``root 6:.`` puis ``h:x DEP m:y``).

    Les lignes vides, ``analyses: N`` et ``# ...`` sont ignorées : la sortie de
    ``dg parse --format dep-triples`` d'une analyse se relit telle quelle. La
    classe de chaque mot vient du lexique ; une forme ambiguë donne un arbre
    par choix de classes, seuls les arbres licites sont gardés.
    """
    surfaces: dict[int, str] = {}
    root: int | None = None
    triples: list[tuple[int, str, int]] = []

    def remember(index: int, surface: str, number: int) -> int:
        if surfaces.setdefault(index, surface) != surface:
            raise DgError("TRIPLES_SYNTAX", f"line {number}: word {index} is both {surfaces[index]} and {surface}")
        return index

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(("#", "analyses:")):
            continue
        parts = line.split()
        if parts[0] == "root" and len(parts) == 2:
            if root is not None:
                raise DgError("TRIPLES_SYNTAX", f"line {number}: second root line")
            root = remember(*_triple_word(parts[1], number), number)
            continue
        if len(parts) != 3:
            raise DgError("TRIPLES_SYNTAX", f"line {number}: expected 'head DEP dependent', found {line!r}")
        head = remember(*_triple_word(parts[0], number), number)
        dependent = remember(*_triple_word(parts[2], number), number)
        triples.append((head, parts[1], dependent))
    if root is None:
        raise DgError("TRIPLES_SYNTAX", "no root line")
    if sorted(surfaces) != list(range(len(surfaces))):
        raise DgError("TRIPLES_SYNTAX", "word indexes must be 0..n-1")

    choices = []
    for index in sorted(surfaces):
        classes = [e.word_class for e in g.entries_for(surfaces[index])]
        if not classes:
            raise UnknownTokenError(surfaces[index], index)
        choices.append([Word(index, surfaces[index], c) for c in classes])
    out: list[DepTree] = []
    for words in itertools.product(*choices):
        edges = tuple(DepEdge(words[h], dep, words[m]) for h, dep, m in triples)
        tree = DepTree(words[root], tuple(sorted(edges, key=lambda e: e.dependent.index)))
        if tree_is_licensed(tree, g):
            out.append(tree)
    return out


# ── Placements et ordres ────────────────────────────────────────────────────

@dataclass(frozen=True)
class _Layout:
    word: Word
    single: bool
    slots: tuple[tuple[DomainSlotSpec, tuple[Word | None, ...]], ...]
    subs: tuple[tuple[Word, _Layout], ...]

    def sub(self, word: Word) -> _Layout:
        return next(layout for w, layout in self.subs if w == word)


def _placements(word: Word, dep: DepTree, g: Grammar) -> list[tuple[Word, str]]:
    """(tête positionnelle, slot) candidats pour un mot non racine."""
    edge = dep.head_of(word)
    spec = g.path_spec(edge.dep)
    if spec is None:
        return []
    out: list[tuple[Word, str]] = []
    positional: Word | None = edge.head
    while positional is not None:
        path = dep.path_between(positional, edge.head)
        domain = g.domain_spec(positional.word_class)
        if path is not None and domain is not None and path_matches(spec.float_path, path):
            for slot in domain.slots:
                if spec.target_field is not None and slot.field_label != spec.target_field:
                    continue
                if slot.accepts and word.word_class not in slot.accepts:
                    continue
                out.append((positional, slot.name))
        above = dep.head_of(positional)
        positional = above.head if above is not None else None
    return out


def _slot_orders(slot: DomainSlotSpec, items: list[Word]) -> Iterator[tuple[Word | None, ...]]:
    for perm in itertools.permutations(items):
        if not slot.holds_self:
            if slot.admits_split(len(perm), 0):
                yield perm
            continue
        for k in range(len(perm) + 1):
            if slot.admits_split(k, len(perm) - k):
                yield perm[:k] + (_SELF,) + perm[k:]


def _layouts(word: Word, placed: dict[tuple[Word, str], list[Word]], g: Grammar,
             memo: dict[Word, list[_Layout]]) -> list[_Layout]:
    if word in memo:
        return memo[word]
    spec = g.domain_spec(word.word_class)
    out: list[_Layout] = []
    if spec is not None:
        per_slot = [list(_slot_orders(s, placed.get((word, s.name), []))) for s in spec.slots]
        for orders in itertools.product(*per_slot):
            inner = [i for order in orders for i in order if i is not _SELF]
            for subs in itertools.product(*(_layouts(w, placed, g, memo) for w in inner)):
                out.append(_Layout(word, spec.is_single_slot, tuple(zip(spec.slots, orders, strict=True)),
                                   tuple(zip(inner, subs, strict=True))))
    memo[word] = out
    return out


def _flatten(layout: _Layout) -> list[Word]:
    out: list[Word] = []
    for _slot, order in layout.slots:
        for item in order:
            out += [layout.word] if item is _SELF else _flatten(layout.sub(item))
    return out


def _witness(layout: _Layout) -> DomainTree:
    domains: list[Domain] = []
    positions: dict[Word, int] = {}
    counter = itertools.count(1)

    def build(node: _Layout, start: int, parent: Domain | None) -> tuple[list[Domain], int]:
        made: list[Domain] = []
        pos = start
        for slot, order in node.slots:
            category = f"dom{node.word.word_class}" if node.single else f"dom{slot.name}"
            domain = Domain(next(counter), category, slot.name, slot.field_label, slot.holds_self,
                            pos, pos, owner=node.word, parent=parent)
            domains.append(domain)
            for item in order:
                if item is _SELF:
                    domain.items.append(node.word)
                    positions[node.word] = pos
                    pos += 1
                else:
                    children, pos = build(node.sub(item), pos, domain)
                    domain.items += children
            domain.end = pos
            made.append(domain)
        return made, pos

    top, _end = build(layout, 0, None)
    return DomainTree(top, domains, positions)


def enumerate_linearizations(dep: DepTree, g: Grammar, bound: int) -> list[Linearization]:
    """Linéarisations distinctes (par suite de mots) de ``dep``, triées par surface."""
    words = dep.words
    if len(words) > bound:
        raise OracleBoundError(len(words), bound)
    if not tree_is_licensed(dep, g):
        return []
    movable = [w for w in words if w != dep.root]
    candidates = [_placements(w, dep, g) for w in movable]
    found: dict[tuple[Word, ...], Linearization] = {}
    for assignment in itertools.product(*candidates):
        placed: dict[tuple[Word, str], list[Word]] = {}
        for word, key in zip(movable, assignment, strict=True):
            placed.setdefault(key, []).append(word)
        for layout in _layouts(dep.root, placed, g, {}):
            sequence = tuple(_flatten(layout))
            if sequence in found:
                continue
            witness = _witness(layout)
            if check_precedence(witness, dep, g) or check_float_licensing(witness, dep, g):
                continue
            found[sequence] = Linearization(sequence, witness)
    logger.debug("tree rooted at %s: %d linearization(s)", dep.root, len(found))
    return [found[k] for k in sorted(found, key=lambda seq: [w.surface for w in seq])]
