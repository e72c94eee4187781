"""Arbre de dépendances lu dans une f-structure (ou construit par l'oracle)."""
from __future__ import annotations

import functools
from collections.abc import Sequence
from dataclasses import dataclass

from ..errors import SolverInvariantError
from ..fstruct.nodes import CLASS, INDEX, LEXEME, RESERVED_ATTRIBUTES, FNode


@dataclass(frozen=True, order=True)
class Word:
    index: int
    surface: str
    word_class: str

    def __str__(self) -> str:
        return f"{self.index}:{self.surface}"


@dataclass(frozen=True)
class DepEdge:
    head: Word
    dep: str
    dependent: Word

    def __str__(self) -> str:
        return f"{self.head} {self.dep} {self.dependent}"


@dataclass(frozen=True)
class DepTree:
    root: Word
    edges: tuple[DepEdge, ...]

    @functools.cached_property
    def words(self) -> tuple[Word, ...]:
        return tuple(sorted({self.root, *(e.dependent for e in self.edges)}))

    @functools.cached_property
    def _incoming(self) -> dict[Word, DepEdge]:
        return {e.dependent: e for e in self.edges}

    def head_of(self, word: Word) -> DepEdge | None:
        return self._incoming.get(word)

    def incoming(self, word: Word) -> str | None:
        edge = self._incoming.get(word)
        return edge.dep if edge is not None else None

    def children(self, word: Word) -> tuple[DepEdge, ...]:
        return tuple(e for e in self.edges if e.head == word)

    def path_between(self, ancestor: Word, descendant: Word) -> tuple[str, ...] | None:
        """Étiquettes de ``ancestor`` jusqu'à ``descendant`` (``()`` si identiques)."""
        labels: list[str] = []
        current = descendant
        seen = {current}
        while current != ancestor:
            edge = self._incoming.get(current)
            if edge is None or edge.head in seen:
                return None
            seen.add(edge.head)
            labels.append(edge.dep)
            current = edge.head
        return tuple(reversed(labels))

    def render(self) -> str:
        lines = [f"root {self.root}"]
        lines += [str(e) for e in sorted(self.edges, key=lambda e: (e.dependent.index, e.head.index))]
        return "\n".join(lines)


def derive_dependency_tree(root: FNode, tokens: Sequence[str]) -> DepTree:
    """Chaque arc non réservé vers une sous-structure portant LEXEME est une dépendance."""
    edges: list[DepEdge] = []

    def word_of(node: FNode) -> Word:
        index, word_class = node.get(INDEX), node.get(CLASS)
        if not isinstance(index, str) or not isinstance(word_class, str) or node.get(LEXEME) is None:
            raise SolverInvariantError("f-structure node without CLASS, LEXEME and INDEX")
        position = int(index)
        return Word(position, tokens[position], word_class)

    def walk(node: FNode, word: Word) -> None:
        node = node.deref()
        for attr in sorted(node.arcs):
            value = node.arcs[attr]
            if attr in RESERVED_ATTRIBUTES or not isinstance(value, FNode):
                continue
            dependent = word_of(value.deref())
            edges.append(DepEdge(word, attr, dependent))
            walk(value, dependent)

    top = word_of(root.deref())
    walk(root, top)
    return DepTree(top, tuple(sorted(edges, key=lambda e: e.dependent.index)))
