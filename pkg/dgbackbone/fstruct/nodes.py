"""F-structures : graphes orientés étiquetés, unification destructive.

Un ``FNode`` porte des arcs ``attribut -> FNode | atome`` (atome = ``str``).
L'unification interne suit le schéma classique à pointeurs de renvoi : le
nœud absorbé est « forwardé » vers le survivant et ses arcs fusionnés. Les
appelants publics passent par ``unify`` qui travaille sur une copie, les
entrées restent donc intactes.

Un échec d'unification est une VALEUR (``UnificationFailure``), jamais une
exception : le solveur en produit des milliers en exploration normale.
"""
from __future__ import annotations

import itertools
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass

CLASS = "CLASS"
LEXEME = "LEXEME"
INDEX = "INDEX"
FIELD = "FIELD"
RESERVED_ATTRIBUTES = (CLASS, LEXEME, INDEX, FIELD)

_ids = itertools.count()


class FNode:
    __slots__ = ("arcs", "_forward", "uid")

    def __init__(self, arcs: Mapping[str, FNode | str] | None = None):
        self.arcs: dict[str, FNode | str] = dict(arcs or {})
        self._forward: FNode | None = None
        self.uid = next(_ids)

    def deref(self) -> FNode:
        node = self
        while node._forward is not None:
            node = node._forward
        return node

    def get(self, attr: str) -> FNode | str | None:
        value = self.deref().arcs.get(attr)
        return value.deref() if isinstance(value, FNode) else value

    def __repr__(self) -> str:
        node = self.deref()
        return f"FNode#{node.uid}({', '.join(sorted(node.arcs))})"


@dataclass(frozen=True)
class UnificationFailure:
    path: tuple[str, ...]
    reason: str

    def __str__(self) -> str:
        where = " ".join(self.path) or "<root>"
        return f"unification failed at {where}: {self.reason}"


def unify_in_place(a: FNode, b: FNode, path: tuple[str, ...] = ()) -> UnificationFailure | None:
    """Unification destructive ; ``b`` est renvoyé vers ``a``. Aucun test de cycle."""
    a = a.deref()
    b = b.deref()
    if a is b:
        return None
    arcs, b.arcs = b.arcs, {}
    b._forward = a
    for attr in sorted(arcs):
        bval = arcs[attr]
        if attr not in a.arcs:
            a.arcs[attr] = bval
            continue
        aval = a.arcs[attr]
        sub = path + (attr,)
        if isinstance(aval, FNode) and isinstance(bval, FNode):
            failure = unify_in_place(aval, bval, sub)
            if failure is not None:
                return failure
        elif isinstance(aval, FNode) or isinstance(bval, FNode):
            return UnificationFailure(sub, "atom against complex value")
        elif aval != bval:
            return UnificationFailure(sub, f"atom clash {aval} vs {bval}")
    return None


def copy_graph(*roots: FNode) -> tuple[FNode, ...]:
    """Copie conjointe : le partage entre racines (et à l'intérieur) est préservé."""
    memo: dict[int, FNode] = {}

    def _copy(node: FNode) -> FNode:
        node = node.deref()
        hit = memo.get(id(node))
        if hit is not None:
            return hit
        clone = FNode()
        memo[id(node)] = clone
        for attr, value in node.arcs.items():
            clone.arcs[attr] = _copy(value) if isinstance(value, FNode) else value
        return clone

    return tuple(_copy(root) for root in roots)


def copy_mapping(nodes: Mapping[int, FNode]) -> dict[int, FNode]:
    keys = list(nodes)
    return dict(zip(keys, copy_graph(*(nodes[k] for k in keys)), strict=True))


def find_cycle(root: FNode) -> tuple[str, ...] | None:
    """Chemin menant à un nœud déjà sur la pile, ``None`` si le graphe est acyclique."""
    on_stack: set[int] = set()
    done: set[int] = set()

    def _walk(node: FNode, path: tuple[str, ...]) -> tuple[str, ...] | None:
        node = node.deref()
        if id(node) in on_stack:
            return path
        if id(node) in done:
            return None
        on_stack.add(id(node))
        for attr in sorted(node.arcs):
            value = node.arcs[attr]
            if isinstance(value, FNode):
                found = _walk(value, path + (attr,))
                if found is not None:
                    return found
        on_stack.discard(id(node))
        done.add(id(node))
        return None

    return _walk(root, ())


def unify(a: FNode, b: FNode) -> FNode | UnificationFailure:
    """Unifie des copies de ``a`` et ``b`` ; le résultat doit rester acyclique."""
    left, right = copy_graph(a, b)
    failure = unify_in_place(left, right)
    if failure is not None:
        return failure
    root = left.deref()
    cycle = find_cycle(root)
    if cycle is not None:
        return UnificationFailure(cycle, "cycle")
    (compact,) = copy_graph(root)
    return compact


def follow(root: FNode, path: Sequence[str]) -> FNode | str | None:
    value: FNode | str | None = root.deref()
    for attr in path:
        if not isinstance(value, FNode):
            return None
        value = value.get(attr)
        if value is None:
            return None
    return value


def reachable(root: FNode) -> list[FNode]:
    seen: dict[int, FNode] = {}
    stack = [root.deref()]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen[id(node)] = node
        stack.extend(v.deref() for v in node.arcs.values() if isinstance(v, FNode))
    return list(seen.values())


def node_count(root: FNode) -> int:
    return len(reachable(root))


def arc_count(root: FNode) -> int:
    return sum(len(node.arcs) for node in reachable(root))


def canonical(root: FNode) -> tuple:
    """Forme canonique : deux graphes enracinés sont isomorphes ssi formes égales."""
    ids: dict[int, int] = {}

    def _walk(node: FNode) -> tuple:
        node = node.deref()
        if id(node) in ids:
            return ("ref", ids[id(node)])
        ids[id(node)] = len(ids)
        arcs = tuple(
            (attr, _walk(value) if isinstance(value, FNode) else ("atom", value))
            for attr, value in sorted(node.arcs.items())
        )
        return ("node", ids[id(node)], arcs)

    return _walk(root)


def isomorphic(a: FNode, b: FNode) -> bool:
    return canonical(a) == canonical(b)


def subsumes(general: FNode, specific: FNode) -> bool:
    """``general ⊑ specific`` : toute information (et tout partage) de l'un est dans l'autre."""
    mapping: dict[int, FNode] = {}

    def _walk(g: FNode, s: FNode) -> bool:
        g = g.deref()
        s = s.deref()
        seen = mapping.get(id(g))
        if seen is not None:
            return seen is s
        mapping[id(g)] = s
        for attr, gval in g.arcs.items():
            if attr not in s.arcs:
                return False
            sval = s.arcs[attr]
            if isinstance(gval, FNode):
                if not isinstance(sval, FNode) or not _walk(gval, sval):
                    return False
            elif isinstance(sval, FNode) or sval != gval:
                return False
        return True

    return _walk(general, specific)


def iter_paths(root: FNode) -> Iterator[tuple[str, ...]]:
    """Tous les chemins non vides depuis la racine (graphe supposé acyclique)."""
    stack: list[tuple[FNode, tuple[str, ...]]] = [(root.deref(), ())]
    while stack:
        node, prefix = stack.pop()
        for attr in sorted(node.arcs, reverse=True):
            value = node.arcs[attr]
            path = prefix + (attr,)
            yield path
            if isinstance(value, FNode):
                stack.append((value.deref(), path))


def fstruct_from(data: Mapping[str, object]) -> FNode:
    """Construit un arbre depuis des dicts imbriqués (tests, fixtures)."""
    node = FNode()
    for attr, value in data.items():
        if isinstance(value, Mapping):
            node.arcs[attr] = fstruct_from(value)
        else:
            node.arcs[attr] = str(value)
    return node
