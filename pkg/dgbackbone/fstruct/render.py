"""Rendu des f-structures : matrice attribut-valeur et document structuré."""
from __future__ import annotations

from .nodes import CLASS, FIELD, INDEX, LEXEME, FNode, reachable

_RANK = {CLASS: 0, LEXEME: 1, INDEX: 2, FIELD: 3}


def _attr_key(item: tuple[str, FNode | str]) -> tuple[bool, int, str]:
    attr, value = item
    return (isinstance(value, FNode), _RANK.get(attr, 9), attr)


def _shared(root: FNode) -> set[int]:
    indegree: dict[int, int] = {}
    for node in reachable(root):
        for value in node.arcs.values():
            if isinstance(value, FNode):
                key = id(value.deref())
                indegree[key] = indegree.get(key, 0) + 1
    return {key for key, count in indegree.items() if count > 1}


def render_avm(root: FNode) -> str:
    """Matrice entre crochets ; les nœuds réentrants sont étiquetés ``#n``."""
    shared = _shared(root)
    tags: dict[int, int] = {}

    def _lines(node: FNode, col: int) -> list[str]:
        # première ligne relative (préfixée par l'appelant), suivantes absolues
        prefix = ""
        if id(node) in shared:
            if id(node) in tags:
                return [f"#{tags[id(node)]}"]
            tags[id(node)] = len(tags) + 1
            prefix = f"#{tags[id(node)]}"
        entries = sorted(node.arcs.items(), key=_attr_key)
        if not entries:
            return [prefix + "[]"]
        inner = col + len(prefix) + 1
        out: list[str] = []
        for i, (attr, value) in enumerate(entries):
            lead = prefix + "[" if i == 0 else " " * inner
            head = f"{lead}{attr} "
            if isinstance(value, FNode):
                sub = _lines(value.deref(), inner + len(attr) + 1)
                out.append(head + sub[0])
                out.extend(sub[1:])
            else:
                out.append(head + value)
        out[-1] += "]"
        return out

    return "\n".join(_lines(root.deref(), 0))


def to_document(root: FNode) -> dict:
    """Graphe sérialisable : nœuds numérotés en profondeur, attributs triés."""
    ids: dict[int, int] = {}
    order: list[FNode] = []

    def _number(node: FNode) -> int:
        node = node.deref()
        if id(node) not in ids:
            ids[id(node)] = len(order)
            order.append(node)
            for attr in sorted(node.arcs):
                value = node.arcs[attr]
                if isinstance(value, FNode):
                    _number(value)
        return ids[id(node)]

    root_id = _number(root)
    nodes = []
    for node in order:
        atoms = {a: v for a, v in sorted(node.arcs.items()) if not isinstance(v, FNode)}
        links = {a: ids[id(v.deref())] for a, v in sorted(node.arcs.items()) if isinstance(v, FNode)}
        nodes.append({"id": ids[id(node)], "atoms": atoms, "links": links})
    return {"root": root_id, "nodes": nodes}
