"""Contraintes fonctionnelles attachées aux entrées lexicales et aux règles.

Cinq sortes : définissante ``(↑ p) = v``, existentielle ``(↑ p)``, négative
``~(↑ p)``, contraignante ``(↑ p) =c v`` et incertaine ``(↑ R) = ↓``. Les
trois du milieu ne construisent rien : elles sont vérifiées sur la
f-structure minimale, une fois toutes les définitions appliquées.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum

from .nodes import FNode, UnificationFailure, copy_graph, follow, node_count, unify_in_place
from .paths import PathExpr, compile_path

PathSet = frozenset[tuple[str, ...]]


class ConstraintKind(StrEnum):
    DEFINING = "defining"
    EXISTENTIAL = "existential"
    NEGATIVE = "negative"
    CONSTRAINING = "constraining"
    UNCERTAIN = "uncertain"


@dataclass(frozen=True)
class Constraint:
    kind: ConstraintKind
    path: tuple[str, ...] = ()
    value: str | None = None
    regex: PathExpr | None = None

    def __post_init__(self):
        if self.kind is ConstraintKind.UNCERTAIN:
            if self.regex is None:
                raise ValueError("uncertain constraint needs a regular path")
        elif not self.path:
            raise ValueError(f"{self.kind} constraint needs a non-empty path")
        if self.kind in (ConstraintKind.DEFINING, ConstraintKind.CONSTRAINING) and self.value is None:
            raise ValueError(f"{self.kind} constraint needs a value")

    def __str__(self) -> str:
        ref = "(↑ " + " ".join(self.path) + ")"
        match self.kind:
            case ConstraintKind.DEFINING:
                return f"{ref} = {self.value}"
            case ConstraintKind.EXISTENTIAL:
                return ref
            case ConstraintKind.NEGATIVE:
                return f"~{ref}"
            case ConstraintKind.CONSTRAINING:
                return f"{ref} =c {self.value}"
            case _:
                return f"(↑ {self.regex}) = ↓"


def defining(path: tuple[str, ...], value: str) -> Constraint:
    return Constraint(ConstraintKind.DEFINING, tuple(path), value)


def existential(path: tuple[str, ...]) -> Constraint:
    return Constraint(ConstraintKind.EXISTENTIAL, tuple(path))


def negative(path: tuple[str, ...]) -> Constraint:
    return Constraint(ConstraintKind.NEGATIVE, tuple(path))


def constraining(path: tuple[str, ...], value: str) -> Constraint:
    return Constraint(ConstraintKind.CONSTRAINING, tuple(path), value)


def uncertain(regex: PathExpr) -> Constraint:
    return Constraint(ConstraintKind.UNCERTAIN, regex=regex)


def define_in_place(root: FNode, path: tuple[str, ...], value: FNode | str) -> UnificationFailure | None:
    """Crée le chemin au besoin puis unifie sa valeur avec ``value`` (destructif)."""
    node = root.deref()
    for depth, attr in enumerate(path[:-1]):
        current = node.arcs.get(attr)
        if current is None:
            fresh = FNode()
            node.arcs[attr] = fresh
            node = fresh
        elif isinstance(current, FNode):
            node = current.deref()
        else:
            return UnificationFailure(path[: depth + 1], "atom against complex value")
    last = path[-1]
    current = node.arcs.get(last)
    if current is None:
        node.arcs[last] = value
        return None
    if isinstance(current, FNode) and isinstance(value, FNode):
        return unify_in_place(current, value, path)
    if isinstance(current, FNode) or isinstance(value, FNode):
        return UnificationFailure(path, "atom against complex value")
    if current != value:
        return UnificationFailure(path, f"atom clash {current} vs {value}")
    return None


def apply_defining(root: FNode, constraint: Constraint) -> FNode | UnificationFailure:
    if constraint.kind is not ConstraintKind.DEFINING:
        raise ValueError(f"not a defining constraint: {constraint}")
    (copy,) = copy_graph(root)
    failure = define_in_place(copy, constraint.path, constraint.value)
    return failure if failure is not None else copy


def check_constraining(root: FNode, constraint: Constraint) -> bool:
    value = follow(root, constraint.path)
    match constraint.kind:
        case ConstraintKind.EXISTENTIAL:
            return value is not None
        case ConstraintKind.NEGATIVE:
            return value is None
        case ConstraintKind.CONSTRAINING:
            return value == constraint.value
        case _:
            raise ValueError(f"not a checking constraint: {constraint}")


def resolve_uncertainty(root: FNode, regex: PathExpr) -> PathSet:
    """Chemins concrets de ``root`` appartenant au langage de ``regex``.

    Ne modifie pas le graphe. La profondeur est bornée par le nombre de nœuds,
    ce qui suffit sur un graphe acyclique.
    """
    automaton = compile_path(regex)
    limit = node_count(root)
    found: set[tuple[str, ...]] = set()

    def _walk(value: FNode | str, states: frozenset[int], path: tuple[str, ...]) -> None:
        if automaton.accepts(states):
            found.add(path)
        if not isinstance(value, FNode) or len(path) >= limit:
            return
        node = value.deref()
        for attr in sorted(node.arcs):
            following = automaton.step(states, attr)
            if following:
                _walk(node.arcs[attr], following, path + (attr,))

    _walk(root, automaton.initial(), ())
    return frozenset(found)
