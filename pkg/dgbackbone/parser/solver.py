"""Résolution fonctionnelle d'une c-structure : f-structures minimales.

Variables : un fils ``@(HEAD)`` partage la variable de son père ; chaque
groupe ``@(MODIFIER)`` (une occurrence de domaine, éventuellement éclatée en
plusieurs slots) reçoit une variable fraîche, à placer quelque part sous la
variable du père via ``(↑ chemin_de_flottement d) = ↓``.

Phases :

1. définitions (CLASS, LEXEME, INDEX, traits, FIELD, branches de valence) ;
   les combinaisons de branches dont le nombre de slots présents diffère du
   nombre de placements sont écartées d'emblée ;
2. placements : recherche en profondeur, mémoïsée sur l'ensemble des
   placements déjà faits ; à chaque pas n'importe quel placement en attente
   dont un chemin se résout peut être effectué (l'ordre n'est pas imposé par
   l'arbre, un chemin ``VPART* OBJ`` peut dépendre d'un placement frère) ;
3. vérifications : existentielles, négatives, gouvernement ``=c``,
   restriction de classe des slots.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

from ..backbone.rules import AnnotationKind, accepts_of, field_of, has
from ..errors import SolverInvariantError
from ..fstruct.constraints import Constraint, ConstraintKind, check_constraining, define_in_place, resolve_uncertainty
from ..fstruct.nodes import CLASS, FIELD, FNode, canonical, copy_mapping, find_cycle, follow, unify_in_place
from ..fstruct.paths import PathExpr, Sym, alt, seq
from ..grammar.model import Grammar
from ..grammar.valency import ValencySchema, expand_valency, government_checks, lexical_definitions
from .chart import CNode

logger = logging.getLogger("dg-backbone.solver")


@dataclass(frozen=True)
class Placement:
    var: int
    anchor: int
    field_label: str | None
    accepts: tuple[str, ...]


@dataclass(frozen=True)
class _WordVar:
    var: int
    node: CNode


@dataclass
class Skeleton:
    """Variables et placements induits par une c-structure."""

    var_count: int
    words: list[_WordVar]
    placements: list[Placement]

    @property
    def head_word(self) -> dict[int, int]:
        return {w.var: w.node.start for w in self.words}


def collect_skeleton(tree: CNode) -> Skeleton:
    words: list[_WordVar] = []
    placements: list[Placement] = []
    counter = itertools.count(1)

    def visit(node: CNode, var: int) -> None:
        if node.is_preterminal:
            words.append(_WordVar(var, node))
            return
        group_vars: dict[int, int] = {}
        for child in node.children:
            if has(child.annotations, AnnotationKind.HEAD):
                visit(child, var)
                continue
            if not has(child.annotations, AnnotationKind.MODIFIER):
                raise SolverInvariantError(f"unannotated child {child.category} under {node.category}")
            if child.group is not None and child.group in group_vars:
                visit(child, group_vars[child.group])
                continue
            fresh = next(counter)
            if child.group is not None:
                group_vars[child.group] = fresh
            placements.append(Placement(fresh, var, field_of(child.annotations), accepts_of(child.annotations)))
            visit(child, fresh)

    visit(tree, 0)
    return Skeleton(next(counter), words, placements)


@dataclass(frozen=True)
class Solution:
    fstructure: FNode
    resolved: tuple[tuple[int, tuple[str, ...]], ...]


def modifier_language(g: Grammar) -> PathExpr:
    """∪_d cheminDeFlottement_d · d : tous les chemins où un modifieur peut s'accrocher."""
    return alt(*(seq(spec.float_path, Sym(spec.dep)) for spec in g.path_specs))


class Solver:
    def __init__(self, grammar: Grammar):
        self.grammar = grammar
        self.language = modifier_language(grammar) if grammar.path_specs else None

    def solve(self, tree: CNode) -> list[Solution]:
        skeleton = collect_skeleton(tree)
        entries = []
        for word in skeleton.words:
            if word.node.entry is None:
                raise SolverInvariantError(f"preterminal {word.node.category} without lexical entry")
            entries.append(word.node.entry)
        schemas = [expand_valency(entry) for entry in entries]
        wanted = len(skeleton.placements)

        per_word_choices = []
        for word_schemas in schemas:
            per_word_choices.append(list(itertools.product(*(s.branches for s in word_schemas))))

        seen: set[tuple] = set()
        solutions: list[Solution] = []
        for combo in itertools.product(*per_word_choices):
            present = sum(ValencySchema.is_present(b) for branches in combo for b in branches)
            if present != wanted:
                continue
            base = self._base_state(skeleton, entries, combo)
            if base is None:
                continue
            checks = self._checks(skeleton, entries, combo)
            for nodes, assigned in self._place(skeleton, base):
                if not self._verify(skeleton, nodes, checks):
                    continue
                root = nodes[0].deref()
                key = canonical(root)
                if key in seen:
                    continue
                seen.add(key)
                head_word = skeleton.head_word
                resolved = tuple(sorted((head_word[skeleton.placements[pi].var], path) for pi, path in assigned))
                solutions.append(Solution(copy_mapping({0: root})[0], resolved))
        logger.debug("tree %s: %d solution(s)", tree.category, len(solutions))
        return solutions

    # ── phases ──

    def _base_state(self, skeleton: Skeleton, entries, combo) -> dict[int, FNode] | None:
        nodes = {v: FNode() for v in range(skeleton.var_count)}
        defs: list[tuple[int, Constraint]] = []
        for word, entry, branches in zip(skeleton.words, entries, combo, strict=True):
            defs += [(word.var, c) for c in lexical_definitions(entry, word.node.start)]
            for branch in branches:
                defs += [(word.var, c) for c in branch if c.kind is ConstraintKind.DEFINING]
        for placement in skeleton.placements:
            if placement.field_label:
                nodes[placement.var].arcs[FIELD] = placement.field_label
        for var, constraint in defs:
            if define_in_place(nodes[var], constraint.path, constraint.value) is not None:
                return None
        return nodes

    def _checks(self, skeleton: Skeleton, entries, combo) -> list[tuple[int, Constraint]]:
        checks: list[tuple[int, Constraint]] = []
        for word, entry, branches in zip(skeleton.words, entries, combo, strict=True):
            for branch in branches:
                checks += [(word.var, c) for c in branch if c.kind is not ConstraintKind.DEFINING]
            checks += [(word.var, c) for c in government_checks(entry)]
        return checks

    def _place(self, skeleton: Skeleton, base: dict[int, FNode]):
        placements = skeleton.placements
        visited: set[frozenset] = set()

        def search(nodes: dict[int, FNode], pending: frozenset[int], assigned: frozenset):
            if not pending:
                yield nodes, assigned
                return
            if assigned in visited:
                return
            visited.add(assigned)
            for pi in sorted(pending):
                placement = placements[pi]
                anchor = nodes[placement.anchor].deref()
                for path in sorted(resolve_uncertainty(anchor, self.language)):
                    copy = copy_mapping(nodes)
                    target = follow(copy[placement.anchor], path)
                    if not isinstance(target, FNode):
                        continue
                    if unify_in_place(target, copy[placement.var]) is not None:
                        continue
                    if find_cycle(target.deref()) is not None:
                        continue
                    yield from search(copy, pending - {pi}, assigned | {(pi, path)})

        if not placements:
            yield base, frozenset()
            return
        if self.language is None:
            return
        yield from search(base, frozenset(range(len(placements))), frozenset())

    def _verify(self, skeleton: Skeleton, nodes: dict[int, FNode], checks) -> bool:
        for var, constraint in checks:
            if not check_constraining(nodes[var], constraint):
                return False
        for placement in skeleton.placements:
            if placement.accepts and nodes[placement.var].get(CLASS) not in placement.accepts:
                return False
        return True


def solve(tree: CNode, grammar: Grammar) -> list[Solution]:
    return Solver(grammar).solve(tree)
