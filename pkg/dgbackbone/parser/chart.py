"""Analyse Earley du squelette et dépliage de la forêt partagée en c-structures.

Reconnaissance : Earley classique avec la correction d'Aycock–Horspool pour
les symboles annulables. La forêt est indexée par ``(symbole, i, j)`` et
dépliée paresseusement, avec un plafond (``max_unpack``) sur le nombre de
c-structures produites ; le dépassement est signalé (``truncated``).
"""
from __future__ import annotations

import itertools
import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

from ..backbone.rules import Annotation, Category
from ..grammar.model import Grammar, LexicalEntry
from .cfg import FlatGrammar, ProductionKind

logger = logging.getLogger("dg-backbone.parser")


@dataclass(eq=False)
class CNode:
    category: Category
    start: int
    end: int
    children: list[CNode] = field(default_factory=list)
    annotations: tuple[Annotation, ...] = ()
    group: int | None = None
    token: str | None = None
    entry: LexicalEntry | None = None

    @property
    def span(self) -> tuple[int, int]:
        return self.start, self.end

    @property
    def is_preterminal(self) -> bool:
        return self.token is not None

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()

    def bracketed(self) -> str:
        if self.is_preterminal:
            return f"({self.category} {self.token})"
        if not self.children:
            return f"({self.category})"
        lines = [f"({self.category}"]
        for child in self.children:
            lines += ["  " + line for line in child.bracketed().splitlines()]
        lines[-1] += ")"
        return "\n".join(lines)

    def signature(self) -> str:
        """Forme parenthésée sur une ligne, clé de tri déterministe."""
        if self.is_preterminal:
            return f"({self.category} {self.token})"
        return f"({self.category}" + "".join(" " + c.signature() for c in self.children) + ")"


# ── Reconnaissance ──────────────────────────────────────────────────────────

class Chart:
    """Items Earley et arêtes complètes ``(prod, i, j)`` pour une phrase."""

    def __init__(self, cfg: FlatGrammar, token_classes: Sequence[frozenset[str]]):
        self.cfg = cfg
        self.token_classes = list(token_classes)
        self.n = len(token_classes)
        self.completed: dict[tuple[str, int, int], list[int]] = {}
        self.ends: dict[tuple[str, int], set[int]] = {}
        if cfg.start is not None and self.n > 0:
            self._recognize()

    def _record(self, prod_index: int, origin: int, end: int) -> None:
        lhs = self.cfg.productions[prod_index].lhs
        prods = self.completed.setdefault((lhs, origin, end), [])
        if prod_index not in prods:
            prods.append(prod_index)
            self.ends.setdefault((lhs, origin), set()).add(end)

    def _recognize(self) -> None:
        cfg = self.cfg
        prods = cfg.productions
        sets: list[dict[tuple[int, int, int], None]] = [{} for _ in range(self.n + 1)]
        waiting: list[dict[str, list[tuple[int, int, int]]]] = [{} for _ in range(self.n + 1)]

        def add(k: int, item: tuple[int, int, int], agenda: list | None) -> None:
            if item in sets[k]:
                return
            sets[k][item] = None
            p, dot, _origin = item
            rhs = prods[p].rhs
            if dot < len(rhs) and rhs[dot] not in cfg.terminals:
                waiting[k].setdefault(rhs[dot], []).append(item)
            if agenda is not None:
                agenda.append(item)

        agenda0: list = []
        for p in cfg.by_lhs.get(cfg.start, ()):
            add(0, (p, 0, 0), agenda0)
        agendas = [agenda0] + [[] for _ in range(self.n)]

        for k in range(self.n + 1):
            agenda = agendas[k]
            i = 0
            while i < len(agenda):
                p, dot, origin = agenda[i]
                i += 1
                rhs = prods[p].rhs
                if dot < len(rhs):
                    sym = rhs[dot]
                    if sym in cfg.terminals:
                        if k < self.n and sym in self.token_classes[k]:
                            add(k + 1, (p, dot + 1, origin), agendas[k + 1])
                        continue
                    for q in cfg.by_lhs.get(sym, ()):
                        add(k, (q, 0, k), agenda)
                    if sym in cfg.nullable:
                        add(k, (p, dot + 1, origin), agenda)
                    continue
                self._record(p, origin, k)
                lhs = prods[p].lhs
                for p2, dot2, origin2 in list(waiting[origin].get(lhs, ())):
                    add(k, (p2, dot2 + 1, origin2), agenda)

    def accepts(self) -> bool:
        start = self.cfg.start
        return start is not None and (start, 0, self.n) in self.completed

    def span_ends(self, symbol: str, i: int) -> set[int]:
        if symbol in self.cfg.terminals:
            return {i + 1} if i < self.n and symbol in self.token_classes[i] else set()
        return self.ends.get((symbol, i), set())


# ── Dépliage ────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class _Raw:
    symbol: str
    start: int
    end: int
    production: int | None
    children: tuple[_Raw, ...] = ()


class ForestUnpacker:
    def __init__(self, chart: Chart, max_unpack: int):
        self.chart = chart
        self.max_unpack = max_unpack
        self.truncated = False
        self._memo: dict[tuple[str, int, int], list[_Raw]] = {}
        self._active: set[tuple[str, int, int]] = set()

    def _splits(self, rhs: tuple[str, ...], pos: int, i: int, j: int):
        if pos == len(rhs):
            if i == j:
                yield ()
            return
        sym = rhs[pos]
        for mid in sorted(self.chart.span_ends(sym, i)):
            if mid > j:
                continue
            for rest in self._splits(rhs, pos + 1, mid, j):
                yield ((sym, i, mid),) + rest

    def _candidates(self, key: tuple[str, int, int]) -> Iterator[tuple[int, tuple[_Raw, ...]]]:
        _symbol, i, j = key
        for p in self.chart.completed.get(key, ()):
            for split in self._splits(self.chart.cfg.productions[p].rhs, 0, i, j):
                for combo in itertools.product(*(self.trees(*part) for part in split)):
                    yield p, combo

    def trees(self, symbol: str, i: int, j: int) -> list[_Raw]:
        key = (symbol, i, j)
        if key in self._memo:
            return self._memo[key]
        if symbol in self.chart.cfg.terminals:
            return [_Raw(symbol, i, j, None)] if j == i + 1 else []
        if key in self._active:
            return []
        self._active.add(key)
        out: list[_Raw] = []
        for p, combo in self._candidates(key):
            if len(out) >= self.max_unpack:
                # un candidat de plus existe : la liste est incomplète
                self.truncated = True
                break
            out.append(_Raw(symbol, i, j, p, combo))
        self._active.discard(key)
        self._memo[key] = out
        return out


def _build(raw: _Raw, cfg: FlatGrammar, tokens: Sequence[str], entries: Sequence[dict[str, LexicalEntry]],
           annotations: tuple[Annotation, ...], group: int | None, counter: itertools.count) -> list[CNode]:
    if raw.production is None:
        category = cfg.categories[raw.symbol]
        return [CNode(category, raw.start, raw.end, [], annotations, group,
                      tokens[raw.start], entries[raw.start].get(raw.symbol))]
    production = cfg.productions[raw.production]
    if production.kind is ProductionKind.REPEAT:
        out: list[CNode] = []
        for child, ann in zip(raw.children, production.annotations, strict=True):
            out += _build(child, cfg, tokens, entries, ann, None, counter)
        return out
    if production.kind is ProductionKind.UNION:
        shared = next(counter)
        out = []
        for child in raw.children:
            out += _build(child, cfg, tokens, entries, annotations, shared, counter)
        return out
    fresh: dict[int, int] = {}
    children: list[CNode] = []
    for child, ann, grp in zip(raw.children, production.annotations, production.groups, strict=True):
        child_group = None
        if grp is not None:
            if grp not in fresh:
                fresh[grp] = next(counter)
            child_group = fresh[grp]
        children += _build(child, cfg, tokens, entries, ann, child_group, counter)
    category = cfg.categories[raw.symbol]
    return [CNode(category, raw.start, raw.end, children, annotations, group)]


@dataclass
class BackboneParse:
    trees: list[CNode]
    truncated: bool
    accepted: bool


def token_classes(tokens: Sequence[str], g: Grammar) -> list[frozenset[str]]:
    return [frozenset(e.word_class for e in g.entries_for(t)) for t in tokens]


def parse_backbone(tokens: Sequence[str], cfg: FlatGrammar, g: Grammar, *, max_unpack: int = 1000) -> BackboneParse:
    """Toutes les c-structures (au plus ``max_unpack``) de ``tokens``."""
    if not tokens or cfg.start is None:
        return BackboneParse([], False, False)
    chart = Chart(cfg, token_classes(tokens, g))
    if not chart.accepts():
        return BackboneParse([], False, False)
    unpacker = ForestUnpacker(chart, max_unpack)
    entries = [{e.word_class: e for e in g.entries_for(t)} for t in tokens]
    trees: list[CNode] = []
    for raw in unpacker.trees(cfg.start, 0, len(tokens)):
        (tree,) = _build(raw, cfg, tokens, entries, (), None, itertools.count())
        trees.append(tree)
    if unpacker.truncated:
        logger.warning("c-structure unpacking truncated at %d trees", max_unpack)
    return BackboneParse(trees, unpacker.truncated, True)
