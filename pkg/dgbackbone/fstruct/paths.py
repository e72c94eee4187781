"""Chemins réguliers sur les noms d'attributs (incertitude fonctionnelle).

Syntaxe (celle des annotations de grammaire) : symbole ``VPART``, concaténation
par juxtaposition ``VPART OBJ``, disjonction ``{OBJ|SUBJ}``, option ``(VCOMP)``,
étoile de Kleene ``VPART*``. Le chemin vide (ε) s'écrit par absence de texte.

Les expressions sont compilées en automate de Thompson (états entiers,
transitions étiquetées par un attribut ou ε) et simulées par ensembles
d'états : c'est ce qui permet de parcourir une f-structure en ne suivant que
les arcs encore compatibles avec le langage.
"""
from __future__ import annotations

import functools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput

from ..errors import GrammarError


class PathExpr:
    """Base des nœuds d'expression ; sous-classes immuables et hachables."""

    def symbols(self) -> frozenset[str]:
        raise NotImplementedError


@dataclass(frozen=True)
class Sym(PathExpr):
    name: str

    def symbols(self) -> frozenset[str]:
        return frozenset((self.name,))

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Seq(PathExpr):
    items: tuple[PathExpr, ...] = ()

    def symbols(self) -> frozenset[str]:
        return frozenset().union(*(i.symbols() for i in self.items))

    def __str__(self) -> str:
        return " ".join(str(i) for i in self.items)


@dataclass(frozen=True)
class Alt(PathExpr):
    options: tuple[PathExpr, ...]

    def symbols(self) -> frozenset[str]:
        return frozenset().union(*(o.symbols() for o in self.options))

    def __str__(self) -> str:
        return "{" + "|".join(str(o) for o in self.options) + "}"


@dataclass(frozen=True)
class Opt(PathExpr):
    inner: PathExpr

    def symbols(self) -> frozenset[str]:
        return self.inner.symbols()

    def __str__(self) -> str:
        return f"({self.inner})"


@dataclass(frozen=True)
class Star(PathExpr):
    inner: PathExpr

    def symbols(self) -> frozenset[str]:
        return self.inner.symbols()

    def __str__(self) -> str:
        if isinstance(self.inner, Sym | Alt | Opt):
            return f"{self.inner}*"
        return "{" + str(self.inner) + "}*"


EPSILON = Seq(())


def seq(*items: PathExpr) -> PathExpr:
    flat: list[PathExpr] = []
    for item in items:
        if isinstance(item, Seq):
            flat.extend(item.items)
        else:
            flat.append(item)
    if len(flat) == 1:
        return flat[0]
    return Seq(tuple(flat))


def alt(*options: PathExpr) -> PathExpr:
    if len(options) == 1:
        return options[0]
    return Alt(tuple(options))


# ── Parsing ─────────────────────────────────────────────────────────────────

_PATH_GRAMMAR = r"""
    start: seq
    seq: item*
    item: primary STAR?
    ?primary: NAME            -> sym
            | "{" alt "}"
            | "(" alt ")"     -> optional
    alt: seq ("|" seq)*
    STAR: "*"
    NAME: /[^\W\d][\w\-]*/
    %import common.WS_INLINE
    %ignore WS_INLINE
"""


class _PathBuilder(Transformer):
    def start(self, children):
        return children[0]

    def seq(self, children):
        return seq(*children) if children else EPSILON

    def item(self, children):
        node = children[0]
        return Star(node) if len(children) == 2 else node

    def sym(self, children):
        return Sym(str(children[0]))

    def optional(self, children):
        return Opt(children[0])

    def alt(self, children):
        return alt(*children)


_PARSER = Lark(_PATH_GRAMMAR, parser="lalr")


@functools.lru_cache(maxsize=512)
def parse_regular_path(text: str) -> PathExpr:
    """Parse ``text`` ; lève ``GrammarError(PATH_SYNTAX)`` avec la colonne (base 1)."""
    if not text.strip():
        return EPSILON
    try:
        tree = _PARSER.parse(text)
    except UnexpectedInput as exc:
        raise GrammarError(
            "PATH_SYNTAX", f"invalid regular path {text!r}", column=getattr(exc, "column", None)
        ) from None
    return _PathBuilder().transform(tree)


# ── Automate de Thompson ────────────────────────────────────────────────────

class PathAutomaton:
    """NFA with ε-moves; states are ints, ``accept`` is the single final state."""

    def __init__(self, expr: PathExpr):
        self._edges: list[list[tuple[str | None, int]]] = []
        self.start = self._new_state()
        self.accept = self._new_state()
        self._build(expr, self.start, self.accept)
        self._closures: dict[int, frozenset[int]] = {}

    def _new_state(self) -> int:
        self._edges.append([])
        return len(self._edges) - 1

    def _build(self, expr: PathExpr, start: int, end: int) -> None:
        if isinstance(expr, Sym):
            self._edges[start].append((expr.name, end))
        elif isinstance(expr, Seq):
            if not expr.items:
                self._edges[start].append((None, end))
                return
            current = start
            for item in expr.items[:-1]:
                middle = self._new_state()
                self._build(item, current, middle)
                current = middle
            self._build(expr.items[-1], current, end)
        elif isinstance(expr, Alt):
            for option in expr.options:
                self._build(option, start, end)
        elif isinstance(expr, Opt):
            self._build(expr.inner, start, end)
            self._edges[start].append((None, end))
        elif isinstance(expr, Star):
            # door_in -> (inner) -> door_out, door_out boucle vers door_in ou sort
            door_in = self._new_state()
            door_out = self._new_state()
            self._edges[start].append((None, door_in))
            self._edges[start].append((None, end))
            self._build(expr.inner, door_in, door_out)
            self._edges[door_out].append((None, door_in))
            self._edges[door_out].append((None, end))
        else:  # pragma: no cover
            raise TypeError(f"unknown path expression {expr!r}")

    def _closure_of(self, state: int) -> frozenset[int]:
        cached = self._closures.get(state)
        if cached is not None:
            return cached
        seen = {state}
        stack = [state]
        while stack:
            for label, target in self._edges[stack.pop()]:
                if label is None and target not in seen:
                    seen.add(target)
                    stack.append(target)
        result = frozenset(seen)
        self._closures[state] = result
        return result

    def closure(self, states: Iterable[int]) -> frozenset[int]:
        out: set[int] = set()
        for state in states:
            out |= self._closure_of(state)
        return frozenset(out)

    def initial(self) -> frozenset[int]:
        return self._closure_of(self.start)

    def step(self, states: frozenset[int], symbol: str) -> frozenset[int]:
        targets = [t for s in states for label, t in self._edges[s] if label == symbol]
        return self.closure(targets) if targets else frozenset()

    def accepts(self, states: frozenset[int]) -> bool:
        return self.accept in states

    def matches(self, path: Sequence[str]) -> bool:
        states = self.initial()
        for symbol in path:
            states = self.step(states, symbol)
            if not states:
                return False
        return self.accepts(states)


@functools.lru_cache(maxsize=512)
def compile_path(expr: PathExpr) -> PathAutomaton:
    return PathAutomaton(expr)


def path_matches(expr: PathExpr, path: Sequence[str]) -> bool:
    return compile_path(expr).matches(path)
