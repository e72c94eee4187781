"""Lecture du format texte des grammaires (``*.dg``).

Le fichier est découpé en sections (``root:``, ``classes:``, ``deps:``,
``templates:``, ``domains:``, ``predicates:``, ``paths:``, ``lexicon:``) ;
``#`` ouvre un commentaire jusqu'à la fin de ligne. Les gabarits
``NOM(_a _b) = corps`` sont développés textuellement (``@(NOM x y)``) avant
l'analyse des lignes, qui passe par une grammaire Lark LALR.

Toute erreur est une ``GrammarError`` localisée (ligne, colonne) ; la
grammaire construite passe ensuite par ``validate_grammar`` et les erreurs
de validation sont levées en bloc.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput, VisitError

from ..errors import GrammarError
from ..fstruct.paths import parse_regular_path
from .model import (
    Cardinality,
    DependencyType,
    DomainSlotSpec,
    DomainSpec,
    Government,
    Grammar,
    LexicalEntry,
    ModifierPathSpec,
    Optionality,
    PredicateKind,
    PrecedencePredicate,
    ValencySlot,
    WordClass,
)
from .validate import validate_grammar

logger = logging.getLogger("dg-backbone.grammar")

SECTIONS = ("root", "classes", "deps", "templates", "domains", "predicates", "paths", "lexicon")
_HEADER_RE = re.compile(r"^(" + "|".join(SECTIONS) + r")\s*:(.*)$")
_COMMENT_RE = re.compile(r"(^|\s)#.*$")
_TEMPLATE_DEF_RE = re.compile(r"^([^\W\d][\w\-]*)\s*\(([^()]*)\)\s*=(.*)$")
_TEMPLATE_CALL_RE = re.compile(r"@\(\s*([^\s()]+)([^()]*)\)")
MAX_TEMPLATE_DEPTH = 16

_LINE_GRAMMAR = r"""
    domain_line: NAME ":" slot ("|" slot)*
    slot: slot_label? slot_body accepts?
    slot_label: NAME ("/" NAME)?      -> named_slot
              | "/" NAME               -> field_only
    slot_body: CARD? SELF CARD?        -> self_body
             | CARD                    -> plain_body
    accepts: "[" NAME+ "]"

    predicate_line: NAME "self-first"  -> self_first
                  | NAME "self-last"   -> self_last
                  | NAME NAME "<" NAME -> dep_before_dep

    entry_items: entry_item*
    ?entry_item: "lexeme" "=" NAME                        -> lexeme
               | NAME "=" NAME                            -> feature
               | "valency" "(" OPTIONALITY NAME NAME ")"  -> valency
               | "(" NAME+ ")" "=c" NAME                  -> government

    CARD: "*" | "?" | "+" | "!"
    SELF: "@self"
    OPTIONALITY: "opt" | "req"
    NAME: /[^\W\d][\w\-]*/
    %import common.WS_INLINE
    %ignore WS_INLINE
"""

_LINE_PARSER = Lark(_LINE_GRAMMAR, parser="lalr", start=["domain_line", "predicate_line", "entry_items"])


@dataclass(frozen=True)
class _SlotBody:
    before: Cardinality | None
    holds_self: bool
    after: Cardinality | None


class _LineBuilder(Transformer):
    def __init__(self, line: int):
        super().__init__()
        self._line = line

    # domaines
    def domain_line(self, children):
        name, *slots = children
        resolved = []
        for label, body, accepts in slots:
            slot_name, field_label = label if label is not None else (None, None)
            resolved.append(
                DomainSlotSpec(
                    name=slot_name or str(name),
                    cardinality=body.before,
                    holds_self=body.holds_self,
                    after=body.after,
                    field_label=field_label,
                    accepts=accepts,
                )
            )
        return DomainSpec(str(name), tuple(resolved), line=self._line)

    def slot(self, children):
        label = None
        accepts: tuple[str, ...] = ()
        body = None
        for child in children:
            if isinstance(child, _SlotBody):
                body = child
            elif isinstance(child, list):
                accepts = tuple(child)
            else:
                label = child
        return label, body, accepts

    def named_slot(self, children):
        return str(children[0]), (str(children[1]) if len(children) > 1 else None)

    def field_only(self, children):
        return None, str(children[0])

    def self_body(self, children):
        before = after = None
        seen_self = False
        for tok in children:
            if tok.type == "SELF":
                seen_self = True
            elif seen_self:
                after = Cardinality(str(tok))
            else:
                before = Cardinality(str(tok))
        return _SlotBody(before, True, after)

    def plain_body(self, children):
        return _SlotBody(Cardinality(str(children[0])), False, None)

    def accepts(self, children):
        return [str(c) for c in children]

    # prédicats
    def self_first(self, children):
        return PrecedencePredicate(str(children[0]), PredicateKind.SELF_FIRST, line=self._line)

    def self_last(self, children):
        return PrecedencePredicate(str(children[0]), PredicateKind.SELF_LAST, line=self._line)

    def dep_before_dep(self, children):
        holder, left, right = (str(c) for c in children)
        return PrecedencePredicate(holder, PredicateKind.DEP_BEFORE_DEP, left, right, line=self._line)

    # entrées lexicales
    def entry_items(self, children):
        return list(children)

    def lexeme(self, children):
        return ("lexeme", str(children[0]))

    def feature(self, children):
        return ("feature", (str(children[0]), str(children[1])))

    def valency(self, children):
        optionality, dep, mod_class = (str(c) for c in children)
        return ("valency", ValencySlot(Optionality(optionality), dep, mod_class))

    def government(self, children):
        *path, value = (str(c) for c in children)
        return ("government", Government(tuple(path), value))


def _parse_line(text: str, start: str, line: int, offset: int):
    try:
        tree = _LINE_PARSER.parse(text, start=start)
        return _LineBuilder(line).transform(tree)
    except UnexpectedInput as exc:
        column = getattr(exc, "column", None)
        raise GrammarError(
            "SYNTAX",
            f"unexpected input in {start.replace('_', ' ')}: {text.strip()!r}",
            line=line,
            column=(column + offset) if isinstance(column, int) and column > 0 else None,
        ) from None
    except VisitError as exc:
        raise GrammarError("SYNTAX", str(exc.orig_exc), line=line) from None


# ── Gabarits ────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Template:
    name: str
    params: tuple[str, ...]
    body: str


def _instantiate(template: Template, args: list[str], line: int) -> str:
    if len(args) != len(template.params):
        raise GrammarError(
            "TEMPLATE_ARITY",
            f"template {template.name} expects {len(template.params)} argument(s), got {len(args)}",
            line=line,
        )
    body = template.body
    for param, arg in zip(template.params, args, strict=True):
        body = re.sub(rf"(?<![\w\-]){re.escape(param)}(?![\w\-])", lambda _m, a=arg: a, body)
    return body


def expand_templates(text: str, templates: dict[str, Template], line: int) -> str:
    """Développe ``@(NOM args)`` jusqu'au point fixe (profondeur bornée)."""
    for _ in range(MAX_TEMPLATE_DEPTH):
        match = _TEMPLATE_CALL_RE.search(text)
        if match is None:
            return text

        def _expand(m: re.Match) -> str:
            template = templates.get(m.group(1))
            if template is None:
                raise GrammarError("UNKNOWN_TEMPLATE", f"unknown template {m.group(1)}", line=line)
            return " " + _instantiate(template, m.group(2).split(), line) + " "

        text = _TEMPLATE_CALL_RE.sub(_expand, text)
    if _TEMPLATE_CALL_RE.search(text):
        raise GrammarError(
            "TEMPLATE_RECURSION", f"template expansion deeper than {MAX_TEMPLATE_DEPTH}", line=line
        )
    return text


# ── Sections ────────────────────────────────────────────────────────────────

@dataclass
class _Sections:
    lines: dict[str, list[tuple[int, str]]] = field(default_factory=lambda: {s: [] for s in SECTIONS})


def _split_sections(text: str) -> _Sections:
    sections = _Sections()
    current: str | None = None
    for number, raw in enumerate(text.splitlines(), start=1):
        content = _COMMENT_RE.sub("", raw).rstrip()
        if not content.strip():
            continue
        header = _HEADER_RE.match(content)
        if header is not None:
            current = header.group(1)
            rest = header.group(2).strip()
            if rest:
                sections.lines[current].append((number, rest))
            continue
        if current is None:
            raise GrammarError("SYNTAX", "content outside of any section", line=number, column=1)
        sections.lines[current].append((number, content.strip()))
    return sections


def _names(entries: list[tuple[int, str]]) -> list[tuple[int, str]]:
    return [(number, name) for number, content in entries for name in content.split()]


def _parse_templates(entries: list[tuple[int, str]]) -> dict[str, Template]:
    templates: dict[str, Template] = {}
    for number, content in entries:
        match = _TEMPLATE_DEF_RE.match(content)
        if match is None:
            raise GrammarError("SYNTAX", f"invalid template definition {content!r}", line=number)
        name, params, body = match.group(1), tuple(match.group(2).split()), match.group(3).strip()
        if name in templates:
            raise GrammarError("DUPLICATE_TEMPLATE", f"template {name} defined twice", line=number)
        templates[name] = Template(name, params, body)
    return templates


def _parse_path_line(content: str, number: int) -> ModifierPathSpec:
    left, arrow, target = content.partition("->")
    parts = left.split(None, 1)
    if not parts:
        raise GrammarError("SYNTAX", "path line without dependency", line=number)
    target_field = target.strip() or None
    if arrow and target_field is None:
        raise GrammarError("SYNTAX", "missing field after '->'", line=number)
    regex_text = parts[1] if len(parts) > 1 else ""
    try:
        float_path = parse_regular_path(regex_text)
    except GrammarError as exc:
        offset = content.find(regex_text) if regex_text else 0
        column = exc.column + offset if exc.column is not None else None
        raise GrammarError(exc.code, exc.message, line=number, column=column) from None
    return ModifierPathSpec(parts[0], float_path, target_field, line=number)


def _parse_entry(content: str, number: int) -> LexicalEntry:
    parts = content.split(None, 2)
    if len(parts) < 2:
        raise GrammarError("SYNTAX", f"lexical entry needs a surface and a class: {content!r}", line=number)
    surface, word_class = parts[0], parts[1]
    rest = parts[2] if len(parts) > 2 else ""
    offset = content.find(rest) if rest else len(content)
    items = _parse_line(rest, "entry_items", number, offset) if rest else []
    lexeme = surface.lower()
    valency: list[ValencySlot] = []
    features: list[tuple[str, str]] = []
    government: list[Government] = []
    for kind, value in items:
        if kind == "lexeme":
            lexeme = value
        elif kind == "feature":
            features.append(value)
        elif kind == "valency":
            valency.append(value)
        else:
            government.append(value)
    return LexicalEntry(
        surface, word_class, lexeme, tuple(valency), tuple(features), tuple(government), line=number
    )


def parse_grammar(text: str) -> Grammar:
    """Texte -> ``Grammar`` sans validation (la validation est l'affaire de ``load_grammar``)."""
    sections = _split_sections(text)
    templates = _parse_templates(sections.lines["templates"])

    def expanded(name: str) -> list[tuple[int, str]]:
        return [(n, expand_templates(c, templates, n).strip()) for n, c in sections.lines[name]]

    predicates = [_parse_line(content, "predicate_line", number, 0) for number, content in expanded("predicates")]

    return Grammar(
        classes=tuple(WordClass(name, line=n) for n, name in _names(expanded("classes"))),
        deps=tuple(DependencyType(name, line=n) for n, name in _names(expanded("deps"))),
        domain_specs=tuple(_parse_line(c, "domain_line", n, 0) for n, c in expanded("domains")),
        predicates=tuple(predicates),
        path_specs=tuple(_parse_path_line(c, n) for n, c in expanded("paths")),
        lexicon=tuple(_parse_entry(c, n) for n, c in expanded("lexicon")),
        root_classes=tuple(name for _n, name in _names(expanded("root"))),
    )


def load_grammar_text(text: str, *, source: str = "<string>") -> Grammar:
    grammar = parse_grammar(text)
    report = validate_grammar(grammar)
    for issue in report.warnings:
        logger.warning("%s: %s", source, issue.render())
    if report.errors:
        first = report.errors[0]
        raise GrammarError(
            first.code,
            f"{source}: {len(report.errors)} error(s) in grammar",
            line=first.line,
            issues=report.errors,
        )
    logger.info(
        "grammar %s loaded: %d classes, %d deps, %d entries",
        source, len(grammar.classes), len(grammar.deps), len(grammar.lexicon),
    )
    return grammar


def load_grammar(path: str | Path) -> Grammar:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise GrammarError("GRAMMAR_IO", f"cannot read grammar {path}: {exc.strerror}") from None
    return load_grammar_text(text, source=str(path))
