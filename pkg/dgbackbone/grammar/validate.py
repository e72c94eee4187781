"""Validation statique d'une grammaire : références, doublons, cohérence des domaines.

Rien n'est levé ici : toutes les anomalies sont collectées dans un
``ValidationReport`` (erreurs + avertissements) pour que ``dg check`` puisse
les afficher d'un coup. ``load_grammar`` lève sur la première erreur.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from ..errors import Issue
from ..fstruct.nodes import RESERVED_ATTRIBUTES
from .model import Grammar, PrecedencePredicate, PredicateKind

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[Issue, ...] = ()

    @property
    def errors(self) -> tuple[Issue, ...]:
        return tuple(i for i in self.issues if i.severity == ERROR)

    @property
    def warnings(self) -> tuple[Issue, ...]:
        return tuple(i for i in self.issues if i.severity == WARNING)

    @property
    def ok(self) -> bool:
        return not self.errors

    def render(self) -> str:
        return "\n".join(i.render() for i in self.issues)


class _Collector:
    def __init__(self):
        self.issues: list[Issue] = []

    def add(self, severity: str, code: str, line: int | None, what: str, message: str) -> None:
        location = f"line {line}" if line is not None else what
        self.issues.append(Issue(severity, code, location, message, line))

    def error(self, code: str, line: int | None, what: str, message: str) -> None:
        self.add(ERROR, code, line, what, message)

    def warning(self, code: str, line: int | None, what: str, message: str) -> None:
        self.add(WARNING, code, line, what, message)


def validate_grammar(g: Grammar) -> ValidationReport:
    out = _Collector()
    classes = set(g.class_names)
    deps = set(g.dep_names)

    for name, count in Counter(g.class_names).items():
        if count > 1:
            line = next(c.line for c in reversed(g.classes) if c.name == name)
            out.error("DUPLICATE_CLASS", line, f"class {name}", f"class {name} declared {count} times")
    for name, count in Counter(g.dep_names).items():
        if count > 1:
            line = next(d.line for d in reversed(g.deps) if d.name == name)
            out.error("DUPLICATE_DEP", line, f"dep {name}", f"dependency {name} declared {count} times")
    for dep in g.deps:
        if dep.name in RESERVED_ATTRIBUTES:
            out.error("RESERVED_NAME", dep.line, f"dep {dep.name}", f"{dep.name} is a reserved attribute")

    for root in g.root_classes:
        if root not in classes:
            out.error("UNDECLARED_CLASS", None, "root", f"root class {root} is not declared")
    if g.classes and not g.root_classes:
        out.warning("NO_ROOT", None, "root", "no root class: no sentence can be accepted")

    _check_domains(g, classes, out)
    _check_predicates(g, classes, deps, out)
    _check_paths(g, deps, out)
    _check_lexicon(g, classes, deps, out)
    return ValidationReport(tuple(out.issues))


def _check_domains(g: Grammar, classes: set[str], out: _Collector) -> None:
    seen_classes: set[str] = set()
    slot_owner: dict[str, str] = {}
    for spec in g.domain_specs:
        what = f"domain {spec.word_class}"
        if spec.word_class not in classes:
            out.error("UNDECLARED_CLASS", spec.line, what, f"domain for undeclared class {spec.word_class}")
        if spec.word_class in seen_classes:
            out.error("DUPLICATE_DOMAIN", spec.line, what, f"class {spec.word_class} has two domain specs")
        seen_classes.add(spec.word_class)
        selves = sum(1 for s in spec.slots if s.holds_self)
        if selves != 1:
            out.error("SELF_SLOT", spec.line, what, f"exactly one @self slot expected, found {selves}")
        names = [s.name for s in spec.slots]
        for name, count in Counter(names).items():
            if count > 1:
                out.error("DUPLICATE_SLOT", spec.line, what, f"slot {name} appears {count} times")
        if not spec.is_single_slot:
            for name in set(names):
                other = slot_owner.get(name)
                if other is not None and other != spec.word_class or name in classes:
                    out.error("SLOT_NAME_CLASH", spec.line, what, f"slot name {name} is already in use")
                slot_owner[name] = spec.word_class
        for slot in spec.slots:
            if not slot.holds_self and slot.cardinality is None:
                out.error("SLOT_CARDINALITY", spec.line, what, f"slot {slot.name} has no cardinality")
            for accepted in slot.accepts:
                if accepted not in classes:
                    out.error("UNDECLARED_CLASS", spec.line, what, f"slot {slot.name} accepts unknown class {accepted}")
    for name in g.class_names:
        if name not in seen_classes:
            out.error("MISSING_DOMAIN", None, f"class {name}", f"class {name} has no domain spec")


def _check_predicates(g: Grammar, classes: set[str], deps: set[str], out: _Collector) -> None:
    seen: set[PrecedencePredicate] = set()
    for predicate in g.predicates:
        what = f"predicate {predicate}"
        if predicate in seen:
            out.warning("DUPLICATE_PREDICATE", predicate.line, what, "predicate stated more than once")
            continue
        seen.add(predicate)
        if predicate.holder not in classes:
            out.error("UNDECLARED_CLASS", predicate.line, what, f"unknown class {predicate.holder}")
        if predicate.kind is PredicateKind.DEP_BEFORE_DEP:
            for dep in (predicate.left, predicate.right):
                if dep not in deps:
                    out.error("UNDECLARED_DEP", predicate.line, what, f"unknown dependency {dep}")
            if predicate.left == predicate.right:
                out.warning("TRIVIAL_PREDICATE", predicate.line, what, "a dependency ordered against itself")
        elif predicate.left is not None or predicate.right is not None:
            out.error("PREDICATE_ARITY", predicate.line, what, f"{predicate.kind} takes no dependencies")


def _check_paths(g: Grammar, deps: set[str], out: _Collector) -> None:
    fields = {s.field_label for spec in g.domain_specs for s in spec.slots if s.field_label}
    counts = Counter(spec.dep for spec in g.path_specs)
    for spec in g.path_specs:
        what = f"path {spec.dep}"
        if spec.dep not in deps:
            out.error("UNDECLARED_DEP", spec.line, what, f"path spec for unknown dependency {spec.dep}")
        if counts[spec.dep] > 1:
            out.error("DUPLICATE_PATH", spec.line, what, f"dependency {spec.dep} has several path specs")
        for symbol in sorted(spec.float_path.symbols() - deps):
            out.error("UNDECLARED_DEP", spec.line, what, f"float path mentions unknown dependency {symbol}")
        if spec.target_field is not None and spec.target_field not in fields:
            out.warning("UNKNOWN_FIELD", spec.line, what, f"no slot carries field {spec.target_field}")
    for dep in g.dep_names:
        if dep not in counts:
            out.error("MISSING_PATH", None, f"dep {dep}", f"dependency {dep} has no path spec")


def _check_lexicon(g: Grammar, classes: set[str], deps: set[str], out: _Collector) -> None:
    seen: set[tuple[str, str]] = set()
    for entry in g.lexicon:
        what = f"entry {entry.surface}/{entry.word_class}"
        if not entry.surface:
            out.error("EMPTY_SURFACE", entry.line, what, "empty surface form")
        if entry.word_class not in classes:
            out.error("UNDECLARED_CLASS", entry.line, what, f"unknown class {entry.word_class}")
        key = (entry.surface, entry.word_class)
        if key in seen:
            out.error("DUPLICATE_ENTRY", entry.line, what, "surface and class already in the lexicon")
        seen.add(key)
        for dep, count in Counter(s.dep for s in entry.valency).items():
            if count > 1:
                out.error("DUPLICATE_VALENCY", entry.line, what, f"dependency {dep} appears {count} times")
        for slot in entry.valency:
            if slot.dep not in deps:
                out.error("UNDECLARED_DEP", entry.line, what, f"valency names unknown dependency {slot.dep}")
            if slot.mod_class not in classes:
                out.error("UNDECLARED_CLASS", entry.line, what, f"valency names unknown class {slot.mod_class}")
        for attr, _value in entry.features:
            if attr in RESERVED_ATTRIBUTES or attr in deps:
                out.error("RESERVED_NAME", entry.line, what, f"feature {attr} shadows a reserved name")
        for rule in entry.government:
            *steps, last = rule.path
            if not steps or any(step not in deps for step in steps):
                out.error("GOVERNMENT_PATH", entry.line, what, f"government {rule} must start with dependencies")
            elif steps[0] not in {s.dep for s in entry.valency}:
                out.error("GOVERNMENT_PATH", entry.line, what, f"government {rule} targets a missing slot")
            if last in deps or last in ("FIELD", "INDEX"):
                out.error("GOVERNMENT_PATH", entry.line, what, f"government {rule} must end in a feature")
