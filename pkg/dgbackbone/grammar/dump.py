"""Sérialisation d'une ``Grammar`` dans le format texte relu par ``loader``.

Les gabarits ne survivent pas au chargement : la sortie est la forme
développée. Relire cette sortie redonne une grammaire égale.
"""
from __future__ import annotations

from .model import DomainSlotSpec, DomainSpec, Grammar, LexicalEntry, ModifierPathSpec


def _slot(spec: DomainSpec, slot: DomainSlotSpec) -> str:
    parts: list[str] = []
    if spec.is_single_slot and slot.name == spec.word_class:
        if slot.field_label:
            parts.append(f"{slot.name}/{slot.field_label}")
    else:
        parts.append(slot.name + (f"/{slot.field_label}" if slot.field_label else ""))
    if slot.cardinality is not None:
        parts.append(str(slot.cardinality))
    if slot.holds_self:
        parts.append("@self")
        if slot.after is not None:
            parts.append(str(slot.after))
    if slot.accepts:
        parts.append("[" + " ".join(slot.accepts) + "]")
    return " ".join(parts)


def _path(spec: ModifierPathSpec) -> str:
    text = " ".join(filter(None, (spec.dep, str(spec.float_path))))
    return text + (f" -> {spec.target_field}" if spec.target_field else "")


def _entry(entry: LexicalEntry) -> str:
    items = [entry.surface, entry.word_class, f"lexeme={entry.lexeme}"]
    items += [f"{attr}={value}" for attr, value in entry.features]
    items += [str(slot) for slot in entry.valency]
    items += [str(rule) for rule in entry.government]
    return " ".join(items)


def dump_grammar(g: Grammar) -> str:
    lines = [
        "root: " + " ".join(g.root_classes),
        "classes: " + " ".join(g.class_names),
        "deps: " + " ".join(g.dep_names),
        "",
        "domains:",
    ]
    lines += [f"  {spec.word_class}: " + " | ".join(_slot(spec, s) for s in spec.slots) for spec in g.domain_specs]
    lines += ["", "predicates:"]
    lines += [f"  {p}" for p in g.predicates]
    lines += ["", "paths:"]
    lines += [f"  {_path(spec)}" for spec in g.path_specs]
    lines += ["", "lexicon:"]
    lines += [f"  {_entry(entry)}" for entry in g.lexicon]
    return "\n".join(line.rstrip() for line in lines) + "\n"
