"""Compilation des domaines d'ordre en squelette hors-contexte annoté.

Trois étapes, chacune une fonction pure :

1. ``compile_domains`` : un domaine à slot unique donne ``domC → ...`` ; un
   domaine à plusieurs slots donne une métacatégorie ``domC = domS1 domS2 ...``
   et une règle par slot. Toutes les occurrences de domaines enchâssés passent
   par l'union ``DOMAIN``.
2. ``specialize_domain_union`` : chaque occurrence de ``DOMAIN`` est
   restreinte aux classes qui peuvent effectivement atterrir dans ce slot
   (chemins de flottement × valences du lexique), puis les règles devenues
   inutiles sont supprimées. Le langage analysé (après résolution) est
   inchangé.
3. ``expand_metacategories`` : les métacatégories sont remplacées par la suite
   de leurs membres ; les éléments issus d'une même occurrence partagent un
   numéro de groupe (ils décrivent le même mot).
"""
from __future__ import annotations

import logging
from dataclasses import replace

from ..errors import MetacategoryCycleError
from ..fstruct.paths import compile_path
from ..grammar.model import Cardinality, DomainSlotSpec, Grammar
from .rules import (
    HEAD,
    MODIFIER,
    Annotation,
    AnnotationKind,
    BackboneRule,
    BackboneRuleSet,
    Category,
    CategoryKind,
    DomainUnion,
    Metacategory,
    Repetition,
    RhsItem,
    accepts_of,
)

logger = logging.getLogger("dg-backbone.backbone")

UNION_NAME = "DOMAIN"
ROOT_NAME = "ROOT"


def _union_items(card: Cardinality | None, union: Category, annotations: tuple[Annotation, ...]) -> list[RhsItem]:
    match card:
        case None:
            return []
        case Cardinality.EXACTLY_ONE:
            return [RhsItem(union, Repetition.ONE, annotations)]
        case Cardinality.AT_MOST_ONE:
            return [RhsItem(union, Repetition.OPTIONAL, annotations)]
        case Cardinality.ZERO_OR_MORE:
            return [RhsItem(union, Repetition.STAR, annotations)]
        case Cardinality.AT_LEAST_ONE:
            return [RhsItem(union, Repetition.ONE, annotations), RhsItem(union, Repetition.STAR, annotations)]


def _slot_rhs(slot: DomainSlotSpec, preterminal: Category, union: Category) -> tuple[RhsItem, ...]:
    annotations: list[Annotation] = [MODIFIER]
    if slot.field_label:
        annotations.append(Annotation(AnnotationKind.FIELD, field_label=slot.field_label))
    if slot.accepts:
        annotations.append(Annotation(AnnotationKind.SCHEMA, accepts=slot.accepts))
    ann = tuple(annotations)
    items = _union_items(slot.cardinality, union, ann)
    if slot.holds_self:
        items.append(RhsItem(preterminal, Repetition.ONE, (HEAD,)))
        items += _union_items(slot.after, union, ann)
    return tuple(items)


def compile_domains(g: Grammar) -> BackboneRuleSet:
    union = Category(UNION_NAME, CategoryKind.UNION)
    rules: list[BackboneRule] = []
    metas: list[Metacategory] = []
    members: dict[str, Category] = {}
    for name in g.class_names:
        spec = g.domain_spec(name)
        if spec is None:
            continue
        preterminal = Category(name, CategoryKind.PRETERMINAL, owner_class=name)
        if spec.is_single_slot:
            slot = spec.slots[0]
            cat = Category(
                f"dom{name}", CategoryKind.DOMAIN, owner_class=name, slot=slot.name,
                field_label=slot.field_label, holds_self=slot.holds_self,
            )
            rules.append(BackboneRule(cat, _slot_rhs(slot, preterminal, union)))
            members[name] = cat
            continue
        slot_cats = []
        for slot in spec.slots:
            cat = Category(
                f"dom{slot.name}", CategoryKind.SLOT, owner_class=name, slot=slot.name,
                field_label=slot.field_label, holds_self=slot.holds_self,
            )
            rules.append(BackboneRule(cat, _slot_rhs(slot, preterminal, union)))
            slot_cats.append(cat)
        meta = Category(f"dom{name}", CategoryKind.META, owner_class=name)
        metas.append(Metacategory(meta, tuple(slot_cats)))
        members[name] = meta

    start: Category | None = None
    roots = [r for r in g.root_classes if r in members]
    if len(roots) == 1 and members[roots[0]].kind is CategoryKind.DOMAIN:
        start = members[roots[0]]
    elif roots:
        start = Category(ROOT_NAME, CategoryKind.START)
        rules += [BackboneRule(start, (RhsItem(members[r], Repetition.ONE, (HEAD,)),)) for r in roots]

    unions = (DomainUnion(union, tuple((m,) for m in members.values())),)
    logger.debug("compiled %d rules, %d metacategories", len(rules), len(metas))
    return BackboneRuleSet(tuple(rules), start, unions, tuple(metas))


# ── Expansion des métacatégories ────────────────────────────────────────────

def expand_metacategories(rs: BackboneRuleSet) -> BackboneRuleSet:
    aliases = {m.category.name: m.members for m in rs.metacategories}

    def flatten(cat: Category, chain: tuple[str, ...]) -> list[Category]:
        if cat.name not in aliases:
            return [cat]
        if cat.name in chain:
            raise MetacategoryCycleError([*chain, cat.name])
        out: list[Category] = []
        for member in aliases[cat.name]:
            out += flatten(member, (*chain, cat.name))
        return out

    rules = []
    for rule in rs.rules:
        rhs: list[RhsItem] = []
        group = 0
        for item in rule.rhs:
            if item.category.name not in aliases:
                rhs.append(item)
                continue
            rhs += [replace(item, category=m, group=group) for m in flatten(item.category, ())]
            group += 1
        rules.append(BackboneRule(rule.lhs, tuple(rhs)))
    unions = tuple(
        DomainUnion(u.category, tuple(tuple(c for cat in alt for c in flatten(cat, ())) for alt in u.alternatives))
        for u in rs.unions
    )
    start = rs.start
    if start is not None and start.name in aliases:
        raise MetacategoryCycleError([start.name])
    return BackboneRuleSet(tuple(rules), start, unions, ())


# ── Spécialisation ──────────────────────────────────────────────────────────

def landing_classes(g: Grammar, positional_class: str) -> frozenset[str]:
    """Classes dont un mot peut occuper un domaine d'un mot de ``positional_class``.

    Parcours du produit (classe, états de l'automate du chemin de flottement)
    à travers les valences du lexique ; une dépendance ``d`` atterrit quand le
    chemin parcouru est accepté et que la classe courante a un slot ``d``.
    """
    result: set[str] = set()
    for spec in g.path_specs:
        automaton = compile_path(spec.float_path)
        seen: set[tuple[str, frozenset[int]]] = set()
        frontier = [(positional_class, automaton.initial())]
        while frontier:
            state = frontier.pop()
            if state in seen:
                continue
            seen.add(state)
            cls, states = state
            for slot in g.iter_valency(cls):
                if slot.dep == spec.dep and automaton.accepts(states):
                    result.add(slot.mod_class)
                following = automaton.step(states, slot.dep)
                if following:
                    frontier.append((slot.mod_class, following))
    return frozenset(result)


def specialize_domain_union(rs: BackboneRuleSet, g: Grammar) -> BackboneRuleSet:
    """Restreint chaque occurrence de ``DOMAIN`` puis élague les règles inutiles."""
    base = {u.category.name: u for u in rs.unions}
    landing_cache: dict[str, frozenset[str]] = {}
    narrowed: dict[str, DomainUnion] = {}

    def narrow(rule: BackboneRule, item: RhsItem) -> RhsItem:
        union = base[item.category.name]
        owner = rule.lhs.owner_class
        if owner not in landing_cache:
            landing_cache[owner] = landing_classes(g, owner)
        allowed = set(landing_cache[owner])
        accepts = accepts_of(item.annotations)
        if accepts:
            allowed &= set(accepts)
        name = f"{union.category.name}_{rule.lhs.slot}"
        if name not in narrowed:
            alternatives = tuple(a for a in union.alternatives if a and a[0].owner_class in allowed)
            narrowed[name] = DomainUnion(Category(name, CategoryKind.UNION), alternatives)
        return replace(item, category=narrowed[name].category)

    rules = [
        BackboneRule(r.lhs, tuple(narrow(r, i) if i.category.name in base else i for i in r.rhs))
        for r in rs.rules
    ]
    metas = list(rs.metacategories)
    unions = dict(narrowed)

    changed = True
    while changed:
        changed = False
        defined = {r.lhs.name for r in rules}
        meta_ok = {m.category.name for m in metas if all(c.name in defined for c in m.members)}

        def usable(cat: Category) -> bool:
            if cat.kind is CategoryKind.PRETERMINAL:
                return True
            if cat.kind is CategoryKind.META:
                return cat.name in meta_ok
            if cat.kind is CategoryKind.UNION:
                return bool(unions[cat.name].alternatives)
            return cat.name in defined

        for name, union in list(unions.items()):
            kept = tuple(alt for alt in union.alternatives if all(usable(c) for c in alt))
            if kept != union.alternatives:
                unions[name] = DomainUnion(union.category, kept)
                changed = True
        kept_rules = []
        for rule in rules:
            if any(i.repetition is Repetition.ONE and not usable(i.category) for i in rule.rhs):
                changed = True
                continue
            rhs = tuple(i for i in rule.rhs if usable(i.category))
            if len(rhs) != len(rule.rhs):
                changed = True
            kept_rules.append(BackboneRule(rule.lhs, rhs))
        rules = kept_rules
        kept_metas = [m for m in metas if m.category.name in meta_ok]
        if len(kept_metas) != len(metas):
            changed = True
        metas = kept_metas

    referenced = {i.category.name for r in rules for i in r.rhs}
    logger.debug("specialized backbone: %d rules kept out of %d", len(rules), len(rs.rules))
    return BackboneRuleSet(
        tuple(rules),
        rs.start,
        tuple(u for name, u in unions.items() if name in referenced),
        tuple(metas),
    )


def build_backbone(g: Grammar, *, specialize: bool = True) -> BackboneRuleSet:
    """Squelette prêt pour l'analyseur : compilé, éventuellement spécialisé, développé."""
    rs = compile_domains(g)
    if specialize:
        rs = specialize_domain_union(rs, g)
    return expand_metacategories(rs)
