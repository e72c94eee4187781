"""Chargement des grammaires (dgbackbone/grammar/loader.py) et sérialisation.

Couvre le format texte (sections, commentaires, gabarits), les erreurs
localisées, et l'aller-retour ``dump_grammar`` -> ``load_grammar_text``.
"""

import logging

import pytest

from dgbackbone.errors import GrammarError
from dgbackbone.fstruct.paths import parse_regular_path
from dgbackbone.grammar import dump_grammar, load_grammar, load_grammar_text, parse_grammar
from dgbackbone.grammar.model import Cardinality, Government, Optionality, PredicateKind, ValencySlot
from tests.dg_utils import GRAMMARS

MINIMAL = """
root: V
classes: V N   # deux classes
deps: SUBJ
domains:
  V: * @self *
  N: @self
paths:
  SUBJ
lexicon:
  dort V valency(req SUBJ N)
  Hans N
"""


def test_fixture_grammar_inventory(german):
    assert german.class_names == ("Vfin", "Vpp", "N", "D", "I")
    assert german.dep_names == ("PROPO", "SUBJ", "OBJ", "VPART", "SPEC", "RELA")
    assert german.root_classes == ("I",)


def test_fixture_domains(german):
    vfin = german.domain_spec("Vfin")
    assert [s.name for s in vfin.slots] == ["INITIAL", "MIDDLE", "FINAL"]
    initial, middle, final = vfin.slots
    assert (initial.cardinality, initial.holds_self, initial.field_label) == (Cardinality.EXACTLY_ONE, False, "initial")
    assert (middle.cardinality, middle.holds_self, middle.after) == (
        Cardinality.ZERO_OR_MORE, True, Cardinality.ZERO_OR_MORE,
    )
    assert (final.cardinality, final.accepts) == (Cardinality.AT_MOST_ONE, ("Vfin",))
    det = german.domain_spec("D").slots[0]
    assert (det.name, det.cardinality, det.holds_self, det.after) == ("D", None, True, None)


def test_templates_are_expanded_into_entries(german):
    hat = german.entry("hat", "Vfin")
    assert hat.lexeme == "aux-perfect"
    assert hat.valency == (
        ValencySlot(Optionality.REQ, "SUBJ", "N"),
        ValencySlot(Optionality.REQ, "VPART", "Vpp"),
    )
    assert hat.government == (Government(("SUBJ", "SPEC", "CASE"), "nom"),)
    mann = german.entry("Mann", "N")
    assert mann.valency[1] == ValencySlot(Optionality.OPT, "RELA", "Vfin")
    assert german.entry("den", "D").features == (("CASE", "acc"),)


def test_paths_and_predicates(german):
    assert german.path_spec("OBJ").float_path == parse_regular_path("VPART*")
    assert german.path_spec("SUBJ").float_path == parse_regular_path("")
    rela = german.path_spec("RELA")
    assert rela.target_field == "final"
    kinds = [(p.holder, p.kind, p.left, p.right) for p in german.predicates]
    assert ("Vfin", PredicateKind.SELF_FIRST, None, None) in kinds
    assert ("Vfin", PredicateKind.DEP_BEFORE_DEP, "SUBJ", "VPART") in kinds


def test_default_lexeme_is_lowercased_surface():
    g = load_grammar_text(MINIMAL)
    assert g.entry("Hans", "N").lexeme == "hans"


def test_empty_grammar_is_valid():
    g = load_grammar_text("classes:\ndeps:\nlexicon:\n")
    assert g.classes == () and g.deps == () and g.lexicon == ()


def test_undeclared_class_names_it_and_its_line():
    text = MINIMAL + "  Bello X\n"
    with pytest.raises(GrammarError) as exc:
        load_grammar_text(text)
    assert exc.value.code == "UNDECLARED_CLASS"
    assert exc.value.line == text.splitlines().index("  Bello X") + 1
    assert "X" in exc.value.to_diagnostic()


def test_syntax_error_reports_line_and_column():
    text = "classes: V\ndomains:\n  V: * @self @self\n"
    with pytest.raises(GrammarError) as exc:
        parse_grammar(text)
    assert exc.value.code == "SYNTAX"
    assert exc.value.line == 3
    assert exc.value.column is not None


def test_content_outside_sections_is_rejected():
    with pytest.raises(GrammarError) as exc:
        parse_grammar("V N\n")
    assert (exc.value.code, exc.value.line) == ("SYNTAX", 1)


def test_path_syntax_error_is_located():
    with pytest.raises(GrammarError) as exc:
        parse_grammar("deps: OBJ\npaths:\n  OBJ {VPART\n")
    assert exc.value.code == "PATH_SYNTAX"
    assert exc.value.line == 3


def test_duplicate_predicate_loads_with_warning(caplog):
    text = MINIMAL + "predicates:\n  V self-first\n  V self-first\n"
    caplog.set_level(logging.WARNING, logger="dg-backbone.grammar")
    g = load_grammar_text(text)
    assert len(g.predicates) == 2
    assert len(g.predicates_for("V")) == 1
    assert any("warning[DUPLICATE_PREDICATE]" in r.getMessage() for r in caplog.records)


def test_missing_grammar_file():
    with pytest.raises(GrammarError) as exc:
        load_grammar(GRAMMARS / "does-not-exist.dg")
    assert exc.value.code == "GRAMMAR_IO"
    assert exc.value.exit_code == 2


# ── Gabarits ────────────────────────────────────────────────────────────────

_TEMPLATE_HEAD = "classes: V N\ndeps: SUBJ\ndomains:\n  V: @self\n  N: @self\npaths:\n  SUBJ\n"


def test_nested_templates():
    text = _TEMPLATE_HEAD + (
        "templates:\n"
        "  VALENCY(_o _d _c) = valency(_o _d _c)\n"
        "  INTRANSITIVE(_l) = lexeme=_l @(VALENCY req SUBJ N)\n"
        "lexicon:\n"
        "  schläft V @(INTRANSITIVE schlafen)\n"
    )
    entry = parse_grammar(text).entry("schläft", "V")
    assert entry.lexeme == "schlafen"
    assert entry.valency == (ValencySlot(Optionality.REQ, "SUBJ", "N"),)


@pytest.mark.parametrize(
    "templates, call, code",
    [
        ("  T(_a) = _a\n", "@(T x y)", "TEMPLATE_ARITY"),
        ("", "@(NOPE x)", "UNKNOWN_TEMPLATE"),
        ("  LOOP(_a) = @(LOOP _a)\n", "@(LOOP x)", "TEMPLATE_RECURSION"),
        ("  T(_a) = _a\n  T(_b) = _b\n", "@(T x)", "DUPLICATE_TEMPLATE"),
    ],
)
def test_template_errors(templates, call, code):
    text = _TEMPLATE_HEAD + "templates:\n" + templates + "lexicon:\n  w V " + call + "\n"
    with pytest.raises(GrammarError) as exc:
        parse_grammar(text)
    assert exc.value.code == code


# ── Aller-retour ────────────────────────────────────────────────────────────


@pytest.mark.parametrize("name", ["german.dg", "german_modal.dg"])
def test_dump_then_load_round_trips(name):
    original = load_grammar(GRAMMARS / name)
    dumped = dump_grammar(original)
    reloaded = load_grammar_text(dumped)
    assert reloaded == original
    assert dump_grammar(reloaded) == dumped


def test_dump_has_no_template_left(german):
    dumped = dump_grammar(german)
    assert "@(" not in dumped
    assert "templates:" not in dumped
    assert "  Vfin: INITIAL/initial ! | MIDDLE/middle * @self * | FINAL/final ? [Vfin]" in dumped.splitlines()
    assert "  hat Vfin lexeme=aux-perfect valency(req SUBJ N) valency(req VPART Vpp) (SUBJ SPEC CASE) =c nom" in (
        dumped.splitlines()
    )
