"""Chaîne complète (dgbackbone/parser/pipeline.py) sur les phrases de référence.

Références figées : tests/golden/cstructure_example1.txt et
tests/golden/fstructure_example1.txt.
"""

import pytest

from dgbackbone import metrics
from dgbackbone.errors import DgError, SolverInvariantError, UnknownTokenError
from dgbackbone.fstruct.nodes import fstruct_from
from dgbackbone.fstruct.render import render_avm
from dgbackbone.order.checks import ViolationCode, check_order
from dgbackbone.order.deptree import derive_dependency_tree
from dgbackbone.order.domains import extract_domain_structure
from dgbackbone.parser.pipeline import AnalysisSet, Parser, analyses, tokenize
from tests.dg_utils import EXAMPLE_1, MODAL_SENTENCE, golden


def test_tokenize_splits_on_whitespace():
    assert tokenize("  den Mann\that \n") == ("den", "Mann", "hat")
    assert tokenize("") == ()


def test_reference_cstructure(example_1):
    assert example_1.c_tree.bracketed() == golden("cstructure_example1.txt")


def test_reference_fstructure(example_1):
    assert render_avm(example_1.f_root) == golden("fstructure_example1.txt")


def test_reference_dependency_tree(example_1):
    assert example_1.dep_tree.render() == "\n".join([
        "root 6:.",
        "1:Mann SPEC 0:den",
        "5:gesehen OBJ 1:Mann",
        "6:. PROPO 2:hat",
        "4:Junge SPEC 3:der",
        "2:hat SUBJ 4:Junge",
        "2:hat VPART 5:gesehen",
    ])


def test_reference_domain_tree(example_1):
    assert example_1.domain_tree.render() == "\n".join([
        "d1 domI owner=.",
        "  d2 domINITIAL/initial owner=hat",
        "    d3 domN owner=Mann",
        "      d4 domD owner=den",
        "        den",
        "      Mann",
        "  d5 domMIDDLE/middle owner=hat",
        "    hat",
        "    d6 domN owner=Junge",
        "      d7 domD owner=der",
        "        der",
        "      Junge",
        "    d8 domVpp owner=gesehen",
        "      gesehen",
        "  d9 domFINAL/final owner=hat",
        "  .",
    ])


def test_object_floats_through_vpart(example_1):
    assert dict(example_1.resolved)[1] == ("VPART", "OBJ")


def test_no_metacategory_node_survives(example_1):
    assert all(node.category.name != "domVfin" for node in example_1.c_tree.walk())


def test_reference_analysis_passes_order_checks(german, example_1):
    assert check_order(example_1.domain_tree, example_1.dep_tree, german) == []


def test_modal_object_floats_two_levels(modal_parser):
    (analysis,) = modal_parser.analyse(MODAL_SENTENCE).analyses
    assert dict(analysis.resolved)[1] == ("VPART", "VPART", "OBJ")


def test_same_dependencies_different_placements(parser):
    result = parser.analyse("der Junge hat den Mann gesehen .")
    assert len(result.analyses) == 2
    first, second = result.analyses
    assert first.dep_tree.render() == second.dep_tree.render()
    assert first.c_tree.signature() != second.c_tree.signature()


@pytest.mark.parametrize(
    "sentence, code",
    [
        ("den Mann der Junge hat gesehen .", ViolationCode.PRED_SELF_FIRST),
        ("den Mann hat gesehen der Junge .", ViolationCode.PRED_DEP_ORDER),
        ("Mann den hat der Junge gesehen .", ViolationCode.PRED_SELF_LAST),
    ],
)
def test_order_violations_reject_analyses(parser, sentence, code):
    result = parser.analyse(sentence)
    assert result.analyses == []
    assert result.rejected
    assert any(v.code is code for _analysis, violations in result.rejected for v in violations)


def test_verb_after_middle_field_is_rejected(parser):
    result = parser.analyse("der Junge den Mann hat gesehen .")
    assert result.analyses == []


def test_unknown_token_names_token_and_position(parser):
    with pytest.raises(UnknownTokenError) as exc:
        parser.analyse("den Hund hat .")
    assert exc.value.token == "Hund"
    assert exc.value.position == 1
    assert exc.value.exit_code == 2
    assert "Hund" in exc.value.to_diagnostic()


def test_empty_sentence_has_no_analysis(parser):
    result = parser.analyse("")
    assert result.analyses == [] and result.c_tree_count == 0


def test_repeated_analysis_is_identical(parser):
    first = parser.analyse(EXAMPLE_1)
    second = parser.analyse(EXAMPLE_1)
    assert [a.c_tree.signature() for a in first.analyses] == [a.c_tree.signature() for a in second.analyses]
    assert [render_avm(a.f_root) for a in first.analyses] == [render_avm(a.f_root) for a in second.analyses]


def test_functional_entry_point(german):
    assert len(analyses(EXAMPLE_1, german)) == 1


# ── Lots ────────────────────────────────────────────────────────────────────


def test_batch_keeps_order_and_returns_errors(parser):
    results = parser.analyse_batch([EXAMPLE_1, "den Hund", "den den", EXAMPLE_1], workers=3)
    assert len(results) == 4
    assert isinstance(results[0], AnalysisSet) and len(results[0].analyses) == 1
    assert isinstance(results[1], DgError) and results[1].code == "UNKNOWN_TOKEN"
    assert isinstance(results[2], AnalysisSet) and results[2].analyses == []
    assert results[3].sentence == EXAMPLE_1


def test_metrics_count_outcomes(parser):
    parsed = metrics.sample("dg_sentences_total", {"status": "parsed"})
    failed = metrics.sample("dg_sentences_total", {"status": "no_parse"})
    errors = metrics.sample("dg_sentences_total", {"status": "error"})
    parser.analyse_batch([EXAMPLE_1, "den den", "Hund"], workers=1)
    assert metrics.sample("dg_sentences_total", {"status": "parsed"}) == parsed + 1
    assert metrics.sample("dg_sentences_total", {"status": "no_parse"}) == failed + 1
    assert metrics.sample("dg_sentences_total", {"status": "error"}) == errors + 1


def test_truncation_is_counted(german):
    before = metrics.sample("dg_unpack_truncated_total")
    result = Parser(german, max_unpack=1).analyse("der Junge hat den Mann gesehen .")
    assert result.truncated
    assert metrics.sample("dg_unpack_truncated_total") == before + 1


# ── Extraction des structures ───────────────────────────────────────────────


def test_structures_rebuilt_from_the_analysis(example_1):
    assert derive_dependency_tree(example_1.f_root, EXAMPLE_1.split()).render() == example_1.dep_tree.render()
    assert extract_domain_structure(example_1.c_tree).render() == example_1.domain_tree.render()


def test_dependency_needs_indexed_words():
    root = fstruct_from({"CLASS": "I", "LEXEME": "full-stop", "INDEX": "0", "PROPO": {"CLASS": "Vfin"}})
    with pytest.raises(SolverInvariantError):
        derive_dependency_tree(root, ["."])
