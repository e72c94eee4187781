"""Validation croisée analyseur / oracle (dgbackbone/oracle/xcheck.py)."""

import pytest

from dgbackbone.errors import OracleBoundError
from dgbackbone.grammar import load_grammar_text
from dgbackbone.oracle.xcheck import XcheckReport, cross_validate
from tests.dg_utils import EXAMPLE_1_PERMUTATIONS_ACCEPTED, EXAMPLE_1_WORDS

TOY = """
root: V
classes: V N
deps: SUBJ OBJ
domains:
  V: * @self *
  N: @self
predicates:
{predicates}
paths:
  SUBJ
  OBJ
lexicon:
  sieht V valency(req SUBJ N) valency(req OBJ N)
  Hans N
  Maria N
"""


@pytest.mark.parametrize(
    "predicates, expected",
    [
        ("", 6),
        ("  V self-first", 2),
        ("  V SUBJ < OBJ\n  V self-last", 2),
    ],
)
def test_toy_grammar_agrees(predicates, expected):
    g = load_grammar_text(TOY.format(predicates=predicates))
    report = cross_validate(["Hans", "Maria", "sieht"], g, bound=8)
    assert report.ok
    assert len(report.parser_accepted) == expected
    assert report.only_parser == () and report.only_oracle == ()


def test_report_rendering():
    report = XcheckReport(("a", "b"), frozenset({("a", "b"), ("b", "a")}), frozenset({("a", "b")}))
    assert not report.ok
    assert report.only_parser == (("b", "a"),)
    assert report.render() == "\n".join([
        "words: a b",
        "parser-accepted: 2",
        "oracle-generated: 1",
        "+ a b",
        "parser-only b a",
        "result: DISAGREE",
    ])


def test_bound_checked_before_any_parse(german):
    with pytest.raises(OracleBoundError):
        cross_validate(EXAMPLE_1_WORDS, german, bound=4)


def test_reusing_a_parser(german, parser):
    report = cross_validate(["den", "Mann"], german, bound=8, parser=parser)
    assert report.ok
    assert report.parser_accepted == frozenset()
    assert report.render().endswith("result: agree")


@pytest.mark.slow
def test_example_permutations_agree(german, parser):
    report = cross_validate(EXAMPLE_1_WORDS, german, bound=8, parser=parser)
    assert report.ok, report.render()
    assert len(report.parser_accepted) == EXAMPLE_1_PERMUTATIONS_ACCEPTED


def test_unparsable_multiset_is_empty_on_both_sides(german, parser):
    report = cross_validate(["den", "der", "."], german, bound=8, parser=parser)
    assert report.ok
    assert report.parser_accepted == frozenset() == report.oracle_generated


def test_single_word_agrees():
    g = load_grammar_text("root: I\nclasses: I\ndomains:\n  I: @self\nlexicon:\n  . I\n")
    report = cross_validate(["."], g, bound=8)
    assert report.ok
    assert report.parser_accepted == frozenset({(".",)}) == report.oracle_generated
