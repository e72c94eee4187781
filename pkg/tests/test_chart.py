"""Grammaire plate et analyse Earley du squelette (dgbackbone/parser/cfg.py, chart.py)."""

import logging

import pytest

from dgbackbone.backbone import build_backbone
from dgbackbone.parser.cfg import ProductionKind, flatten_backbone
from dgbackbone.parser.chart import parse_backbone
from dgbackbone.parser.pipeline import tokenize
from tests.dg_utils import EXAMPLE_1, golden


@pytest.fixture(scope="module")
def plain_cfg(german):
    return flatten_backbone(build_backbone(german, specialize=False))


def test_flattening_introduces_repeat_symbols(plain_cfg):
    repeats = [p for p in plain_cfg.productions if p.kind is ProductionKind.REPEAT]
    assert repeats
    assert all("#" in p.lhs for p in repeats)
    assert any(p.lhs.startswith("DOMAIN*#") for p in repeats)
    assert any(p.lhs.startswith("DOMAIN?#") for p in repeats)


def test_terminals_and_nullables(plain_cfg):
    assert plain_cfg.terminals == {"Vfin", "Vpp", "N", "D", "I"}
    assert plain_cfg.start == "domI"
    assert "domFINAL" in plain_cfg.nullable
    assert "domVpp" not in plain_cfg.nullable
    assert all(p.lhs in plain_cfg.nullable for p in plain_cfg.productions if p.kind is ProductionKind.REPEAT)


def test_union_alternatives_are_flattened(plain_cfg):
    unions = {p.rhs for p in plain_cfg.productions if p.kind is ProductionKind.UNION}
    assert ("domINITIAL", "domMIDDLE", "domFINAL") in unions
    assert ("domD",) in unions


def test_example_forest_contains_reference_tree(german, parser):
    result = parse_backbone(tokenize(EXAMPLE_1), parser.cfg, german)
    assert result.accepted
    assert not result.truncated
    assert golden("cstructure_example1.txt") in [t.bracketed() for t in result.trees]


def test_preterminals_carry_their_entries(german, parser):
    result = parse_backbone(tokenize(EXAMPLE_1), parser.cfg, german)
    for tree in result.trees:
        for node in tree.walk():
            if node.is_preterminal:
                assert node.entry is not None
                assert node.entry.surface == node.token
                assert node.span == (node.start, node.start + 1)


def test_same_input_same_trees(german, parser):
    first = parse_backbone(tokenize(EXAMPLE_1), parser.cfg, german)
    second = parse_backbone(tokenize(EXAMPLE_1), parser.cfg, german)
    assert [t.signature() for t in first.trees] == [t.signature() for t in second.trees]
    assert all("\n" not in t.signature() for t in first.trees)


@pytest.mark.parametrize("sentence", ["", "den den", "den Mann hat der Junge gesehen", ". ."])
def test_rejected_token_sequences(german, parser, sentence):
    result = parse_backbone(tokenize(sentence), parser.cfg, german)
    assert result.trees == []
    assert not result.accepted


def test_unpacking_is_bounded(german, parser):
    tokens = tokenize("der Junge hat den Mann gesehen .")
    full = parse_backbone(tokens, parser.cfg, german, max_unpack=1000)
    assert len(full.trees) >= 2
    assert not full.truncated
    capped = parse_backbone(tokens, parser.cfg, german, max_unpack=1)
    assert len(capped.trees) == 1
    assert capped.truncated
    assert capped.accepted


def test_truncation_is_logged(german, parser, caplog):
    tokens = tokenize("der Junge hat den Mann gesehen .")
    with caplog.at_level(logging.WARNING, logger="dg-backbone"):
        parse_backbone(tokens, parser.cfg, german, max_unpack=1)
    assert any("truncated at 1 trees" in r.getMessage() for r in caplog.records)
