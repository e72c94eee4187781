"""Résolution fonctionnelle des c-structures (dgbackbone/parser/solver.py)."""

import pytest

from dgbackbone.fstruct.paths import path_matches
from dgbackbone.fstruct.render import render_avm
from dgbackbone.parser.chart import parse_backbone
from dgbackbone.parser.pipeline import tokenize
from dgbackbone.parser.solver import Solver, collect_skeleton, modifier_language
from tests.dg_utils import EXAMPLE_1, golden


@pytest.fixture(scope="module")
def reference_tree(german, parser):
    trees = parse_backbone(tokenize(EXAMPLE_1), parser.cfg, german).trees
    (tree,) = [t for t in trees if t.bracketed() == golden("cstructure_example1.txt")]
    return tree


def test_skeleton_of_reference_tree(reference_tree):
    skeleton = collect_skeleton(reference_tree)
    assert len(skeleton.words) == 7
    # PROPO (hat), Mann, Junge, gesehen, den, der
    assert len(skeleton.placements) == 6
    assert skeleton.var_count == 7
    head_word = skeleton.head_word
    assert head_word[0] == 6
    # les trois slots de hat partagent une seule variable
    hat_vars = {w.var for w in skeleton.words if w.node.token == "hat"}
    (hat_var,) = hat_vars
    (propo,) = [p for p in skeleton.placements if p.var == hat_var]
    assert propo.anchor == 0


def test_field_labels_recorded_on_placements(reference_tree):
    skeleton = collect_skeleton(reference_tree)
    by_word = {skeleton.head_word[p.var]: p for p in skeleton.placements}
    assert by_word[1].field_label == "initial"
    assert by_word[4].field_label == "middle"
    assert by_word[0].field_label is None


def test_reference_tree_has_one_fstructure(german, reference_tree):
    (solution,) = Solver(german).solve(reference_tree)
    assert render_avm(solution.fstructure) == golden("fstructure_example1.txt")
    assert dict(solution.resolved) == {
        0: ("SPEC",),
        1: ("VPART", "OBJ"),
        2: ("PROPO",),
        3: ("SPEC",),
        4: ("SUBJ",),
        5: ("VPART",),
    }


def test_missing_subject_gives_no_solution(german, parser):
    trees = parse_backbone(tokenize("den Mann hat gesehen ."), parser.cfg, german).trees
    assert trees
    solver = Solver(german)
    assert all(solver.solve(t) == [] for t in trees)


def test_government_rules_out_wrong_case(german, parser):
    # "den Junge" ne peut pas être sujet : CASE acc, =c nom attendu
    trees = parse_backbone(tokenize("der Mann hat den Junge gesehen ."), parser.cfg, german).trees
    solver = Solver(german)
    solutions = [s for t in trees for s in solver.solve(t)]
    assert solutions
    for solution in solutions:
        subj = solution.fstructure.get("PROPO").deref().get("SUBJ").deref()
        assert subj.get("LEXEME") == "mann"


@pytest.mark.parametrize(
    "path, accepted",
    [
        (("SUBJ",), True),
        (("OBJ",), True),
        (("VPART", "OBJ"), True),
        (("VPART", "VPART", "OBJ"), True),
        (("SUBJ", "OBJ", "RELA"), True),
        (("PROPO",), True),
        (("OBJ", "VPART"), False),
        (("PROPO", "RELA"), False),
        ((), False),
    ],
)
def test_modifier_language(german, path, accepted):
    assert path_matches(modifier_language(german), path) is accepted
