"""Unification des f-structures (dgbackbone/fstruct/nodes.py).

Cas unitaires (conflits, réentrance, cycles, entrées intactes) puis propriétés
algébriques sur des triplets aléatoires à graine fixe : commutativité,
associativité (à isomorphisme près), idempotence, subsomption des arguments.
"""

import random

import pytest

from dgbackbone.fstruct.nodes import (
    FNode,
    UnificationFailure,
    arc_count,
    canonical,
    copy_graph,
    find_cycle,
    follow,
    fstruct_from,
    isomorphic,
    iter_paths,
    node_count,
    subsumes,
    unify,
)

# ── Cas unitaires ───────────────────────────────────────────────────────────


def test_unify_merges_disjoint_information():
    a = fstruct_from({"CLASS": "N", "SPEC": {"CASE": "acc"}})
    b = fstruct_from({"LEXEME": "mann", "SPEC": {"CLASS": "D"}})
    result = unify(a, b)
    assert isinstance(result, FNode)
    assert follow(result, ("SPEC", "CASE")) == "acc"
    assert follow(result, ("SPEC", "CLASS")) == "D"
    assert follow(result, ("LEXEME",)) == "mann"


def test_atom_clash_is_a_value_with_its_path():
    a = fstruct_from({"SUBJ": {"CASE": "nom"}})
    b = fstruct_from({"SUBJ": {"CASE": "acc"}})
    failure = unify(a, b)
    assert isinstance(failure, UnificationFailure)
    assert failure.path == ("SUBJ", "CASE")
    assert "nom" in failure.reason and "acc" in failure.reason


def test_atom_against_complex_value_fails():
    failure = unify(fstruct_from({"OBJ": "x"}), fstruct_from({"OBJ": {"CLASS": "N"}}))
    assert isinstance(failure, UnificationFailure)
    assert failure.path == ("OBJ",)


def test_inputs_are_left_untouched():
    a = fstruct_from({"F": {"G": "a"}})
    b = fstruct_from({"F": {"H": "b"}})
    before_a, before_b = canonical(a), canonical(b)
    unify(a, b)
    assert canonical(a) == before_a
    assert canonical(b) == before_b


def test_reentrancy_propagates_information():
    shared = FNode({"CLASS": "N"})
    a = FNode({"SUBJ": shared, "TOPIC": shared})
    b = fstruct_from({"TOPIC": {"LEXEME": "junge"}})
    result = unify(a, b)
    assert follow(result, ("SUBJ", "LEXEME")) == "junge"
    assert result.get("SUBJ") is result.get("TOPIC")


def test_cycle_is_rejected():
    shared = FNode()
    a = FNode({"F": shared, "G": shared})
    inner = FNode()
    b = FNode({"F": inner, "G": FNode({"H": inner})})
    failure = unify(a, b)
    assert isinstance(failure, UnificationFailure)
    assert failure.reason == "cycle"


def test_find_cycle_reports_path():
    root = FNode()
    child = FNode()
    root.arcs["F"] = child
    child.arcs["G"] = root
    assert find_cycle(root) == ("F", "G")
    assert find_cycle(fstruct_from({"F": {"G": "a"}})) is None


def test_copy_graph_preserves_sharing_across_roots():
    shared = FNode({"X": "1"})
    a = FNode({"F": shared})
    b = FNode({"G": shared})
    ca, cb = copy_graph(a, b)
    assert ca.get("F") is cb.get("G")
    assert ca.get("F") is not shared


def test_canonical_distinguishes_sharing_from_copies():
    shared = FNode({"X": "1"})
    tied = FNode({"F": shared, "G": shared})
    untied = fstruct_from({"F": {"X": "1"}, "G": {"X": "1"}})
    assert not isomorphic(tied, untied)
    assert subsumes(untied, tied)
    assert not subsumes(tied, untied)


def test_counts_and_paths():
    root = fstruct_from({"A": {"B": "x", "C": {"D": "y"}}, "E": "z"})
    assert node_count(root) == 3
    assert arc_count(root) == 5
    assert set(iter_paths(root)) == {("A",), ("A", "B"), ("A", "C"), ("A", "C", "D"), ("E",)}


# ── Propriétés algébriques ──────────────────────────────────────────────────

_ATTRS = ("F", "G", "H")
_ATOMS = ("a", "b")


def _random_avm(rng: random.Random, depth: int = 3) -> FNode:
    """AVM acyclique ; partage occasionnel d'un sous-nœud entre deux attributs.

    Seuls les nœuds déjà terminés peuvent être partagés : un nœud terminé ne
    mène qu'à des nœuds terminés, jamais à un ancêtre en construction.
    """
    done: list[FNode] = []

    def build(level: int) -> FNode:
        node = FNode()
        for attr in _ATTRS:
            roll = rng.random()
            if roll < 0.35:
                continue
            if roll < 0.65 or level == depth:
                node.arcs[attr] = rng.choice(_ATOMS)
            elif roll < 0.75 and done:
                node.arcs[attr] = rng.choice(done)
            else:
                node.arcs[attr] = build(level + 1)
        done.append(node)
        return node

    root = build(0)
    assert find_cycle(root) is None
    return root


def test_random_avms_are_acyclic():
    rng = random.Random(7)
    for _ in range(2000):
        assert find_cycle(_random_avm(rng, depth=4)) is None


def _same(x, y) -> bool:
    if isinstance(x, UnificationFailure) or isinstance(y, UnificationFailure):
        return isinstance(x, UnificationFailure) and isinstance(y, UnificationFailure)
    return isomorphic(x, y)


def _join(x, y):
    if isinstance(x, UnificationFailure):
        return x
    if isinstance(y, UnificationFailure):
        return y
    return unify(x, y)


def _check_triples(count: int, seed: int) -> None:
    rng = random.Random(seed)
    for _ in range(count):
        a, b, c = _random_avm(rng), _random_avm(rng), _random_avm(rng)
        ab = unify(a, b)
        assert _same(ab, unify(b, a))
        assert _same(_join(ab, c), _join(a, unify(b, c)))
        assert isomorphic(unify(a, a), a)
        if isinstance(ab, FNode):
            assert subsumes(a, ab)
            assert subsumes(b, ab)
            assert find_cycle(ab) is None


def test_unification_algebra_sample():
    _check_triples(300, seed=7)


@pytest.mark.slow
def test_unification_algebra_10k_triples():
    _check_triples(10_000, seed=20240601)
