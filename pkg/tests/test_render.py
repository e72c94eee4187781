"""Rendu des f-structures (dgbackbone/fstruct/render.py)."""

from dgbackbone.fstruct.nodes import FNode, fstruct_from
from dgbackbone.fstruct.render import render_avm, to_document


def test_avm_orders_reserved_attributes_first():
    root = fstruct_from({"CASE": "acc", "INDEX": "0", "LEXEME": "den", "CLASS": "D"})
    assert render_avm(root) == "[CLASS D\n LEXEME den\n INDEX 0\n CASE acc]"


def test_avm_nests_with_aligned_columns():
    root = fstruct_from({"CLASS": "N", "SPEC": {"CLASS": "D", "CASE": "nom"}})
    assert render_avm(root) == (
        "[CLASS N\n"
        " SPEC [CLASS D\n"
        "       CASE nom]]"
    )


def test_avm_tags_reentrant_nodes():
    shared = FNode({"CLASS": "N"})
    root = FNode({"OBJ": shared, "TOPIC": shared})
    assert render_avm(root) == (
        "[OBJ #1[CLASS N]\n"
        " TOPIC #1]"
    )


def test_empty_structure():
    assert render_avm(FNode()) == "[]"


def test_document_numbers_nodes_depth_first_and_keeps_sharing():
    shared = FNode({"CLASS": "N"})
    root = FNode({"CLASS": "Vfin", "SUBJ": shared, "TOPIC": shared})
    document = to_document(root)
    assert document == {
        "root": 0,
        "nodes": [
            {"id": 0, "atoms": {"CLASS": "Vfin"}, "links": {"SUBJ": 1, "TOPIC": 1}},
            {"id": 1, "atoms": {"CLASS": "N"}, "links": {}},
        ],
    }
