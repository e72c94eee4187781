"""Helpers partagés des tests : chemins, phrases de référence, arbres faits main."""

from pathlib import Path

from dgbackbone.order.deptree import DepEdge, DepTree, Word
from dgbackbone.order.domains import Domain

ROOT = Path(__file__).resolve().parent.parent
GRAMMARS = ROOT / "config" / "grammars"
GOLDEN = Path(__file__).resolve().parent / "golden"

EXAMPLE_1 = "den Mann hat der Junge gesehen ."
MODAL_SENTENCE = "den Mann will der Junge gesehen haben ."
EXAMPLE_1_WORDS = tuple(EXAMPLE_1.split())

# Accept set de l'exemple (1) sur ses 5040 permutations, figé après accord analyseur/oracle.
EXAMPLE_1_PERMUTATIONS_ACCEPTED = 10


def golden(name: str) -> str:
    return (GOLDEN / name).read_text(encoding="utf-8").rstrip("\n")


def words(sentence: str, classes: str) -> list[Word]:
    """``words("den Mann", "D N")`` -> mots indexés par position."""
    return [Word(i, s, c) for i, (s, c) in enumerate(zip(sentence.split(), classes.split(), strict=True))]


def dep_tree(ws: list[Word], root: int, *triples: tuple[int, str, int]) -> DepTree:
    return DepTree(ws[root], tuple(DepEdge(ws[h], d, ws[m]) for h, d, m in triples))


def domain(ident: int, category: str, slot: str, start: int, end: int, owner: Word,
           *, field_label: str | None = None, holds_self: bool = False,
           parent: Domain | None = None) -> Domain:
    made = Domain(ident, category, slot, field_label, holds_self, start, end, owner=owner, parent=parent)
    if parent is not None:
        parent.items.append(made)
    return made
