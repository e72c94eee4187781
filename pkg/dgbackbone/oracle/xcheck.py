"""Validation croisée analyseur / oracle sur toutes les permutations d'un multiensemble de mots."""
from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass

from ..errors import OracleBoundError
from ..grammar.model import Grammar
from ..parser.pipeline import Parser
from .linearize import enumerate_dependency_trees, enumerate_linearizations

logger = logging.getLogger("dg-backbone.oracle")


@dataclass(frozen=True)
class XcheckReport:
    words: tuple[str, ...]
    parser_accepted: frozenset[tuple[str, ...]]
    oracle_generated: frozenset[tuple[str, ...]]

    @property
    def only_parser(self) -> tuple[tuple[str, ...], ...]:
        return tuple(sorted(self.parser_accepted - self.oracle_generated))

    @property
    def only_oracle(self) -> tuple[tuple[str, ...], ...]:
        return tuple(sorted(self.oracle_generated - self.parser_accepted))

    @property
    def ok(self) -> bool:
        return self.parser_accepted == self.oracle_generated

    def render(self) -> str:
        lines = [
            f"words: {' '.join(self.words)}",
            f"parser-accepted: {len(self.parser_accepted)}",
            f"oracle-generated: {len(self.oracle_generated)}",
        ]
        lines += ["+ " + " ".join(s) for s in sorted(self.parser_accepted & self.oracle_generated)]
        lines += ["parser-only " + " ".join(s) for s in self.only_parser]
        lines += ["oracle-only " + " ".join(s) for s in self.only_oracle]
        lines.append("result: " + ("agree" if self.ok else "DISAGREE"))
        return "\n".join(lines)


def generate(words: Sequence[str], g: Grammar, bound: int) -> frozenset[tuple[str, ...]]:
    """Toutes les suites de surface que l'oracle engendre pour ce multiensemble."""
    if len(words) > bound:
        raise OracleBoundError(len(words), bound)
    out: set[tuple[str, ...]] = set()
    for tree in enumerate_dependency_trees(words, g):
        out.update(lin.surface for lin in enumerate_linearizations(tree, g, bound))
    return frozenset(out)


def cross_validate(words: Sequence[str], g: Grammar, bound: int, *, max_unpack: int | None = None,
                   parser: Parser | None = None) -> XcheckReport:
    if len(words) > bound:
        raise OracleBoundError(len(words), bound)
    parser = parser or Parser(g, max_unpack=max_unpack)
    accepted = set()
    for perm in sorted(set(itertools.permutations(words))):
        if parser.analyse(" ".join(perm)).analyses:
            accepted.add(perm)
    generated = generate(words, g, bound)
    report = XcheckReport(tuple(words), frozenset(accepted), generated)
    logger.info("xcheck: %d accepted, %d generated, agree=%s", len(accepted), len(generated), report.ok)
    return report
