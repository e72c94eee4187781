"""Chaîne d'analyse complète : tokens → c-structures → f-structures → ordre.

``Parser`` lie une grammaire à son squelette compilé (fait une seule fois) et
expose ``analyse`` pour une phrase, ``analyse_batch`` pour un lot traité par
un pool de threads. Le résultat est ordonné de façon déterministe.
"""
from __future__ import annotations

import logging
import time
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .. import metrics
from ..backbone.compiler import build_backbone
from ..errors import DgError, UnknownTokenError
from ..fstruct.nodes import FNode, canonical
from ..grammar.model import Grammar
from ..observability import sentence_context
from ..order.checks import Violation, check_order
from ..order.deptree import DepTree, derive_dependency_tree
from ..order.domains import DomainTree, extract_domain_structure
from ..settings import settings
from .cfg import flatten_backbone
from .chart import CNode, parse_backbone
from .solver import Solver

logger = logging.getLogger("dg-backbone.pipeline")


@dataclass(frozen=True)
class Analysis:
    c_tree: CNode
    f_root: FNode
    domain_tree: DomainTree
    dep_tree: DepTree
    resolved: tuple[tuple[int, tuple[str, ...]], ...]


@dataclass
class AnalysisSet:
    sentence: str
    tokens: tuple[str, ...]
    analyses: list[Analysis] = field(default_factory=list)
    rejected: list[tuple[Analysis, list[Violation]]] = field(default_factory=list)
    c_tree_count: int = 0
    truncated: bool = False


def tokenize(sentence: str) -> tuple[str, ...]:
    return tuple(sentence.split())


class Parser:
    def __init__(self, grammar: Grammar, *, max_unpack: int | None = None, specialize: bool | None = None):
        self.grammar = grammar
        self.max_unpack = max_unpack if max_unpack is not None else settings.max_unpack
        self.specialize = specialize if specialize is not None else settings.specialize_backbone
        self.backbone = build_backbone(grammar, specialize=self.specialize)
        self.cfg = flatten_backbone(self.backbone)
        self.solver = Solver(grammar)

    def _check_lexicon(self, tokens: Sequence[str]) -> None:
        for position, token in enumerate(tokens):
            if not self.grammar.entries_for(token):
                raise UnknownTokenError(token, position)

    def analyse(self, sentence: str) -> AnalysisSet:
        started = time.monotonic()
        tokens = tokenize(sentence)
        self._check_lexicon(tokens)
        result = AnalysisSet(sentence, tokens)
        parse = parse_backbone(tokens, self.cfg, self.grammar, max_unpack=self.max_unpack)
        result.c_tree_count = len(parse.trees)
        result.truncated = parse.truncated
        if parse.truncated:
            metrics.unpack_truncated_inc()
        seen: set[tuple] = set()
        for tree in parse.trees:
            for solution in self.solver.solve(tree):
                dep = derive_dependency_tree(solution.fstructure, tokens)
                domains = extract_domain_structure(tree)
                analysis = Analysis(tree, solution.fstructure, domains, dep, solution.resolved)
                violations = check_order(domains, dep, self.grammar)
                if violations:
                    result.rejected.append((analysis, violations))
                    logger.debug("analysis rejected: %s", "; ".join(str(v) for v in violations))
                    continue
                key = (tree.signature(), canonical(solution.fstructure))
                if key not in seen:
                    seen.add(key)
                    result.analyses.append(analysis)
        result.analyses.sort(key=lambda a: (a.c_tree.signature(), repr(canonical(a.f_root))))
        status = "parsed" if result.analyses else "no_parse"
        metrics.observe_sentence(status=status, analyses=len(result.analyses), duration_seconds=time.monotonic() - started)
        logger.info(
            "%d token(s), %d c-structure(s), %d analysis(es), %d rejected",
            len(tokens), result.c_tree_count, len(result.analyses), len(result.rejected),
        )
        return result

    def analyse_batch(self, sentences: Iterable[str], *, workers: int | None = None,
                      line_numbers: Sequence[int] | None = None) -> list[AnalysisSet | DgError]:
        """Une entrée par phrase, dans l'ordre ; une erreur attendue est renvoyée, pas levée.

        ``line_numbers`` sert d'identifiant de corrélation dans les logs (1, 2, ... par défaut).
        """
        sentences = list(sentences)
        items = list(zip(line_numbers or range(1, len(sentences) + 1), sentences, strict=True))

        def run(item: tuple[int, str]) -> AnalysisSet | DgError:
            number, sentence = item
            with sentence_context(str(number)):
                try:
                    return self.analyse(sentence)
                except DgError as exc:
                    metrics.observe_sentence(status="error", analyses=0, duration_seconds=0.0)
                    logger.warning("sentence %d: %s", number, exc.message)
                    return exc

        with ThreadPoolExecutor(max_workers=workers or settings.batch_workers) as pool:
            return list(pool.map(run, items))


def analyses(sentence: str, grammar: Grammar, *, max_unpack: int | None = None,
             specialize: bool | None = None) -> list[Analysis]:
    return Parser(grammar, max_unpack=max_unpack, specialize=specialize).analyse(sentence).analyses
