"""Interface en ligne de commande ``dg``.

Sous-commandes :

    dg parse -g G [PHRASE]        analyse (stdin si PHRASE absente ; --batch : une phrase par ligne)
    dg check -g G                 validation statique de la grammaire
    dg gen -g G [MOT...]          linéarisations engendrées par l'oracle (sans MOT : triplets sur stdin)
    dg xcheck -g G MOT...         analyseur vs oracle sur toutes les permutations
    dg dump-backbone -g G         squelette compilé (--specialized, --annotations)
    dg dump-grammar -g G          grammaire développée (sans gabarits)

Codes de sortie : 0 succès, 1 aucune analyse (ou désaccord xcheck),
2 erreur d'usage / de grammaire / mot inconnu. stdout ne reçoit que les
résultats ; logs, diagnostics et métriques partent sur stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from typing import TextIO

from . import metrics
from .backbone.compiler import compile_domains, expand_metacategories, specialize_domain_union
from .errors import EXIT_NO_PARSE, EXIT_OK, EXIT_USAGE, DgError
from .fstruct.render import render_avm
from .grammar.dump import dump_grammar
from .grammar.loader import load_grammar, parse_grammar
from .grammar.model import Grammar
from .grammar.validate import validate_grammar
from .observability import configure_logging
from .oracle.linearize import enumerate_linearizations, read_dependency_triples
from .oracle.xcheck import cross_validate, generate
from .parser.pipeline import Analysis, AnalysisSet, Parser
from .schema import parse_document
from .settings import settings

logger = logging.getLogger("dg-backbone.cli")


class OutputFormat(StrEnum):
    BRACKETED_C = "bracketed-c"
    AVM = "avm"
    DEP_TRIPLES = "dep-triples"
    DOMAIN_TREE = "domain-tree"
    STRUCTURED_ALL = "structured-all"


@dataclass
class RunConfig:
    command: str
    grammar_path: str | None
    output_format: OutputFormat = OutputFormat.STRUCTURED_ALL
    sentence: str | None = None
    words: list[str] = field(default_factory=list)
    batch: bool = False
    max_unpack: int = 1000
    oracle_bound: int = 8
    specialize: bool = True
    annotations: bool = False
    specialized_dump: bool = False
    show_metrics: bool = False
    workers: int = 4


def build_arg_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-g", "--grammar", dest="grammar_path", default=settings.grammar_path,
                        help="grammar file (default: $DG_GRAMMAR_PATH)")
    common.add_argument("--metrics", action="store_true", help="print Prometheus metrics on stderr at exit")

    parser = argparse.ArgumentParser(prog="dg", description="Word order domain dependency grammar toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_parse = sub.add_parser("parse", parents=[common], help="parse a sentence")
    p_parse.add_argument("sentence", nargs="?", help="sentence (read from stdin when omitted)")
    p_parse.add_argument("--format", dest="output_format", choices=[f.value for f in OutputFormat],
                         default=OutputFormat.STRUCTURED_ALL.value)
    p_parse.add_argument("--batch", action="store_true", help="one sentence per stdin line")
    p_parse.add_argument("--max-unpack", type=int, default=settings.max_unpack)
    p_parse.add_argument("--no-specialize", action="store_true", help="parse with the generic DOMAIN union")
    p_parse.add_argument("--workers", type=int, default=settings.batch_workers)

    sub.add_parser("check", parents=[common], help="validate a grammar")

    for name, text, arity in (("gen", "oracle linearizations", "*"), ("xcheck", "parser vs oracle cross-check", "+")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("words", nargs=arity, help="words of the sentence, in any order")
        p.add_argument("--oracle-bound", type=int, default=settings.oracle_bound)
        p.add_argument("--max-unpack", type=int, default=settings.max_unpack)

    p_dump = sub.add_parser("dump-backbone", parents=[common], help="print the compiled backbone")
    p_dump.add_argument("--annotations", action="store_true")
    p_dump.add_argument("--specialized", action="store_true")

    sub.add_parser("dump-grammar", parents=[common], help="print the grammar with templates expanded")
    return parser


def parse_args(argv: Sequence[str] | None) -> RunConfig:
    args = build_arg_parser().parse_args(argv)
    return RunConfig(
        command=args.command,
        grammar_path=args.grammar_path,
        output_format=OutputFormat(getattr(args, "output_format", OutputFormat.STRUCTURED_ALL.value)),
        sentence=getattr(args, "sentence", None),
        words=list(getattr(args, "words", []) or []),
        batch=getattr(args, "batch", False),
        max_unpack=getattr(args, "max_unpack", settings.max_unpack),
        oracle_bound=getattr(args, "oracle_bound", settings.oracle_bound),
        specialize=not getattr(args, "no_specialize", False) and settings.specialize_backbone,
        annotations=getattr(args, "annotations", False),
        specialized_dump=getattr(args, "specialized", False),
        show_metrics=args.metrics,
        workers=getattr(args, "workers", settings.batch_workers),
    )


# ── Rendu ───────────────────────────────────────────────────────────────────

def render_analysis(analysis: Analysis, fmt: OutputFormat) -> str:
    match fmt:
        case OutputFormat.BRACKETED_C:
            return analysis.c_tree.bracketed()
        case OutputFormat.AVM:
            return render_avm(analysis.f_root)
        case OutputFormat.DEP_TRIPLES:
            return analysis.dep_tree.render()
        case OutputFormat.DOMAIN_TREE:
            return analysis.domain_tree.render()
    raise ValueError(f"not a text format: {fmt}")


def render_result(result: AnalysisSet, fmt: OutputFormat, *, line: int | None = None) -> str:
    if fmt is OutputFormat.STRUCTURED_ALL:
        document = parse_document(result, line=line).model_dump()
        return json.dumps(document, sort_keys=True, ensure_ascii=False)
    blocks = [f"analyses: {len(result.analyses)}"]
    for number, analysis in enumerate(result.analyses, start=1):
        blocks.append(f"# analysis {number}\n{render_analysis(analysis, fmt)}")
    text = "\n".join(blocks)
    if line is not None:
        text = "\n".join(f"{line}\t{row}" for row in text.splitlines())
    return text


# ── Commandes ───────────────────────────────────────────────────────────────

def _grammar(config: RunConfig) -> Grammar:
    if not config.grammar_path:
        raise DgError("USAGE", "no grammar given (-g or DG_GRAMMAR_PATH)")
    return load_grammar(config.grammar_path)


def _cmd_parse(config: RunConfig, stdin: TextIO, stdout: TextIO) -> int:
    parser = Parser(_grammar(config), max_unpack=config.max_unpack, specialize=config.specialize)
    if not config.batch:
        sentence = config.sentence if config.sentence is not None else stdin.read()
        result = parser.analyse(sentence)
        print(render_result(result, config.output_format), file=stdout)
        return EXIT_OK if result.analyses else EXIT_NO_PARSE
    rows = [(number, row.rstrip("\n")) for number, row in enumerate(stdin, start=1) if row.strip()]
    outcomes = parser.analyse_batch(
        [text for _number, text in rows], workers=config.workers, line_numbers=[number for number, _text in rows],
    )
    code = EXIT_OK
    for (number, _text), outcome in zip(rows, outcomes, strict=True):
        if isinstance(outcome, DgError):
            print(f"line {number}: {outcome.to_diagnostic()}", file=sys.stderr)
            code = EXIT_USAGE
            continue
        print(render_result(outcome, config.output_format, line=number), file=stdout)
        if not outcome.analyses and code == EXIT_OK:
            code = EXIT_NO_PARSE
    return code


def _cmd_check(config: RunConfig, stdout: TextIO) -> int:
    if not config.grammar_path:
        raise DgError("USAGE", "no grammar given (-g or DG_GRAMMAR_PATH)")
    with open(config.grammar_path, encoding="utf-8") as handle:
        grammar = parse_grammar(handle.read())
    report = validate_grammar(grammar)
    print(report.render() if report.issues else "ok", file=stdout)
    return EXIT_OK if report.ok else EXIT_USAGE


def _cmd_gen(config: RunConfig, stdin: TextIO, stdout: TextIO) -> int:
    grammar = _grammar(config)
    if config.words:
        found = generate(config.words, grammar, config.oracle_bound)
    else:
        # triplets de dépendances sur stdin (sortie de « parse --format dep-triples »)
        found = {
            lin.surface
            for tree in read_dependency_triples(stdin.read(), grammar)
            for lin in enumerate_linearizations(tree, grammar, config.oracle_bound)
        }
    for surface in sorted(found):
        print(" ".join(surface), file=stdout)
    return EXIT_OK if found else EXIT_NO_PARSE


def _cmd_xcheck(config: RunConfig, stdout: TextIO) -> int:
    grammar = _grammar(config)
    report = cross_validate(config.words, grammar, config.oracle_bound, max_unpack=config.max_unpack)
    print(report.render(), file=stdout)
    return EXIT_OK if report.ok else EXIT_NO_PARSE


def _cmd_dump_backbone(config: RunConfig, stdout: TextIO) -> int:
    grammar = _grammar(config)
    rules = compile_domains(grammar)
    if config.specialized_dump:
        rules = specialize_domain_union(rules, grammar)
    expand_metacategories(rules)
    print(rules.render(annotations=config.annotations), file=stdout)
    return EXIT_OK


def _check_caps(config: RunConfig) -> None:
    for name, value in (("max-unpack", config.max_unpack), ("oracle-bound", config.oracle_bound),
                        ("workers", config.workers)):
        if value <= 0:
            raise DgError("USAGE", f"--{name} must be positive, got {value}")


def run(config: RunConfig, *, stdin: TextIO | None = None, stdout: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    try:
        _check_caps(config)
        match config.command:
            case "parse":
                return _cmd_parse(config, stdin, stdout)
            case "check":
                return _cmd_check(config, stdout)
            case "gen":
                return _cmd_gen(config, stdin, stdout)
            case "xcheck":
                return _cmd_xcheck(config, stdout)
            case "dump-backbone":
                return _cmd_dump_backbone(config, stdout)
            case "dump-grammar":
                stdout.write(dump_grammar(_grammar(config)))
                return EXIT_OK
        raise DgError("USAGE", f"unknown command {config.command}")
    except DgError as exc:
        print(exc.to_diagnostic(), file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error[IO]: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if config.show_metrics and settings.metrics_enabled:
            sys.stderr.write(metrics.render())


def main(argv: Sequence[str] | None = None) -> int:
    configure_logging(settings.log_format, settings.log_level)
    return run(parse_args(argv))
