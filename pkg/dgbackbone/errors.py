"""Erreurs métier du moteur, convertibles en diagnostic CLI.

Même contrat que les erreurs du proxy : chaque erreur porte un ``code`` stable
(exploitable par les scripts de test) et un code de sortie ; la CLI n'affiche
jamais une trace Python brute pour une erreur attendue (grammaire invalide,
mot inconnu, borne de l'oracle dépassée).

Les échecs d'unification et les violations d'ordre ne sont PAS des
exceptions : ce sont des valeurs (cf. ``fstruct.nodes.UnificationFailure`` et
``order.checks.Violation``).
"""
from __future__ import annotations

from dataclasses import dataclass

EXIT_OK = 0
EXIT_NO_PARSE = 1
EXIT_USAGE = 2


class DgError(Exception):
    """Erreur métier, convertible en diagnostic lisible + code de sortie."""

    exit_code = EXIT_USAGE

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message

    def to_diagnostic(self) -> str:
        return f"error[{self.code}]: {self.message}"


@dataclass(frozen=True)
class Issue:
    """One grammar diagnostic; ``severity`` is ``error`` or ``warning``."""

    severity: str
    code: str
    location: str
    message: str
    line: int | None = None

    def render(self) -> str:
        return f"{self.severity}[{self.code}] {self.location}: {self.message}"


class GrammarError(DgError):
    """Grammaire illisible ou invalide (syntaxe, référence, doublon)."""

    def __init__(
        self,
        code: str,
        message: str,
        *,
        line: int | None = None,
        column: int | None = None,
        issues: tuple[Issue, ...] = (),
    ):
        super().__init__(code, message)
        self.line = line
        self.column = column
        self.issues = issues

    def to_diagnostic(self) -> str:
        where = ""
        if self.line is not None:
            where = f" (line {self.line}" + (f", column {self.column})" if self.column is not None else ")")
        lines = [f"error[{self.code}]: {self.message}{where}"]
        lines.extend(f"  {issue.render()}" for issue in self.issues)
        return "\n".join(lines)


class MetacategoryCycleError(GrammarError):
    def __init__(self, chain: list[str]):
        super().__init__("METACATEGORY_CYCLE", "cyclic metacategory definition: " + " -> ".join(chain))
        self.chain = chain


class TokenizationError(DgError):
    def __init__(self, message: str, *, position: int | None = None):
        super().__init__("TOKENIZATION", message)
        self.position = position


class UnknownTokenError(TokenizationError):
    """Mot absent du lexique ; ``position`` est l'index du token (base 0)."""

    def __init__(self, token: str, position: int):
        super().__init__(f"unknown token {token!r} at position {position}", position=position)
        self.code = "UNKNOWN_TOKEN"
        self.token = token


class OracleBoundError(DgError):
    def __init__(self, size: int, bound: int):
        super().__init__("ORACLE_BOUND", f"{size} words exceed the oracle bound of {bound}")
        self.size = size
        self.bound = bound


class SolverInvariantError(DgError):
    """F-structure incohérente en sortie du solveur (bug interne, pas une erreur d'entrée)."""

    def __init__(self, message: str):
        super().__init__("SOLVER_INVARIANT", message)
