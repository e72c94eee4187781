"""Observabilité : identifiant de phrase de corrélation et logs JSON.

En mode batch, plusieurs phrases sont analysées en parallèle ; sans fil rouge,
les lignes de log (troncature du dépliage, mots inconnus, ...) deviennent
impossibles à rattacher à leur phrase. L'identifiant de phrase (numéro de
ligne d'entrée) vit dans un ``contextvars`` posé par le worker et injecté dans
chaque LogRecord par ``SentenceIdLogFilter``.

Le format JSON est opt-in via ``DG_LOG_FORMAT=json``. Les logs partent sur
stderr : stdout reste réservé aux résultats (sortie octet-identique).
"""

from __future__ import annotations

import contextlib
import contextvars
import json
import logging
import sys
from collections.abc import Iterator

_SENTENCE_ID: contextvars.ContextVar[str] = contextvars.ContextVar("dg_sentence_id", default="")

_HANDLER_MARK = "_dg_stderr"


def current_sentence_id() -> str:
    """Return the id of the sentence currently being analysed (or "")."""
    return _SENTENCE_ID.get()


@contextlib.contextmanager
def sentence_context(sentence_id: str) -> Iterator[None]:
    token = _SENTENCE_ID.set(sentence_id)
    try:
        yield
    finally:
        _SENTENCE_ID.reset(token)


class SentenceIdLogFilter(logging.Filter):
    """Injects the current sentence id into every LogRecord as `sentence_id`."""

    def filter(self, record: logging.LogRecord) -> bool:
        record.sentence_id = current_sentence_id() or "-"
        return True


class JsonLogFormatter(logging.Formatter):
    """Minimal JSON log formatter for log aggregators."""

    def format(self, record: logging.LogRecord) -> str:
        payload = {
            "timestamp": self.formatTime(record, "%Y-%m-%dT%H:%M:%S%z"),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "sentence_id": getattr(record, "sentence_id", "-"),
        }
        if record.exc_info:
            payload["exception"] = self.formatException(record.exc_info)
        return json.dumps(payload, default=str)


def configure_logging(log_format: str = "text", level_name: str = "WARNING") -> None:
    """Installe (une seule fois) le handler stderr du logger ``dg-backbone``."""
    level = getattr(logging, str(level_name).upper(), logging.WARNING)
    logger = logging.getLogger("dg-backbone")
    if not any(getattr(h, _HANDLER_MARK, False) for h in logger.handlers):
        handler = logging.StreamHandler(sys.stderr)
        if str(log_format).strip().lower() == "json":
            handler.setFormatter(JsonLogFormatter())
        else:
            handler.setFormatter(
                logging.Formatter("%(levelname)s [%(name)s] sentence=%(sentence_id)s %(message)s")
            )
        handler.addFilter(SentenceIdLogFilter())
        setattr(handler, _HANDLER_MARK, True)
        logger.addHandler(handler)
    logger.setLevel(level)
