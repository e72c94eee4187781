"""Métriques Prometheus de l'analyseur (registry dédié).

Registry DÉDIÉ (pas le global) : on n'exporte que nos métriques, sans le bruit
python_gc_*. ``render()`` produit l'exposition texte, imprimée sur stderr par
``--metrics`` (jamais sur stdout, qui doit rester octet-identique).

prometheus_client est une dépendance déclarée ; le fallback no-op ne sert qu'à
ne pas casser un environnement dégradé (lib absente).
"""
from __future__ import annotations

try:
    from prometheus_client import (
        CollectorRegistry,
        Counter,
        Histogram,
        generate_latest,
    )
    _HAS_PROMETHEUS = True
except ModuleNotFoundError:  # pragma: no cover - dépendance déclarée dans requirements
    _HAS_PROMETHEUS = False

_LATENCY_BUCKETS = (0.001, 0.005, 0.01, 0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0)

if _HAS_PROMETHEUS:
    REGISTRY = CollectorRegistry()
    SENTENCES = Counter(
        "dg_sentences_total",
        "Phrases analysées, par issue (parsed | no_parse | error).",
        ["status"],
        registry=REGISTRY,
    )
    ANALYSES = Counter(
        "dg_analyses_total",
        "Analyses retenues après filtrage par les contraintes d'ordre.",
        registry=REGISTRY,
    )
    DURATION = Histogram(
        "dg_parse_duration_seconds",
        "Durée d'analyse d'une phrase (backbone + solveur + filtres).",
        buckets=_LATENCY_BUCKETS,
        registry=REGISTRY,
    )
    UNPACK_TRUNCATED = Counter(
        "dg_unpack_truncated_total",
        "Phrases dont le dépliage des c-structures a atteint la borne max_unpack.",
        registry=REGISTRY,
    )


def observe_sentence(*, status: str, analyses: int, duration_seconds: float) -> None:
    if not _HAS_PROMETHEUS:
        return
    SENTENCES.labels(status=status).inc()
    if analyses:
        ANALYSES.inc(analyses)
    DURATION.observe(max(0.0, duration_seconds))


def unpack_truncated_inc() -> None:
    if _HAS_PROMETHEUS:
        UNPACK_TRUNCATED.inc()


def sample(name: str, labels: dict[str, str] | None = None) -> float:
    """Valeur courante d'un échantillon (0.0 si absent)."""
    if not _HAS_PROMETHEUS:
        return 0.0
    value = REGISTRY.get_sample_value(name, labels or {})
    return float(value or 0.0)


def render() -> str:
    """Texte Prometheus du registry de l'analyseur."""
    if not _HAS_PROMETHEUS:
        return ""
    return generate_latest(REGISTRY).decode("utf-8")
