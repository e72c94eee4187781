"""Grammaires de dépendance à domaines d'ordre : squelette hors-contexte, analyseur, oracle."""

__version__ = "0.1.0"
