"""Analyseur : Earley sur le squelette, résolution fonctionnelle, filtrage d'ordre."""
