"""Fixtures partagées : grammaires de démonstration, analyseurs, analyse de référence."""

import os

import pytest

from dgbackbone.grammar import load_grammar
from dgbackbone.parser.pipeline import Parser
from tests.dg_utils import EXAMPLE_1, GRAMMARS


@pytest.fixture(scope="session", autouse=True)
def _pristine_env():
    """Snapshot, une seule fois, de l'environnement pristine (avant tout test)."""
    return dict(os.environ)


@pytest.fixture(scope="module", autouse=True)
def _restore_env_per_module(_pristine_env):
    """Restaure l'environnement (variables DG_*) à la fin de chaque module."""
    yield
    os.environ.clear()
    os.environ.update(_pristine_env)


@pytest.fixture(scope="session")
def german():
    return load_grammar(GRAMMARS / "german.dg")


@pytest.fixture(scope="session")
def german_modal():
    return load_grammar(GRAMMARS / "german_modal.dg")


@pytest.fixture(scope="session")
def parser(german):
    return Parser(german, max_unpack=1000, specialize=True)


@pytest.fixture(scope="session")
def modal_parser(german_modal):
    return Parser(german_modal, max_unpack=1000, specialize=True)


@pytest.fixture(scope="session")
def example_1(parser):
    """Unique analyse de l'exemple de référence."""
    (analysis,) = parser.analyse(EXAMPLE_1).analyses
    return analysis
