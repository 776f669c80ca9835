"""
Configuração do pytest para os testes.

Este arquivo contém configurações e fixtures que podem ser usadas em todos os testes.
"""

import sys
from pathlib import Path

import pytest

# Adiciona o diretório raiz ao path do Python para que os módulos possam ser importados
sys.path.insert(0, str(Path(__file__).parent.parent.absolute()))

from src.calculi.semantics import semantics_for  # noqa: E402
from src.harness.corpus import load_example  # noqa: E402


# Configuração de logging para os testes
@pytest.fixture(autouse=True)
def setup_logging():
    """Configura o logging para os testes."""
    import logging
    logging.basicConfig(level=logging.DEBUG)


@pytest.fixture
def corpus_config():
    """Devolve uma função que carrega, checa e devolve ``(semântica, configuração)`` de um exemplo."""
    def load(name: str):
        program = load_example(name)
        semantics = semantics_for(program.resolved_calculus, program.extensions)
        return semantics, semantics.typecheck(program.to_config())
    return load


# Configuração para testes de integração
def pytest_configure(config):
    """Configurações globais do pytest."""
    config.addinivalue_line(
        "markers",
        "integration: mark test as integration test (deselect with '-m not integration')"
    )
    config.addinivalue_line("markers", "slow: exploração exaustiva ou fuzzing mais longo")
