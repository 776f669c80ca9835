"""
Programas de exemplo distribuídos com o pacote (``src/harness/corpus/*.mm``).
"""

import logging
from pathlib import Path
from typing import List

from src.errors import WorkbenchError
from src.harness.parser import parse_file
from src.harness.program import Program

logger = logging.getLogger(__name__)

CORPUS_DIR = Path(__file__).parent / "corpus"


def corpus_names() -> List[str]:
    """Nomes (sem extensão) dos exemplos disponíveis, em ordem alfabética."""
    return sorted(path.stem for path in CORPUS_DIR.glob("*.mm"))


def corpus_path(name: str) -> Path:
    path = CORPUS_DIR / f"{name}.mm"
    if not path.is_file():
        raise WorkbenchError(f"exemplo desconhecido: {name} (disponíveis: {', '.join(corpus_names())})")
    return path


def load_example(name: str) -> Program:
    """Analisa o exemplo ``name`` do corpus.

    Raises:
        WorkbenchError: O exemplo não existe.
        ParseError: O arquivo tem erro de sintaxe.
    """
    path = corpus_path(name)
    logger.debug("carregando exemplo %s", path)
    return parse_file(path)
