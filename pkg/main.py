#!/usr/bin/env python3
"""
Bancada de cálculos concorrentes com canais e atores
----------------------------------------------------
Atalho para a linha de comando ``mm`` sem instalar o pacote.
"""

import sys
from pathlib import Path

# Adiciona o diretório raiz ao path do Python
sys.path.append(str(Path(__file__).parent.absolute()))

from src.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
