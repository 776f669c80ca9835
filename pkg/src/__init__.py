"""
Bancada de cálculos concorrentes com canais e atores

Dois λ-cálculos tipados (canais e atores), as traduções entre eles, a
coalescência dos tipos de canal, o abaixamento do receive seletivo e uma
bancada para executar, explorar e verificar as propriedades das traduções.
"""

__version__ = "0.1.0"

# Importações principais para facilitar o acesso aos módulos
from .config import settings
from .errors import WorkbenchError

__all__ = [
    'WorkbenchError',
    'settings',
]
