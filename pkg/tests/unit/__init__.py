"""
Testes unitários da bancada de cálculos concorrentes.

Este pacote contém testes unitários para a linguagem, os cálculos, as
traduções e o harness.
"""

__all__ = ['lang', 'calculi', 'translate', 'harness']
