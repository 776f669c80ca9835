"""
Traduções entre os cálculos: atores → canais, canais → atores (com coalescência
e variante síncrona) e o abaixamento do receive seletivo.
"""

from .act_to_ch import translate_config_a2c, translate_term_a2c, translate_type_a2c
from .ch_to_act import C2AResult, translate_config_c2a, translate_term_c2a, translate_type_c2a
from .coalesce import TokenEnv, coalesce_program, coalesce_type, error_positions
from .selrecv import lower_config, lower_program, lower_term, lower_type

__all__ = [
    'C2AResult',
    'TokenEnv',
    'coalesce_program',
    'coalesce_type',
    'error_positions',
    'lower_config',
    'lower_program',
    'lower_term',
    'lower_type',
    'translate_config_a2c',
    'translate_config_c2a',
    'translate_term_a2c',
    'translate_term_c2a',
    'translate_type_a2c',
    'translate_type_c2a',
]
