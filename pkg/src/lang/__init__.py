"""
Núcleo funcional compartilhado: tipos, termos, substituição, α-equivalência,
redução →M e expansão de açúcar sintático.
"""

from .alpha import alpha_equal, canonical, term_key
from .desugar import desugar
from .reduce import Decomposition, Frame, TermStatus, analyze, decompose, evaluate, plug, step_term
from .subst import NameSupply, free_vars, fresh_name, names_in, rename_names, subst, subst_many
from .terms import Comp, Term, Value
from .types import Effect, Type, render_type, type_equal

__all__ = [
    'Comp',
    'Decomposition',
    'Effect',
    'Frame',
    'NameSupply',
    'Term',
    'TermStatus',
    'Type',
    'Value',
    'alpha_equal',
    'analyze',
    'canonical',
    'decompose',
    'desugar',
    'evaluate',
    'free_vars',
    'fresh_name',
    'names_in',
    'plug',
    'render_type',
    'rename_names',
    'step_term',
    'subst',
    'subst_many',
    'term_key',
    'type_equal',
]
