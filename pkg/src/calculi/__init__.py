"""
Os dois cálculos concorrentes: configurações, tipagem, semântica e progresso.
"""

from .actors import classify_progress_act, step_config_act
from .channels import classify_progress_ch, step_config_ch
from .checker import (
    Calculus,
    Extension,
    TypeChecker,
    TypeEnv,
    typecheck_config_act,
    typecheck_config_ch,
    typecheck_term_act,
    typecheck_term_ch,
)
from .configuration import (
    Actor,
    Binder,
    Buffer,
    Configuration,
    Par,
    Restrict,
    Thread,
    config_key,
    final_values,
    flatten,
    normalize_config,
)
from .selective import SelectiveMatch, eval_selective_receive
from .semantics import Semantics, semantics_for
from .steps import LeafProgress, ProgressClass, RuleLabel, Transition

__all__ = [
    'Actor',
    'Binder',
    'Buffer',
    'Calculus',
    'Configuration',
    'Extension',
    'LeafProgress',
    'Par',
    'ProgressClass',
    'Restrict',
    'RuleLabel',
    'SelectiveMatch',
    'Semantics',
    'Thread',
    'Transition',
    'TypeChecker',
    'TypeEnv',
    'classify_progress_act',
    'classify_progress_ch',
    'config_key',
    'eval_selective_receive',
    'final_values',
    'flatten',
    'normalize_config',
    'semantics_for',
    'step_config_act',
    'step_config_ch',
    'typecheck_config_act',
    'typecheck_config_ch',
    'typecheck_term_act',
    'typecheck_term_ch',
]
