"""
Igualdade a menos de α e chaves estruturais canônicas.

A forma canônica renomeia cada ligante de termo para ``@k``, com ``k`` dado pela
ordem de pré-ordem, e cada ligante ``mu`` por profundidade. Dois termos são
α-equivalentes exatamente quando as formas canônicas coincidem.
"""

from typing import Dict, List

from src.lang.terms import (
    Arm,
    CaseSum,
    Lam,
    Let,
    LetPair,
    Rec,
    ReceivePattern,
    Term,
    Var,
    map_annotations,
    map_subterms,
)
from src.lang.types import canonical_type


def canonical(node: Term) -> Term:
    counter: List[int] = [0]
    return _canon(node, {}, counter)


def _bind(env: Dict[str, str], counter: List[int], *variables: str) -> Dict[str, str]:
    inner = dict(env)
    for var in variables:
        inner[var] = f"@{counter[0]}"
        counter[0] += 1
    return inner


def _canon(node: Term, env: Dict[str, str], counter: List[int]) -> Term:
    node = map_annotations(node, canonical_type)
    if isinstance(node, Var):
        return Var(env.get(node.name, node.name))
    if isinstance(node, Let):
        bound = _canon(node.bound, env, counter)
        inner = _bind(env, counter, node.var)
        return Let(inner[node.var], bound, _canon(node.body, inner, counter))
    if isinstance(node, LetPair):
        value = _canon(node.value, env, counter)
        inner = _bind(env, counter, node.left_var, node.right_var)
        return LetPair(inner[node.left_var], inner[node.right_var], value,
                       _canon(node.body, inner, counter))
    if isinstance(node, CaseSum):
        value = _canon(node.value, env, counter)
        left_env = _bind(env, counter, node.left_var)
        left = _canon(node.left, left_env, counter)
        right_env = _bind(env, counter, node.right_var)
        right = _canon(node.right, right_env, counter)
        return CaseSum(value, left_env[node.left_var], left, right_env[node.right_var], right)
    if isinstance(node, Lam):
        inner = _bind(env, counter, node.var)
        return Lam(inner[node.var], _canon(node.body, inner, counter), node.var_type, node.eff)
    if isinstance(node, Rec):
        inner = _bind(env, counter, node.fn, node.var)
        return Rec(inner[node.fn], inner[node.var], _canon(node.body, inner, counter),
                   node.var_type, node.ret_type, node.eff)
    if isinstance(node, Arm):
        inner = _bind(env, counter, node.var)
        return Arm(node.label, inner[node.var], _canon(node.body, inner, counter))
    if isinstance(node, ReceivePattern):
        inner = _bind(env, counter, node.var)
        return ReceivePattern(node.label, inner[node.var], _canon(node.guard, inner, counter),
                              _canon(node.body, inner, counter))
    return map_subterms(node, lambda child: _canon(child, env, counter))


def alpha_equal(a: Term, b: Term) -> bool:
    """Verdadeiro sse ``a`` e ``b`` coincidem a menos de renomeação de ligantes."""
    if a == b:
        return True
    return canonical(a) == canonical(b)


def term_key(node: Term) -> str:
    """Chave textual determinística e invariante por α (ignora anotações de valores)."""
    return repr(canonical(node))
