"""
Variáveis livres, substituição que evita captura e geração de nomes frescos.
"""

from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Set

from src.lang.terms import (
    Arm,
    CaseSum,
    CaseVariant,
    Lam,
    Let,
    LetPair,
    Name,
    Rec,
    ReceivePattern,
    Term,
    Value,
    Var,
    map_subterms,
    subterms,
)


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """Nome ``base%n`` com o menor ``n`` que não colide com ``avoid``."""
    taken = set(avoid)
    root = base.split("%")[0] or "x"
    index = 1
    while f"{root}%{index}" in taken:
        index += 1
    return f"{root}%{index}"


class NameSupply:
    """Fonte determinística de variáveis frescas com o separador reservado ``$``."""

    def __init__(self, avoid: Iterable[str] = ()):
        self._taken: Set[str] = set(avoid)
        self._counter = 0

    def avoid(self, names: Iterable[str]) -> None:
        self._taken.update(names)

    def fresh(self, hint: str = "v") -> str:
        while True:
            self._counter += 1
            candidate = f"{hint}${self._counter}"
            if candidate not in self._taken:
                self._taken.add(candidate)
                return candidate


def _binders(node: Term) -> Optional[tuple]:
    if isinstance(node, Lam):
        return (node.var,)
    if isinstance(node, Rec):
        return (node.fn, node.var)
    if isinstance(node, (Arm, ReceivePattern)):
        return (node.var,)
    return None


def free_vars(node: Term) -> FrozenSet[str]:
    """Variáveis de termo livres (nomes de tempo de execução não contam)."""
    if isinstance(node, Var):
        return frozenset({node.name})
    if isinstance(node, Let):
        return free_vars(node.bound) | (free_vars(node.body) - {node.var})
    if isinstance(node, LetPair):
        return free_vars(node.value) | (free_vars(node.body) - {node.left_var, node.right_var})
    if isinstance(node, CaseSum):
        return (free_vars(node.value)
                | (free_vars(node.left) - {node.left_var})
                | (free_vars(node.right) - {node.right_var}))
    bound = _binders(node)
    result: FrozenSet[str] = frozenset()
    for child in subterms(node):
        result |= free_vars(child)
    if bound is not None:
        result -= set(bound)
    return result


def all_vars(node: Term) -> Set[str]:
    """Todas as variáveis que ocorrem (livres ou ligadas) em ``node``."""
    found: Set[str] = set()

    def visit(n: Term) -> None:
        if isinstance(n, Var):
            found.add(n.name)
        bound = _binders(n)
        if bound:
            found.update(bound)
        if isinstance(n, Let):
            found.add(n.var)
        elif isinstance(n, LetPair):
            found.update((n.left_var, n.right_var))
        elif isinstance(n, CaseSum):
            found.update((n.left_var, n.right_var))
        for child in subterms(n):
            visit(child)

    visit(node)
    return found


def names_in(node: Term) -> Set[str]:
    """Nomes de tempo de execução que ocorrem em ``node``."""
    found: Set[str] = set()

    def visit(n: Term) -> None:
        if isinstance(n, Name):
            found.add(n.ident)
            return
        for child in subterms(n):
            visit(child)

    visit(node)
    return found


def rename_names(node: Term, mapping: Mapping[str, str]) -> Term:
    """Renomeia nomes de tempo de execução (não há ligantes de nomes em termos)."""
    if not mapping:
        return node
    if isinstance(node, Name):
        target = mapping.get(node.ident)
        return Name(target, node.origin) if target is not None else node
    return map_subterms(node, lambda child: rename_names(child, mapping))


def replace_names(node: Term, mapping: Mapping[str, Value]) -> Term:
    """Troca ocorrências de nomes por valores (usado ao converter nomes em variáveis)."""
    if isinstance(node, Name):
        return mapping.get(node.ident, node)
    return map_subterms(node, lambda child: replace_names(child, mapping))


def subst(body: Term, value: Value, var: str) -> Term:
    """``body{value/var}`` evitando captura."""
    return subst_many(body, {var: value})


def subst_many(body: Term, mapping: Mapping[str, Value]) -> Term:
    """Substituição simultânea evitando captura."""
    if not mapping:
        return body
    value_fvs: FrozenSet[str] = frozenset()
    for v in mapping.values():
        value_fvs |= free_vars(v)
    return _subst(body, dict(mapping), value_fvs)


def _enter(mapping: Dict[str, Value], bound: Iterable[str]) -> Dict[str, Value]:
    bound = set(bound)
    if not bound & mapping.keys():
        return mapping
    return {k: v for k, v in mapping.items() if k not in bound}


def _rename_binder(var: str, scope: Iterable[Term], mapping: Dict[str, Value],
                   value_fvs: FrozenSet[str]) -> Optional[str]:
    """Devolve um novo nome para ``var`` se ele capturaria variáveis dos valores."""
    if var not in value_fvs:
        return None
    avoid = set(value_fvs) | set(mapping.keys())
    for term in scope:
        avoid |= free_vars(term)
    return fresh_name(var, avoid)


def _subst(node: Term, mapping: Dict[str, Value], value_fvs: FrozenSet[str]) -> Term:
    if not mapping:
        return node
    if isinstance(node, Var):
        return mapping.get(node.name, node)
    if isinstance(node, Let):
        bound = _subst(node.bound, mapping, value_fvs)
        var, body = _under_binder(node.var, node.body, mapping, value_fvs)
        return Let(var, bound, body)
    if isinstance(node, LetPair):
        value = _subst(node.value, mapping, value_fvs)
        (left, right), body = _under_binders((node.left_var, node.right_var), node.body,
                                             mapping, value_fvs)
        return LetPair(left, right, value, body)
    if isinstance(node, CaseSum):
        value = _subst(node.value, mapping, value_fvs)
        left_var, left = _under_binder(node.left_var, node.left, mapping, value_fvs)
        right_var, right = _under_binder(node.right_var, node.right, mapping, value_fvs)
        return CaseSum(value, left_var, left, right_var, right)
    if isinstance(node, Lam):
        var, body = _under_binder(node.var, node.body, mapping, value_fvs)
        return Lam(var, body, node.var_type, node.eff)
    if isinstance(node, Rec):
        (fn, var), body = _under_binders((node.fn, node.var), node.body, mapping, value_fvs)
        return Rec(fn, var, body, node.var_type, node.ret_type, node.eff)
    if isinstance(node, Arm):
        var, body = _under_binder(node.var, node.body, mapping, value_fvs)
        return Arm(node.label, var, body)
    if isinstance(node, ReceivePattern):
        (var,), (guard, body) = _under_binders_many((node.var,), (node.guard, node.body),
                                                    mapping, value_fvs)
        return ReceivePattern(node.label, var, guard, body)
    if isinstance(node, CaseVariant):
        value = _subst(node.value, mapping, value_fvs)
        arms = tuple(_subst(arm, mapping, value_fvs) for arm in node.arms)
        return CaseVariant(value, arms)
    return map_subterms(node, lambda child: _subst(child, mapping, value_fvs))


def _under_binder(var: str, body: Term, mapping: Dict[str, Value], value_fvs: FrozenSet[str]):
    (new_var,), (new_body,) = _under_binders_many((var,), (body,), mapping, value_fvs)
    return new_var, new_body


def _under_binders(variables: tuple, body: Term, mapping: Dict[str, Value],
                   value_fvs: FrozenSet[str]):
    new_vars, (new_body,) = _under_binders_many(variables, (body,), mapping, value_fvs)
    return new_vars, new_body


def _under_binders_many(variables: tuple, scope: tuple, mapping: Dict[str, Value],
                        value_fvs: FrozenSet[str]):
    inner = _enter(mapping, variables)
    if not inner:
        return variables, scope
    renaming: Dict[str, Value] = {}
    new_vars = []
    for var in variables:
        fresh = _rename_binder(var, scope, inner, value_fvs | set(new_vars))
        if fresh is not None:
            renaming[var] = Var(fresh)
            new_vars.append(fresh)
        else:
            new_vars.append(var)
    if renaming:
        scope = tuple(subst_many(term, renaming) for term in scope)
    return tuple(new_vars), tuple(_subst(term, inner, value_fvs) for term in scope)
