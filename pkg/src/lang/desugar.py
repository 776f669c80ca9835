"""
Açúcar sintático da linguagem de superfície e sua expansão para o núcleo.

Formas expandidas: ``let x = V in M`` (como ``(λx.M) V``), sequência ``M; N``,
booleanos (``true = inl ()``), ``if``, listas (``[]``, ``::``, ``case-list``).
"""

from dataclasses import dataclass, field
from typing import Optional

from src.errors import DesugarError
from src.lang.subst import fresh_name, free_vars
from src.lang.terms import (
    App,
    CaseSum,
    Comp,
    Inl,
    Inr,
    Lam,
    Let,
    LetPair,
    Pair,
    Roll,
    Term,
    UnitValue,
    Unroll,
    Value,
    Var,
    false_value,
    map_subterms,
    true_value,
)
from src.lang.types import UNIT, ProdType, SumType, Type, list_element, list_type


@dataclass(frozen=True, slots=True)
class LetValue(Comp):
    var: str
    value: Value
    body: Comp
    var_type: Optional[Type] = None


@dataclass(frozen=True, slots=True)
class Seq(Comp):
    first: Comp
    second: Comp


@dataclass(frozen=True, slots=True)
class BoolLit(Value):
    value: bool


@dataclass(frozen=True, slots=True)
class If(Comp):
    cond: Value
    then: Comp
    otherwise: Comp


@dataclass(frozen=True, slots=True)
class ListNil(Value):
    ann: Optional[Type] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class ListCons(Value):
    head: Value
    tail: Value
    ann: Optional[Type] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class CaseList(Comp):
    value: Value
    nil: Comp
    head_var: str
    tail_var: str
    cons: Comp


SURFACE_FORMS = (LetValue, Seq, BoolLit, If, ListNil, ListCons, CaseList)


def list_annotations(list_ann: Optional[Type]):
    """Anotações (lista, soma interna) para os construtores de uma lista."""
    if list_ann is None:
        return None, None
    element = list_element(list_ann)
    if element is None:
        raise DesugarError(f"anotação de lista inválida: {list_ann}")
    mu = list_type(element)
    return mu, SumType(UNIT, ProdType(element, mu))


def desugar(node: Term) -> Term:
    """Expande o açúcar de superfície; idempotente sobre termos do núcleo."""
    if isinstance(node, LetValue):
        body = desugar(node.body)
        return App(Lam(node.var, body, node.var_type), desugar(node.value))
    if isinstance(node, Seq):
        first, second = desugar(node.first), desugar(node.second)
        var = fresh_name("_", free_vars(second))
        return Let(var, first, second)
    if isinstance(node, BoolLit):
        return true_value() if node.value else false_value()
    if isinstance(node, If):
        then, otherwise = desugar(node.then), desugar(node.otherwise)
        unused = fresh_name("_", free_vars(then) | free_vars(otherwise))
        return CaseSum(desugar(node.cond), unused, then, unused, otherwise)
    if isinstance(node, ListNil):
        mu, inner = list_annotations(node.ann)
        return Roll(Inl(UnitValue(), ann=inner), ann=mu)
    if isinstance(node, ListCons):
        mu, inner = list_annotations(node.ann)
        return Roll(Inr(Pair(desugar(node.head), desugar(node.tail)), ann=inner), ann=mu)
    if isinstance(node, CaseList):
        nil, cons = desugar(node.nil), desugar(node.cons)
        value = desugar(node.value)
        avoid = free_vars(nil) | free_vars(cons) | free_vars(value)
        avoid |= {node.head_var, node.tail_var}
        scrutinee = fresh_name("z", avoid)
        cell = fresh_name("w", avoid | {scrutinee})
        unused = fresh_name("_", avoid | {scrutinee, cell})
        return Let(scrutinee, Unroll(value),
                   CaseSum(Var(scrutinee), unused, nil, cell,
                           LetPair(node.head_var, node.tail_var, Var(cell), cons)))
    if not isinstance(node, Term):
        raise DesugarError(f"forma de superfície desconhecida: {node!r}")
    return map_subterms(node, desugar)
