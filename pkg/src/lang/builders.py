"""
Construtores auxiliares de termos do núcleo usados pelas traduções.
"""

from typing import List, Optional, Sequence

from src.lang.subst import NameSupply
from src.lang.terms import (
    App,
    CaseSum,
    Comp,
    Inl,
    Inr,
    Let,
    LetPair,
    Pair,
    Rec,
    Return,
    Roll,
    UnitValue,
    Unroll,
    Value,
    Var,
)
from src.lang.types import UNIT, Effect, ProdType, SumType, Type, list_type


def nil(elem: Type) -> Roll:
    mu = list_type(elem)
    return Roll(Inl(UnitValue(), ann=SumType(UNIT, ProdType(elem, mu))), ann=mu)


def cons(head: Value, tail: Value, elem: Type) -> Roll:
    mu = list_type(elem)
    return Roll(Inr(Pair(head, tail), ann=SumType(UNIT, ProdType(elem, mu))), ann=mu)


def list_value(values: Sequence[Value], elem: Type) -> Value:
    result: Value = nil(elem)
    for value in reversed(values):
        result = cons(value, result, elem)
    return result


def list_items(value: Value) -> Optional[List[Value]]:
    """Lê uma lista codificada; ``None`` se ``value`` não for uma lista fechada."""
    items: List[Value] = []
    while isinstance(value, Roll):
        inner = value.value
        if isinstance(inner, Inl):
            return items
        if isinstance(inner, Inr) and isinstance(inner.value, Pair):
            items.append(inner.value.left)
            value = inner.value.right
            continue
        return None
    return None


def case_list(value: Value, nil_body: Comp, head: str, tail: str, cons_body: Comp,
              supply: NameSupply) -> Comp:
    """``case-list`` já expandido: ``let z ⇐ unroll V in case z {inl _ → M; inr w → …}``."""
    scrutinee = supply.fresh("z")
    cell = supply.fresh("w")
    unused = supply.fresh("u")
    return Let(scrutinee, Unroll(value),
               CaseSum(Var(scrutinee), unused, nil_body, cell,
                       LetPair(head, tail, Var(cell), cons_body)))


def append_function(elem: Type, eff: Optional[Effect], supply: NameSupply) -> Rec:
    """Concatenação de listas ``⧺`` como uma definição ``rec`` fechada."""
    fn = supply.fresh("append")
    arg = supply.fresh("p")
    xs, ys = supply.fresh("xs"), supply.fresh("ys")
    x, rest, r = supply.fresh("x"), supply.fresh("rest"), supply.fresh("r")
    lst = list_type(elem)
    body = LetPair(xs, ys, Var(arg),
                   case_list(Var(xs), Return(Var(ys)), x, rest,
                             Let(r, App(Var(fn), Pair(Var(rest), Var(ys))),
                                 Return(cons(Var(x), Var(r), elem))),
                             supply))
    return Rec(fn, arg, body, var_type=ProdType(lst, lst), ret_type=lst, eff=eff)
