"""
Redução determinística de termos (→M) e decomposição em contextos de avaliação.

Um contexto de avaliação é a espinha de ``let`` ``E ::= [ ] | let x ⇐ E in M``.
A decomposição ``M = E[M']`` para quando ``M'`` é um redex, uma primitiva de
comunicação, um ``return`` ou um termo preso.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from src.lang.terms import (
    COMMUNICATION,
    App,
    CaseSum,
    CaseVariant,
    Comp,
    ErrorValue,
    Inl,
    Inr,
    IntLit,
    Lam,
    Let,
    LetPair,
    Pair,
    Prim,
    Rec,
    Return,
    Roll,
    StrLit,
    Unroll,
    VariantValue,
    false_value,
    true_value,
)
from src.lang.subst import subst, subst_many

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Frame:
    """Quadro ``let var ⇐ [ ] in body``."""

    var: str
    body: Comp


EvalContext = Tuple[Frame, ...]


class TermStatus(str, Enum):
    VALUE = "value"
    REDEX = "redex"
    PRIMITIVE = "primitive"
    STUCK = "stuck"


@dataclass(frozen=True, slots=True)
class Decomposition:
    context: EvalContext
    focus: Comp
    status: TermStatus
    reduct: Optional[Comp] = None
    reason: Optional[str] = None


def decompose(m: Comp) -> Tuple[EvalContext, Comp]:
    """Decompõe ``m`` como ``E[M']`` (quadros do mais externo para o mais interno)."""
    frames = []
    while isinstance(m, Let) and not isinstance(m.bound, Return):
        frames.append(Frame(m.var, m.body))
        m = m.bound
    return tuple(frames), m


def plug(context: EvalContext, m: Comp) -> Comp:
    """Reconstrói ``E[m]``."""
    for frame in reversed(context):
        m = Let(frame.var, m, frame.body)
    return m


def contract(focus: Comp) -> Tuple[Optional[Comp], Optional[str]]:
    """Contrai um redex funcional; devolve ``(None, motivo)`` quando preso."""
    if isinstance(focus, Let) and isinstance(focus.bound, Return):
        return subst(focus.body, focus.bound.value, focus.var), None
    if isinstance(focus, App):
        fn = focus.fn
        if isinstance(fn, Lam):
            return subst(fn.body, focus.arg, fn.var), None
        if isinstance(fn, Rec):
            return subst_many(fn.body, {fn.fn: fn, fn.var: focus.arg}), None
        if isinstance(fn, ErrorValue):
            return None, "aplicação de error"
        return None, f"aplicação de um não-função: {fn!r}"
    if isinstance(focus, LetPair):
        if isinstance(focus.value, Pair):
            return subst_many(focus.body, {focus.left_var: focus.value.left,
                                           focus.right_var: focus.value.right}), None
        return None, "let-pair sobre um não-par"
    if isinstance(focus, CaseSum):
        if isinstance(focus.value, Inl):
            return subst(focus.left, focus.value.value, focus.left_var), None
        if isinstance(focus.value, Inr):
            return subst(focus.right, focus.value.value, focus.right_var), None
        return None, "case sobre um não-injeção"
    if isinstance(focus, CaseVariant):
        if isinstance(focus.value, VariantValue):
            arm = focus.arm_for(focus.value.label)
            if arm is not None:
                return subst(arm.body, focus.value.value, arm.var), None
            return None, f"rótulo sem braço: {focus.value.label}"
        return None, "case sobre um não-variante"
    if isinstance(focus, Unroll):
        if isinstance(focus.value, Roll):
            return Return(focus.value.value), None
        return None, "unroll sobre um não-roll"
    if isinstance(focus, Prim):
        return _primitive(focus)
    return None, f"forma não redutível: {type(focus).__name__}"


def _primitive(prim: Prim) -> Tuple[Optional[Comp], Optional[str]]:
    args = prim.args
    if prim.op == "neg" and len(args) == 1 and isinstance(args[0], IntLit):
        return Return(IntLit(-args[0].value)), None
    if prim.op == "add" and len(args) == 2 and all(isinstance(a, IntLit) for a in args):
        return Return(IntLit(args[0].value + args[1].value)), None
    if prim.op == "gt" and len(args) == 2 and all(isinstance(a, IntLit) for a in args):
        return Return(true_value() if args[0].value > args[1].value else false_value()), None
    if prim.op == "show" and len(args) == 1 and isinstance(args[0], IntLit):
        return Return(StrLit(str(args[0].value))), None
    return None, f"primitiva {prim.op} com argumentos inválidos"


def analyze(m: Comp) -> Decomposition:
    """Classifica ``m`` e, se houver, calcula o redutum ``E[M2]``."""
    context, focus = decompose(m)
    if isinstance(focus, Return) and not context:
        return Decomposition(context, focus, TermStatus.VALUE)
    if isinstance(focus, COMMUNICATION):
        return Decomposition(context, focus, TermStatus.PRIMITIVE)
    reduct, reason = contract(focus)
    if reduct is None:
        logger.debug("termo preso: %s", reason)
        return Decomposition(context, focus, TermStatus.STUCK, reason=reason)
    return Decomposition(context, focus, TermStatus.REDEX, reduct=plug(context, reduct))


def step_term(m: Comp) -> Optional[Comp]:
    """O único sucessor →M de ``m``, ou ``None`` (valor, primitiva ou preso)."""
    return analyze(m).reduct


def evaluate(m: Comp, fuel: int) -> Tuple[Comp, int]:
    """Reduz ``m`` por →M até parar ou esgotar ``fuel``; devolve o termo e os passos."""
    steps = 0
    while steps < fuel:
        nxt = step_term(m)
        if nxt is None:
            return m, steps
        m = nxt
        steps += 1
    return m, steps
