"""
Tradução de λ_act para λ_ch: cada caixa de correio vira um canal, passado às
funções como um parâmetro extra.

A tradução é global: toda seta de função ganha o parâmetro do canal. A entrada
precisa estar elaborada (anotações preenchidas pelo verificador).
"""

import logging
from dataclasses import dataclass
from typing import Optional

from src.calculi.checker import Calculus, TypeChecker
from src.calculi.configuration import (
    Actor,
    Binder,
    Buffer,
    ConfigTree,
    Configuration,
    Thread,
    flatten,
    leaf_terms,
)
from src.errors import TranslationError, UnsupportedConstruct, WorkbenchError
from src.lang.subst import NameSupply, all_vars
from src.lang.terms import (
    App,
    Arm,
    CaseSum,
    CaseVariant,
    Comp,
    Fork,
    Give,
    Inl,
    Inr,
    Lam,
    Let,
    LetPair,
    Name,
    NewCh,
    Prim,
    Rec,
    Receive,
    Return,
    Roll,
    SelectiveReceive,
    SelfRef,
    Send,
    Spawn,
    Take,
    Unroll,
    Value,
    VariantValue,
    Var,
    Wait,
    map_subterms,
)
from src.lang.types import ActorRef2Type, ActorRefType, ChanRefType, FunType, Type, rebuild

logger = logging.getLogger(__name__)


@dataclass
class A2CContext:
    """Canal que representa a caixa de correio corrente e a fonte de nomes frescos."""

    channel: Value
    mailbox: Optional[Type]
    supply: NameSupply

    def enter(self, channel: Value, mailbox: Optional[Type]) -> "A2CContext":
        return A2CContext(channel, mailbox, self.supply)


def translate_type_a2c(t: Type) -> Type:
    """``ActorRef(A) ↦ ChanRef(⟦A⟧)`` e ``A −C→ B ↦ ⟦A⟧ → ChanRef(⟦C⟧) → ⟦B⟧``.

    Raises:
        UnsupportedConstruct: Referências de ator com resultado (modo sync).
    """
    if isinstance(t, ActorRefType):
        return ChanRefType(translate_type_a2c(t.mailbox))
    if isinstance(t, ActorRef2Type):
        raise UnsupportedConstruct("ActorRef(A, B) não tem tradução para λ_ch")
    if isinstance(t, FunType):
        if t.eff is None:
            raise TranslationError(f"seta sem efeito na entrada de λ_act: {t}")
        channel = ChanRefType(translate_type_a2c(t.eff.mailbox))
        return FunType(translate_type_a2c(t.arg), FunType(channel, translate_type_a2c(t.ret)))
    return rebuild(t, translate_type_a2c)


def _ann(t: Optional[Type]) -> Optional[Type]:
    return translate_type_a2c(t) if t is not None else None


def translate_value_a2c(v: Value, ctx: A2CContext) -> Value:
    if isinstance(v, Lam):
        return Lam(v.var, Return(_channel_lambda(v.body, v.eff, ctx)), _ann(v.var_type))
    if isinstance(v, Rec):
        mailbox = v.eff.mailbox if v.eff is not None else None
        ret = FunType(ChanRefType(_ann(mailbox)), _ann(v.ret_type)) if mailbox is not None else None
        return Rec(v.fn, v.var, Return(_channel_lambda(v.body, v.eff, ctx)),
                   _ann(v.var_type), ret)
    if isinstance(v, Inl):
        return Inl(translate_value_a2c(v.value, ctx), ann=_ann(v.ann))
    if isinstance(v, Inr):
        return Inr(translate_value_a2c(v.value, ctx), ann=_ann(v.ann))
    if isinstance(v, VariantValue):
        return VariantValue(v.label, translate_value_a2c(v.value, ctx), ann=_ann(v.ann))
    if isinstance(v, Roll):
        return Roll(translate_value_a2c(v.value, ctx), ann=_ann(v.ann))
    return map_subterms(v, lambda child: translate_value_a2c(child, ctx))


def _channel_lambda(body: Comp, eff, ctx: A2CContext) -> Lam:
    """``λch.⟦M⟧ch`` para o corpo de uma função."""
    if eff is None:
        raise TranslationError("função sem efeito: a entrada precisa estar elaborada")
    ch = ctx.supply.fresh("ch")
    inner = ctx.enter(Var(ch), eff.mailbox)
    return Lam(ch, translate_term_a2c(body, inner), ChanRefType(translate_type_a2c(eff.mailbox)))


def translate_term_a2c(m: Comp, ctx: A2CContext) -> Comp:
    """``⟦M⟧ch`` com ``ch = ctx.channel``.

    Raises:
        UnsupportedConstruct: ``wait`` ou receive seletivo (abaixe-o antes).
    """
    val = lambda v: translate_value_a2c(v, ctx)  # noqa: E731
    if isinstance(m, App):
        f = ctx.supply.fresh("f")
        return Let(f, App(val(m.fn), val(m.arg)), App(Var(f), ctx.channel))
    if isinstance(m, Return):
        return Return(val(m.value))
    if isinstance(m, Let):
        return Let(m.var, translate_term_a2c(m.bound, ctx), translate_term_a2c(m.body, ctx))
    if isinstance(m, SelfRef):
        return Return(ctx.channel)
    if isinstance(m, Receive):
        return Take(ctx.channel, carried=_ann(ctx.mailbox))
    if isinstance(m, Spawn):
        mailbox = translate_type_a2c(m.mailbox)
        ch_mb, unused = ctx.supply.fresh("chMb"), ctx.supply.fresh("_")
        child = translate_term_a2c(m.body, ctx.enter(Var(ch_mb), m.mailbox))
        return Let(ch_mb, NewCh(mailbox), Let(unused, Fork(child), Return(Var(ch_mb))))
    if isinstance(m, Send):
        return Give(val(m.value), val(m.target))
    if isinstance(m, (Wait, SelectiveReceive)):
        raise UnsupportedConstruct(f"{type(m).__name__} não tem tradução direta para λ_ch")
    if isinstance(m, LetPair):
        return LetPair(m.left_var, m.right_var, val(m.value), translate_term_a2c(m.body, ctx))
    if isinstance(m, CaseSum):
        return CaseSum(val(m.value), m.left_var, translate_term_a2c(m.left, ctx),
                       m.right_var, translate_term_a2c(m.right, ctx))
    if isinstance(m, CaseVariant):
        arms = tuple(Arm(a.label, a.var, translate_term_a2c(a.body, ctx)) for a in m.arms)
        return CaseVariant(val(m.value), arms)
    if isinstance(m, Unroll):
        return Unroll(val(m.value))
    if isinstance(m, Prim):
        return Prim(m.op, tuple(val(a) for a in m.args))
    raise UnsupportedConstruct(f"computação fora de λ_act: {type(m).__name__}")


def translate_config_a2c(tree: ConfigTree, elaborate: bool = True) -> Configuration:
    """``⟦⟨a, M, V⃗⟩⟧ = a(⟦V⃗⟧) ∥ ⟦M⟧a``; ν e ∥ são homomórficos.

    Args:
        tree: Configuração de λ_act bem tipada.
        elaborate: Verifica e elabora a entrada antes de traduzir.

    Returns:
        Configuration: configuração de λ_ch (achatada, não normalizada).

    Raises:
        TranslationError: Falha inesperada durante a tradução.
    """
    c = TypeChecker(Calculus.ACT).check_config(tree) if elaborate else flatten(tree)
    avoid = set()
    for leaf in c.leaves:
        for term in leaf_terms(leaf):
            avoid |= all_vars(term)
    supply = NameSupply(avoid)
    try:
        binders = tuple(Binder(b.name, translate_type_a2c(b.type)) for b in c.binders)
        leaves = []
        for leaf in c.leaves:
            if not isinstance(leaf, Actor):
                raise UnsupportedConstruct(f"folha fora de λ_act: {type(leaf).__name__}")
            binder = c.binder_for(leaf.name)
            ctx = A2CContext(Name(leaf.name), binder.type if binder else None, supply)
            leaves.append(Buffer(leaf.name, tuple(translate_value_a2c(v, ctx) for v in leaf.mailbox)))
            leaves.append(Thread(translate_term_a2c(leaf.term, ctx)))
    except WorkbenchError:
        raise
    except Exception as e:
        raise TranslationError(f"Erro ao traduzir λ_act → λ_ch: {e}") from e
    logger.debug("tradução λ_act → λ_ch: %d atores", len(c.leaves))
    return Configuration(binders, tuple(leaves))
