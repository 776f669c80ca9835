"""
Abaixamento do receive seletivo para λ_act simples.

Cada computação passa a receber e devolver uma fila de salvamento (``mb``) com
as mensagens já retiradas da caixa de correio mas ainda não consumidas. O
receive seletivo vira uma busca na fila (``findLoop``) seguida, se nada casar,
de um laço de ``receive`` (``recvLoop``) que guarda na fila as mensagens que
não casam.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from src.calculi.checker import Calculus, Extension, TypeChecker
from src.calculi.configuration import Actor, Binder, ConfigTree, Configuration, leaf_terms
from src.errors import TranslationError, UnsupportedConstruct, WorkbenchError
from src.lang.builders import append_function, case_list, list_value, nil
from src.lang.subst import NameSupply, all_vars, subst
from src.lang.terms import (
    CHANNEL_PRIMITIVES,
    App,
    Arm,
    CaseSum,
    CaseVariant,
    Comp,
    Lam,
    Let,
    LetPair,
    Name,
    Pair,
    Prim,
    Rec,
    Receive,
    ReceivePattern,
    Return,
    SelectiveReceive,
    SelfRef,
    Send,
    Spawn,
    Term,
    Unroll,
    Value,
    VariantValue,
    Var,
    Wait,
    map_annotations,
    map_subterms,
    true_value,
)
from src.lang.types import Effect, FunType, ProdType, Type, VariantType, list_type, rebuild, type_key

logger = logging.getLogger(__name__)


def lower_type(t: Type) -> Type:
    """``A −C→ B ↦ ⟦A⟧ −⟦C⟧→ (List(⟦C⟧) −⟦C⟧→ (⟦B⟧ × List(⟦C⟧)))``."""
    if isinstance(t, FunType):
        if t.eff is None:
            raise TranslationError(f"seta sem efeito: {t}")
        mailbox = lower_type(t.eff.mailbox)
        queue = list_type(mailbox)
        eff = Effect(mailbox)
        inner = FunType(queue, ProdType(lower_type(t.ret), queue), eff)
        return FunType(lower_type(t.arg), inner, eff)
    return rebuild(t, lower_type)


@dataclass
class SaveQueueContext:
    """Caixa de correio (tipo de origem) do ator corrente e a fonte de nomes."""

    mailbox: Type
    supply: NameSupply
    appends: Dict[str, Rec] = field(default_factory=dict)

    def enter(self, mailbox: Type) -> "SaveQueueContext":
        return SaveQueueContext(mailbox, self.supply, self.appends)

    @property
    def lowered_mailbox(self) -> Type:
        return lower_type(self.mailbox)

    @property
    def queue_type(self) -> Type:
        return list_type(self.lowered_mailbox)

    @property
    def effect(self) -> Effect:
        return Effect(self.lowered_mailbox)

    def append(self) -> Rec:
        key = type_key(self.lowered_mailbox)
        if key not in self.appends:
            self.appends[key] = append_function(self.lowered_mailbox, self.effect, self.supply)
        return self.appends[key]


def lower_value(v: Term, ctx: SaveQueueContext) -> Term:
    if isinstance(v, Name):
        return v
    if isinstance(v, (Lam, Rec)):
        if v.eff is None:
            raise TranslationError("função sem efeito: a entrada precisa estar elaborada")
        inner_ctx = ctx.enter(v.eff.mailbox)
        mb = ctx.supply.fresh("mb")
        inner = Lam(mb, lower_term(v.body, Var(mb), inner_ctx), inner_ctx.queue_type,
                    inner_ctx.effect)
        var_type = lower_type(v.var_type) if v.var_type is not None else None
        if isinstance(v, Lam):
            return Lam(v.var, Return(inner), var_type, inner_ctx.effect)
        ret = None
        if v.ret_type is not None:
            queue = inner_ctx.queue_type
            ret = FunType(queue, ProdType(lower_type(v.ret_type), queue), inner_ctx.effect)
        return Rec(v.fn, v.var, Return(inner), var_type, ret, inner_ctx.effect)
    return map_annotations(map_subterms(v, lambda child: lower_value(child, ctx)), lower_type)


def lower_term(m: Comp, mb: Value, ctx: SaveQueueContext) -> Comp:
    """``⟦M⟧mb``: devolve o par (resultado, fila de salvamento).

    Raises:
        UnsupportedConstruct: Primitivas de canal ou ``wait``.
    """
    s = ctx.supply
    val = lambda v: lower_value(v, ctx)  # noqa: E731

    def paired(bound: Comp, hint: str) -> Comp:
        x = s.fresh(hint)
        return Let(x, bound, Return(Pair(Var(x), mb)))

    if isinstance(m, Return):
        return Return(Pair(val(m.value), mb))
    if isinstance(m, App):
        f = s.fresh("f")
        return Let(f, App(val(m.fn), val(m.arg)), App(Var(f), mb))
    if isinstance(m, Let):
        res_pair, queue = s.fresh("resPair"), s.fresh("mb")
        return Let(res_pair, lower_term(m.bound, mb, ctx),
                   LetPair(m.var, queue, Var(res_pair), lower_term(m.body, Var(queue), ctx)))
    if isinstance(m, LetPair):
        return LetPair(m.left_var, m.right_var, val(m.value), lower_term(m.body, mb, ctx))
    if isinstance(m, CaseSum):
        return CaseSum(val(m.value), m.left_var, lower_term(m.left, mb, ctx),
                       m.right_var, lower_term(m.right, mb, ctx))
    if isinstance(m, CaseVariant):
        arms = tuple(Arm(a.label, a.var, lower_term(a.body, mb, ctx)) for a in m.arms)
        return CaseVariant(val(m.value), arms)
    if isinstance(m, Unroll):
        return paired(Unroll(val(m.value)), "r")
    if isinstance(m, Prim):
        return paired(Prim(m.op, tuple(val(a) for a in m.args)), "r")
    if isinstance(m, SelfRef):
        return paired(SelfRef(), "selfPid")
    if isinstance(m, Send):
        return paired(Send(val(m.value), val(m.target)), "x")
    if isinstance(m, Spawn):
        child = ctx.enter(m.mailbox)
        body = lower_term(m.body, nil(child.lowered_mailbox), child)
        return paired(Spawn(body, lower_type(m.mailbox)), "spawnRes")
    if isinstance(m, Receive):
        if isinstance(ctx.mailbox, VariantType):
            return _find(_catch_all(ctx.mailbox), ctx.mailbox, mb, ctx)
        return paired(Receive(), "x")
    if isinstance(m, SelectiveReceive):
        if m.result is None:
            raise TranslationError("receive seletivo sem tipo de resultado elaborado")
        return _find(m.patterns, m.result, mb, ctx)
    if isinstance(m, Wait) or isinstance(m, CHANNEL_PRIMITIVES):
        raise UnsupportedConstruct(f"{type(m).__name__} fora do fragmento abaixável")
    raise UnsupportedConstruct(f"computação desconhecida: {type(m).__name__}")


def _catch_all(mailbox: VariantType) -> Tuple[ReceivePattern, ...]:
    """Um padrão sempre verdadeiro por rótulo, devolvendo a mensagem inteira."""
    patterns = []
    for label, _ in mailbox.labels:
        patterns.append(ReceivePattern(label, "m$", Return(true_value()),
                                       Return(VariantValue(label, Var("m$"), ann=mailbox))))
    return tuple(patterns)


Default = Callable[[Value], Comp]


def _branches(patterns: Sequence[ReceivePattern], mb: Value, default: Default,
              ctx: SaveQueueContext) -> Tuple[Arm, ...]:
    """Um braço por rótulo: primeiro os rótulos com padrões, na ordem em que aparecem."""
    mailbox = ctx.lowered_mailbox
    labels: List[str] = []
    for p in patterns:
        if p.label not in labels:
            labels.append(p.label)
    labels += [label for label, _ in mailbox.labels if label not in labels]
    arms = []
    for label in labels:
        y = ctx.supply.fresh("y")
        candidates = [p for p in patterns if p.label == label]
        arms.append(Arm(label, y, _if_patterns(mb, label, y, candidates, default, ctx)))
    return tuple(arms)


def _if_patterns(mb: Value, label: str, y: str, patterns: Sequence[ReceivePattern],
                 default: Default, ctx: SaveQueueContext) -> Comp:
    if not patterns:
        return default(VariantValue(label, Var(y), ann=ctx.lowered_mailbox))
    head, rest = patterns[0], patterns[1:]
    s = ctx.supply
    res_pair, res, unused = s.fresh("resPair"), s.fresh("res"), s.fresh("mb")
    guard = lower_term(subst(head.guard, Var(y), head.var), mb, ctx)
    body = lower_term(subst(head.body, Var(y), head.var), mb, ctx)
    u, w = s.fresh("u"), s.fresh("u")
    return Let(res_pair, guard,
               LetPair(res, unused, Var(res_pair),
                       CaseSum(Var(res), u, body, w,
                               _if_patterns(mb, label, y, rest, default, ctx))))


def _find(patterns: Sequence[ReceivePattern], result: Type, mb: Value,
          ctx: SaveQueueContext) -> Comp:
    """Procura na fila de salvamento e, se nada casar, passa ao laço de ``receive``."""
    s = ctx.supply
    queue = ctx.queue_type
    pair_type = ProdType(lower_type(result), queue)
    # a concatenação é ligada uma vez; os dois laços a referenciam pelo nome
    append_name = s.fresh("append")
    append = Var(append_name)
    find_loop, ms = s.fresh("findLoop"), s.fresh("ms")
    mb1, mb2, rest, scanned = s.fresh("mb"), s.fresh("mb"), s.fresh("mb"), s.fresh("mb")
    x = s.fresh("x")

    def skip(message: Value) -> Comp:
        grown = s.fresh("mb")
        seen = App(append, Pair(Var(mb1), list_value([message], ctx.lowered_mailbox)))
        return Let(grown, seen, App(Var(find_loop), Pair(Var(grown), Var(rest))))

    matching = Let(scanned, App(append, Pair(Var(mb1), Var(rest))),
                   CaseVariant(Var(x), _branches(patterns, Var(scanned), skip, ctx)))
    body = LetPair(mb1, mb2, Var(ms),
                   case_list(Var(mb2), _loop(patterns, result, Var(mb1), append, ctx),
                             x, rest, matching, s))
    loop = Rec(find_loop, ms, body, ProdType(queue, queue), pair_type, ctx.effect)
    return Let(append_name, Return(ctx.append()), App(loop, Pair(nil(ctx.lowered_mailbox), mb)))


def _loop(patterns: Sequence[ReceivePattern], result: Type, mb: Value, append: Value,
          ctx: SaveQueueContext) -> Comp:
    s = ctx.supply
    queue = ctx.queue_type
    recv_loop, current, x = s.fresh("recvLoop"), s.fresh("mb"), s.fresh("x")

    def save(message: Value) -> Comp:
        grown = s.fresh("mb")
        seen = App(append, Pair(Var(current), list_value([message], ctx.lowered_mailbox)))
        return Let(grown, seen, App(Var(recv_loop), Var(grown)))

    body = Let(x, Receive(), CaseVariant(Var(x), _branches(patterns, Var(current), save, ctx)))
    loop = Rec(recv_loop, current, body, queue, ProdType(lower_type(result), queue), ctx.effect)
    return App(loop, mb)


def lower_config(tree: ConfigTree, max_mailbox: Optional[int] = None,
                 partitions: bool = True) -> Tuple[Configuration, ...]:
    """Todas as imagens de uma configuração: cada prefixo da caixa pode estar na fila.

    Args:
        tree: Configuração de λ_act com receive seletivo.
        max_mailbox: Se dado, caixas maiores que isso levantam ``UnsupportedConstruct``.
        partitions: Se falso, gera apenas a imagem com filas vazias.

    Returns:
        Tuple[Configuration, ...]: o produto cartesiano das partições de cada ator; a
        primeira configuração tem todas as filas de salvamento vazias.
    """
    c = TypeChecker(Calculus.ACT, (Extension.SELRECV,)).check_config(tree)
    avoid = set()
    for leaf in c.leaves:
        for term in leaf_terms(leaf):
            avoid |= all_vars(term)
    supply = NameSupply(avoid | {"m$"})
    binders = tuple(Binder(b.name, lower_type(b.type)) for b in c.binders)
    options: List[List[Actor]] = []
    try:
        for leaf in c.leaves:
            if not isinstance(leaf, Actor):
                raise UnsupportedConstruct(f"folha fora de λ_act: {type(leaf).__name__}")
            if max_mailbox is not None and len(leaf.mailbox) > max_mailbox:
                raise UnsupportedConstruct(f"caixa de {leaf.name} excede {max_mailbox} mensagens")
            ctx = SaveQueueContext(c.binder_for(leaf.name).type, supply)
            messages = [lower_value(v, ctx) for v in leaf.mailbox]
            variants = []
            for i in range(len(messages) + 1 if partitions else 1):
                saved = list_value(messages[:i], ctx.lowered_mailbox)
                variants.append(Actor(leaf.name, lower_term(leaf.term, saved, ctx),
                                      tuple(messages[i:])))
            options.append(variants)
    except WorkbenchError:
        raise
    except Exception as e:
        raise TranslationError(f"Erro ao abaixar o receive seletivo: {e}") from e
    result = tuple(Configuration(binders, tuple(choice)) for choice in itertools.product(*options))
    logger.debug("abaixamento do receive seletivo: %d partições", len(result))
    return result


def lower_program(tree: ConfigTree) -> Configuration:
    """A imagem com filas de salvamento vazias (a usada para executar)."""
    return lower_config(tree, partitions=False)[0]
