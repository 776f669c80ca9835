"""
Tradução de λ_ch para λ_act: cada canal vira um ator que guarda uma fila de
valores e uma fila de requisitantes; cada thread vira um ator.

No modo assíncrono todos os canais precisam carregar o mesmo tipo ``C`` (ver
:mod:`src.translate.coalesce`). No modo síncrono cada canal tem sua própria
caixa de correio e ``take`` é resolvido por um ator auxiliar com ``wait``.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from src.calculi.checker import Calculus, Extension, TypeChecker
from src.calculi.configuration import (
    Actor,
    Binder,
    Buffer,
    ConfigTree,
    Configuration,
    Thread,
    config_names,
    fresh_runtime_name,
    leaf_terms,
)
from src.errors import CoalescingRequired, TranslationError, UnsupportedConstruct, WorkbenchError
from src.lang.builders import append_function, case_list, list_value, nil
from src.lang.subst import NameSupply, all_vars
from src.lang.terms import (
    App,
    CaseSum,
    Choose,
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
    Pair,
    Rec,
    Receive,
    Return,
    SelfRef,
    Send,
    Spawn,
    Take,
    Term,
    UnitValue,
    Var,
    Wait,
    map_annotations,
    map_subterms,
)
from src.lang.types import (
    UNIT,
    ActorRef2Type,
    ActorRefType,
    ChanRefType,
    Effect,
    FunType,
    MuType,
    ProdType,
    SumType,
    Type,
    TypeVar,
    children,
    list_type,
    rebuild,
    render_type,
    type_equal,
    type_key,
)
from src.translate.coalesce import TokenEnv, coalesce_program, type_annotations

logger = logging.getLogger(__name__)


@dataclass
class C2AResult:
    """Resultado da tradução de uma configuração de λ_ch."""

    config: Configuration
    channel_type: Optional[Type]
    token_env: Optional[TokenEnv] = None
    sync: bool = False


def channel_types(types: Iterable[Type]) -> List[Type]:
    """Tipos carregados distintos (a menos de α) que aparecem em ``ChanRef(·)``."""
    found: Dict[str, Type] = {}

    def visit(t: Type, bound: Dict[str, Type]) -> None:
        if isinstance(t, MuType):
            inner = dict(bound)
            inner[t.var] = t
            visit(t.body, inner)
            return
        if isinstance(t, ChanRefType):
            carried = t.carried
            if isinstance(carried, TypeVar) and carried.name in bound:
                carried = bound[carried.name]
            found.setdefault(type_key(carried), carried)
        for sub in children(t):
            visit(sub, bound)

    for t in types:
        visit(t, {})
    return [found[k] for k in sorted(found)]


class _ChannelsToActors:
    """Estado de uma tradução: tipo de canal, nomes frescos e funções auxiliares."""

    def __init__(self, channel: Optional[Type], sync: bool, supply: NameSupply):
        self.channel = channel
        self.sync = sync
        self.supply = supply
        self._bodies: Dict[str, Rec] = {}

    # -- tipos ---------------------------------------------------------------

    def ty(self, t: Type, bound: Optional[Dict[str, Type]] = None) -> Type:
        bound = bound or {}
        if isinstance(t, MuType):
            inner = dict(bound)
            inner[t.var] = t
            return MuType(t.var, self.ty(t.body, inner))
        if isinstance(t, ChanRefType):
            return self._channel_ref(t.carried, bound)
        if isinstance(t, FunType):
            return FunType(self.ty(t.arg, bound), self.ty(t.ret, bound), self.thread_effect())
        return rebuild(t, lambda sub: self.ty(sub, bound))

    def _channel_ref(self, carried: Type, bound: Dict[str, Type]) -> Type:
        if self.sync:
            inner = self.ty(carried, bound)
            return ActorRef2Type(SumType(inner, ActorRef2Type(inner, inner)), UNIT)
        if isinstance(carried, TypeVar) and carried.name in bound:
            if not type_equal(bound[carried.name], self.channel):
                raise CoalescingRequired(f"canal de tipo {render_type(bound[carried.name])}")
            return ActorRefType(SumType(carried, ActorRefType(carried)))
        if not type_equal(carried, self.channel):
            raise CoalescingRequired(
                f"canal de tipo {render_type(carried)} difere de {render_type(self.channel)}")
        inner = self.ty(carried)
        return ActorRefType(SumType(inner, ActorRefType(inner)))

    def thread_effect(self) -> Effect:
        if self.sync:
            return Effect(UNIT, UNIT)
        return Effect(self.ty(self.channel))

    def message_type(self, carried: Type) -> Type:
        """Caixa de correio do ator de um canal: ``⟦A⟧ + ActorRef(⟦A⟧)``."""
        inner = self.ty(carried)
        if self.sync:
            return SumType(inner, ActorRef2Type(inner, inner))
        return SumType(inner, ActorRefType(inner))

    def requestor_type(self, carried: Type) -> Type:
        inner = self.ty(carried)
        return ActorRef2Type(inner, inner) if self.sync else ActorRefType(inner)

    def buffer_effect(self, carried: Type) -> Effect:
        mailbox = self.message_type(carried)
        return Effect(mailbox, UNIT) if self.sync else Effect(mailbox)

    def _carried(self, annotation: Optional[Type]) -> Type:
        if annotation is not None:
            return annotation
        if self.channel is not None and not self.sync:
            return self.channel
        raise TranslationError("primitiva de canal sem tipo elaborado")

    # -- ator de buffer --------------------------------------------------------

    def _drain(self, carried: Type, eff: Effect) -> Lam:
        """Entrega o primeiro valor ao primeiro requisitante, se ambos existirem."""
        s = self.supply
        x, vals, pids = s.fresh("x"), s.fresh("vals"), s.fresh("pids")
        v, vs, unused = s.fresh("v"), s.fresh("vs"), s.fresh("_")
        pid, pids2 = s.fresh("pid"), s.fresh("pids")
        unchanged = Return(Pair(Var(vals), Var(pids)))
        deliver = Let(unused, Send(Var(v), Var(pid)), Return(Pair(Var(vs), Var(pids2))))
        body = LetPair(vals, pids, Var(x),
                       case_list(Var(vals), unchanged, v, vs,
                                 case_list(Var(pids), unchanged, pid, pids2, deliver, s), s))
        return Lam(x, body, self._state_type(carried), eff)

    def _state_type(self, carried: Type) -> Type:
        return ProdType(list_type(self.ty(carried)), list_type(self.requestor_type(carried)))

    def buffer_body(self, carried: Type) -> Rec:
        """``rec g(state). let recvVal ⇐ receive in …`` para o canal de tipo ``carried``."""
        key = type_key(carried)
        if key in self._bodies:
            return self._bodies[key]
        s = self.supply
        eff = self.buffer_effect(carried)
        value_type, pid_type = self.ty(carried), self.requestor_type(carried)
        append_v = append_function(value_type, eff, s)
        append_p = append_function(pid_type, eff, s)
        drain = self._drain(carried, eff)
        g, state, recv = s.fresh("g"), s.fresh("state"), s.fresh("recvVal")
        vals, pids = s.fresh("vals"), s.fresh("pids")

        def branch(item: str, appended: str, updated_left: bool) -> Comp:
            grown, next_state = s.fresh(appended), s.fresh("state")
            if updated_left:
                grow = App(append_v, Pair(Var(vals), list_value([Var(item)], value_type)))
                pair = Pair(Var(grown), Var(pids))
            else:
                grow = App(append_p, Pair(Var(pids), list_value([Var(item)], pid_type)))
                pair = Pair(Var(vals), Var(grown))
            return Let(grown, grow, Let(next_state, App(drain, pair), App(Var(g), Var(next_state))))

        v, pid = s.fresh("v"), s.fresh("pid")
        body = Let(recv, Receive(),
                   LetPair(vals, pids, Var(state),
                           CaseSum(Var(recv), v, branch(v, "vals", True),
                                   pid, branch(pid, "pids", False))))
        rec = Rec(g, state, body, self._state_type(carried), UNIT, eff)
        self._bodies[key] = rec
        return rec

    def buffer_actor(self, carried: Type, values: Tuple) -> Comp:
        """``body(⟦V⃗⟧, [])``."""
        initial = Pair(list_value(list(values), self.ty(carried)), nil(self.requestor_type(carried)))
        return App(self.buffer_body(carried), initial)

    # -- termos --------------------------------------------------------------

    def value(self, v: Term) -> Term:
        if isinstance(v, Name):
            return v
        if isinstance(v, Lam):
            return Lam(v.var, self.term(v.body), self._opt(v.var_type), self.thread_effect())
        if isinstance(v, Rec):
            return Rec(v.fn, v.var, self.term(v.body), self._opt(v.var_type),
                       self._opt(v.ret_type), self.thread_effect())
        return map_annotations(map_subterms(v, self.term), self.ty)

    def _opt(self, t: Optional[Type]) -> Optional[Type]:
        return self.ty(t) if t is not None else None

    def term(self, m: Term) -> Term:
        s = self.supply
        if isinstance(m, Give):
            carried = self._carried(m.carried)
            message = Inl(self.value(m.value), ann=self.message_type(carried))
            return Send(message, self.value(m.channel))
        if isinstance(m, Take):
            carried = self._carried(m.carried)
            self_pid, unused = s.fresh("selfPid"), s.fresh("_")
            request = Inr(Var(self_pid), ann=self.message_type(carried))
            ask = Let(self_pid, SelfRef(),
                      Let(unused, Send(request, self.value(m.channel)), Receive()))
            if not self.sync:
                return ask
            inner = self.ty(carried)
            requestor = s.fresh("requestorPid")
            return Let(requestor, Spawn(ask, inner, inner), Wait(Var(requestor)))
        if isinstance(m, Fork):
            x = s.fresh("x")
            if self.sync:
                spawn = Spawn(self.term(m.body), UNIT, UNIT)
            else:
                spawn = Spawn(self.term(m.body), self.ty(self.channel))
            return Let(x, spawn, Return(UnitValue()))
        if isinstance(m, NewCh):
            carried = m.carried
            return Spawn(self.buffer_actor(carried, ()), self.message_type(carried),
                         UNIT if self.sync else None)
        if isinstance(m, Choose):
            raise UnsupportedConstruct("choose não tem tradução para λ_act")
        if isinstance(m, (Lam, Rec, Name)):
            return self.value(m)
        return map_annotations(map_subterms(m, self.term), self.ty)


def collect_types(c: Configuration) -> List[Type]:
    types: List[Type] = [ChanRefType(b.type) for b in c.binders]
    for leaf in c.leaves:
        for term in leaf_terms(leaf):
            types.extend(type_annotations(term))
    return types


def translate_type_c2a(t: Type, channel: Type, sync: bool = False) -> Type:
    """``ChanRef(C) ↦ ActorRef(⟦C⟧ + ActorRef(⟦C⟧))`` e ``A → B ↦ ⟦A⟧ −⟦C⟧→ ⟦B⟧``.

    Raises:
        CoalescingRequired: ``t`` menciona um canal de tipo diferente de ``channel``.
    """
    return _ChannelsToActors(channel, sync, NameSupply()).ty(t)


def translate_term_c2a(m: Comp, channel: Type, sync: bool = False,
                       supply: Optional[NameSupply] = None) -> Comp:
    """Traduz uma computação elaborada de λ_ch.

    Raises:
        UnsupportedConstruct: ``choose`` na entrada.
        CoalescingRequired: Canais de tipos distintos no modo assíncrono.
    """
    supply = supply or NameSupply(all_vars(m))
    return _ChannelsToActors(channel, sync, supply).term(m)


def translate_config_c2a(tree: ConfigTree, extensions: Iterable[Extension] = (),
                         sync: bool = False, auto_coalesce: bool = False,
                         channel: Optional[Type] = None) -> C2AResult:
    """Traduz uma configuração de λ_ch para λ_act.

    Args:
        tree: Configuração de λ_ch bem tipada.
        extensions: Extensões de λ_ch ativas na entrada.
        sync: Usa a variante com ``wait`` (sem coalescência).
        auto_coalesce: Coalesce antes de traduzir se houver mais de um tipo de canal.
        channel: Tipo de canal fixado (usado ao traduzir sucessores de uma mesma
            execução, que podem ter perdido as anotações de algum canal).

    Returns:
        C2AResult: configuração de λ_act, tipo de canal usado e tokens (se coalesceu).

    Raises:
        CoalescingRequired: Mais de um tipo de canal sem ``auto_coalesce``.
        UnsupportedConstruct: ``choose`` na entrada.
    """
    c = TypeChecker(Calculus.CH, extensions).check_config(tree)
    token_env = None
    if not sync and channel is None:
        found = channel_types(collect_types(c))
        if len(found) > 1:
            if not auto_coalesce:
                raise CoalescingRequired(
                    "canais de tipos distintos: " + ", ".join(render_type(t) for t in found))
            logger.info("coalescendo %d tipos de canal antes da tradução", len(found))
            c, token_env = coalesce_program(c, tuple(extensions))
            c = TypeChecker(Calculus.CH, extensions).check_config(c)
            found = channel_types(collect_types(c))
        channel = found[0] if found else UNIT

    avoid = set()
    for leaf in c.leaves:
        for term in leaf_terms(leaf):
            avoid |= all_vars(term)
    worker = _ChannelsToActors(channel, sync, NameSupply(avoid))
    taken = set(config_names(c))
    binders: List[Binder] = []
    leaves: List[Actor] = []
    try:
        for b in c.binders:
            binders.append(Binder(b.name, worker.message_type(b.type), UNIT if sync else None))
        for leaf in c.leaves:
            if isinstance(leaf, Buffer):
                carried = c.binder_for(leaf.name).type
                values = tuple(worker.value(v) for v in leaf.values)
                leaves.append(Actor(leaf.name, worker.buffer_actor(carried, values)))
            elif isinstance(leaf, Thread):
                name = fresh_runtime_name(taken)
                taken.add(name)
                mailbox = UNIT if sync else worker.ty(channel)
                binders.append(Binder(name, mailbox, UNIT if sync else None))
                leaves.append(Actor(name, worker.term(leaf.term)))
            else:
                raise UnsupportedConstruct(f"folha fora de λ_ch: {type(leaf).__name__}")
    except WorkbenchError:
        raise
    except Exception as e:
        raise TranslationError(f"Erro ao traduzir λ_ch → λ_act: {e}") from e
    logger.debug("tradução λ_ch → λ_act: %d canais, %d threads", len(c.binders),
                 len(leaves) - len(c.binders))
    return C2AResult(Configuration(tuple(binders), tuple(leaves)), channel, token_env, sync)
