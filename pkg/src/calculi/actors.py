"""
Semântica de configurações de λ_act: atores com caixas de correio FIFO, a
sincronização ``wait`` e o receive seletivo.
"""

import logging
from typing import Iterable, List, Optional, Tuple

from src.calculi.checker import Extension
from src.calculi.configuration import (
    Actor,
    Binder,
    ConfigTree,
    Configuration,
    config_names,
    flatten,
    fresh_runtime_name,
    normalize_config,
)
from src.calculi.selective import eval_selective_receive
from src.calculi.steps import LeafProgress, ProgressClass, RuleLabel, Transition, deduplicate
from src.errors import NotQuiescentError
from src.lang.reduce import TermStatus, analyze, plug
from src.lang.terms import (
    Name,
    Receive,
    Return,
    SelectiveReceive,
    SelfRef,
    Send,
    Spawn,
    UnitValue,
    Wait,
)

logger = logging.getLogger(__name__)


def _actor_steps(c: Configuration, index: int, actor: Actor, extensions: frozenset,
                 guard_fuel: Optional[int]) -> List[Tuple[RuleLabel, Configuration]]:
    d = analyze(actor.term)
    if d.status is TermStatus.REDEX:
        return [(RuleLabel.LIFT_M, c.replace({index: Actor(actor.name, d.reduct, actor.mailbox)}))]
    if d.status is not TermStatus.PRIMITIVE:
        return []
    focus, context = d.focus, d.context

    def resume(value, mailbox=None) -> Actor:
        return Actor(actor.name, plug(context, Return(value)),
                     actor.mailbox if mailbox is None else mailbox)

    if isinstance(focus, Spawn):
        name = fresh_runtime_name(config_names(c))
        result = focus.result if Extension.SYNC in extensions else None
        return [(RuleLabel.SPAWN, c.replace({index: resume(Name(name))},
                                            extra=[Actor(name, focus.body)],
                                            binders=[Binder(name, focus.mailbox, result)]))]
    if isinstance(focus, Send) and isinstance(focus.target, Name):
        target = focus.target.ident
        if target == actor.name:
            return [(RuleLabel.SEND_SELF,
                     c.replace({index: resume(UnitValue(), actor.mailbox + (focus.value,))}))]
        found = c.actor(target)
        if found is None:
            return []
        t_index, receiver = found
        return [(RuleLabel.SEND, c.replace({
            index: resume(UnitValue()),
            t_index: Actor(receiver.name, receiver.term, receiver.mailbox + (focus.value,)),
        }))]
    if isinstance(focus, SelfRef):
        return [(RuleLabel.SELF, c.replace({index: resume(Name(actor.name))}))]
    if isinstance(focus, Receive):
        if not actor.mailbox:
            return []
        return [(RuleLabel.RECEIVE,
                 c.replace({index: resume(actor.mailbox[0], actor.mailbox[1:])}))]
    if isinstance(focus, Wait) and Extension.SYNC in extensions:
        found = c.actor(focus.target.ident) if isinstance(focus.target, Name) else None
        if found is None or not isinstance(found[1].term, Return):
            return []
        return [(RuleLabel.WAIT, c.replace({index: resume(found[1].term.value)}))]
    if isinstance(focus, SelectiveReceive) and Extension.SELRECV in extensions:
        match = eval_selective_receive(focus.patterns, actor.mailbox, guard_fuel)
        if match is None:
            return []
        return [(RuleLabel.SEL_RECV, c.replace({
            index: Actor(actor.name, plug(context, match.body), match.residual)}))]
    return []


def step_config_act(tree: ConfigTree, extensions: Iterable[Extension] = (),
                    guard_fuel: Optional[int] = None) -> Tuple[Transition, ...]:
    """Todos os sucessores em um passo, normalizados e sem repetição.

    Args:
        tree: Configuração de λ_act.
        extensions: ``Extension.SYNC`` (``wait`` e coleta) e ``Extension.SELRECV``.
        guard_fuel: Limite de passos das guardas de receive seletivo.

    Returns:
        Tuple[Transition, ...]: vazio exatamente quando a configuração é quiescente.

    Raises:
        GuardFuelExhausted: Alguma guarda não terminou dentro do limite.
    """
    c = flatten(tree)
    enabled = frozenset(Extension(e) for e in extensions)
    gc = Extension.SYNC in enabled
    raw = []
    for index, leaf in enumerate(c.leaves):
        if not isinstance(leaf, Actor):
            continue
        for label, successor in _actor_steps(c, index, leaf, enabled, guard_fuel):
            raw.append(Transition(label, normalize_config(successor, gc=gc), index))
    return deduplicate(raw)


def classify_progress_act(tree: ConfigTree, extensions: Iterable[Extension] = (),
                          guard_fuel: Optional[int] = None) -> Tuple[LeafProgress, ...]:
    """Classifica cada ator de uma configuração quiescente.

    Raises:
        NotQuiescentError: A configuração ainda tem sucessores.
    """
    c = flatten(tree)
    if step_config_act(c, extensions, guard_fuel):
        raise NotQuiescentError("a configuração de λ_act ainda reduz")
    enabled = frozenset(Extension(e) for e in extensions)
    result = []
    for index, leaf in enumerate(c.leaves):
        tag, detail = ProgressClass.UNCLASSIFIED, None
        if isinstance(leaf, Actor):
            d = analyze(leaf.term)
            detail = d.reason
            if d.status is TermStatus.VALUE:
                tag, detail = ProgressClass.FULLY_REDUCED, None
            elif isinstance(d.focus, Receive) and not leaf.mailbox:
                tag, detail = ProgressClass.BLOCKED_RECEIVE, None
            elif isinstance(d.focus, SelectiveReceive) and Extension.SELRECV in enabled:
                tag, detail = ProgressClass.BLOCKED_SELRECV, f"{len(leaf.mailbox)} mensagens"
            elif isinstance(d.focus, Wait) and Extension.SYNC in enabled:
                tag = ProgressClass.BLOCKED_WAIT
                detail = getattr(d.focus.target, "ident", None)
        if tag is ProgressClass.UNCLASSIFIED:
            logger.warning("folha quiescente não classificável: %r", leaf)
        result.append(LeafProgress(index, leaf, tag, detail))
    return tuple(result)
