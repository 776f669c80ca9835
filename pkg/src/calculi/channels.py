"""
Semântica de configurações de λ_ch: buffers FIFO, threads e escolha guardada por entrada.
"""

import logging
from typing import Iterable, List, Tuple

from src.calculi.checker import Extension
from src.calculi.configuration import (
    Binder,
    Buffer,
    ConfigTree,
    Configuration,
    Thread,
    config_names,
    flatten,
    fresh_runtime_name,
    normalize_config,
)
from src.calculi.steps import LeafProgress, ProgressClass, RuleLabel, Transition, deduplicate
from src.errors import NotQuiescentError
from src.lang.reduce import TermStatus, analyze, plug
from src.lang.terms import (
    Choose,
    Fork,
    Give,
    Inl,
    Inr,
    Name,
    NewCh,
    Return,
    Take,
    UnitValue,
)

logger = logging.getLogger(__name__)


def _thread_steps(c: Configuration, index: int, thread: Thread,
                  extensions: frozenset) -> List[Tuple[RuleLabel, Configuration]]:
    d = analyze(thread.term)
    if d.status is TermStatus.REDEX:
        return [(RuleLabel.LIFT_M, c.replace({index: Thread(d.reduct)}))]
    if d.status is not TermStatus.PRIMITIVE:
        return []
    focus, context = d.focus, d.context
    if isinstance(focus, Give) and isinstance(focus.channel, Name):
        found = c.buffer(focus.channel.ident)
        if found is None:
            return []
        b_index, buffer = found
        return [(RuleLabel.GIVE, c.replace({
            index: Thread(plug(context, Return(UnitValue()))),
            b_index: Buffer(buffer.name, buffer.values + (focus.value,)),
        }))]
    if isinstance(focus, Take) and isinstance(focus.channel, Name):
        found = c.buffer(focus.channel.ident)
        if found is None or not found[1].values:
            return []
        b_index, buffer = found
        return [(RuleLabel.TAKE, c.replace({
            index: Thread(plug(context, Return(buffer.values[0]))),
            b_index: Buffer(buffer.name, buffer.values[1:]),
        }))]
    if isinstance(focus, Fork):
        return [(RuleLabel.FORK, c.replace({index: Thread(plug(context, Return(UnitValue())))},
                                           extra=[Thread(focus.body)]))]
    if isinstance(focus, NewCh):
        name = fresh_runtime_name(config_names(c))
        ref = Name(name, focus.origin)
        return [(RuleLabel.NEWCH, c.replace({index: Thread(plug(context, Return(ref)))},
                                            extra=[Buffer(name)],
                                            binders=[Binder(name, focus.carried)]))]
    if isinstance(focus, Choose) and Extension.CHOICE in extensions:
        return _choose_steps(c, index, focus, context)
    return []


def _choose_steps(c: Configuration, index: int, focus: Choose,
                  context) -> List[Tuple[RuleLabel, Configuration]]:
    result = []
    sides = ((RuleLabel.CHOOSE_L, focus.left, Inl), (RuleLabel.CHOOSE_R, focus.right, Inr))
    for label, channel, inject in sides:
        if not isinstance(channel, Name):
            continue
        found = c.buffer(channel.ident)
        if found is None or not found[1].values:
            continue
        b_index, buffer = found
        chosen = inject(buffer.values[0], ann=focus.ann)
        result.append((label, c.replace({
            index: Thread(plug(context, Return(chosen))),
            b_index: Buffer(buffer.name, buffer.values[1:]),
        })))
    return result


def step_config_ch(tree: ConfigTree,
                   extensions: Iterable[Extension] = ()) -> Tuple[Transition, ...]:
    """Todos os sucessores em um passo, normalizados e sem repetição.

    Args:
        tree: Configuração de λ_ch.
        extensions: ``Extension.CHOICE`` habilita as regras de ``choose``.

    Returns:
        Tuple[Transition, ...]: vazio exatamente quando a configuração é quiescente.
    """
    c = flatten(tree)
    enabled = frozenset(Extension(e) for e in extensions)
    raw = []
    for index, leaf in enumerate(c.leaves):
        if not isinstance(leaf, Thread):
            continue
        for label, successor in _thread_steps(c, index, leaf, enabled):
            raw.append(Transition(label, normalize_config(successor), index))
    return deduplicate(raw)


def classify_progress_ch(tree: ConfigTree,
                         extensions: Iterable[Extension] = ()) -> Tuple[LeafProgress, ...]:
    """Classifica cada folha de uma configuração quiescente.

    Raises:
        NotQuiescentError: A configuração ainda tem sucessores.
    """
    c = flatten(tree)
    if step_config_ch(c, extensions):
        raise NotQuiescentError("a configuração de λ_ch ainda reduz")
    enabled = frozenset(Extension(e) for e in extensions)
    result = []
    for index, leaf in enumerate(c.leaves):
        if isinstance(leaf, Buffer):
            result.append(LeafProgress(index, leaf, ProgressClass.BUFFER))
            continue
        d = analyze(leaf.term)
        tag, detail = ProgressClass.UNCLASSIFIED, d.reason
        if d.status is TermStatus.VALUE:
            tag, detail = ProgressClass.FULLY_REDUCED, None
        elif isinstance(d.focus, Take) and _empty_buffer(c, d.focus.channel):
            tag, detail = ProgressClass.BLOCKED_TAKE, d.focus.channel.ident
        elif (isinstance(d.focus, Choose) and Extension.CHOICE in enabled
              and _empty_buffer(c, d.focus.left) and _empty_buffer(c, d.focus.right)):
            tag, detail = ProgressClass.BLOCKED_CHOOSE, None
        if tag is ProgressClass.UNCLASSIFIED:
            logger.warning("folha quiescente não classificável: %r", leaf)
        result.append(LeafProgress(index, leaf, tag, detail))
    return tuple(result)


def _empty_buffer(c: Configuration, channel) -> bool:
    if not isinstance(channel, Name):
        return False
    found = c.buffer(channel.ident)
    return found is not None and not found[1].values
