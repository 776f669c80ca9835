"""
Avaliação do receive seletivo sobre uma caixa de correio.

A mensagem escolhida é a primeira (menor índice ``k``) que casa com algum
padrão; entre os padrões que ela casa, vale o primeiro (menor ``l``). Um padrão
casa quando o rótulo coincide e a guarda, com a carga substituída, reduz por
→M a ``return true``. Os índices devolvidos começam em zero.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from src.config import settings
from src.errors import GuardFuelExhausted, GuardIllTyped
from src.lang.reduce import evaluate
from src.lang.subst import subst
from src.lang.terms import Comp, ReceivePattern, Return, Value, VariantValue, bool_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class SelectiveMatch:
    """Resultado de um casamento: mensagem ``message_index`` com o padrão ``pattern_index``."""

    message_index: int
    pattern_index: int
    value: Value
    residual: Tuple[Value, ...]
    body: Comp


def guard_holds(pattern: ReceivePattern, message: Value, fuel: int) -> bool:
    """Verdadeiro sse ``message`` casa com ``pattern``.

    Raises:
        GuardFuelExhausted: A guarda não terminou dentro de ``fuel`` passos.
        GuardIllTyped: A guarda terminou em algo que não é um booleano.
    """
    if not isinstance(message, VariantValue) or message.label != pattern.label:
        return False
    guard = subst(pattern.guard, message.value, pattern.var)
    final, steps = evaluate(guard, fuel)
    if isinstance(final, Return):
        verdict = bool_of(final.value)
        if verdict is None:
            raise GuardIllTyped(f"guarda produziu um não-booleano: {final.value!r}")
        return verdict
    if steps >= fuel:
        raise GuardFuelExhausted(f"guarda do padrão {pattern.label} excedeu {fuel} passos")
    raise GuardIllTyped(f"guarda presa: {final!r}")


def eval_selective_receive(patterns: Sequence[ReceivePattern], mailbox: Sequence[Value],
                           fuel: Optional[int] = None) -> Optional[SelectiveMatch]:
    """Primeira mensagem da caixa que casa com algum padrão, ou ``None`` (o ator bloqueia).

    Args:
        patterns: Padrões na ordem em que foram escritos.
        mailbox: Caixa de correio, da cabeça para a cauda.
        fuel: Limite de passos →M por guarda (padrão: ``settings.GUARD_FUEL``).

    Returns:
        Optional[SelectiveMatch]: índices, carga, caixa residual e corpo instanciado.
    """
    fuel = settings.GUARD_FUEL if fuel is None else fuel
    for k, message in enumerate(mailbox):
        for l, pattern in enumerate(patterns):
            if guard_holds(pattern, message, fuel):
                residual = tuple(mailbox[:k]) + tuple(mailbox[k + 1:])
                body = subst(pattern.body, message.value, pattern.var)
                logger.debug("receive seletivo: mensagem %d casou com o padrão %d", k, l)
                return SelectiveMatch(k, l, message.value, residual, body)
    return None
