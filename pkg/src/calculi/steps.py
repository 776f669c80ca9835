"""
Rótulos de regras, transições e classificações de progresso comuns aos dois cálculos.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from src.calculi.configuration import Configuration, Leaf, normal_key


class RuleLabel(str, Enum):
    """Regras de redução de configurações."""
    # λ_ch
    GIVE = "Give"
    TAKE = "Take"
    FORK = "Fork"
    NEWCH = "NewCh"
    CHOOSE_L = "ChooseL"
    CHOOSE_R = "ChooseR"
    # λ_act
    SPAWN = "Spawn"
    SEND = "Send"
    SEND_SELF = "SendSelf"
    SELF = "Self"
    RECEIVE = "Receive"
    WAIT = "Wait"
    SEL_RECV = "SelRecv"
    # ambos
    LIFT_M = "LiftM"


@dataclass(frozen=True, slots=True)
class Transition:
    """Um sucessor normalizado; ``locus`` é o índice da folha que reduziu."""

    label: RuleLabel
    target: Configuration
    locus: int
    key: Tuple = ()


class ProgressClass(str, Enum):
    """Formas admitidas para folhas de configurações quiescentes."""
    BUFFER = "Buffer"
    FULLY_REDUCED = "FullyReduced"
    BLOCKED_TAKE = "BlockedTake"
    BLOCKED_CHOOSE = "BlockedChoose"
    BLOCKED_RECEIVE = "BlockedReceive"
    BLOCKED_SELRECV = "BlockedSelRecv"
    BLOCKED_WAIT = "BlockedWait"
    # Qualquer folha assim indica uma falha de correção
    UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True, slots=True)
class LeafProgress:
    index: int
    leaf: Leaf
    tag: ProgressClass
    detail: Optional[str] = None


def deduplicate(transitions) -> Tuple[Transition, ...]:
    """Remove sucessores repetidos (já normalizados), mantendo a primeira ocorrência."""
    seen = set()
    unique = []
    for transition in transitions:
        key = normal_key(transition.target)
        if (transition.label, key) in seen:
            continue
        seen.add((transition.label, key))
        unique.append(Transition(transition.label, transition.target, transition.locus, key))
    return tuple(unique)
