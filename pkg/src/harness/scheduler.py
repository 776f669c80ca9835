"""
Execução de configurações com um escalonador determinístico.

Dois escalonadores estão disponíveis:

- ``SeededScheduler``: escolhe o sucessor ``splitmix64(seed) mod n``. A sequência
  de ``splitmix64`` é a de referência (incremento ``0x9E3779B97F4A7C15``, multiplicadores
  ``0xBF58476D1CE4E5B9`` e ``0x94D049BB133111EB``), o que torna os traços reprodutíveis.
- ``RoundRobinScheduler``: percorre as folhas em ordem; escolhe o primeiro sucessor
  cujo índice de folha é maior que o da última escolha (voltando ao início).

Os sucessores são enumerados na ordem devolvida pela semântica, já normalizados.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from src.calculi.configuration import ConfigTree, Configuration
from src.calculi.semantics import Semantics
from src.calculi.steps import LeafProgress, ProgressClass, RuleLabel, Transition
from src.config import settings
from src.errors import FuelExhausted, ReplayError, WorkbenchError

logger = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1


def splitmix64(state: int) -> Tuple[int, int]:
    """Um passo de splitmix64; devolve ``(novo estado, saída)``."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


class Scheduler:
    name = "abstract"

    def choose(self, transitions: Sequence[Transition]) -> int:
        raise NotImplementedError


class SeededScheduler(Scheduler):
    name = "seed"

    def __init__(self, seed: int = 0):
        self.seed = seed
        self.state = seed & MASK64

    def choose(self, transitions: Sequence[Transition]) -> int:
        self.state, output = splitmix64(self.state)
        return output % len(transitions)


class RoundRobinScheduler(Scheduler):
    name = "round-robin"

    def __init__(self) -> None:
        self.last_locus = -1

    def choose(self, transitions: Sequence[Transition]) -> int:
        for index, transition in enumerate(transitions):
            if transition.locus > self.last_locus:
                self.last_locus = transition.locus
                return index
        self.last_locus = transitions[0].locus
        return 0


def make_scheduler(seed: Optional[int] = None, round_robin: bool = False) -> Scheduler:
    if round_robin:
        return RoundRobinScheduler()
    return SeededScheduler(seed or 0)


@dataclass(frozen=True)
class TraceStep:
    """Um passo: regra aplicada, folha que reduziu e índice do sucessor escolhido."""

    label: RuleLabel
    locus: int
    choice: int
    alternatives: int


@dataclass
class TraceReport:
    """Traço de uma execução.

    Attributes:
        initial: Configuração inicial normalizada.
        steps: Passos na ordem de execução.
        final: Configuração final (normalizada).
        quiescent: ``True`` se a execução parou por falta de sucessores.
        classification: Classificação das folhas da configuração final quiescente.
        scheduler: Nome do escalonador usado.
        seed: Semente (somente para o escalonador com semente).
        elapsed: Tempo de execução em segundos.
    """

    initial: Configuration
    steps: List[TraceStep] = field(default_factory=list)
    final: Optional[Configuration] = None
    quiescent: bool = False
    classification: Tuple[LeafProgress, ...] = ()
    scheduler: str = "seed"
    seed: Optional[int] = None
    elapsed: float = 0.0

    @property
    def step_count(self) -> int:
        return len(self.steps)

    @property
    def choices(self) -> List[int]:
        return [step.choice for step in self.steps]

    @property
    def unclassified(self) -> Tuple[LeafProgress, ...]:
        return tuple(p for p in self.classification if p.tag is ProgressClass.UNCLASSIFIED)


def run(c: ConfigTree, semantics: Semantics, scheduler: Optional[Scheduler] = None,
        fuel: Optional[int] = None) -> TraceReport:
    """Executa ``c`` escolhendo um sucessor por passo até a quiescência.

    Args:
        c: Configuração inicial (supõe-se bem tipada).
        semantics: Cálculo e extensões.
        scheduler: Escalonador; por padrão ``SeededScheduler(0)``.
        fuel: Número máximo de passos; padrão ``settings.RUN_FUEL``.

    Returns:
        TraceReport: traço completo, com a classificação da configuração final.

    Raises:
        FuelExhausted: O combustível acabou antes da quiescência; o traço
            parcial fica em ``report``.
    """
    fuel = settings.RUN_FUEL if fuel is None else fuel
    scheduler = scheduler or SeededScheduler(0)
    started = time.perf_counter()
    current = semantics.normalize(c)
    report = TraceReport(initial=current, scheduler=scheduler.name,
                         seed=getattr(scheduler, "seed", None))
    try:
        while True:
            transitions = semantics.step(current)
            if not transitions:
                report.quiescent = True
                report.classification = semantics.classify(current)
                break
            if report.step_count >= fuel:
                report.final = current
                report.elapsed = time.perf_counter() - started
                raise FuelExhausted(f"combustível esgotado após {fuel} passos", report)
            index = scheduler.choose(transitions)
            chosen = transitions[index]
            report.steps.append(TraceStep(chosen.label, chosen.locus, index, len(transitions)))
            current = chosen.target
    except WorkbenchError:
        raise
    except Exception as e:
        raise WorkbenchError(f"Erro ao executar a configuração: {e}") from e
    report.final = current
    report.elapsed = time.perf_counter() - started
    logger.info("execução terminou em %d passos (%s)", report.step_count,
                "quiescente" if report.quiescent else "interrompida")
    return report


def replay(report: TraceReport, semantics: Semantics) -> Configuration:
    """Reaplica os índices de sucessor gravados e confere a configuração final.

    Raises:
        ReplayError: Um índice não existe ou o resultado difere do gravado.
    """
    current = report.initial
    for position, step in enumerate(report.steps):
        transitions = semantics.step(current)
        if step.choice >= len(transitions):
            raise ReplayError(f"passo {position}: sucessor {step.choice} inexistente "
                              f"({len(transitions)} disponíveis)")
        chosen = transitions[step.choice]
        if chosen.label is not step.label:
            raise ReplayError(f"passo {position}: regra {chosen.label.value}, "
                              f"esperada {step.label.value}")
        current = chosen.target
    if report.final is not None and current != report.final:
        raise ReplayError("a configuração final reproduzida difere da gravada")
    return current
