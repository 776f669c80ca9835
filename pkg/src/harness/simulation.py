"""
Verificação de simulação das traduções.

Para cada passo ``C1 → C2`` da fonte, procura no lado traduzido uma
configuração ``D`` alcançável a partir da imagem de ``C1`` tal que:

- a2c e c2a: ``D ≡ ⟦C2⟧`` (zero ou mais passos);
- selrecv: ``D`` pertence a alguma partição de ``C2`` (um ou mais passos), a partir
  de cada partição de ``C1``.

A busca é em largura, limitada pelo orçamento de passos da direção. Os passos
da fonte vêm de uma exploração exaustiva até ``depth`` ou, com ``seed``, de um
único escalonamento.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, FrozenSet, List, Optional, Set, Tuple

from src.calculi.checker import Calculus, Extension, TypeChecker
from src.calculi.configuration import ConfigTree, Configuration, normal_key
from src.calculi.semantics import Semantics, semantics_for
from src.calculi.steps import RuleLabel
from src.config import settings
from src.errors import NoWitness, WorkbenchError
from src.harness.explore import explore
from src.harness.printer import render_config
from src.harness.scheduler import SeededScheduler
from src.lang.types import Type
from src.translate.act_to_ch import translate_config_a2c
from src.translate.ch_to_act import channel_types, collect_types, translate_config_c2a
from src.translate.coalesce import coalesce_program
from src.translate.selrecv import lower_config

logger = logging.getLogger(__name__)


class Direction(str, Enum):
    A2C = "a2c"
    C2A = "c2a"
    SELRECV = "selrecv"


@dataclass(frozen=True)
class StepRecord:
    """Resultado da busca de testemunha para um passo da fonte."""

    source_rule: RuleLabel
    source_node: int
    matched: bool
    target_steps: Optional[int] = None
    witness: Tuple[RuleLabel, ...] = ()
    partition: Optional[int] = None


@dataclass
class SimulationReport:
    direction: Direction
    records: List[StepRecord] = field(default_factory=list)
    failures: List[NoWitness] = field(default_factory=list)
    source_states: int = 0

    @property
    def passed(self) -> bool:
        return all(record.matched for record in self.records)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    @property
    def max_target_steps(self) -> int:
        return max((r.target_steps or 0 for r in self.records if r.matched), default=0)


@dataclass(frozen=True)
class _Setup:
    source: Semantics
    target: Semantics
    budget: int
    plus: bool
    images: Callable[[ConfigTree], Tuple[Configuration, ...]]


def _setup(direction: Direction, source: Configuration, extensions: FrozenSet[Extension],
           budget: Optional[int], sync: bool) -> Tuple[_Setup, Configuration]:
    if direction is Direction.A2C:
        return _Setup(
            semantics_for(Calculus.ACT, extensions),
            semantics_for(Calculus.CH),
            settings.A2C_BUDGET if budget is None else budget,
            False,
            lambda c: (translate_config_a2c(c),),
        ), source

    if direction is Direction.C2A:
        if not sync:
            source = coalesce_source(source, extensions)
        first = translate_config_c2a(source, extensions, sync=sync)
        channel: Optional[Type] = first.channel_type
        target_ext = (Extension.SYNC,) if sync else ()
        return _Setup(
            semantics_for(Calculus.CH, extensions),
            semantics_for(Calculus.ACT, target_ext),
            settings.C2A_BUDGET if budget is None else budget,
            False,
            lambda c: (translate_config_c2a(c, extensions, sync=sync, channel=channel).config,),
        ), source

    cap = settings.SELRECV_MAX_MAILBOX
    return _Setup(
        semantics_for(Calculus.ACT, extensions | {Extension.SELRECV}),
        semantics_for(Calculus.ACT),
        settings.SELRECV_BUDGET if budget is None else budget,
        True,
        lambda c: lower_config(c, max_mailbox=cap),
    ), source


def coalesce_source(source: Configuration, extensions: FrozenSet[Extension]) -> Configuration:
    """Coalesce a fonte λ_ch quando ela usa canais de mais de um tipo."""
    checked = TypeChecker(Calculus.CH, extensions).check_config(source)
    if len(channel_types(collect_types(checked))) <= 1:
        return checked
    coalesced, env = coalesce_program(checked, tuple(extensions))
    logger.info("fonte coalescida com %d tokens", len(env.tokens))
    return TypeChecker(Calculus.CH, extensions).check_config(coalesced)


def search_witness(start: Configuration, goals: Set[Tuple], semantics: Semantics, budget: int,
                   plus: bool = False,
                   max_states: Optional[int] = None) -> Optional[Tuple[RuleLabel, ...]]:
    """Busca em largura por uma configuração cuja chave está em ``goals``.

    Args:
        start: Configuração inicial do lado traduzido.
        goals: Chaves normalizadas aceitas.
        semantics: Semântica do lado traduzido.
        budget: Número máximo de passos.
        plus: Exige pelo menos um passo (``→+``).
        max_states: Limite de estados visitados.

    Returns:
        A sequência de regras até a testemunha, ou ``None``.
    """
    max_states = settings.MAX_STATES if max_states is None else max_states
    initial = semantics.normalize(start)
    start_key = normal_key(initial)
    if not plus and start_key in goals:
        return ()
    seen = {start_key}
    queue = deque([(initial, ())])
    while queue:
        current, path = queue.popleft()
        if len(path) >= budget:
            continue
        for transition in semantics.step(current):
            key = transition.key or normal_key(transition.target)
            trail = path + (transition.label,)
            if key in goals:
                return trail
            if key in seen or len(seen) >= max_states:
                continue
            seen.add(key)
            queue.append((transition.target, trail))
    return None


def _source_steps(source: Configuration, semantics: Semantics, depth: int,
                  seed: Optional[int]):
    """Passos ``(nó, caminho até o nó, regra, configuração de origem, destino)`` da fonte."""
    if seed is not None:
        scheduler = SeededScheduler(seed)
        current = semantics.normalize(source)
        path: Tuple[RuleLabel, ...] = ()
        for node in range(depth):
            transitions = semantics.step(current)
            if not transitions:
                return
            chosen = transitions[scheduler.choose(transitions)]
            yield node, path, chosen.label, current, chosen.target
            path = path + (chosen.label,)
            current = chosen.target
        return

    graph = explore(source, semantics, depth=depth)
    parents: Dict[int, Tuple[int, RuleLabel]] = {}
    for edge in graph.edges:
        if edge.target != 0 and edge.target not in parents:
            parents[edge.target] = (edge.source, edge.label)

    def path_to(node: int) -> Tuple[RuleLabel, ...]:
        labels = []
        while node in parents:
            node, label = parents[node]
            labels.append(label)
        return tuple(reversed(labels))

    for edge in graph.edges:
        yield edge.source, path_to(edge.source), edge.label, graph.nodes[edge.source], \
            graph.nodes[edge.target]


def check_simulation(source: ConfigTree, direction: Direction,
                     extensions: FrozenSet[Extension] = frozenset(),
                     depth: Optional[int] = None, budget: Optional[int] = None,
                     seed: Optional[int] = None, sync: bool = False,
                     stop_on_failure: bool = False) -> SimulationReport:
    """Verifica a simulação de cada passo da fonte pela tradução escolhida.

    Args:
        source: Configuração bem tipada da fonte.
        direction: ``a2c``, ``c2a`` ou ``selrecv``.
        extensions: Extensões ativas na fonte.
        depth: Profundidade da exploração da fonte; padrão ``settings.SIMULATION_DEPTH``.
        budget: Passos permitidos no lado traduzido; padrão conforme a direção.
        seed: Se dado, segue um único escalonamento em vez de explorar tudo.
        sync: Usa a tradução c2a síncrona.
        stop_on_failure: Levanta ``NoWitness`` no primeiro passo sem testemunha.

    Returns:
        SimulationReport: um registro por passo (e por partição, em selrecv).

    Raises:
        NoWitness: Apenas com ``stop_on_failure``.
    """
    direction = Direction(direction)
    depth = settings.SIMULATION_DEPTH if depth is None else depth
    extensions = frozenset(extensions)
    try:
        setup, start = _setup(direction, source, extensions, budget, sync)
        report = SimulationReport(direction)
        cache: Dict[Tuple, Tuple[Configuration, ...]] = {}

        def images(c: Configuration) -> Tuple[Configuration, ...]:
            key = normal_key(c)
            if key not in cache:
                cache[key] = setup.images(c)
            return cache[key]

        nodes: Set[int] = set()
        for node, path, label, before, after in _source_steps(start, setup.source, depth, seed):
            nodes.add(node)
            goals = {normal_key(setup.target.normalize(image)) for image in images(after)}
            for partition, image in enumerate(images(before)):
                witness = search_witness(image, goals, setup.target, setup.budget, setup.plus)
                if witness is not None:
                    report.records.append(StepRecord(label, node, True, len(witness), witness,
                                                     partition if setup.plus else None))
                    continue
                expected = images(after)[0]
                failure = NoWitness(label.value, setup.budget,
                                    " → ".join(step.value for step in path + (label,)),
                                    render_config(expected) if expected.leaves else "∅")
                report.records.append(StepRecord(label, node, False,
                                                 partition=partition if setup.plus else None))
                report.failures.append(failure)
                logger.debug("sem testemunha: %s", failure)
                if stop_on_failure:
                    raise failure
        report.source_states = len(nodes)
    except WorkbenchError:
        raise
    except Exception as e:
        raise WorkbenchError(f"Erro ao verificar a simulação: {e}") from e
    logger.info("simulação %s: %s (%d passos verificados)", direction.value, report.verdict,
                len(report.records))
    return report
