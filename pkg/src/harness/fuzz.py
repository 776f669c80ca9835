"""
Testes de propriedades com programas gerados (preservação, progresso,
simulação das traduções, ausência de erro na coalescência, tipagem das
traduções e congruência), com redução dos contraexemplos.
"""

import logging
import random
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from src.calculi.checker import Calculus, Extension, TypeChecker
from src.calculi.configuration import Actor, Buffer, Configuration, Thread
from src.calculi.semantics import semantics_for
from src.errors import FuelExhausted, TypeCheckError, UnsupportedConstruct, WorkbenchError
from src.harness.equiv import config_equiv, perturb_buffer, random_rewrites
from src.harness.explore import explore
from src.harness.generator import GeneratedCase, generate_case
from src.harness.printer import render_config
from src.harness.scheduler import SeededScheduler, run
from src.harness.simulation import Direction, check_simulation
from src.lang.subst import free_vars
from src.lang.terms import Fork, IntLit, Let, Return, Spawn, Term, UnitValue
from src.translate.act_to_ch import translate_config_a2c
from src.translate.ch_to_act import translate_config_c2a
from src.translate.coalesce import coalesce_program, error_positions
from src.translate.selrecv import lower_program

logger = logging.getLogger(__name__)

# Profundidades pequenas mantêm cada caso na casa dos milissegundos
EXPLORE_DEPTH = 40
EXPLORE_STATES = 2_000
SIMULATION_DEPTH = 6
PROGRESS_FUEL = 500
SHRINK_ATTEMPTS = 200


class FuzzMode(str, Enum):
    PRESERVATION_CH = "preservation-ch"
    PRESERVATION_ACT = "preservation-act"
    PROGRESS_CH = "progress-ch"
    PROGRESS_ACT = "progress-act"
    A2C = "a2c"
    C2A = "c2a"
    SELRECV = "selrecv"
    COALESCE = "coalesce"
    TRANSLATION_TYPING = "translation-typing"
    CONGRUENCE = "congruence"


@dataclass
class Counterexample:
    seed: int
    message: str
    config: Configuration
    shrunk: bool = False

    def render(self) -> str:
        return render_config(self.config)


@dataclass
class FuzzReport:
    mode: FuzzMode
    count: int
    seed: int
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    counterexamples: List[Counterexample] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0


# ---------------------------------------------------------------------------
# Propriedades: devolvem None em caso de sucesso, ou a descrição da falha
# ---------------------------------------------------------------------------

Property = Callable[[GeneratedCase, Configuration], Optional[str]]


def _preservation(case: GeneratedCase, c: Configuration) -> Optional[str]:
    semantics = semantics_for(case.calculus, case.extensions)
    graph = explore(c, semantics, depth=EXPLORE_DEPTH, max_states=EXPLORE_STATES)
    checker = TypeChecker(case.calculus, case.extensions)
    for index, node in enumerate(graph.nodes):
        try:
            checker.check_config(node)
        except TypeCheckError as e:
            return f"estado {index} mal tipado: {e}"
    return None


def _progress(case: GeneratedCase, c: Configuration) -> Optional[str]:
    semantics = semantics_for(case.calculus, case.extensions)
    report = run(c, semantics, SeededScheduler(case.seed), fuel=PROGRESS_FUEL)
    if report.unclassified:
        leaf = report.unclassified[0]
        return f"folha {leaf.index} não classificada: {leaf.detail or leaf.leaf}"
    return None


def _simulation(direction: Direction) -> Property:
    def check(case: GeneratedCase, c: Configuration) -> Optional[str]:
        report = check_simulation(c, direction, case.extensions, depth=SIMULATION_DEPTH)
        if report.failures:
            return str(report.failures[0])
        return None
    return check


def _coalesce(case: GeneratedCase, c: Configuration) -> Optional[str]:
    coalesced, _ = coalesce_program(c, tuple(case.extensions))
    semantics = semantics_for(Calculus.CH, case.extensions)
    graph = explore(coalesced, semantics, depth=EXPLORE_DEPTH, max_states=EXPLORE_STATES)
    for index, node in enumerate(graph.nodes):
        if error_positions(node):
            return f"estado {index} tem error em posição de avaliação"
    return None


def _translation_typing(case: GeneratedCase, c: Configuration) -> Optional[str]:
    try:
        if case.calculus is Calculus.ACT and Extension.SELRECV in case.extensions:
            TypeChecker(Calculus.ACT).check_config(lower_program(c))
        elif case.calculus is Calculus.ACT:
            TypeChecker(Calculus.CH).check_config(translate_config_a2c(c))
        else:
            result = translate_config_c2a(c, case.extensions, auto_coalesce=True)
            TypeChecker(Calculus.ACT).check_config(result.config)
    except TypeCheckError as e:
        return f"tradução mal tipada: {e}"
    return None


def _congruence(case: GeneratedCase, c: Configuration) -> Optional[str]:
    gc = Extension.SYNC in case.extensions
    for index, rewritten in enumerate(random_rewrites(c, 20, seed=case.seed)):
        if not config_equiv(c, rewritten, gc=gc):
            return f"reescrita {index} mudou a forma normal"
    perturbed = perturb_buffer(c, IntLit(42))
    if perturbed is not None and config_equiv(c, perturbed, gc=gc):
        return "configurações com buffers diferentes foram identificadas"
    return None


# Geradores de cada modo, percorridos em rodízio
_MODES: Dict[FuzzMode, Tuple[Tuple[str, ...], Property]] = {
    FuzzMode.PRESERVATION_CH: (("ch-choice",), _preservation),
    FuzzMode.PRESERVATION_ACT: (("act",), _preservation),
    FuzzMode.PROGRESS_CH: (("ch-choice",), _progress),
    FuzzMode.PROGRESS_ACT: (("act", "act-selrecv"), _progress),
    FuzzMode.A2C: (("act",), _simulation(Direction.A2C)),
    FuzzMode.C2A: (("ch-multi",), _simulation(Direction.C2A)),
    FuzzMode.SELRECV: (("act-selrecv",), _simulation(Direction.SELRECV)),
    FuzzMode.COALESCE: (("ch-multi",), _coalesce),
    FuzzMode.TRANSLATION_TYPING: (("act", "ch", "ch-multi", "act-selrecv"), _translation_typing),
    FuzzMode.CONGRUENCE: (("ch",), _congruence),
}


# ---------------------------------------------------------------------------
# Redução de contraexemplos
# ---------------------------------------------------------------------------

def _smaller_terms(m: Term) -> Iterator[Term]:
    """Variantes de ``m`` com um subtermo removido."""
    if isinstance(m, Let):
        if m.var not in free_vars(m.body):
            yield m.body
        for bound in _smaller_terms(m.bound):
            yield Let(m.var, bound, m.body)
        for body in _smaller_terms(m.body):
            yield Let(m.var, m.bound, body)
    elif isinstance(m, Fork) and m.body != Return(UnitValue()):
        yield Fork(Return(UnitValue()))
    elif isinstance(m, Spawn) and m.body != Return(UnitValue()):
        yield Spawn(Return(UnitValue()), m.mailbox, m.result)


def _smaller_configs(c: Configuration) -> Iterator[Configuration]:
    for index, leaf in enumerate(c.leaves):
        if isinstance(leaf, Thread) and len(c.leaves) > 1:
            yield Configuration(c.binders, c.leaves[:index] + c.leaves[index + 1:])
        if isinstance(leaf, Buffer) and leaf.values:
            yield c.replace({index: Buffer(leaf.name, leaf.values[:-1])})
        if isinstance(leaf, Actor) and leaf.mailbox:
            yield c.replace({index: Actor(leaf.name, leaf.term, leaf.mailbox[:-1])})
        if not isinstance(leaf, (Thread, Actor)):
            continue
        for smaller in _smaller_terms(leaf.term):
            if isinstance(leaf, Thread):
                yield c.replace({index: Thread(smaller)})
            else:
                yield c.replace({index: Actor(leaf.name, smaller, leaf.mailbox)})


def shrink(case: GeneratedCase, prop: Property, message: str) -> Counterexample:
    """Reduz gulosamente o contraexemplo enquanto a propriedade continuar falhando."""
    checker = TypeChecker(case.calculus, case.extensions)
    current, current_message, shrunk = case.config, message, False
    attempts = 0
    progress = True
    while progress and attempts < SHRINK_ATTEMPTS:
        progress = False
        for candidate in _smaller_configs(current):
            attempts += 1
            if attempts > SHRINK_ATTEMPTS:
                break
            try:
                candidate = checker.check_config(candidate)
                failure = prop(case, candidate)
            except WorkbenchError:
                continue
            if failure is not None:
                current, current_message, shrunk = candidate, failure, True
                progress = True
                break
    return Counterexample(case.seed, current_message, current, shrunk)


# ---------------------------------------------------------------------------
# Execução
# ---------------------------------------------------------------------------

def fuzz(mode: FuzzMode, count: int, seed: int = 0, size: Optional[int] = None,
         shrink_failures: bool = True) -> FuzzReport:
    """Gera ``count`` casos e verifica a propriedade do modo.

    Args:
        mode: Propriedade a testar.
        count: Número de casos.
        seed: Semente base; o caso ``i`` usa uma semente derivada dela.
        size: Tamanho dos programas gerados.
        shrink_failures: Reduz os contraexemplos encontrados.

    Returns:
        FuzzReport: contagens e contraexemplos (falhas são dados, não exceções).
    """
    mode = FuzzMode(mode)
    kinds, prop = _MODES[mode]
    report = FuzzReport(mode, count, seed)
    seeds = random.Random(seed)
    for index in range(count):
        case_seed = seeds.getrandbits(32)
        case = generate_case(kinds[index % len(kinds)], case_seed, size, check=False)
        try:
            checked = TypeChecker(case.calculus, case.extensions).check_config(case.config)
        except TypeCheckError as e:
            # o gerador só produz programas bem tipados: a rejeição é uma falha
            logger.warning("caso %d gerado mal tipado: %s", case_seed, e)
            report.failed += 1
            report.counterexamples.append(
                Counterexample(case_seed, f"programa gerado mal tipado: {e}", case.config))
            continue
        case = replace(case, config=checked)
        try:
            failure = prop(case, case.config)
        except (FuelExhausted, UnsupportedConstruct) as e:
            logger.debug("caso %d ignorado: %s", case_seed, e)
            report.skipped += 1
            continue
        except WorkbenchError as e:
            failure = f"{type(e).__name__}: {e}"
        if failure is None:
            report.passed += 1
            continue
        report.failed += 1
        example = Counterexample(case_seed, failure, case.config)
        if shrink_failures:
            example = shrink(case, prop, failure)
        report.counterexamples.append(example)
    logger.info("fuzz %s: %d ok, %d falhas, %d ignorados", mode.value, report.passed,
                report.failed, report.skipped)
    return report
