"""
Linha de comando ``mm``: checagem, execução, exploração, traduções e
verificação de propriedades dos programas ``.mm``.

Códigos de saída: 0 sucesso, 1 propriedade falsificada, 2 entrada inválida.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from loguru import logger

from src.calculi.checker import Calculus, Extension
from src.calculi.configuration import Configuration
from src.calculi.semantics import Semantics, semantics_for
from src.config import settings
from src.errors import FuelExhausted, WorkbenchError
from src.harness.corpus import CORPUS_DIR, corpus_names
from src.harness.explore import explore
from src.harness.fuzz import FuzzMode, fuzz
from src.harness.parser import parse_file
from src.harness.printer import render_config, render_program
from src.harness.program import Program
from src.harness.reports import (
    OutputFormat,
    format_report,
    fuzz_model,
    graph_model,
    simulation_model,
    trace_model,
)
from src.harness.scheduler import make_scheduler, run
from src.harness.simulation import Direction, check_simulation
from src.lang.types import render_type
from src.translate.act_to_ch import translate_config_a2c
from src.translate.ch_to_act import translate_config_c2a
from src.translate.coalesce import coalesce_program
from src.translate.selrecv import lower_program

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_INPUT = 2


class InterceptHandler(logging.Handler):
    """Encaminha os registros do ``logging`` da biblioteca para o loguru."""

    def emit(self, record: logging.LogRecord) -> None:
        try:
            level = logger.level(record.levelname).name
        except ValueError:
            level = record.levelno
        frame, depth = logging.currentframe(), 2
        while frame is not None and frame.f_code.co_filename == logging.__file__:
            frame = frame.f_back
            depth += 1
        logger.opt(depth=depth, exception=record.exc_info).log(level, record.getMessage())


def configure_logging(level: Optional[str] = None, log_file: Optional[Path] = None) -> None:
    """Configura os sinks do loguru (stderr e arquivo rotativo) e a ponte do ``logging``."""
    level = (level or settings.LOG_LEVEL).upper()
    logger.remove()
    logger.add(sys.stderr, level=level, format="{time:HH:mm:ss} | {level} | {message}")
    logger.add(
        str(log_file or settings.LOG_FILE),
        rotation="10 MB",
        retention="30 days",
        level=level,
        format="{time:YYYY-MM-DD HH:mm:ss} | {level} | {message}",
        enqueue=True,
    )
    logging.basicConfig(handlers=[InterceptHandler()], level=0, force=True)


# ---------------------------------------------------------------------------
# Carregamento
# ---------------------------------------------------------------------------

def resolve_source(source: str) -> Path:
    """Aceita um caminho ou o nome de um exemplo do corpus."""
    path = Path(source)
    if path.is_file():
        return path
    candidate = CORPUS_DIR / f"{source}.mm"
    if candidate.is_file():
        return candidate
    raise WorkbenchError(f"arquivo não encontrado: {source} "
                         f"(exemplos disponíveis: {', '.join(corpus_names())})")


def load(args: argparse.Namespace) -> Tuple[Program, Semantics, Configuration]:
    """Analisa o programa, aplica ``--calc``/``--ext`` e devolve a configuração checada."""
    program = parse_file(resolve_source(args.file))
    program = program.with_mode(args.calc, args.ext)
    semantics = semantics_for(program.resolved_calculus, program.extensions)
    checked = semantics.typecheck(program.to_config(), strict=args.strict)
    logger.debug("programa {} checado em λ_{}", args.file, semantics.calculus.value)
    return program, semantics, checked


# ---------------------------------------------------------------------------
# Sub-comandos
# ---------------------------------------------------------------------------

def cmd_check(args: argparse.Namespace) -> int:
    _, semantics, checked = load(args)
    exts = ", ".join(sorted(e.value for e in semantics.extensions)) or "nenhuma"
    print(f"ok: λ_{semantics.calculus.value} (extensões: {exts})")
    print(render_config(checked))
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    _, semantics, checked = load(args)
    scheduler = make_scheduler(args.seed, args.round_robin)
    try:
        report = run(checked, semantics, scheduler, fuel=args.fuel)
    except FuelExhausted as e:
        print(format_report(trace_model(e.report), args.format))
        raise
    print(format_report(trace_model(report), args.format))
    return EXIT_FALSIFIED if report.unclassified else EXIT_OK


def cmd_explore(args: argparse.Namespace) -> int:
    _, semantics, checked = load(args)
    graph = explore(checked, semantics, depth=args.depth, max_states=args.max_states)
    print(format_report(graph_model(graph), args.format))
    return EXIT_FALSIFIED if graph.unclassified() else EXIT_OK


def cmd_translate(args: argparse.Namespace) -> int:
    _, semantics, checked = load(args)
    target = Calculus(args.to)
    if semantics.calculus is target:
        raise WorkbenchError(f"o programa já está em λ_{target.value}")
    if target is Calculus.CH:
        if Extension.SELRECV in semantics.extensions:
            checked = lower_program(checked)
        print(render_config(translate_config_a2c(checked)))
        return EXIT_OK
    result = translate_config_c2a(checked, semantics.extensions, sync=args.sync,
                                  auto_coalesce=not args.sync)
    if result.token_env is not None:
        print(f"# coalescido: {len(result.token_env.tokens)} tokens")
    print(render_config(result.config))
    return EXIT_OK


def cmd_coalesce(args: argparse.Namespace) -> int:
    _, semantics, checked = load(args)
    if semantics.calculus is not Calculus.CH:
        raise WorkbenchError("a coalescência se aplica a programas λ_ch")
    coalesced, env = coalesce_program(checked, tuple(semantics.extensions))
    for _, label, carried in env.tokens:
        print(f"# {label}: {render_type(carried)}")
    print(render_config(coalesced))
    return EXIT_OK


def cmd_lower(args: argparse.Namespace) -> int:
    _, semantics, checked = load(args)
    if semantics.calculus is not Calculus.ACT:
        raise WorkbenchError("o abaixamento do receive seletivo se aplica a programas λ_act")
    print(render_config(lower_program(checked)))
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    _, semantics, checked = load(args)
    report = check_simulation(checked, Direction(args.direction), semantics.extensions,
                              depth=args.depth, budget=args.budget, seed=args.seed,
                              sync=args.sync)
    print(format_report(simulation_model(report), args.format))
    return EXIT_OK if report.passed else EXIT_FALSIFIED


def cmd_fuzz(args: argparse.Namespace) -> int:
    report = fuzz(FuzzMode(args.mode), args.count, seed=args.seed or 0, size=args.size,
                  shrink_failures=not args.no_shrink)
    print(format_report(fuzz_model(report), args.format))
    return EXIT_OK if report.ok else EXIT_FALSIFIED


def cmd_render(args: argparse.Namespace) -> int:
    program = parse_file(resolve_source(args.file)).with_mode(args.calc, args.ext)
    print(render_program(program))
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argumentos
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mm", description="Bancada de cálculos concorrentes "
                                                            "com canais e atores")
    parser.add_argument("--log-level", default=None, help="nível de log (padrão: LOG_LEVEL)")
    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--format", type=OutputFormat, choices=list(OutputFormat),
                        default=OutputFormat.TEXT, help="formato dos relatórios")

    common = argparse.ArgumentParser(add_help=False, parents=[output])
    common.add_argument("file", help="arquivo .mm ou nome de um exemplo do corpus")
    common.add_argument("--calc", choices=[c.value for c in Calculus], default=None,
                        help="sobrepõe a declaração calculus do arquivo")
    common.add_argument("--ext", action="append", choices=[e.value for e in Extension],
                        default=None, help="extensão habilitada (repetível)")
    common.add_argument("--strict", action="store_true",
                        help="exige tipo unitário em threads e atores")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="checa os tipos do programa")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("run", parents=[common], help="executa com um escalonador")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--fuel", type=int, default=None)
    p.add_argument("--round-robin", action="store_true")
    p.set_defaults(handler=cmd_run)

    p = sub.add_parser("explore", parents=[common], help="explora todos os escalonamentos")
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--max-states", type=int, default=None)
    p.set_defaults(handler=cmd_explore)

    p = sub.add_parser("translate", parents=[common], help="traduz para o outro cálculo")
    p.add_argument("--to", required=True, choices=[c.value for c in Calculus])
    p.add_argument("--sync", action="store_true", help="tradução c2a síncrona (com wait)")
    p.set_defaults(handler=cmd_translate)

    p = sub.add_parser("coalesce", parents=[common], help="coalesce os tipos de canal")
    p.set_defaults(handler=cmd_coalesce)

    p = sub.add_parser("lower-selrecv", parents=[common], help="abaixa o receive seletivo")
    p.set_defaults(handler=cmd_lower)

    p = sub.add_parser("simulate", parents=[common], help="verifica a simulação de uma tradução")
    p.add_argument("--direction", required=True, choices=[d.value for d in Direction])
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--sync", action="store_true")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("fuzz", parents=[output], help="testa propriedades com programas gerados")
    p.add_argument("--mode", required=True, choices=[m.value for m in FuzzMode])
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", type=int, default=None)
    p.add_argument("--no-shrink", action="store_true")
    p.set_defaults(handler=cmd_fuzz)

    p = sub.add_parser("render", parents=[common], help="reimprime o programa")
    p.set_defaults(handler=cmd_render)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Ponto de entrada do comando ``mm``."""
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except WorkbenchError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_INPUT
    except KeyboardInterrupt:
        logger.info("Execução interrompida pelo usuário")
        return EXIT_INPUT
    except Exception as e:
        logger.opt(exception=True).critical(f"Erro crítico: {str(e)}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
