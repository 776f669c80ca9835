"""
Bancada de experimentos: sintaxe de superfície, execução, exploração,
equivalência, verificação de simulação, fuzzing e relatórios.
"""

from .corpus import corpus_names, load_example
from .equiv import config_equiv, random_rewrites
from .explore import ReachabilityGraph, explore
from .fuzz import FuzzMode, FuzzReport, fuzz
from .generator import GeneratedCase, generate_case
from .parser import parse_comp, parse_file, parse_program, parse_type
from .printer import render_comp, render_config, render_program, render_term, render_value
from .program import Program
from .reports import OutputFormat, format_report
from .scheduler import RoundRobinScheduler, SeededScheduler, TraceReport, make_scheduler, replay, run
from .simulation import Direction, SimulationReport, check_simulation

__all__ = [
    'Direction',
    'FuzzMode',
    'FuzzReport',
    'GeneratedCase',
    'OutputFormat',
    'Program',
    'ReachabilityGraph',
    'RoundRobinScheduler',
    'SeededScheduler',
    'SimulationReport',
    'TraceReport',
    'check_simulation',
    'config_equiv',
    'corpus_names',
    'explore',
    'format_report',
    'fuzz',
    'generate_case',
    'load_example',
    'make_scheduler',
    'parse_comp',
    'parse_file',
    'parse_program',
    'parse_type',
    'random_rewrites',
    'render_comp',
    'render_config',
    'render_program',
    'render_term',
    'render_value',
    'replay',
    'run',
]
