"""
Testes unitários para os escalonadores, a execução e a reprodução de traços.
"""

import unittest

from src.calculi.checker import Calculus
from src.calculi.configuration import Binder, Buffer, Configuration, Thread, final_values
from src.calculi.semantics import semantics_for
from src.calculi.steps import ProgressClass
from src.errors import FuelExhausted, ReplayError
from src.harness.scheduler import (
    RoundRobinScheduler,
    SeededScheduler,
    TraceStep,
    make_scheduler,
    replay,
    run,
    splitmix64,
)
from src.lang.terms import App, Give, IntLit, Let, Name, Rec, Return, Take, UnitValue, Var
from src.lang.types import INT, UNIT


def racing_givers():
    """Duas threads competem pelo buffer ``a``; uma terceira lê o primeiro valor."""
    return Configuration(
        (Binder("a", INT),),
        (Buffer("a"), Thread(Give(IntLit(1), Name("a"))), Thread(Give(IntLit(2), Name("a"))),
         Thread(Let("x", Take(Name("a")), Return(Var("x"))))),
    )


class TestSplitmix(unittest.TestCase):
    def test_reference_sequence(self):
        state, first = splitmix64(0)
        self.assertEqual(state, 0x9E3779B97F4A7C15)
        self.assertEqual(first, 0xE220A8397B1DCDAF)
        _, second = splitmix64(state)
        self.assertEqual(second, 0x6E789E6AA1B965F4)


class TestRun(unittest.TestCase):
    """Execução até a quiescência."""

    def setUp(self):
        self.semantics = semantics_for(Calculus.CH)

    def test_same_seed_same_trace(self):
        first = run(racing_givers(), self.semantics, SeededScheduler(7))
        second = run(racing_givers(), self.semantics, SeededScheduler(7))
        self.assertEqual(first.choices, second.choices)
        self.assertEqual(first.final, second.final)

    def test_quiescent_report(self):
        report = run(racing_givers(), self.semantics, SeededScheduler(0))
        self.assertTrue(report.quiescent)
        self.assertEqual(report.unclassified, ())
        self.assertIn(final_values(report.final), ([IntLit(1)], [IntLit(2)]))
        tags = {p.tag for p in report.classification}
        self.assertIn(ProgressClass.BUFFER, tags)

    def test_round_robin_is_deterministic(self):
        first = run(racing_givers(), self.semantics, RoundRobinScheduler())
        second = run(racing_givers(), self.semantics, make_scheduler(round_robin=True))
        self.assertEqual(first.choices, second.choices)
        self.assertEqual(first.scheduler, "round-robin")

    def test_fuel_exhausted_keeps_partial_trace(self):
        loop = Rec("f", "x", App(Var("f"), Var("x")), UNIT, UNIT)
        c = Configuration((), (Thread(App(loop, UnitValue())),))
        with self.assertRaises(FuelExhausted) as ctx:
            run(c, self.semantics, fuel=25)
        self.assertEqual(ctx.exception.report.step_count, 25)
        self.assertFalse(ctx.exception.report.quiescent)


class TestReplay(unittest.TestCase):
    """Reprodução de um traço gravado."""

    def setUp(self):
        self.semantics = semantics_for(Calculus.CH)
        self.report = run(racing_givers(), self.semantics, SeededScheduler(11))

    def test_replay_reaches_same_configuration(self):
        self.assertEqual(replay(self.report, self.semantics), self.report.final)

    def test_replay_rejects_missing_successor(self):
        first = self.report.steps[0]
        self.report.steps[0] = TraceStep(first.label, first.locus, 99, first.alternatives)
        with self.assertRaises(ReplayError):
            replay(self.report, self.semantics)


if __name__ == "__main__":
    unittest.main()
