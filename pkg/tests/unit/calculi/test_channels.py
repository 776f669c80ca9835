"""
Testes unitários para a semântica de configurações de λ_ch.
"""

import unittest

from src.calculi.channels import classify_progress_ch, step_config_ch
from src.calculi.checker import Extension
from src.calculi.configuration import Binder, Buffer, Configuration, Thread, final_values
from src.calculi.steps import ProgressClass, RuleLabel
from src.errors import NotQuiescentError
from src.lang.terms import (
    App,
    Choose,
    ErrorValue,
    Fork,
    Give,
    Inl,
    Inr,
    IntLit,
    Let,
    Name,
    NewCh,
    Return,
    Take,
    UnitValue,
)
from src.lang.types import INT, SumType


def drive(c, extensions=()):
    """Segue sempre o primeiro sucessor; devolve os rótulos e a configuração final."""
    labels = []
    while True:
        transitions = step_config_ch(c, extensions)
        if not transitions:
            return labels, c
        labels.append(transitions[0].label)
        c = transitions[0].target


def one_channel(*leaves, values=()):
    return Configuration((Binder("a", INT),), (Buffer("a", tuple(values)),) + tuple(leaves))


class TestChannelSteps(unittest.TestCase):
    """Regras de redução de threads e buffers."""

    def test_give_then_take(self):
        c = one_channel(Thread(Let("u", Give(IntLit(1), Name("a")), Take(Name("a")))))
        labels, final = drive(c)
        self.assertEqual(labels, [RuleLabel.GIVE, RuleLabel.LIFT_M, RuleLabel.TAKE])
        self.assertEqual(final_values(final), [IntLit(1)])

    def test_buffer_is_fifo(self):
        c = one_channel(Thread(Take(Name("a"))), values=(IntLit(1), IntLit(2)))
        (transition,) = step_config_ch(c)
        self.assertIs(transition.label, RuleLabel.TAKE)
        buffers = [leaf for leaf in transition.target.leaves if isinstance(leaf, Buffer)]
        self.assertEqual(buffers[0].values, (IntLit(2),))
        self.assertEqual(final_values(transition.target), [IntLit(1)])

    def test_newch_binds_an_empty_buffer(self):
        (transition,) = step_config_ch(Configuration((), (Thread(NewCh(INT)),)))
        self.assertIs(transition.label, RuleLabel.NEWCH)
        target = transition.target
        self.assertEqual(len(target.binders), 1)
        name = target.binders[0].name
        self.assertIn(Buffer(name), target.leaves)
        self.assertIn(Thread(Return(Name(name))), target.leaves)

    def test_fork_spawns_a_thread(self):
        c = Configuration((), (Thread(Let("u", Fork(Return(IntLit(2))), Return(IntLit(3)))),))
        labels, final = drive(c)
        self.assertEqual(labels[0], RuleLabel.FORK)
        self.assertEqual(final_values(final), [IntLit(2), IntLit(3)])

    def test_locus_is_the_reducing_leaf(self):
        c = one_channel(Thread(Give(IntLit(1), Name("a"))))
        (transition,) = step_config_ch(c)
        self.assertEqual(transition.locus, 1)

    def test_successors_are_deduplicated(self):
        thread = Thread(Give(IntLit(1), Name("a")))
        transitions = step_config_ch(one_channel(thread, thread))
        self.assertEqual(len(transitions), 1)


class TestChoice(unittest.TestCase):
    """Escolha guardada por entrada (extensão ``choice``)."""

    def setUp(self):
        ann = SumType(INT, INT)
        self.config = Configuration(
            (Binder("a", INT), Binder("b", INT)),
            (Buffer("a", (IntLit(1),)), Buffer("b", (IntLit(2),)),
             Thread(Choose(Name("a"), Name("b"), ann=ann))),
        )

    def test_choose_requires_extension(self):
        self.assertEqual(step_config_ch(self.config), ())
        tags = [p.tag for p in classify_progress_ch(self.config)]
        self.assertIn(ProgressClass.UNCLASSIFIED, tags)

    def test_both_sides_enabled(self):
        transitions = step_config_ch(self.config, [Extension.CHOICE])
        labels = {t.label for t in transitions}
        self.assertEqual(labels, {RuleLabel.CHOOSE_L, RuleLabel.CHOOSE_R})
        results = [final_values(t.target) for t in transitions]
        self.assertIn([Inl(IntLit(1))], results)
        self.assertIn([Inr(IntLit(2))], results)

    def test_blocked_choose(self):
        c = Configuration(
            (Binder("a", INT), Binder("b", INT)),
            (Buffer("a"), Buffer("b"), Thread(Choose(Name("a"), Name("b")))),
        )
        tags = [p.tag for p in classify_progress_ch(c, [Extension.CHOICE])]
        self.assertEqual(tags.count(ProgressClass.BLOCKED_CHOOSE), 1)


class TestProgressClassification(unittest.TestCase):
    """Classificação de configurações quiescentes."""

    def test_blocked_take(self):
        c = one_channel(Thread(Take(Name("a"))))
        progress = classify_progress_ch(c)
        blocked = [p for p in progress if p.tag is ProgressClass.BLOCKED_TAKE]
        self.assertEqual(len(blocked), 1)
        self.assertEqual(blocked[0].detail, "a")
        self.assertIn(ProgressClass.BUFFER, [p.tag for p in progress])

    def test_fully_reduced(self):
        c = Configuration((), (Thread(Return(UnitValue())),))
        (progress,) = classify_progress_ch(c)
        self.assertIs(progress.tag, ProgressClass.FULLY_REDUCED)

    def test_stuck_error_is_unclassified(self):
        c = Configuration((), (Thread(App(ErrorValue(), UnitValue())),))
        (progress,) = classify_progress_ch(c)
        self.assertIs(progress.tag, ProgressClass.UNCLASSIFIED)

    def test_classify_requires_quiescence(self):
        c = one_channel(Thread(Give(IntLit(1), Name("a"))))
        with self.assertRaises(NotQuiescentError):
            classify_progress_ch(c)


if __name__ == "__main__":
    unittest.main()
