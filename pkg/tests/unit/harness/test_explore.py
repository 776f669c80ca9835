"""
Testes unitários para a exploração exaustiva dos escalonamentos.
"""

import pytest

from src.calculi.checker import Calculus, Extension
from src.calculi.configuration import (
    Binder,
    Buffer,
    Configuration,
    Thread,
    final_value_keys,
    normal_key,
)
from src.calculi.semantics import semantics_for
from src.calculi.steps import ProgressClass
from src.harness.explore import explore
from src.lang.terms import Give, IntLit, Let, Name, Return, Take, Var
from src.lang.types import INT


def value_keys(*values):
    return final_value_keys(Configuration((), tuple(Thread(Return(v)) for v in values)))


@pytest.fixture
def racing_givers():
    return Configuration(
        (Binder("a", INT),),
        (Buffer("a"), Thread(Give(IntLit(1), Name("a"))), Thread(Give(IntLit(2), Name("a"))),
         Thread(Let("x", Take(Name("a")), Return(Var("x"))))),
    )


class TestExplore:
    def test_all_results_are_found(self, racing_givers):
        graph = explore(racing_givers, semantics_for(Calculus.CH))
        assert not graph.truncated
        assert graph.final_results() == {value_keys(IntLit(1)), value_keys(IntLit(2))}
        assert graph.unclassified() == []

    def test_states_are_deduplicated(self, racing_givers):
        graph = explore(racing_givers, semantics_for(Calculus.CH))
        keys = [normal_key(node) for node in graph.nodes]
        assert len(keys) == len(set(keys))
        assert all(edge.target < graph.state_count for edge in graph.edges)

    def test_depth_limit_truncates(self, racing_givers):
        graph = explore(racing_givers, semantics_for(Calculus.CH), depth=1)
        assert graph.truncated
        assert max(graph.depths) == 1

    def test_state_limit_truncates(self, racing_givers):
        graph = explore(racing_givers, semantics_for(Calculus.CH), max_states=2)
        assert graph.truncated
        assert graph.state_count == 2

    def test_deterministic_program_is_a_line(self):
        c = Configuration((Binder("a", INT),),
                          (Buffer("a", (IntLit(3),)), Thread(Take(Name("a")))))
        graph = explore(c, semantics_for(Calculus.CH))
        assert graph.is_line()
        assert graph.state_count == 2

    def test_deadlock_is_classified(self, corpus_config):
        semantics, checked = corpus_config("deadlock")
        graph = explore(checked, semantics)
        tags = {p.tag for progress in graph.quiescent.values() for p in progress}
        assert ProgressClass.BLOCKED_TAKE in tags
        assert graph.unclassified() == []

    def test_choice_outcomes(self, corpus_config):
        semantics, checked = corpus_config("choice")
        assert Extension.CHOICE in semantics.extensions
        graph = explore(checked, semantics)
        assert len(graph.final_results()) == 2
