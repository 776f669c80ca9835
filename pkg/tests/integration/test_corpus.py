"""
Testes de integração: os exemplos do corpus de ponta a ponta, do arquivo
``.mm`` até os resultados de todos os escalonamentos e das traduções.
"""

import pytest

from src.calculi.checker import Calculus
from src.calculi.configuration import final_values
from src.calculi.semantics import semantics_for
from src.calculi.steps import ProgressClass, RuleLabel
from src.harness.explore import explore
from src.harness.printer import render_value
from src.harness.scheduler import SeededScheduler, run
from src.harness.simulation import Direction, check_simulation
from src.translate.act_to_ch import translate_config_a2c
from src.translate.ch_to_act import translate_config_c2a
from src.translate.selrecv import lower_program

pytestmark = pytest.mark.integration


def outcomes(config, semantics):
    graph = explore(config, semantics)
    assert not graph.truncated
    assert graph.unclassified() == []
    return {tuple(render_value(v, annotations=False) for v in final_values(c))
            for c in graph.quiescent_configs()}


@pytest.mark.parametrize("name,expected", [
    ("chan_stack", {("<Some = 5>",)}),
    ("actor_stack", {("<Some = 5>",)}),
    ("chan_two_stacks", {('(<Some = 5>, <Some = "five">)',)}),
    ("actor_two_stacks", {('(inl <Some = 5>, inr <Some = "five">)',)}),
    ("coalesce_three_types", {('(7, "seven")',)}),
    ("priority", {("(0, 3)",)}),
    ("choice", {("(inl 1, inr 2)",), ("(inr 2, inl 1)",)}),
])
def test_every_schedule_agrees(corpus_config, name, expected):
    semantics, checked = corpus_config(name)
    assert outcomes(checked, semantics) == expected


def test_deadlock_blocks_on_take(corpus_config):
    semantics, checked = corpus_config("deadlock")
    report = run(checked, semantics, SeededScheduler(0))
    assert report.quiescent
    assert ProgressClass.BLOCKED_TAKE in {p.tag for p in report.classification}
    assert report.unclassified == ()


def test_sync_wait_collects_finished_actors(corpus_config):
    semantics, checked = corpus_config("sync_wait")
    report = run(checked, semantics, SeededScheduler(0))
    assert report.quiescent
    assert RuleLabel.WAIT in {step.label for step in report.steps}
    assert report.final.leaves == ()


class TestTranslatedCorpus:
    @pytest.mark.parametrize("name", ["actor_stack", "actor_two_stacks"])
    def test_actors_to_channels_keep_results(self, corpus_config, name):
        semantics, checked = corpus_config(name)
        image = translate_config_a2c(checked)
        assert outcomes(image, semantics_for(Calculus.CH)) == outcomes(checked, semantics)

    @pytest.mark.parametrize("name", ["chan_stack", "coalesce_three_types"])
    def test_channels_to_actors_keep_results(self, corpus_config, name):
        semantics, checked = corpus_config(name)
        image = translate_config_c2a(checked, semantics.extensions, auto_coalesce=True).config
        assert outcomes(image, semantics_for(Calculus.ACT)) == outcomes(checked, semantics)

    def test_lowered_priority(self, corpus_config):
        semantics, checked = corpus_config("priority")
        lowered = lower_program(checked)
        results = outcomes(lowered, semantics_for(Calculus.ACT))
        assert len(results) == 1
        (values,) = results
        assert values[0].startswith("((0, 3),")

    @pytest.mark.slow
    def test_a2c_simulation_on_actor_stack(self, corpus_config):
        _, checked = corpus_config("actor_stack")
        report = check_simulation(checked, Direction.A2C, depth=8)
        assert report.passed, [str(f) for f in report.failures]

    def test_selrecv_simulation_on_priority(self, corpus_config):
        semantics, checked = corpus_config("priority")
        report = check_simulation(checked, Direction.SELRECV, semantics.extensions)
        assert report.passed, [str(f) for f in report.failures]
        assert RuleLabel.SEL_RECV in {record.source_rule for record in report.records}

    @pytest.mark.slow
    def test_c2a_simulation_on_chan_stack(self, corpus_config):
        semantics, checked = corpus_config("chan_stack")
        report = check_simulation(checked, Direction.C2A, semantics.extensions, depth=6)
        assert report.passed, [str(f) for f in report.failures]
        assert RuleLabel.GIVE in {record.source_rule for record in report.records}
