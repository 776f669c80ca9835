"""
Testes unitários para a tradução de λ_ch para λ_act (assíncrona e síncrona).
"""

import pytest

from src.calculi.checker import Calculus, Extension
from src.calculi.configuration import Binder, Buffer, Configuration, Thread, final_value_keys
from src.calculi.semantics import semantics_for
from src.calculi.steps import ProgressClass, RuleLabel
from src.errors import CoalescingRequired, UnsupportedConstruct
from src.harness.scheduler import SeededScheduler, run
from src.harness.simulation import Direction, check_simulation
from src.lang.terms import Give, IntLit, Let, Name, Return, Take, UnitValue, Var
from src.lang.types import INT, STRING, UNIT, ActorRef2Type, ActorRefType, ChanRefType, SumType
from src.translate.ch_to_act import translate_config_c2a, translate_type_c2a


def handoff():
    """Uma thread entrega 1 pelo canal ``a``; outra o recebe."""
    return Configuration(
        (Binder("a", INT),),
        (Buffer("a"), Thread(Give(IntLit(1), Name("a"))),
         Thread(Let("x", Take(Name("a")), Return(UnitValue())))),
    )


class TestTypeTranslation:
    """Canais viram atores que aceitam valores ou pedidos."""

    def test_channel_reference(self):
        expected = ActorRefType(SumType(INT, ActorRefType(INT)))
        assert translate_type_c2a(ChanRefType(INT), INT) == expected

    def test_other_channel_type_needs_coalescing(self):
        with pytest.raises(CoalescingRequired):
            translate_type_c2a(ChanRefType(STRING), INT)

    def test_sync_reference(self):
        expected = ActorRef2Type(SumType(INT, ActorRef2Type(INT, INT)), UNIT)
        assert translate_type_c2a(ChanRefType(INT), INT, sync=True) == expected


class TestAsyncTranslation:
    """Tradução com um único tipo de canal."""

    def test_threads_become_actors(self):
        result = translate_config_c2a(handoff())
        assert result.channel_type == INT
        assert result.token_env is None
        assert len(result.config.leaves) == 3
        assert len(result.config.binders) == 3
        semantics_for(Calculus.ACT).typecheck(result.config)

    def test_handoff_terminates(self):
        result = translate_config_c2a(handoff())
        report = run(result.config, semantics_for(Calculus.ACT), SeededScheduler(1))
        assert report.quiescent
        assert not report.unclassified

    def test_give_is_a_send_then_one_buffer_loop(self):
        source = Configuration((Binder("a", INT),), (Buffer("a"), Thread(Give(IntLit(5), Name("a")))))
        result = translate_config_c2a(source)
        for seed in range(3):
            report = run(result.config, semantics_for(Calculus.ACT), SeededScheduler(seed))
            labels = [step.label for step in report.steps]
            assert labels.count(RuleLabel.SEND) == 1
            assert labels.count(RuleLabel.RECEIVE) == 1
            assert set(labels) == {RuleLabel.SEND, RuleLabel.RECEIVE, RuleLabel.LIFT_M}
            after = labels[labels.index(RuleLabel.RECEIVE) + 1:]
            assert labels.index(RuleLabel.SEND) < labels.index(RuleLabel.RECEIVE)
            assert after and set(after) == {RuleLabel.LIFT_M}
            assert report.quiescent
            assert ProgressClass.BLOCKED_RECEIVE in {p.tag for p in report.classification}
        simulation = check_simulation(source, Direction.C2A)
        assert simulation.passed, [str(f) for f in simulation.failures]
        (give,) = [r for r in simulation.records if r.source_rule is RuleLabel.GIVE]
        assert give.witness.count(RuleLabel.SEND) == 1
        assert RuleLabel.RECEIVE in give.witness

    def test_chan_stack_results(self, corpus_config):
        semantics, checked = corpus_config("chan_stack")
        source = run(checked, semantics, SeededScheduler(0))
        result = translate_config_c2a(checked, auto_coalesce=True)
        target = run(result.config, semantics_for(Calculus.ACT), SeededScheduler(0))
        assert final_value_keys(target.final) == final_value_keys(source.final)

    def test_several_channel_types_need_coalescing(self, corpus_config):
        _, checked = corpus_config("chan_two_stacks")
        with pytest.raises(CoalescingRequired):
            translate_config_c2a(checked)

    def test_auto_coalesce(self, corpus_config):
        semantics, checked = corpus_config("chan_two_stacks")
        result = translate_config_c2a(checked, auto_coalesce=True)
        assert result.token_env is not None
        target_semantics = semantics_for(Calculus.ACT)
        target_semantics.typecheck(result.config)
        source = run(checked, semantics, SeededScheduler(0))
        target = run(result.config, target_semantics, SeededScheduler(0))
        assert final_value_keys(target.final) == final_value_keys(source.final)

    def test_choose_is_unsupported(self, corpus_config):
        _, checked = corpus_config("choice")
        with pytest.raises(UnsupportedConstruct):
            translate_config_c2a(checked, [Extension.CHOICE])


class TestSyncTranslation:
    """Variante síncrona: cada ``take`` cria um ator auxiliar e espera por ele."""

    def test_sync_image_typechecks(self):
        result = translate_config_c2a(handoff(), sync=True)
        assert result.sync
        semantics_for(Calculus.ACT, [Extension.SYNC]).typecheck(result.config)

    def test_sync_run_uses_wait(self):
        result = translate_config_c2a(handoff(), sync=True)
        report = run(result.config, semantics_for(Calculus.ACT, [Extension.SYNC]), SeededScheduler(0))
        assert report.quiescent
        assert not report.unclassified
        assert RuleLabel.WAIT in [step.label for step in report.steps]

    def test_sync_channels_keep_their_own_types(self):
        c = Configuration(
            (Binder("a", INT), Binder("b", STRING)),
            (Buffer("a", (IntLit(1),)), Buffer("b"),
             Thread(Let("x", Take(Name("a")), Return(UnitValue())))),
        )
        result = translate_config_c2a(c, sync=True)
        assert result.token_env is None
        mailboxes = {b.name: b.type for b in result.config.binders}
        assert mailboxes["a"] == SumType(INT, ActorRef2Type(INT, INT))
        assert mailboxes["b"] == SumType(STRING, ActorRef2Type(STRING, STRING))


def test_variable_names_do_not_clash():
    c = Configuration(
        (Binder("a", INT),),
        (Buffer("a", (IntLit(4),)), Thread(Let("selfPid", Take(Name("a")), Return(Var("selfPid"))))),
    )
    result = translate_config_c2a(c)
    report = run(result.config, semantics_for(Calculus.ACT), SeededScheduler(0))
    assert final_value_keys(report.final) == final_value_keys(
        Configuration((), (Thread(Return(IntLit(4))),)))
