"""
Testes unitários para a tradução de λ_act para λ_ch.
"""

import pytest

from src.calculi.checker import Calculus
from src.calculi.configuration import Actor, Binder, Buffer, Configuration, Thread, final_value_keys
from src.calculi.semantics import semantics_for
from src.errors import UnsupportedConstruct
from src.harness.scheduler import SeededScheduler, run
from src.lang.subst import NameSupply
from src.lang.terms import IntLit, Name, Receive, Return, Send, Take, Wait
from src.lang.types import INT, STRING, UNIT, ActorRef2Type, ActorRefType, ChanRefType, Effect, FunType
from src.translate.act_to_ch import A2CContext, translate_config_a2c, translate_term_a2c, translate_type_a2c


class TestTypeTranslation:
    """Tradução de tipos: referências de ator viram canais."""

    def test_actor_reference(self):
        assert translate_type_a2c(ActorRefType(INT)) == ChanRefType(INT)

    def test_function_gains_channel_parameter(self):
        t = FunType(INT, UNIT, Effect(STRING))
        assert translate_type_a2c(t) == FunType(INT, FunType(ChanRefType(STRING), UNIT))

    def test_nested_references(self):
        t = ActorRefType(ActorRefType(INT))
        assert translate_type_a2c(t) == ChanRefType(ChanRefType(INT))

    def test_sync_reference_is_unsupported(self):
        with pytest.raises(UnsupportedConstruct):
            translate_type_a2c(ActorRef2Type(INT, INT))


class TestTermTranslation:
    """Tradução de computações sob o canal corrente."""

    def setup_method(self):
        self.ctx = A2CContext(Name("a"), INT, NameSupply())

    def test_receive_takes_from_own_channel(self):
        assert translate_term_a2c(Receive(), self.ctx) == Take(Name("a"), carried=INT)

    def test_wait_is_unsupported(self):
        with pytest.raises(UnsupportedConstruct):
            translate_term_a2c(Wait(Name("b")), self.ctx)


class TestConfigTranslation:
    """Cada ator vira um buffer e uma thread."""

    def test_actor_becomes_buffer_and_thread(self):
        c = Configuration(
            (Binder("a", INT), Binder("b", INT)),
            (Actor("a", Send(IntLit(5), Name("b"))), Actor("b", Receive(), (IntLit(1),))),
        )
        translated = translate_config_a2c(c)
        assert translated.bound_names == ("a", "b")
        assert Buffer("b", (IntLit(1),)) in translated.leaves
        assert sum(isinstance(leaf, Thread) for leaf in translated.leaves) == 2
        semantics_for(Calculus.CH).typecheck(translated)

    def test_results_are_preserved(self):
        c = Configuration(
            (Binder("a", INT), Binder("b", INT)),
            (Actor("a", Send(IntLit(5), Name("b"))), Actor("b", Receive())),
        )
        translated = translate_config_a2c(c)
        report = run(translated, semantics_for(Calculus.CH), SeededScheduler(3))
        assert report.quiescent
        assert final_value_keys(report.final) == final_value_keys(
            Configuration((), (Thread(Return(IntLit(5))),)))

    def test_actor_stack(self, corpus_config):
        semantics, checked = corpus_config("actor_stack")
        source = run(checked, semantics, SeededScheduler(0))
        translated = translate_config_a2c(checked)
        target_semantics = semantics_for(Calculus.CH)
        target_semantics.typecheck(translated)
        target = run(translated, target_semantics, SeededScheduler(0))
        assert final_value_keys(target.final) == final_value_keys(source.final)
        assert not target.unclassified
