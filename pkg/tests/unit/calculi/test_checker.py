"""
Testes unitários para o verificador bidirecional de λ_ch e λ_act.
"""

import pytest

from src.calculi.checker import (
    Calculus,
    Extension,
    TypeChecker,
    TypeEnv,
    elaborate_term,
    typecheck_config_act,
    typecheck_config_ch,
    typecheck_term_act,
    typecheck_term_ch,
)
from src.calculi.configuration import Actor, Binder, Buffer, Configuration, Thread
from src.errors import AnnotationRequired, ConfigTypeError, TypeCheckError
from src.lang.terms import (
    App,
    Choose,
    ErrorValue,
    Give,
    Inl,
    IntLit,
    Lam,
    Let,
    Name,
    NewCh,
    Prim,
    Receive,
    ReceivePattern,
    Return,
    SelectiveReceive,
    SelfRef,
    Send,
    Spawn,
    StrLit,
    Take,
    UnitValue,
    Var,
    Wait,
)
from src.lang.types import (
    BOOL,
    INT,
    STRING,
    UNIT,
    ActorRef2Type,
    ActorRefType,
    ChanRefType,
    Effect,
    FunType,
    SumType,
    VariantType,
)


class TestTermTyping:
    """Tipagem de computações isoladas."""

    def test_newch_then_take(self):
        m = Let("c", NewCh(INT), Take(Var("c")))
        assert typecheck_term_ch(None, m) == INT

    def test_give_checks_carried_type(self):
        env = TypeEnv(names={"a": ChanRefType(INT)})
        assert typecheck_term_ch(env, Give(IntLit(1), Name("a"))) == UNIT
        with pytest.raises(TypeCheckError):
            typecheck_term_ch(env, Give(StrLit("x"), Name("a")))

    def test_take_elaborates_carried_type(self):
        env = TypeEnv(names={"a": ChanRefType(STRING)})
        elaborated, t = elaborate_term(Take(Name("a")), Calculus.CH, env)
        assert t == STRING
        assert elaborated.carried == STRING

    def test_unannotated_injection_needs_checking_mode(self):
        with pytest.raises(AnnotationRequired):
            typecheck_term_ch(None, Return(Inl(IntLit(1))))
        _, t = elaborate_term(Return(Inl(IntLit(1))), Calculus.CH, expected=SumType(INT, UNIT))
        assert t == SumType(INT, UNIT)

    def test_error_application_needs_expected_type(self):
        with pytest.raises(AnnotationRequired):
            typecheck_term_ch(None, App(ErrorValue(), UnitValue()))
        _, t = elaborate_term(App(ErrorValue(), UnitValue()), Calculus.CH, expected=INT)
        assert t == INT

    def test_actor_primitives_rejected_in_channels(self):
        with pytest.raises(TypeCheckError):
            typecheck_term_ch(None, Receive())

    def test_receive_has_mailbox_type(self):
        assert typecheck_term_act(None, Effect(STRING), Receive()) == STRING

    def test_self_reference_type(self):
        assert typecheck_term_act(None, Effect(INT), SelfRef()) == ActorRefType(INT)
        sync = typecheck_term_act(None, Effect(INT, STRING), SelfRef(), [Extension.SYNC])
        assert sync == ActorRef2Type(INT, STRING)

    def test_send_checks_target_mailbox(self):
        env = TypeEnv(names={"b": ActorRefType(INT)})
        assert typecheck_term_act(env, Effect(UNIT), Send(IntLit(1), Name("b"))) == UNIT
        with pytest.raises(TypeCheckError):
            typecheck_term_act(env, Effect(UNIT), Send(UnitValue(), Name("b")))

    def test_lambda_effect_in_actors(self):
        fn = Lam("x", Receive(), INT, Effect(STRING))
        checker = TypeChecker(Calculus.ACT)
        _, t = checker.synth_value(TypeEnv(), fn, Effect(STRING))
        assert t == FunType(INT, STRING, Effect(STRING))
        with pytest.raises(AnnotationRequired):
            checker.synth_value(TypeEnv(), Lam("x", Receive(), INT))
        # sem anotação, a função herda o efeito ambiente
        _, inherited = checker.synth_value(TypeEnv(), Lam("x", Receive(), INT), Effect(INT))
        assert inherited == FunType(INT, INT, Effect(INT))


class TestExtensions:
    """Regras que dependem das extensões habilitadas."""

    def test_invalid_extension_for_calculus(self):
        with pytest.raises(TypeCheckError):
            TypeChecker(Calculus.CH, [Extension.SYNC])
        with pytest.raises(TypeCheckError):
            TypeChecker(Calculus.ACT, [Extension.CHOICE])

    def test_choose_requires_choice(self):
        env = TypeEnv(names={"a": ChanRefType(INT), "b": ChanRefType(STRING)})
        m = Choose(Name("a"), Name("b"))
        with pytest.raises(TypeCheckError):
            typecheck_term_ch(env, m)
        assert typecheck_term_ch(env, m, [Extension.CHOICE]) == SumType(INT, STRING)

    def test_wait_requires_sync(self):
        env = TypeEnv(names={"b": ActorRef2Type(UNIT, INT)})
        with pytest.raises(TypeCheckError):
            typecheck_term_act(env, Effect(UNIT), Wait(Name("b")))
        assert typecheck_term_act(env, Effect(UNIT, UNIT), Wait(Name("b")), [Extension.SYNC]) == INT

    def test_spawn_result_in_sync_mode(self):
        m = Spawn(Return(IntLit(1)), UNIT, INT)
        t = typecheck_term_act(None, Effect(UNIT, UNIT), m, [Extension.SYNC])
        assert t == ActorRef2Type(UNIT, INT)
        with pytest.raises(TypeCheckError):
            typecheck_term_act(None, Effect(UNIT), m)

    def test_selective_receive(self):
        msg = VariantType.of({"A": INT, "B": STRING})
        pattern = ReceivePattern("A", "x", Return(Inl(UnitValue())), Return(Var("x")))
        m = SelectiveReceive((pattern,))
        assert typecheck_term_act(None, Effect(msg), m, [Extension.SELRECV]) == INT
        with pytest.raises(TypeCheckError):
            typecheck_term_act(None, Effect(INT), m, [Extension.SELRECV])
        with pytest.raises(TypeCheckError):
            typecheck_term_act(None, Effect(msg), m)

    def test_selective_receive_rejects_unknown_label(self):
        msg = VariantType.of({"A": INT})
        pattern = ReceivePattern("C", "x", Return(Inl(UnitValue())), Return(Var("x")))
        with pytest.raises(TypeCheckError):
            typecheck_term_act(None, Effect(msg), SelectiveReceive((pattern,)), [Extension.SELRECV])

    def test_guard_cannot_call_effectful_function(self):
        msg = VariantType.of({"A": INT})
        env = TypeEnv(variables={"f": FunType(UNIT, BOOL, Effect(msg))})
        pattern = ReceivePattern("A", "x", App(Var("f"), UnitValue()), Return(Var("x")))
        with pytest.raises(TypeCheckError):
            typecheck_term_act(env, Effect(msg), SelectiveReceive((pattern,)), [Extension.SELRECV])

    def test_guard_with_primitive_is_accepted(self):
        msg = VariantType.of({"A": INT})
        pattern = ReceivePattern("A", "x", Prim("gt", (Var("x"), IntLit(2))), Return(Var("x")))
        assert typecheck_term_act(None, Effect(msg), SelectiveReceive((pattern,)), [Extension.SELRECV]) == INT


class TestConfigTyping:
    """Tipagem de configurações e linearidade dos nomes."""

    def test_channel_configuration(self):
        c = Configuration((Binder("a", INT),),
                          (Buffer("a", (IntLit(1),)), Thread(Take(Name("a")))))
        checked = typecheck_config_ch(c)
        assert checked.binders == c.binders
        assert checked.leaves[1].term.carried == INT

    def test_ill_typed_buffer(self):
        c = Configuration((Binder("a", INT),), (Buffer("a", (StrLit("x"),)),))
        with pytest.raises(ConfigTypeError):
            typecheck_config_ch(c)

    def test_missing_buffer(self):
        c = Configuration((Binder("a", INT),), (Thread(Return(UnitValue())),))
        with pytest.raises(ConfigTypeError):
            typecheck_config_ch(c)

    def test_two_buffers_for_one_name(self):
        c = Configuration((Binder("a", INT),), (Buffer("a"), Buffer("a")))
        with pytest.raises(ConfigTypeError):
            typecheck_config_ch(c)

    def test_free_name_from_delta(self):
        env = TypeEnv(names={"a": ChanRefType(INT)})
        c = Configuration((), (Buffer("a", (IntLit(3),)),))
        assert typecheck_config_ch(c, env, {"a": INT}).leaves == c.leaves

    def test_strict_mode_requires_unit_threads(self):
        c = Configuration((), (Thread(Return(IntLit(1))),))
        typecheck_config_ch(c)
        with pytest.raises(ConfigTypeError):
            typecheck_config_ch(c, strict=True)

    def test_actor_configuration(self):
        c = Configuration((Binder("a", INT), Binder("b", INT)),
                          (Actor("a", Send(IntLit(1), Name("b"))), Actor("b", Receive(), (IntLit(2),))))
        assert len(typecheck_config_act(c).leaves) == 2

    def test_threads_rejected_in_actor_configuration(self):
        c = Configuration((), (Thread(Return(UnitValue())),))
        with pytest.raises(ConfigTypeError):
            typecheck_config_act(c)

    def test_ill_typed_mailbox(self):
        c = Configuration((Binder("a", INT),), (Actor("a", Receive(), (StrLit("x"),)),))
        with pytest.raises(ConfigTypeError):
            typecheck_config_act(c)
