"""
Testes unitários para o abaixamento do receive seletivo.
"""

import pytest

from src.calculi.checker import Calculus
from src.calculi.configuration import Actor, Binder, Configuration, final_values
from src.calculi.semantics import semantics_for
from src.errors import UnsupportedConstruct, WorkbenchError
from src.harness.scheduler import SeededScheduler, run
from src.lang.terms import (
    IntLit,
    Rec,
    Name,
    Pair,
    ReceivePattern,
    Return,
    SelectiveReceive,
    Var,
    VariantValue,
    Wait,
    subterms,
    true_value,
)
from src.lang.types import INT, UNIT, Effect, FunType, ProdType, VariantType, list_type
from src.translate.selrecv import lower_config, lower_program, lower_type

MSG = VariantType.of({"A": INT, "B": INT})


def nodes(term):
    yield term
    for child in subterms(term):
        yield from nodes(child)


def waiting_for_b(*mailbox):
    body = SelectiveReceive((ReceivePattern("B", "x", Return(true_value()), Return(Var("x"))),))
    return Configuration((Binder("a", MSG),), (Actor("a", body, tuple(mailbox)),))


class TestLowerType:
    def test_function_threads_the_save_queue(self):
        queue = list_type(MSG)
        expected = FunType(INT, FunType(queue, ProdType(UNIT, queue), Effect(MSG)), Effect(MSG))
        assert lower_type(FunType(INT, UNIT, Effect(MSG))) == expected

    def test_base_types_are_unchanged(self):
        assert lower_type(MSG) == MSG


class TestLowerConfig:
    """Imagens de configurações com receive seletivo."""

    def test_one_image_per_mailbox_prefix(self):
        c = waiting_for_b(VariantValue("A", IntLit(1), ann=MSG), VariantValue("A", IntLit(2), ann=MSG))
        images = lower_config(c)
        assert len(images) == 3
        assert [len(image.leaves[0].mailbox) for image in images] == [2, 1, 0]

    def test_without_partitions(self):
        c = waiting_for_b(VariantValue("A", IntLit(1), ann=MSG))
        assert len(lower_config(c, partitions=False)) == 1

    def test_mailbox_cap(self):
        c = waiting_for_b(*(VariantValue("A", IntLit(i), ann=MSG) for i in range(3)))
        with pytest.raises(UnsupportedConstruct):
            lower_config(c, max_mailbox=2)

    def test_images_typecheck_without_extension(self):
        c = waiting_for_b(VariantValue("A", IntLit(1), ann=MSG), VariantValue("B", IntLit(2), ann=MSG))
        plain = semantics_for(Calculus.ACT)
        for image in lower_config(c):
            plain.typecheck(image)

    def test_lowered_run_skips_unmatched_message(self):
        c = waiting_for_b(VariantValue("A", IntLit(1), ann=MSG), VariantValue("B", IntLit(2), ann=MSG))
        report = run(lower_program(c), semantics_for(Calculus.ACT), SeededScheduler(0))
        (result,) = final_values(report.final)
        assert isinstance(result, Pair)
        assert result.left == IntLit(2)

    def test_append_is_bound_once_per_receive(self):
        lowered = lower_program(waiting_for_b(VariantValue("A", IntLit(1), ann=MSG)))
        (actor,) = lowered.leaves
        assert len([r for r in nodes(actor.term) if isinstance(r, Rec) and r.fn.startswith("append")]) == 1

    def test_wait_is_outside_the_fragment(self):
        c = Configuration((Binder("a", MSG),), (Actor("a", Wait(Name("a"))),))
        with pytest.raises(WorkbenchError):
            lower_config(c)


def test_priority_example(corpus_config):
    semantics, checked = corpus_config("priority")
    source = run(checked, semantics, SeededScheduler(0))
    (expected,) = final_values(source.final)
    assert expected == Pair(IntLit(0), IntLit(3))
    lowered = run(lower_program(checked), semantics_for(Calculus.ACT), SeededScheduler(0))
    (result,) = final_values(lowered.final)
    assert result.left == expected
