"""
Testes unitários para a verificação de simulação das traduções.
"""

import pytest

from src.calculi.checker import Calculus, Extension
from src.calculi.configuration import Actor, Binder, Buffer, Configuration, Thread
from src.calculi.semantics import semantics_for
from src.errors import NoWitness
from src.harness.simulation import Direction, check_simulation, search_witness
from src.lang.terms import (
    Give,
    IntLit,
    Let,
    Name,
    Receive,
    ReceivePattern,
    Return,
    SelectiveReceive,
    Send,
    Take,
    UnitValue,
    Var,
    VariantValue,
    true_value,
)
from src.lang.types import INT, VariantType

MSG = VariantType.of({"A": INT, "B": INT})


def send_receive():
    return Configuration(
        (Binder("a", INT), Binder("b", INT)),
        (Actor("a", Send(IntLit(5), Name("b"))), Actor("b", Receive())),
    )


def handoff():
    return Configuration(
        (Binder("a", INT),),
        (Buffer("a"), Thread(Give(IntLit(1), Name("a"))),
         Thread(Let("x", Take(Name("a")), Return(UnitValue())))),
    )


def selective():
    body = SelectiveReceive((ReceivePattern("B", "x", Return(true_value()), Return(Var("x"))),))
    mailbox = (VariantValue("A", IntLit(1), ann=MSG), VariantValue("B", IntLit(2), ann=MSG))
    return Configuration((Binder("a", MSG),), (Actor("a", body, mailbox),))


class TestSimulation:
    def test_actors_to_channels(self):
        report = check_simulation(send_receive(), Direction.A2C)
        assert report.passed
        assert report.records
        assert all(record.matched for record in report.records)
        assert report.max_target_steps >= 1

    def test_channels_to_actors(self):
        report = check_simulation(handoff(), Direction.C2A)
        assert report.passed, [str(f) for f in report.failures]

    def test_channels_to_actors_sync(self):
        report = check_simulation(handoff(), Direction.C2A, sync=True)
        assert report.passed, [str(f) for f in report.failures]

    def test_selective_receive_partitions(self):
        report = check_simulation(selective(), Direction.SELRECV, frozenset({Extension.SELRECV}))
        assert report.passed, [str(f) for f in report.failures]
        partitions = {record.partition for record in report.records}
        assert partitions == {0, 1, 2}

    def test_single_schedule(self):
        report = check_simulation(handoff(), Direction.C2A, seed=3)
        assert report.passed
        assert report.source_states >= 1

    def test_tiny_budget_fails(self):
        report = check_simulation(send_receive(), Direction.A2C, budget=0)
        assert not report.passed
        assert report.verdict == "fail"
        assert report.failures

    def test_stop_on_failure_raises(self):
        with pytest.raises(NoWitness):
            check_simulation(send_receive(), Direction.A2C, budget=0, stop_on_failure=True)


def test_search_witness_finds_goal():
    semantics = semantics_for(Calculus.CH)
    start = semantics.normalize(handoff())
    goals = {semantics.key(t.target) for t in semantics.step(start)}
    path = search_witness(start, goals, semantics, 4, False)
    assert path is not None
    assert len(path) == 1


def test_search_witness_honours_zero_state_limit():
    semantics = semantics_for(Calculus.CH)
    start = semantics.normalize(handoff())
    first = {semantics.key(t.target) for t in semantics.step(start)}
    goals = {semantics.key(u.target) for t in semantics.step(start)
             for u in semantics.step(t.target)} - first
    assert len(search_witness(start, goals, semantics, 4)) == 2
    assert search_witness(start, goals, semantics, 4, max_states=0) is None
