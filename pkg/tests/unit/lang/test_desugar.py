"""
Testes unitários para a expansão do açúcar sintático.
"""

import pytest

from src.lang.desugar import BoolLit, CaseList, If, LetValue, ListCons, ListNil, Seq, desugar
from src.lang.reduce import evaluate
from src.lang.terms import App, CaseSum, IntLit, Lam, Let, Return, Roll, UnitValue, Var, bool_of
from src.lang.types import INT, list_type


class TestDesugar:
    """Testes para desugar."""

    def test_let_value_becomes_application(self):
        m = desugar(LetValue("x", IntLit(1), Return(Var("x"))))
        assert m == App(Lam("x", Return(Var("x"))), IntLit(1))

    def test_sequence_uses_unused_variable(self):
        m = desugar(Seq(Return(UnitValue()), Return(Var("_%1"))))
        assert isinstance(m, Let)
        assert m.var != "_%1"

    def test_if_evaluates_branches(self):
        m = desugar(If(BoolLit(False), Return(IntLit(1)), Return(IntLit(2))))
        assert isinstance(m, CaseSum)
        assert evaluate(m, 5)[0] == Return(IntLit(2))

    def test_bool_literals(self):
        assert bool_of(desugar(BoolLit(True))) is True
        assert bool_of(desugar(BoolLit(False))) is False

    def test_list_annotations_propagate(self):
        t = list_type(INT)
        v = desugar(ListCons(IntLit(1), ListNil(ann=t), ann=t))
        assert isinstance(v, Roll)
        assert v.ann == t
        assert v.value.value.right.ann == t

    def test_case_list_reduces(self):
        t = list_type(INT)
        lst = ListCons(IntLit(7), ListNil(ann=t), ann=t)
        m = desugar(CaseList(lst, Return(IntLit(0)), "h", "t", Return(Var("h"))))
        assert evaluate(m, 20)[0] == Return(IntLit(7))

    def test_idempotent_on_core_terms(self):
        core = Let("x", Return(IntLit(1)), Return(Var("x")))
        assert desugar(core) == core

    @pytest.mark.parametrize("cond,expected", [(True, 1), (False, 2)])
    def test_if_branches(self, cond, expected):
        m = desugar(If(BoolLit(cond), Return(IntLit(1)), Return(IntLit(2))))
        assert evaluate(m, 5)[0] == Return(IntLit(expected))
