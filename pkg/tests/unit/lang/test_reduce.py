"""
Testes unitários para a redução funcional →M, substituição e α-equivalência.
"""

import unittest

from src.lang.alpha import alpha_equal, term_key
from src.lang.builders import list_items, list_value
from src.lang.reduce import TermStatus, analyze, decompose, evaluate, plug, step_term
from src.lang.subst import NameSupply, fresh_name, free_vars, subst
from src.lang.terms import (
    App,
    ErrorValue,
    Give,
    IntLit,
    Lam,
    Let,
    Name,
    Prim,
    Rec,
    Return,
    StrLit,
    Take,
    UnitValue,
    Var,
    bool_of,
    is_pure,
)
from src.lang.types import INT


class TestReduction(unittest.TestCase):
    """Testes para step_term e evaluate."""

    def test_beta(self):
        m = App(Lam("x", Prim("add", (Var("x"), IntLit(1))), INT), IntLit(2))
        self.assertEqual(step_term(m), Prim("add", (IntLit(2), IntLit(1))))
        final, steps = evaluate(m, 10)
        self.assertEqual(final, Return(IntLit(3)))
        self.assertEqual(steps, 2)

    def test_let_return(self):
        m = Let("x", Return(IntLit(4)), Prim("neg", (Var("x"),)))
        self.assertEqual(evaluate(m, 10)[0], Return(IntLit(-4)))

    def test_primitives(self):
        self.assertTrue(bool_of(evaluate(Prim("gt", (IntLit(3), IntLit(2))), 5)[0].value))
        self.assertFalse(bool_of(evaluate(Prim("gt", (IntLit(1), IntLit(2))), 5)[0].value))
        self.assertEqual(evaluate(Prim("show", (IntLit(12),)), 5)[0], Return(StrLit("12")))

    def test_error_application_is_stuck(self):
        status = analyze(App(ErrorValue(), UnitValue()))
        self.assertIs(status.status, TermStatus.STUCK)
        self.assertIsNone(step_term(App(ErrorValue(), UnitValue())))

    def test_communication_is_primitive(self):
        m = Let("x", Take(Name("a")), Return(Var("x")))
        result = analyze(m)
        self.assertIs(result.status, TermStatus.PRIMITIVE)
        self.assertEqual(result.focus, Take(Name("a")))

    def test_decompose_and_plug(self):
        m = Let("x", Let("y", Take(Name("a")), Return(Var("y"))), Return(Var("x")))
        context, focus = decompose(m)
        self.assertEqual(focus, Take(Name("a")))
        self.assertEqual(plug(context, focus), m)

    def test_recursion_unfolds(self):
        # conta de n até 0
        body = Let("b", Prim("gt", (Var("n"), IntLit(0))),
                   Return(UnitValue()))
        fn = Rec("f", "n", body, INT, INT)
        self.assertIsNotNone(step_term(App(fn, IntLit(3))))

    def test_fuel_limits_steps(self):
        loop = Rec("f", "x", App(Var("f"), Var("x")), INT, INT)
        final, steps = evaluate(App(loop, IntLit(0)), 7)
        self.assertEqual(steps, 7)
        self.assertIsInstance(final, App)


class TestSubstitution(unittest.TestCase):
    """Testes para substituição e nomes frescos."""

    def test_substitution_avoids_capture(self):
        m = Return(Lam("y", Return(Var("x")), INT))
        result = subst(m, Var("y"), "x")
        self.assertEqual(free_vars(result), frozenset({"y"}))

    def test_shadowing(self):
        m = Let("x", Return(IntLit(1)), Return(Var("x")))
        self.assertEqual(subst(m, IntLit(9), "x"), m)

    def test_fresh_names(self):
        self.assertEqual(fresh_name("x", {"x%1"}), "x%2")
        supply = NameSupply({"v$1"})
        self.assertEqual(supply.fresh(), "v$2")
        self.assertEqual(supply.fresh("ch"), "ch$3")


class TestAlpha(unittest.TestCase):
    """Testes para α-equivalência."""

    def test_renamed_binders_are_equal(self):
        a = Return(Lam("x", Return(Var("x")), INT))
        b = Return(Lam("y", Return(Var("y")), INT))
        self.assertTrue(alpha_equal(a, b))
        self.assertEqual(term_key(a), term_key(b))

    def test_free_variables_distinguish(self):
        self.assertFalse(alpha_equal(Return(Var("x")), Return(Var("y"))))

    def test_purity(self):
        self.assertTrue(is_pure(Prim("add", (IntLit(1), IntLit(2)))))
        self.assertFalse(is_pure(Let("_", Give(IntLit(1), Name("a")), Return(UnitValue()))))


class TestListBuilders(unittest.TestCase):
    def test_list_value_roundtrip(self):
        values = [IntLit(1), IntLit(2), IntLit(3)]
        self.assertEqual(list_items(list_value(values, INT)), values)
        self.assertEqual(list_items(list_value([], INT)), [])
