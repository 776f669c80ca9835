"""
Testes unitários para o analisador da sintaxe de superfície e o corpus de exemplos.
"""

import unittest

import pytest

from src.calculi.checker import Calculus, Extension
from src.calculi.configuration import Configuration
from src.errors import ParseError, WorkbenchError
from src.harness.corpus import corpus_names, corpus_path, load_example
from src.harness.parser import parse_comp, parse_program, parse_type
from src.lang.terms import IntLit, Let, Return, Take, Var
from src.lang.types import INT, STRING, UNIT, Effect, FunType, SumType, list_type, render_type


class TestParseTypes(unittest.TestCase):
    """Tipos da sintaxe de superfície."""

    def test_effect_arrow(self):
        self.assertEqual(parse_type("int -[int]-> unit"), FunType(INT, UNIT, Effect(INT)))

    def test_list_sugar(self):
        self.assertEqual(parse_type("List(string)"), list_type(STRING))

    def test_render_round_trip(self):
        for text in ("int -[int]-> unit", "List(string)", "(int + unit) * ChanRef(int)"):
            self.assertEqual(render_type(parse_type(text)), text)

    def test_sum(self):
        self.assertEqual(parse_type("int + string"), SumType(INT, STRING))


class TestParsePrograms(unittest.TestCase):
    """Programas, declarações e erros de sintaxe."""

    def test_parse_comp(self):
        self.assertEqual(parse_comp("return 1"), Return(IntLit(1)))
        self.assertEqual(parse_comp("let x <= take a in return x"),
                         Let("x", Take(Var("a")), Return(Var("x"))))

    def test_declarations(self):
        program = parse_program("calculus act\nextensions selrecv\nmailbox int\nmain receive")
        self.assertIs(program.calculus, Calculus.ACT)
        self.assertEqual(program.extensions, frozenset({Extension.SELRECV}))
        self.assertEqual(program.mailbox, INT)

    def test_syntax_error_position(self):
        with self.assertRaises(ParseError) as ctx:
            parse_program("calculus ch\nmain\n  return ) 1")
        self.assertEqual(ctx.exception.line, 3)
        self.assertIsNotNone(ctx.exception.column)

    def test_main_becomes_single_thread(self):
        c = parse_program("calculus ch\nmain return 1").to_config()
        self.assertIsInstance(c, Configuration)
        self.assertEqual(len(c.leaves), 1)
        self.assertEqual(c.binders, ())

    def test_main_becomes_bound_actor(self):
        c = parse_program("calculus act\nmailbox int\nmain receive").to_config()
        self.assertEqual(len(c.binders), 1)
        self.assertEqual(c.binders[0].type, INT)

    def test_with_mode_overrides_declarations(self):
        program = parse_program("calculus ch\nmain return 1").with_mode(Calculus.ACT, None)
        self.assertIs(program.resolved_calculus, Calculus.ACT)


class TestCorpus:
    """Todos os exemplos do corpus são analisados e tipados."""

    def test_unknown_example(self):
        with pytest.raises(WorkbenchError):
            corpus_path("nao-existe")

    def test_names_are_sorted(self):
        names = corpus_names()
        assert names == sorted(names)
        assert "chan_stack" in names

    @pytest.mark.parametrize("name", corpus_names())
    def test_example_typechecks(self, name, corpus_config):
        semantics, checked = corpus_config(name)
        assert checked.leaves
        assert semantics.calculus is load_example(name).resolved_calculus
