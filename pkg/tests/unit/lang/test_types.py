"""
Testes unitários para os tipos: variantes, tipos recursivos e renderização.
"""

import unittest

from hypothesis import given, settings, strategies as st

from src.errors import TypeFormationError
from src.lang.types import (
    BOOL,
    INT,
    STRING,
    UNIT,
    ChanRefType,
    Effect,
    FunType,
    MuType,
    ProdType,
    SumType,
    TypeVar,
    VariantType,
    canonical_type,
    free_type_vars,
    list_element,
    list_type,
    render_type,
    subst_type,
    type_equal,
    unfold,
)


class TestVariantType(unittest.TestCase):
    """Testes para VariantType."""

    def test_labels_are_sorted(self):
        t = VariantType.of({"Push": INT, "Pop": UNIT})
        self.assertEqual(t.label_names, ("Pop", "Push"))
        self.assertEqual(t, VariantType.of({"Pop": UNIT, "Push": INT}))

    def test_duplicate_labels_rejected(self):
        with self.assertRaises(TypeFormationError):
            VariantType((("A", INT), ("A", UNIT)))

    def test_label_type(self):
        t = VariantType.of({"Some": INT, "None": UNIT})
        self.assertEqual(t.label_type("Some"), INT)
        self.assertIsNone(t.label_type("Other"))


class TestRecursiveTypes(unittest.TestCase):
    """Testes para tipos recursivos e listas."""

    def test_list_element_roundtrip(self):
        self.assertEqual(list_element(list_type(INT)), INT)
        self.assertIsNone(list_element(INT))

    def test_list_binder_avoids_element_variables(self):
        t = list_type(TypeVar("L"))
        self.assertNotEqual(t.var, "L")
        self.assertEqual(list_element(t), TypeVar("L"))

    def test_alpha_equivalent_mu_types(self):
        a = MuType("X", SumType(UNIT, ProdType(INT, TypeVar("X"))))
        b = MuType("Y", SumType(UNIT, ProdType(INT, TypeVar("Y"))))
        self.assertTrue(type_equal(a, b))
        self.assertEqual(canonical_type(a), canonical_type(b))

    def test_unfold(self):
        mu = list_type(INT)
        self.assertEqual(unfold(mu), SumType(UNIT, ProdType(INT, mu)))

    def test_substitution_avoids_capture(self):
        t = MuType("Y", ProdType(TypeVar("X"), TypeVar("Y")))
        result = subst_type(t, "X", TypeVar("Y"))
        self.assertIn("Y", free_type_vars(result))
        self.assertNotEqual(result.var, "Y")


class TestRenderType(unittest.TestCase):
    """Testes para a renderização na sintaxe de superfície."""

    def test_base_types(self):
        self.assertEqual(render_type(UNIT), "unit")
        self.assertEqual(render_type(BOOL), "bool")
        self.assertEqual(render_type(list_type(STRING)), "List(string)")

    def test_effect_arrow(self):
        t = FunType(INT, UNIT, Effect(INT))
        self.assertEqual(render_type(t), "int -[int]-> unit")

    def test_precedence(self):
        t = ProdType(SumType(INT, UNIT), ChanRefType(INT))
        self.assertEqual(render_type(t), "(int + unit) * ChanRef(int)")


_base = st.sampled_from([UNIT, INT, STRING])
_types = st.recursive(
    _base,
    lambda inner: st.one_of(
        st.builds(ProdType, inner, inner),
        st.builds(SumType, inner, inner),
        st.builds(ChanRefType, inner),
    ),
    max_leaves=6,
)


@given(_types)
@settings(max_examples=100, deadline=None)
def test_list_type_recovers_any_element(t):
    assert list_element(list_type(t)) == t
