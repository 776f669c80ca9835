"""
Testes unitários para a avaliação do receive seletivo.
"""

import pytest

from src.calculi.selective import eval_selective_receive, guard_holds
from src.errors import GuardFuelExhausted, GuardIllTyped
from src.lang.terms import (
    App,
    IntLit,
    Prim,
    ReceivePattern,
    Rec,
    Return,
    UnitValue,
    Var,
    VariantValue,
    true_value,
)


def priority(label, threshold=None):
    guard = Return(true_value()) if threshold is None else Prim("gt", (Var("m"), IntLit(threshold)))
    return ReceivePattern(label, "m", guard, Return(Var("m")))


class TestSelectiveReceive:
    """Escolha da mensagem e do padrão."""

    def test_first_matching_message_wins(self):
        mailbox = (VariantValue("Standard", IntLit(1)), VariantValue("Priority", IntLit(9)),
                   VariantValue("Priority", IntLit(8)))
        match = eval_selective_receive([priority("Priority")], mailbox)
        assert match.message_index == 1
        assert match.value == IntLit(9)
        assert match.residual == (mailbox[0], mailbox[2])
        assert match.body == Return(IntLit(9))

    def test_first_pattern_wins_for_a_message(self):
        patterns = [priority("Priority", 100), priority("Priority"), priority("Priority", 0)]
        match = eval_selective_receive(patterns, (VariantValue("Priority", IntLit(3)),))
        assert match.pattern_index == 1

    def test_false_guard_skips_message(self):
        mailbox = (VariantValue("Priority", IntLit(3)), VariantValue("Priority", IntLit(7)))
        match = eval_selective_receive([priority("Priority", 5)], mailbox)
        assert match.message_index == 1
        assert match.residual == (mailbox[0],)

    def test_no_match_blocks(self):
        mailbox = (VariantValue("Standard", IntLit(1)),)
        assert eval_selective_receive([priority("Priority")], mailbox) is None
        assert eval_selective_receive([priority("Priority")], ()) is None

    @pytest.mark.parametrize("value, expected", [(6, True), (5, False), (-1, False)])
    def test_guard_holds(self, value, expected):
        assert guard_holds(priority("Priority", 5), VariantValue("Priority", IntLit(value)), 100) is expected


class TestGuardFailures:
    """Guardas que não terminam ou não produzem booleanos."""

    def test_divergent_guard(self):
        loop = App(Rec("f", "x", App(Var("f"), Var("x"))), UnitValue())
        pattern = ReceivePattern("Priority", "m", loop, Return(Var("m")))
        with pytest.raises(GuardFuelExhausted):
            eval_selective_receive([pattern], (VariantValue("Priority", IntLit(1)),), fuel=50)

    def test_non_boolean_guard(self):
        pattern = ReceivePattern("Priority", "m", Return(IntLit(3)), Return(Var("m")))
        with pytest.raises(GuardIllTyped):
            eval_selective_receive([pattern], (VariantValue("Priority", IntLit(1)),))

    def test_zero_fuel_is_honoured(self):
        mailbox = (VariantValue("Priority", IntLit(9)),)
        with pytest.raises(GuardFuelExhausted):
            eval_selective_receive([priority("Priority", 5)], mailbox, fuel=0)
