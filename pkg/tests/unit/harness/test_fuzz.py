"""
Testes unitários para o gerador de programas e o fuzzing de propriedades.
"""

import importlib

import pytest

from src.calculi.checker import Calculus, Extension, TypeChecker
from src.calculi.configuration import Actor, Configuration, Thread
from src.errors import WorkbenchError
from src.harness.fuzz import FuzzMode, fuzz, shrink
from src.harness.generator import GeneratedCase, generate_case
from src.lang.terms import IntLit, Prim, UnitValue

# o pacote reexporta a função fuzz com o mesmo nome do módulo
fuzz_module = importlib.import_module("src.harness.fuzz")


class TestGenerator:
    @pytest.mark.parametrize("kind,calculus", [
        ("ch", Calculus.CH),
        ("ch-multi", Calculus.CH),
        ("ch-choice", Calculus.CH),
        ("act", Calculus.ACT),
        ("act-selrecv", Calculus.ACT),
    ])
    def test_cases_are_well_typed(self, kind, calculus):
        case = generate_case(kind, seed=5)
        assert case.calculus is calculus
        TypeChecker(case.calculus, case.extensions).check_config(case.config)

    def test_same_seed_same_program(self):
        assert generate_case("act", 9).config == generate_case("act", 9).config

    def test_selective_cases_enable_extension(self):
        case = generate_case("act-selrecv", 3)
        assert Extension.SELRECV in case.extensions
        assert all(isinstance(leaf, Actor) for leaf in case.config.leaves)

    def test_unknown_kind(self):
        with pytest.raises(WorkbenchError):
            generate_case("pi", 0)


class TestFuzz:
    @pytest.mark.parametrize("mode", list(FuzzMode))
    def test_small_runs_pass(self, mode):
        report = fuzz(mode, 4, seed=0, size=2)
        assert report.failed == 0, [c.message for c in report.counterexamples]
        assert report.passed > 0
        assert report.passed + report.skipped == 4

    def test_ill_typed_generated_case_is_a_failure(self, monkeypatch):
        bad = Configuration((), (Thread(Prim("add", (IntLit(1), UnitValue()))),))
        monkeypatch.setattr(fuzz_module, "generate_case",
                            lambda kind, seed, size, check: GeneratedCase(seed, Calculus.CH, frozenset(), bad))
        report = fuzz(FuzzMode.CONGRUENCE, 2, seed=0)
        assert report.failed == 2
        assert report.skipped == 0
        assert report.counterexamples[0].config == bad
        assert "mal tipado" in report.counterexamples[0].message

    def test_actor_progress_covers_both_generators(self, monkeypatch):
        kinds = []

        def recording(kind, seed, size, check):
            kinds.append(kind)
            return generate_case(kind, seed, size, check)

        monkeypatch.setattr(fuzz_module, "generate_case", recording)
        fuzz(FuzzMode.PROGRESS_ACT, 4, seed=0, size=2)
        assert set(kinds) == {"act", "act-selrecv"}

    def test_mode_accepts_plain_string(self):
        report = fuzz("congruence", 2, seed=1, size=2)
        assert report.mode is FuzzMode.CONGRUENCE

    def test_shrink_keeps_failing(self):
        case = generate_case("ch", 2, size=4)
        example = shrink(case, lambda _case, _c: "sempre falha", "sempre falha")
        assert example.message == "sempre falha"
        assert len(example.config.leaves) <= len(case.config.leaves)
