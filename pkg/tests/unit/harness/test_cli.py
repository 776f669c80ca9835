"""
Testes unitários para a linha de comando ``mm``.
"""

import json

import pytest

from src.cli import EXIT_INPUT, EXIT_OK, build_parser, main


@pytest.fixture(autouse=True)
def log_file(tmp_path, monkeypatch):
    monkeypatch.setattr("src.cli.settings.LOG_FILE", tmp_path / "mm.log")


class TestCommands:
    def test_check_corpus_example(self, capsys):
        assert main(["check", "chan_stack"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("ok: λ_ch")

    def test_run_json(self, capsys):
        assert main(["run", "actor_stack", "--seed", "3", "--format", "json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["quiescent"] is True
        assert data["seed"] == 3
        assert data["steps"]

    def test_explore_deadlock_is_classified(self, capsys):
        assert main(["explore", "deadlock"]) == EXIT_OK
        assert "não classificados: 0" in capsys.readouterr().out

    def test_translate_with_coalescing(self, capsys):
        assert main(["translate", "chan_stack", "--to", "act"]) == EXIT_OK
        assert "# coalescido" in capsys.readouterr().out

    def test_translate_to_same_calculus(self):
        assert main(["translate", "chan_stack", "--to", "ch"]) == EXIT_INPUT

    def test_coalesce_lists_tokens(self, capsys):
        assert main(["coalesce", "coalesce_three_types"]) == EXIT_OK
        tokens = [line for line in capsys.readouterr().out.splitlines() if line.startswith("# ")]
        assert len(tokens) == 3

    def test_lower_requires_actors(self):
        assert main(["lower-selrecv", "chan_stack"]) == EXIT_INPUT

    def test_simulate(self, capsys):
        assert main(["simulate", "actor_stack", "--direction", "a2c", "--depth", "2"]) == EXIT_OK
        assert "PASS" in capsys.readouterr().out

    def test_fuzz(self, capsys):
        assert main(["fuzz", "--mode", "congruence", "--count", "2", "--size", "2"]) == EXIT_OK
        assert "fuzz congruence" in capsys.readouterr().out


class TestInputErrors:
    def test_missing_file(self):
        assert main(["check", "nao_existe.mm"]) == EXIT_INPUT

    def test_parse_error(self, tmp_path):
        source = tmp_path / "ruim.mm"
        source.write_text("calculus ch\nmain return (", encoding="utf-8")
        assert main(["check", str(source)]) == EXIT_INPUT

    def test_type_error(self, tmp_path):
        source = tmp_path / "mal_tipado.mm"
        source.write_text("calculus ch\nmain add 1 ()\n", encoding="utf-8")
        assert main(["check", str(source)]) == EXIT_INPUT

    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["dance"])
