"""CLI behavior: outputs, exit codes, file writing, interactive play."""

import json

import pytest
from click.testing import CliRunner

from zahlenschlacht.cli import main
from zahlenschlacht.service import default_port


@pytest.fixture
def runner():
    return CliRunner()


class TestSolve:
    def test_known_first_player_win(self, runner):
        result = runner.invoke(main, ["solve", "--n", "15", "--d", "7"])
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert lines[0] == "A"
        assert lines[1].startswith("states: ")

    def test_known_second_player_win(self, runner):
        result = runner.invoke(main, ["solve", "--n", "17", "--d", "7"])
        assert result.exit_code == 0
        assert result.output.splitlines()[0] == "B"

    def test_budget_exit_code(self, runner):
        result = runner.invoke(main, ["solve", "--n", "2017", "--d", "8"])
        assert result.exit_code == 3
        assert "Z(2017,8)" in result.stderr

    def test_missing_flag_is_usage_error(self, runner):
        result = runner.invoke(main, ["solve", "--n", "15"])
        assert result.exit_code == 2


class TestTable:
    def test_csv_to_stdout(self, runner):
        result = runner.invoke(
            main, ["table", "--n", "4..8", "--d", "2..10", "--format", "csv"]
        )
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert lines[0] == "n,d,winner,annotation,states_visited"
        assert len(lines) == 1 + 5 * 9
        assert lines[1].startswith("4,2,")

    def test_identical_reruns(self, runner):
        args = ["table", "--n", "4..6", "--d", "2..8", "--format", "csv"]
        assert runner.invoke(main, args).output == runner.invoke(main, args).output

    def test_json_out_file(self, runner, tmp_path):
        out = tmp_path / "grid.json"
        result = runner.invoke(
            main,
            ["table", "--n", "5..5", "--d", "7..7", "--format", "json", "--out", str(out)],
        )
        assert result.exit_code == 0
        assert result.output == ""
        cells = json.loads(out.read_text("utf-8"))
        assert cells == [
            {
                "n": 5,
                "d": 7,
                "winner": "A",
                "annotation": "a:near-n",
                "states_visited": cells[0]["states_visited"],
            }
        ]

    def test_budget_cells_exit_3(self, runner):
        result = runner.invoke(
            main, ["table", "--n", "12..12", "--d", "2..3", "--budget", "10"]
        )
        assert result.exit_code == 3
        assert "budget exceeded at Z(12,2)" in result.stderr
        assert ",?,budget-exceeded,0" in result.output

    def test_bad_range_is_usage_error(self, runner):
        result = runner.invoke(main, ["table", "--n", "9..5", "--d", "2..4"])
        assert result.exit_code == 2


class TestVerify:
    def test_theorem_conformance_small_grid(self, runner):
        result = runner.invoke(
            main, ["verify", "--scope", "theorems", "--n", "5..9", "--d", "2..12"]
        )
        assert result.exit_code == 0
        assert "OK" in result.output
        assert "a:near-n" in result.output
        assert "conflicts=0" in result.output

    def test_strategy_walks_small_grid(self, runner):
        result = runner.invoke(
            main, ["verify", "--scope", "strategies", "--n", "5..9", "--d", "2..12"]
        )
        assert result.exit_code == 0
        assert "OK" in result.output
        assert "first-player plans checked:" in result.output
        assert "second-player defences checked:" in result.output

    def test_bad_scope_is_usage_error(self, runner):
        result = runner.invoke(main, ["verify", "--scope", "everything"])
        assert result.exit_code == 2


class TestPlay:
    def test_hot_seat_full_game(self, runner):
        result = runner.invoke(
            main,
            ["play", "--n", "5", "--d", "3", "--mode", "hot_seat"],
            input="3\n1\n2\n",
        )
        assert result.exit_code == 0
        assert "final pair 4 + 5 = 9" in result.output
        assert "winner: A" in result.output

    def test_illegal_input_reprompts(self, runner):
        result = runner.invoke(
            main,
            ["play", "--n", "5", "--d", "3", "--mode", "hot_seat"],
            input="9\n3\n1\n2\n",
        )
        assert result.exit_code == 0
        assert "winner: A" in result.output

    def test_vs_bot_move_and_abort(self, runner):
        result = runner.invoke(
            main, ["play", "--n", "15", "--d", "7"], input="1\n"
        )
        assert result.exit_code == 1
        assert "A crossed out 1 (residue 1)" in result.output
        assert "B crossed out" in result.output
        assert "aborted" in result.output

    def test_unknown_variant_rejected(self, runner):
        result = runner.invoke(main, ["play", "--n", "17", "--d", "7"])
        assert result.exit_code == 1

    def test_board_line_marks_superfluous(self, runner):
        result = runner.invoke(
            main,
            ["play", "--n", "15", "--d", "9", "--mode", "hot_seat"],
            input="9\n8\n1\n7\n2\n",
        )
        # after those five moves, 10 and 11 have no partner class left
        assert "10*(1)" in result.output
        assert "11*(2)" in result.output


def test_serve_port_resolution(monkeypatch):
    monkeypatch.delenv("ZAHLENSCHLACHT_PORT", raising=False)
    assert default_port() == 8000
    monkeypatch.setenv("ZAHLENSCHLACHT_PORT", "9123")
    assert default_port() == 9123
