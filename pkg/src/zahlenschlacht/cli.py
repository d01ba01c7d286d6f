"""Command-line front end: solve, table, verify, play, serve."""

from __future__ import annotations

import sys
from collections import Counter

import click

from .core import GameConfig, GameError, IllegalMove
from .service import create_app, default_port
from .session import MODE_HOT_SEAT, MODE_VS_BOT, MODES, SessionStore, UnknownVariant
from .solver import (
    ANNOTATION_BUDGET,
    ANNOTATION_OPEN,
    DEFAULT_BUDGET,
    BudgetExceeded,
    StrategyStuck,
    solve as solve_config,
    verify_defence,
    verify_plan,
    winner_table,
)
from .strategy_a import opening_plan
from .strategy_b import known_second_player_win

EXIT_FAILURES = 1
EXIT_BUDGET = 3


class RangeParam(click.ParamType):
    """Inclusive integer range: `a..b`, or a single `a` meaning a..a."""

    name = "range"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        text = str(value)
        lo, sep, hi = text.partition("..")
        try:
            lo_i = int(lo)
            hi_i = int(hi) if sep else lo_i
        except ValueError:
            self.fail(f"{text!r} is not a range like 4..16", param, ctx)
        if hi_i < lo_i:
            self.fail(f"empty range {text!r}", param, ctx)
        return lo_i, hi_i


RANGE = RangeParam()

budget_option = click.option(
    "--budget",
    type=int,
    default=DEFAULT_BUDGET,
    show_default=True,
    help="Largest state space a single solve may touch.",
)


@click.group()
def main():
    """Zahlenschlacht: crossing out numbers until two remain."""


@main.command()
@click.option("--n", type=int, required=True, help="Board size.")
@click.option("--d", type=int, required=True, help="Divisor.")
@budget_option
def solve(n: int, d: int, budget: int):
    """Print the winner of Z(n, d) under optimal play."""
    try:
        value = solve_config(GameConfig(n, d), budget=budget)
    except BudgetExceeded as exc:
        click.echo(f"Z({n},{d}): {exc}", err=True)
        sys.exit(EXIT_BUDGET)
    click.echo(value.winner)
    click.echo(f"states: {value.states_visited}")


@main.command()
@click.option("--n", "n_range", type=RANGE, required=True, help="Board sizes a..b.")
@click.option("--d", "d_range", type=RANGE, required=True, help="Divisors a..b.")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["csv", "json"]),
    default="csv",
    show_default=True,
)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
@budget_option
def table(n_range, d_range, fmt, out, budget):
    """Solve a grid of variants and write the winner table."""
    result = winner_table(n_range, d_range, budget=budget)
    text = result.to_csv() if fmt == "csv" else result.to_json()
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    unsolved = [c for c in result.cells if c.annotation == ANNOTATION_BUDGET]
    if unsolved:
        first = unsolved[0]
        click.echo(f"budget exceeded at Z({first.n},{first.d})", err=True)
        sys.exit(EXIT_BUDGET)


@main.command()
@click.option(
    "--scope",
    type=click.Choice(["theorems", "strategies"]),
    required=True,
    help="What to check: solved-value conformance, or strategy walks.",
)
@click.option("--n", "n_range", type=RANGE, default=(5, 15), show_default=True)
@click.option("--d", "d_range", type=RANGE, default=(2, 18), show_default=True)
@budget_option
def verify(scope, n_range, d_range, budget):
    """Check predicted winners or constructive strategies over a grid."""
    if scope == "theorems":
        failures = _verify_theorems(n_range, d_range, budget)
    else:
        failures = _verify_strategies(n_range, d_range, budget)
    if failures:
        click.echo(f"FAILURES: {failures}")
        sys.exit(EXIT_FAILURES)
    click.echo("OK")


def _verify_theorems(n_range, d_range, budget) -> int:
    result = winner_table(n_range, d_range, budget=budget)
    per_label = Counter(c.annotation for c in result.cells)
    conflict_labels = Counter(c.annotation for c in result.conflicts)
    for label in sorted(per_label):
        line = f"{label:16s} cells={per_label[label]}"
        if label == ANNOTATION_BUDGET:
            line += "  (unsolved, not counted)"
        elif label == ANNOTATION_OPEN:
            line += "  (no claimed winner)"
        else:
            line += f"  conflicts={conflict_labels.get(label, 0)}"
        click.echo(line)
    for cell in result.conflicts:
        click.echo(
            f"conflict: Z({cell.n},{cell.d}) solved {cell.winner}"
            f" against claim {cell.annotation}"
        )
    return len(result.conflicts)


def _verify_strategies(n_range, d_range, budget) -> int:
    n_lo, n_hi = n_range
    d_lo, d_hi = d_range
    checked = Counter()
    failures = 0
    for n in range(n_lo, n_hi + 1):
        for d in range(d_lo, d_hi + 1):
            config = GameConfig(n, d)
            for claimant, applies in (
                ("A", opening_plan(config) is not None),
                ("B", known_second_player_win(config)),
            ):
                if not applies:
                    continue
                try:
                    report = (
                        verify_plan(config, budget=budget)
                        if claimant == "A"
                        else verify_defence(config, budget=budget)
                    )
                except BudgetExceeded as exc:
                    click.echo(f"Z({n},{d}): {exc}", err=True)
                    sys.exit(EXIT_BUDGET)
                except StrategyStuck as exc:
                    click.echo(f"Z({n},{d}) {claimant}: stuck, trace {exc.trace}")
                    failures += 1
                    continue
                checked[claimant] += 1
                if report.losses:
                    click.echo(
                        f"Z({n},{d}) {claimant}: {report.losses} losing lines,"
                        f" first {report.first_loss}"
                    )
                    failures += 1
    click.echo(f"first-player plans checked: {checked['A']}")
    click.echo(f"second-player defences checked: {checked['B']}")
    return failures


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--d", type=int, required=True)
@click.option(
    "--mode",
    type=click.Choice(list(MODES)),
    default=MODE_VS_BOT,
    show_default=True,
)
@click.option("--seed", type=int, default=0, show_default=True)
def play(n, d, mode, seed):
    """Play one game in the terminal; numbers are typed, bot answers inline."""
    store = SessionStore()
    try:
        session = store.create(GameConfig(n, d), mode, seed=seed)
    except (UnknownVariant, GameError) as exc:
        click.echo(str(exc), err=True)
        sys.exit(EXIT_FAILURES)
    while True:
        view = store.view(session.id)
        if view["status"] == "finished":
            break
        _print_board(view)
        try:
            number = click.prompt(f"{view['to_move']} removes", type=int)
        except click.Abort:
            click.echo("aborted")
            sys.exit(EXIT_FAILURES)
        try:
            for event in store.submit_move(session.id, number):
                click.echo(
                    f"  {event['actor']} crossed out {event['number']}"
                    f" (residue {event['residue']})"
                )
        except IllegalMove as exc:
            click.echo(str(exc))
    view = store.view(session.id)
    x, y = view["final_pair"]
    click.echo(f"final pair {x} + {y} = {x + y}")
    click.echo(f"winner: {view['winner']}")


def _print_board(view) -> None:
    d = view["config"]["d"]
    superfluous = set(view["superfluous"])
    cells = []
    for number in view["live"]:
        mark = "*" if number in superfluous else ""
        cells.append(f"{number}{mark}({number % d})")
    click.echo("live: " + " ".join(cells))


@main.command()
@click.option("--port", type=int, default=None, help="Defaults to $ZAHLENSCHLACHT_PORT or 8000.")
def serve(port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run(create_app(), host="127.0.0.1", port=port if port else default_port())


if __name__ == "__main__":
    main()
