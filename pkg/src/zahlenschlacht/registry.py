"""Catalogue of playable variants.

The shipped catalogue lists every Z(n, d) with odd n from 5 to 25 and
2 <= d <= n+3 whose exact value is a first-player win.  Sessions against
the bot are restricted to these: the human moves first, so every offered
game is winnable with correct play, and the bot punishes anything less.

The catalogue is data (``data/variants.json``), regenerated from the exact
solver with ``python3 -m zahlenschlacht.registry``.
"""

from __future__ import annotations

import argparse
import json
import sys
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterator

from .core import PLAYER_A, GameConfig
from .solver import DEFAULT_BUDGET, solve

BOARD_RANGE = (5, 25)
DIVISOR_SLACK = 3  # divisors run 2..n+3; beyond that nothing new happens


def iter_candidates() -> Iterator[GameConfig]:
    lo, hi = BOARD_RANGE
    for n in range(lo, hi + 1, 2):
        for d in range(2, n + DIVISOR_SLACK + 1):
            yield GameConfig(n, d)


def compute_playable(
    budget: int = DEFAULT_BUDGET,
    engine: str = "auto",
    progress=None,
) -> list[GameConfig]:
    """Solve every candidate cell and keep the first-player wins."""
    wins: list[GameConfig] = []
    for config in iter_candidates():
        value = solve(config, budget=budget, engine=engine)
        if progress is not None:
            progress(config, value)
        if value.winner == PLAYER_A:
            wins.append(config)
    return wins


def _packaged_data() -> str:
    return (
        resources.files("zahlenschlacht").joinpath("data/variants.json").read_text("utf-8")
    )


@lru_cache(maxsize=1)
def load_playable() -> tuple[GameConfig, ...]:
    raw = json.loads(_packaged_data())
    return tuple(GameConfig(v["n"], v["d"]) for v in raw["variants"])


@lru_cache(maxsize=1)
def _playable_set() -> frozenset[GameConfig]:
    return frozenset(load_playable())


def is_playable(config: GameConfig) -> bool:
    return config in _playable_set()


def regenerate(path: Path | None = None, budget: int = DEFAULT_BUDGET) -> dict:
    """Recompute the catalogue and write it; returns the payload."""

    def progress(config: GameConfig, value) -> None:
        print(
            f"Z({config.n:>2}, {config.d:>2}) -> {value.winner}"
            f"  [{value.states_visited} states]",
            file=sys.stderr,
        )

    wins = compute_playable(budget=budget, progress=progress)
    payload = {
        "board_range": list(BOARD_RANGE),
        "divisor_slack": DIVISOR_SLACK,
        "budget": budget,
        "count": len(wins),
        "variants": [{"n": c.n, "d": c.d} for c in wins],
    }
    target = path or Path(__file__).parent / "data" / "variants.json"
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(json.dumps(payload, indent=2) + "\n", "utf-8")
    return payload


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description="regenerate the variant catalogue")
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    parser.add_argument("--out", type=Path, default=None)
    args = parser.parse_args(argv)
    payload = regenerate(path=args.out, budget=args.budget)
    print(f"{payload['count']} playable variants written")
    return 0


if __name__ == "__main__":
    sys.exit(main())
