"""Second-player strategies: the punishing bot and the even-board defence.

The *punisher* makes numbers superfluous as fast as possible: first it
empties the lighter half of an unbalanced complement pair (stranding the
heavier half), then it thins self-inverse classes down to one, and once
every live number is superfluous it moves at random.  Against a first
player who ever gives up a winning position it converts the game.

On even boards the second player wins outright: with d = 2 by always
answering in the opposite parity, otherwise by thinning self-inverse
classes below three and picking the right number when three remain.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .core import (
    BoardState,
    GameConfig,
    GameError,
    ResidueVector,
    self_inverse_residues,
    superfluous_residues,
)


class NoOppositeParity(GameError):
    """No live number of the opposite parity exists."""


@dataclass
class BotProfile:
    """Identity of a bot opponent.

    ``seed`` feeds a Mersenne Twister (``random.Random``); with equal seeds
    and equal inputs the bot's move sequence is exactly reproducible.
    """

    kind: str = "punisher"
    seed: int = 0
    rng: random.Random = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.rng = random.Random(self.seed & (2**64 - 1))


def opposite_parity_response(board: BoardState, number: int) -> int:
    """Smallest live number whose parity differs from ``number``'s."""
    want = (number + 1) % 2
    candidates = [a for a in board.live if a % 2 == want]
    if not candidates:
        raise NoOppositeParity(f"no live number of parity {want}")
    return min(candidates)


def self_inverse_reduction(v: ResidueVector) -> int | None:
    """Self-inverse residue to thin next, or None when all are below 3.

    Classes holding three or more are dangerous for the defender: three
    survivors from one such class would force a divisible pair.  Fullest
    class first.
    """
    candidates = [r for r in self_inverse_residues(v.d) if v[r] >= 3]
    if not candidates:
        return None
    return max(candidates, key=lambda r: (v[r], -r))


def punisher_residue(v: ResidueVector) -> int | None:
    """Residue the punisher removes next, or None when all live are superfluous.

    Priority one: a class i (not self-inverse) with 1 <= count(i) <=
    count(-i), i.e. the lighter half of a pair; removing it moves class -i
    toward being stranded.  Prefer the largest imbalance, ties to the larger
    residue.  Priority two: a self-inverse class holding at least 2.
    """
    d = v.d
    selfinv = self_inverse_residues(d)
    best: tuple[int, int] | None = None
    for i in range(d):
        if i in selfinv:
            continue
        j = (d - i) % d
        if 1 <= v[i] <= v[j]:
            ranked = (v[j] - v[i], i)
            if best is None or ranked > best:
                best = ranked
    if best is not None:
        return best[1]
    for r in sorted(selfinv):
        if v[r] >= 2:
            return r
    return None


def punisher_move(board: BoardState, profile: BotProfile) -> int:
    """Concrete punisher move: resolve the residue, then the smallest live number.

    Once everything is superfluous the outcome is locked in, and the bot
    picks uniformly at random from the live numbers.
    """
    r = punisher_residue(board.residue_counts)
    if r is None:
        return profile.rng.choice(sorted(board.live))
    return min(a for a in board.live if a % board.config.d == r)


def known_second_player_win(config: GameConfig) -> bool:
    """Variants with a proven second-player win.

    Every even board; on odd boards the mid band (n+3)/2 <= d <= n-1 and
    everything from d = n+3 up (for d >= 2n no final sum can even reach d).
    """
    n, d = config.n, config.d
    if n % 2 == 0:
        return True
    if n < 5:
        return False
    return (n + 3) <= 2 * d <= 2 * (n - 1) or d >= n + 3


class SecondPlayerPolicy:
    """Residue-level defence for even boards, driven move by move.

    Stateless: each response is a pure function of the counts and the
    opponent's last removal.
    """

    def __init__(self, config: GameConfig):
        self.config = config
        self.modulus = config.d

    def key(self) -> str:
        return ""

    def respond(self, v: ResidueVector, removed: int) -> int:
        d = self.config.d
        if v.total == 3:
            return self._final_pick(v)
        if d == 2:
            want = (removed + 1) % 2
            if v[want] < 1:
                raise NoOppositeParity(f"no live number of parity {want}")
            return want
        r = self_inverse_reduction(v)
        if r is not None:
            return r
        # free move: prefer an already-stranded class, cheapest first
        dead = superfluous_residues(v)
        for candidate in sorted(dead):
            if v[candidate] >= 1:
                return candidate
        return next(r for r in range(d) if v[r] >= 1)

    def _final_pick(self, v: ResidueVector) -> int:
        """Remove one of three so the survivors' sum is not divisible.

        Impossible only when all three share a self-inverse class, which the
        thinning phase rules out.
        """
        d = self.config.d
        live = [r for r in range(d) for _ in range(v[r])]
        for idx in range(3):
            rest = live[:idx] + live[idx + 1 :]
            if (rest[0] + rest[1]) % d != 0:
                return live[idx]
        return live[0]  # no safe pick exists; defence has already failed


class PunisherPolicy:
    """Residue-level view of the punisher, for exhaustive verification.

    Identical to ``punisher_move`` through the two directed phases.  In the
    random phase every live number is superfluous and any choice preserves
    the win, so verification substitutes the smallest nonempty class.
    """

    def __init__(self, config: GameConfig):
        self.config = config
        self.modulus = config.d

    def key(self) -> str:
        return ""

    def respond(self, v: ResidueVector, removed: int) -> int:
        r = punisher_residue(v)
        if r is not None:
            return r
        return next(i for i in range(v.d) if v[i] >= 1)
