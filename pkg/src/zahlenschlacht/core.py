"""Rules and residue arithmetic for the crossing-out game Zahlenschlacht.

Z(n, d) is played on the numbers 1..n.  Starting with player A, two players
alternately cross out one number each until exactly two numbers remain.
A wins when the sum of the two survivors is divisible by d, otherwise B wins.
There are no draws.

Only residues mod d matter for the outcome, so most of the machinery here
works on vectors of residue-class counts rather than on concrete numbers.
All operations are pure and return new values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

PLAYER_A = "A"
PLAYER_B = "B"


class GameError(Exception):
    """Base class for rule violations."""


class InvalidConfig(GameError):
    pass


class IllegalMove(GameError):
    pass


class GameOver(GameError):
    pass


def residue_of(a: int, d: int) -> int:
    """Residue class of a mod d; the only property of a number the game cares about."""
    return a % d


def board_remainder(n: int, d: int) -> int:
    """n mod d: how many residue classes of 1..n carry one extra number."""
    return n % d


def self_inverse_residues(d: int) -> frozenset[int]:
    """Residues that are their own additive inverse mod d: {0} and, for even d, d/2."""
    if d % 2 == 0:
        return frozenset((0, d // 2))
    return frozenset((0,))


def is_mod_pair(x: int, y: int, d: int) -> bool:
    """True when x and y are distinct and x + y is divisible by d."""
    return x != y and (x + y) % d == 0


@dataclass(frozen=True)
class GameConfig:
    """A variant Z(n, d): board 1..n, target divisor d."""

    n: int
    d: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 4:
            raise InvalidConfig(f"board size must be an integer >= 4, got {self.n!r}")
        if not isinstance(self.d, int) or self.d < 2:
            raise InvalidConfig(f"divisor must be an integer >= 2, got {self.d!r}")


@dataclass(frozen=True)
class ResidueVector:
    """Counts of live numbers per residue class, indexed 0..d-1."""

    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.counts) < 2:
            raise InvalidConfig("residue vector needs at least 2 classes")
        if any(c < 0 for c in self.counts):
            raise InvalidConfig("negative residue count")

    @property
    def d(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __getitem__(self, r: int) -> int:
        return self.counts[r]

    def __iter__(self) -> Iterator[int]:
        return iter(self.counts)

    def decremented(self, r: int) -> "ResidueVector":
        if self.counts[r] < 1:
            raise IllegalMove(f"residue class {r} is empty")
        return ResidueVector(
            self.counts[:r] + (self.counts[r] - 1,) + self.counts[r + 1 :]
        )

    def negated(self) -> "ResidueVector":
        """Counts under r -> -r mod d; a symmetry of the game."""
        d = self.d
        return ResidueVector(tuple(self.counts[(d - r) % d] for r in range(d)))

    @classmethod
    def from_live(cls, live: Iterable[int], d: int) -> "ResidueVector":
        counts = [0] * d
        for a in live:
            counts[a % d] += 1
        return cls(tuple(counts))


def initial_residue_counts(config: GameConfig) -> ResidueVector:
    """Residue counts of the full board 1..n.

    Classes 1..(n mod d) hold floor(n/d)+1 numbers, the rest floor(n/d).
    """
    n, d = config.n, config.d
    base, extra = divmod(n, d)
    return ResidueVector(
        tuple(base + 1 if 1 <= r <= extra else base for r in range(d))
    )


def is_balanced(v: ResidueVector) -> bool:
    """True when every live number can be matched into divisible pairs.

    Each class r pairs off against class d-r, so the two must hold equally
    many numbers; self-inverse classes pair internally and must be even.
    From such a state the player moving second in each round can mirror the
    opponent and force a divisible final pair.
    """
    d = v.d
    selfinv = self_inverse_residues(d)
    for r in range(d):
        if r in selfinv:
            if v[r] % 2 != 0:
                return False
        elif v[r] != v[(d - r) % d]:
            return False
    return True


def superfluous_residues(v: ResidueVector) -> frozenset[int]:
    """Residue classes whose members have no live partner to pair with.

    A number with residue r needs a distinct partner of residue d-r; when r is
    self-inverse the partner comes from r's own class.
    """
    d = v.d
    selfinv = self_inverse_residues(d)
    out = set()
    for r in range(d):
        if v[r] == 0:
            continue
        if r in selfinv:
            if v[r] == 1:
                out.add(r)
        elif v[(d - r) % d] == 0:
            out.add(r)
    return frozenset(out)


@dataclass(frozen=True)
class GameOutcome:
    """Terminal result: the surviving pair and who won."""

    winner: str
    final_pair: tuple[int, int]


@dataclass(frozen=True)
class BoardState:
    """A position in one game: the live numbers plus the removal history.

    The mover is derived from the history: A moves whenever an even number of
    removals has happened.  Removals are (actor, number) in order.
    """

    config: GameConfig
    live: frozenset[int]
    removed: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        n = self.config.n
        taken = [num for _, num in self.removed]
        if len(set(taken)) != len(taken):
            raise InvalidConfig("duplicate removal")
        if self.live | set(taken) != set(range(1, n + 1)) or self.live & set(taken):
            raise InvalidConfig("live set and removals must partition 1..n")
        for i, (actor, _) in enumerate(self.removed):
            expected = PLAYER_A if i % 2 == 0 else PLAYER_B
            if actor != expected:
                raise InvalidConfig(f"removal {i} by {actor}, expected {expected}")

    @classmethod
    def initial(cls, config: GameConfig) -> "BoardState":
        return cls(config, frozenset(range(1, config.n + 1)))

    @property
    def to_move(self) -> str:
        return PLAYER_A if len(self.removed) % 2 == 0 else PLAYER_B

    @property
    def residue_counts(self) -> ResidueVector:
        return ResidueVector.from_live(self.live, self.config.d)

    def is_over(self) -> bool:
        return len(self.live) == 2

    def remove(self, number: int) -> "BoardState":
        """Cross out one number; raises GameOver at two survivors."""
        if self.is_over():
            raise GameOver("game already finished")
        if number not in self.live:
            raise IllegalMove(f"{number} is not on the board")
        return BoardState(
            self.config,
            self.live - {number},
            self.removed + ((self.to_move, number),),
        )

    def outcome(self) -> GameOutcome | None:
        if not self.is_over():
            return None
        x, y = sorted(self.live)
        winner = PLAYER_A if (x + y) % self.config.d == 0 else PLAYER_B
        return GameOutcome(winner, (x, y))


def superfluous_numbers(board: BoardState) -> frozenset[int]:
    """Live numbers that can no longer appear in a divisible final pair."""
    d = board.config.d
    dead = superfluous_residues(board.residue_counts)
    return frozenset(a for a in board.live if a % d in dead)
