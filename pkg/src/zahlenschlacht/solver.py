"""Exact game values, the winner table, and strategy verification.

Positions are residue-count vectors; whose turn it is follows from how many
numbers are gone, so the vector alone identifies a position.  Two engines
compute values:

* a memoized recursive search with negation canonicalization, for state
  spaces up to a few tens of thousands;
* a layered sweep over the whole product space (numpy), ordered by numbers
  remaining, for spaces up to several tens of millions.

``verify_plan`` and ``verify_defence`` check a constructive strategy
against *every* opponent line, counting won and lost playouts.  They walk
residue vectors rather than concrete boards: all shipped policies pick a
residue class as a function of the counts alone, and the final verdict
depends only on the survivors' residues, so residue-level exhaustion covers
every concrete game.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

import numpy as np

from .core import (
    PLAYER_A,
    PLAYER_B,
    GameConfig,
    GameError,
    GameOver,
    ResidueVector,
    initial_residue_counts,
)
from .strategy_a import (
    DomainError,
    StrategyPlan,
    in_size_family,
    known_first_player_divisors,
    opening_plan,
    plan_opening,
    plan_response,
)
from .strategy_b import (
    PunisherPolicy,
    SecondPlayerPolicy,
    known_second_player_win,
)

DEFAULT_BUDGET = 100_000_000
RECURSIVE_MAX = 30_000  # beyond this the layered engine is faster
LAYER_MAX = 60_000_000  # memory bound for the layered engine

ANNOTATION_NEAR = "a:near-n"
ANNOTATION_SMALL = "a:small-d"
ANNOTATION_FAMILY = "a:formula-family"
ANNOTATION_EVEN = "b:even-n"
ANNOTATION_MID = "b:mid-band"
ANNOTATION_LARGE = "b:large-d"
ANNOTATION_OPEN = "open-band"
ANNOTATION_BUDGET = "budget-exceeded"


class BudgetExceeded(GameError):
    """A solve would touch more states than the budget allows."""

    def __init__(self, message: str, estimate: int):
        super().__init__(message)
        self.estimate = estimate


class StrategyStuck(GameError):
    """A strategy prescribed a move in an empty class during verification."""

    def __init__(self, message: str, trace: tuple[int, ...]):
        super().__init__(message)
        self.trace = trace


def state_space(counts: Iterable[int]) -> int:
    """Number of positions reachable by removals: the product of (count+1)."""
    return math.prod(c + 1 for c in counts)


@dataclass(frozen=True)
class SolveState:
    """A mid-game position: a variant plus the live residue counts."""

    config: GameConfig
    counts: ResidueVector

    def __post_init__(self) -> None:
        if self.counts.d != self.config.d:
            raise DomainError(
                f"counts have modulus {self.counts.d}, variant has {self.config.d}"
            )
        full = initial_residue_counts(self.config)
        for r in range(self.config.d):
            if self.counts[r] > full[r]:
                raise DomainError(
                    f"class {r} holds {self.counts[r]} numbers, "
                    f"but 1..{self.config.n} only provides {full[r]}"
                )
        if self.counts.total < 2:
            raise DomainError("fewer than two numbers remain")

    @classmethod
    def initial(cls, config: GameConfig) -> "SolveState":
        return cls(config, initial_residue_counts(config))

    @property
    def remaining(self) -> int:
        return self.counts.total

    @property
    def to_move(self) -> str:
        return PLAYER_A if (self.config.n - self.remaining) % 2 == 0 else PLAYER_B


@dataclass(frozen=True)
class GameValue:
    winner: str
    states_visited: int


@lru_cache(maxsize=None)
def _units(d: int) -> tuple[int, ...]:
    return tuple(u for u in range(1, d) if math.gcd(u, d) == 1)


def canonical_key(counts: tuple[int, ...], d: int, use_units: bool = False) -> tuple[int, ...]:
    """Smallest vector in the symmetry orbit of ``counts``.

    Negating every residue preserves the game value; so does multiplying by
    any unit mod d (the richer orbit is optional, negation is the default).
    """
    if not use_units:
        neg = tuple(counts[(d - r) % d] for r in range(d))
        return counts if counts <= neg else neg
    best = counts
    for u in _units(d):
        perm = [0] * d
        for r, c in enumerate(counts):
            perm[(u * r) % d] = c
        t = tuple(perm)
        if t < best:
            best = t
    return best


def _terminal_is_a_win(counts: tuple[int, ...], d: int) -> bool:
    total = 0
    for r, c in enumerate(counts):
        total += r * c
    return total % d == 0


class _RecursiveEngine:
    def __init__(self, config: GameConfig, budget: int, use_units: bool):
        self.n = config.n
        self.d = config.d
        self.budget = budget
        self.use_units = use_units
        self.memo: dict[tuple[int, ...], bool] = {}

    def value(self, counts: tuple[int, ...], remaining: int) -> bool:
        """True when the first player wins from here with best play."""
        if remaining == 2:
            return _terminal_is_a_win(counts, self.d)
        key = canonical_key(counts, self.d, self.use_units)
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        if len(self.memo) >= self.budget:
            raise BudgetExceeded(
                f"solve exceeded the budget of {self.budget} states", len(self.memo)
            )
        mover_a = (self.n - remaining) % 2 == 0
        result = not mover_a
        for r in range(self.d):
            if counts[r] < 1:
                continue
            child = counts[:r] + (counts[r] - 1,) + counts[r + 1 :]
            child_value = self.value(child, remaining - 1)
            if mover_a and child_value:
                result = True
                break
            if not mover_a and not child_value:
                result = False
                break
        self.memo[key] = result
        return result


class _LayerEngine:
    """Bottom-up sweep of the whole product space below ``counts``.

    States are mixed-radix encoded; layer k holds the states with k numbers
    remaining, and is filled from layer k-1 by an any/all gather depending
    on who moves at k.
    """

    def __init__(self, config: GameConfig, counts: tuple[int, ...]):
        self.d = config.d
        n = config.n
        caps = [c + 1 for c in counts]
        space = math.prod(caps)
        strides = [0] * len(caps)
        acc = 1
        for r, cap in enumerate(caps):
            strides[r] = acc
            acc *= cap
        self.caps = caps
        self.strides = strides
        self.space = space

        idx_dtype = np.int64 if space > 2**31 - 2 else np.int32
        sums = np.zeros(space, dtype=np.int16)
        idx = np.arange(space, dtype=idx_dtype)
        for r, cap in enumerate(caps):
            if cap == 1:
                continue
            sums += ((idx // strides[r]) % cap).astype(np.int16)
        del idx
        order = np.argsort(sums, kind="stable").astype(idx_dtype)
        top = int(sums.max())
        bounds = np.searchsorted(sums[order], np.arange(top + 2))
        del sums

        win = np.zeros(space, dtype=bool)
        for rem in range(2, top + 1):
            members = order[int(bounds[rem]) : int(bounds[rem + 1])]
            if members.size == 0:
                continue
            if rem == 2:
                pair_sum = np.zeros(members.size, dtype=np.int32)
                for r, cap in enumerate(caps):
                    if cap == 1 or r == 0:
                        continue
                    digit = (members // strides[r]) % cap
                    pair_sum += digit.astype(np.int32) * r
                win[members] = pair_sum % self.d == 0
                continue
            mover_a = (n - rem) % 2 == 0
            acc_vals = np.full(members.size, not mover_a, dtype=bool)
            for r, cap in enumerate(caps):
                if cap == 1:
                    continue
                digit = (members // strides[r]) % cap
                has = digit >= 1
                if not has.any():
                    continue
                child_vals = win[members[has] - strides[r]]
                if mover_a:
                    acc_vals[has] = acc_vals[has] | child_vals
                else:
                    acc_vals[has] = acc_vals[has] & child_vals
            win[members] = acc_vals
        self.win = win

    def value(self, counts: tuple[int, ...]) -> bool:
        index = 0
        for r, c in enumerate(counts):
            index += c * self.strides[r]
        return bool(self.win[index])


def _resolve_engine(engine: str, space: int) -> str:
    if engine not in ("auto", "recursive", "layers"):
        raise DomainError(f"unknown engine {engine!r}")
    if engine == "auto":
        return "recursive" if space <= RECURSIVE_MAX else "layers"
    return engine


def solve_state(
    state: SolveState,
    budget: int = DEFAULT_BUDGET,
    engine: str = "auto",
    unit_canonical: bool = False,
) -> GameValue:
    """Exact winner from ``state`` under best play on both sides."""
    config = state.config
    if config.d >= 2 * config.n:
        # no two numbers from 1..n can sum to a multiple of d
        return GameValue(PLAYER_B, 0)
    counts = tuple(state.counts)
    space = state_space(counts)
    if space > budget:
        raise BudgetExceeded(
            f"Z({config.n}, {config.d}) spans about {space} states, "
            f"over the budget of {budget}",
            space,
        )
    chosen = _resolve_engine(engine, space)
    if chosen == "recursive":
        eng = _RecursiveEngine(config, budget, unit_canonical)
        a_wins = eng.value(counts, state.remaining)
        return GameValue(PLAYER_A if a_wins else PLAYER_B, len(eng.memo))
    if space > LAYER_MAX:
        raise BudgetExceeded(
            f"state space {space} is above the layered engine bound {LAYER_MAX}",
            space,
        )
    eng = _LayerEngine(config, counts)
    return GameValue(PLAYER_A if eng.value(counts) else PLAYER_B, space)


def solve(
    config: GameConfig,
    budget: int = DEFAULT_BUDGET,
    engine: str = "auto",
    unit_canonical: bool = False,
) -> GameValue:
    """Exact winner of Z(n, d) from the untouched board."""
    return solve_state(
        SolveState.initial(config), budget=budget, engine=engine, unit_canonical=unit_canonical
    )


def optimal_moves(
    state: SolveState,
    budget: int = DEFAULT_BUDGET,
    engine: str = "auto",
) -> frozenset[int]:
    """Residue classes whose removal preserves the mover's best value.

    From a lost position every legal class qualifies: nothing helps, and
    nothing hurts.
    """
    if state.remaining <= 2:
        raise GameOver("no moves from a finished position")
    config = state.config
    counts = tuple(state.counts)
    if config.d >= 2 * config.n:
        return frozenset(r for r in range(config.d) if counts[r] >= 1)
    space = state_space(counts)
    if space > budget:
        raise BudgetExceeded(
            f"optimal_moves would span about {space} states, over {budget}", space
        )
    chosen = _resolve_engine(engine, space)
    best: set[int] = set()
    if chosen == "recursive":
        eng = _RecursiveEngine(config, budget, False)
        root = eng.value(counts, state.remaining)
        for r in range(config.d):
            if counts[r] < 1:
                continue
            child = counts[:r] + (counts[r] - 1,) + counts[r + 1 :]
            if eng.value(child, state.remaining - 1) == root:
                best.add(r)
    else:
        if space > LAYER_MAX:
            raise BudgetExceeded(f"state space {space} is above {LAYER_MAX}", space)
        eng = _LayerEngine(config, counts)
        root = eng.value(counts)
        for r in range(config.d):
            if counts[r] < 1:
                continue
            child = counts[:r] + (counts[r] - 1,) + counts[r + 1 :]
            if eng.value(child) == root:
                best.add(r)
    return frozenset(best)


def predicted_winner(config: GameConfig) -> tuple[str, str] | None:
    """(winner, annotation) from the known results, or None in the open band."""
    n, d = config.n, config.d
    if n % 2 == 0:
        return PLAYER_B, ANNOTATION_EVEN
    if n < 5:
        return None
    near = {(n - 1) // 2, (n + 1) // 2, n, n + 1, n + 2}
    if d in near:
        return PLAYER_A, ANNOTATION_NEAR
    if d in (2, 3) or (d in (4, 5, 6) and n >= 11):
        return PLAYER_A, ANNOTATION_SMALL
    if (n + 3) <= 2 * d <= 2 * (n - 1):
        return PLAYER_B, ANNOTATION_MID
    if d >= n + 3:
        return PLAYER_B, ANNOTATION_LARGE
    if d >= 7 and in_size_family(n, d):
        return PLAYER_A, ANNOTATION_FAMILY
    return None


@dataclass(frozen=True)
class CellResult:
    n: int
    d: int
    winner: str  # PLAYER_A, PLAYER_B, or "?" when over budget
    annotation: str
    states_visited: int


@dataclass
class WinnerTable:
    cells: list[CellResult]
    conflicts: list[CellResult]

    def to_csv(self) -> str:
        lines = ["n,d,winner,annotation,states_visited"]
        for c in self.cells:
            lines.append(f"{c.n},{c.d},{c.winner},{c.annotation},{c.states_visited}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        rows = [
            {
                "n": c.n,
                "d": c.d,
                "winner": c.winner,
                "annotation": c.annotation,
                "states_visited": c.states_visited,
            }
            for c in self.cells
        ]
        return json.dumps(rows, indent=2) + "\n"


def winner_table(
    n_range: tuple[int, int],
    d_range: tuple[int, int],
    budget: int = DEFAULT_BUDGET,
    engine: str = "auto",
) -> WinnerTable:
    """Solve every cell in the inclusive ranges and compare with predictions.

    Cells the solver cannot afford are kept with winner "?"; cells where the
    exact value contradicts a prediction land in ``conflicts`` (none are
    known).
    """
    n_lo, n_hi = n_range
    d_lo, d_hi = d_range
    if n_lo < 4 or n_lo > n_hi:
        raise DomainError(f"bad board range {n_range}")
    if d_lo < 2 or d_lo > d_hi:
        raise DomainError(f"bad divisor range {d_range}")
    cells: list[CellResult] = []
    conflicts: list[CellResult] = []
    for n in range(n_lo, n_hi + 1):
        for d in range(d_lo, d_hi + 1):
            config = GameConfig(n, d)
            prediction = predicted_winner(config)
            try:
                value = solve(config, budget=budget, engine=engine)
            except BudgetExceeded:
                cells.append(CellResult(n, d, "?", ANNOTATION_BUDGET, 0))
                continue
            annotation = prediction[1] if prediction else ANNOTATION_OPEN
            cell = CellResult(n, d, value.winner, annotation, value.states_visited)
            cells.append(cell)
            if prediction is not None and prediction[0] != value.winner:
                conflicts.append(cell)
    return WinnerTable(cells, conflicts)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome counts of one strategy against every opponent line.

    ``wins``/``losses`` count distinct opponent move sequences (at residue
    granularity).  ``first_loss`` replays one losing line as the residues
    removed in order, mod ``modulus``, claimant moves included.
    """

    config: GameConfig
    claimant: str
    modulus: int
    wins: int
    losses: int
    states: int
    first_loss: tuple[int, ...] | None

    @property
    def ok(self) -> bool:
        return self.losses == 0


def _decrement(counts: tuple[int, ...], r: int) -> tuple[int, ...]:
    return counts[:r] + (counts[r] - 1,) + counts[r + 1 :]


def _leaf_a_wins(counts: tuple[int, ...], d: int) -> bool:
    # two survivors; d divides the judge modulus, so reduce mod d directly
    total = 0
    for r, c in enumerate(counts):
        total += r * c
    return total % d == 0


def verify_plan(
    config: GameConfig,
    plan: StrategyPlan | None = None,
    budget: int = DEFAULT_BUDGET,
) -> VerificationReport:
    """Play a first-player plan against every opponent reply sequence."""
    if plan is None:
        plan = opening_plan(config)
        if plan is None:
            raise DomainError(f"no known first-player plan for Z({config.n}, {config.d})")
    if plan.modulus % config.d != 0:
        # divisibility by the plan modulus must imply divisibility by d
        raise DomainError(
            f"plan modulus {plan.modulus} is not a multiple of the divisor {config.d}"
        )
    m = plan.modulus
    d = config.d
    counts0 = initial_residue_counts(GameConfig(config.n, m))
    opening = plan_opening(plan, counts0)
    if counts0[opening] < 1:
        raise StrategyStuck(f"opening class {opening} is empty", (opening,))
    root = tuple(counts0.decremented(opening))
    memo: dict[tuple[tuple[int, ...], str], tuple[int, int]] = {}
    path: list[int] = [opening]

    def walk(counts: tuple[int, ...], cur: StrategyPlan, remaining: int) -> tuple[int, int]:
        if remaining == 2:
            return (1, 0) if _leaf_a_wins(counts, d) else (0, 1)
        key = (counts, cur.phase)
        cached = memo.get(key)
        if cached is not None:
            return cached
        if len(memo) >= budget:
            raise BudgetExceeded(f"verification exceeded {budget} states", len(memo))
        wins = losses = 0
        for b in range(m):
            if counts[b] < 1:
                continue
            after_b = _decrement(counts, b)
            path.append(b)
            try:
                answer, advanced = plan_response(cur, ResidueVector(after_b), b)
            except GameError as exc:
                raise StrategyStuck(
                    f"plan stuck after removals {tuple(path)}: {exc}", tuple(path)
                ) from exc
            if after_b[answer] < 1:
                raise StrategyStuck(
                    f"plan answered into empty class {answer} after {tuple(path)}",
                    tuple(path),
                )
            path.append(answer)
            w, l = walk(_decrement(after_b, answer), advanced, remaining - 2)
            path.pop()
            path.pop()
            wins += w
            losses += l
        memo[key] = (wins, losses)
        return wins, losses

    wins, losses = walk(root, plan, counts0.total - 1)
    first_loss = None
    if losses:
        first_loss = _plan_loss_trace(root, plan, counts0.total - 1, memo, d, opening)
    return VerificationReport(config, PLAYER_A, m, wins, losses, len(memo), first_loss)


def _plan_loss_trace(
    root: tuple[int, ...],
    plan: StrategyPlan,
    remaining: int,
    memo: dict,
    d: int,
    opening: int,
) -> tuple[int, ...]:
    trace = [opening]
    counts, cur = root, plan
    while remaining > 2:
        m = len(counts)
        for b in range(m):
            if counts[b] < 1:
                continue
            after_b = _decrement(counts, b)
            answer, advanced = plan_response(cur, ResidueVector(after_b), b)
            child = _decrement(after_b, answer)
            if remaining - 2 == 2:
                w, losses = (1, 0) if _leaf_a_wins(child, d) else (0, 1)
            else:
                w, losses = memo[(child, advanced.phase)]
            if losses:
                trace.extend((b, answer))
                counts, cur = child, advanced
                remaining -= 2
                break
        else:  # pragma: no cover - only reachable on a memo inconsistency
            raise DomainError("loss trace reconstruction failed")
    return tuple(trace)


def verify_defence(
    config: GameConfig,
    policy=None,
    budget: int = DEFAULT_BUDGET,
) -> VerificationReport:
    """Play a second-player policy against every first-player line."""
    if policy is None:
        policy = SecondPlayerPolicy(config) if config.n % 2 == 0 else PunisherPolicy(config)
    d = config.d
    counts0 = tuple(initial_residue_counts(config))
    memo: dict[tuple[int, ...], tuple[int, int]] = {}
    path: list[int] = []

    def walk(counts: tuple[int, ...], remaining: int) -> tuple[int, int]:
        if remaining == 2:
            return (0, 1) if _leaf_a_wins(counts, d) else (1, 0)
        cached = memo.get(counts)
        if cached is not None:
            return cached
        if len(memo) >= budget:
            raise BudgetExceeded(f"verification exceeded {budget} states", len(memo))
        wins = losses = 0
        for a in range(d):
            if counts[a] < 1:
                continue
            after_a = _decrement(counts, a)
            path.append(a)
            if remaining - 1 == 2:
                w, l = (0, 1) if _leaf_a_wins(after_a, d) else (1, 0)
            else:
                try:
                    answer = policy.respond(ResidueVector(after_a), a)
                except GameError as exc:
                    raise StrategyStuck(
                        f"defence stuck after removals {tuple(path)}: {exc}", tuple(path)
                    ) from exc
                if after_a[answer] < 1:
                    raise StrategyStuck(
                        f"defence answered into empty class {answer} after {tuple(path)}",
                        tuple(path),
                    )
                path.append(answer)
                w, l = walk(_decrement(after_a, answer), remaining - 2)
                path.pop()
            path.pop()
            wins += w
            losses += l
        memo[counts] = (wins, losses)
        return wins, losses

    wins, losses = walk(counts0, config.n)
    first_loss = None
    if losses:
        first_loss = _defence_loss_trace(counts0, config.n, memo, d, policy)
    return VerificationReport(config, PLAYER_B, d, wins, losses, len(memo), first_loss)


def _defence_loss_trace(
    root: tuple[int, ...],
    remaining: int,
    memo: dict,
    d: int,
    policy,
) -> tuple[int, ...]:
    trace: list[int] = []
    counts = root
    while remaining > 2:
        for a in range(d):
            if counts[a] < 1:
                continue
            after_a = _decrement(counts, a)
            if remaining - 1 == 2:
                if _leaf_a_wins(after_a, d):
                    trace.append(a)
                    return tuple(trace)
                continue
            answer = policy.respond(ResidueVector(after_a), a)
            child = _decrement(after_a, answer)
            if remaining - 2 == 2:
                losses = 1 if _leaf_a_wins(child, d) else 0
            else:
                _, losses = memo[child]
            if losses:
                trace.extend((a, answer))
                counts = child
                remaining -= 2
                break
        else:  # pragma: no cover - only reachable on a memo inconsistency
            raise DomainError("loss trace reconstruction failed")
    return tuple(trace)


def verify_strategy(
    claimant: str,
    config: GameConfig,
    budget: int = DEFAULT_BUDGET,
) -> VerificationReport:
    """Exhaustively verify the shipped strategy for one side of one variant."""
    if claimant == PLAYER_A:
        return verify_plan(config, budget=budget)
    if claimant == PLAYER_B:
        return verify_defence(config, budget=budget)
    raise DomainError(f"claimant must be {PLAYER_A} or {PLAYER_B}, got {claimant!r}")
