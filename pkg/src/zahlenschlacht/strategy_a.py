"""Constructive winning plans for the first player.

A plan names an opening residue and a response discipline:

* ``PAIRING``: open so the remaining board is balanced, then mirror every
  move of the opponent (same class for self-inverse residues, complement
  class otherwise).  The mirrored board shrinks to a divisible final pair.
* ``TRIPLE``: the board is one move away from balanced in three designated
  classes x, y, z.  Open in one of them; the first time the opponent touches
  another, remove the third, which balances the board; mirror afterwards.
* ``PARITY_ENDGAME`` (d = 2 only): play anything until three numbers remain,
  then leave two of equal parity.
* ``DELEGATED``: play the pairing plan of a larger modulus m divisible by d;
  a final sum divisible by m is divisible by d as well.

``opening_plan`` maps a variant to a plan, or ``None`` when no constructive
plan is known (callers then fall back to the exact solver).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from enum import Enum

from .core import (
    GameConfig,
    GameError,
    ResidueVector,
    initial_residue_counts,
    is_balanced,
    self_inverse_residues,
)

log = logging.getLogger(__name__)


class UnbalancedState(GameError):
    """Mirror response requested from a state that was not balanced."""


class NoLegalResponse(GameError):
    """A plan prescribed a residue whose class is empty."""


class DomainError(GameError):
    pass


class Mode(Enum):
    PAIRING = "pairing"
    TRIPLE = "triple"
    PARITY_ENDGAME = "parity_endgame"
    DELEGATED = "delegated"
    SOLVER_BACKED = "solver_backed"


AWAITING_TRIGGER = "awaiting-trigger"
POST_TRIGGER = "post-trigger"


@dataclass(frozen=True)
class StrategyPlan:
    """First-player plan for one variant.

    ``modulus`` is the modulus the plan mirrors under: d itself, or the
    delegate target m (a multiple of d) for DELEGATED plans.  ``opening`` is
    a residue mod ``modulus``; None only for the parity endgame.  TRIPLE
    plans carry their residue triple and a phase that flips after the
    opponent first touches the triple.
    """

    mode: Mode
    modulus: int
    opening: int | None
    triple: tuple[int, int, int] | None = None
    phase: str = AWAITING_TRIGGER

    def triggered(self) -> "StrategyPlan":
        return replace(self, phase=POST_TRIGGER)


def pairing_response(v: ResidueVector, removed: int) -> int:
    """Mirror move after the opponent removed ``removed`` from a balanced state.

    ``v`` is the state after the opponent's removal.  Self-inverse classes
    answer in kind, other classes answer with the complement.
    """
    d = v.d
    r = removed % d
    answer = r if r in self_inverse_residues(d) else (d - r) % d
    if v[answer] < 1:
        raise UnbalancedState(
            f"no mirror for removal of class {r}: class {answer} is empty"
        )
    return answer


def triple_applicable(v: ResidueVector, x: int, y: int, z: int) -> bool:
    """Mechanical precondition for the TRIPLE plan on classes {x, y, z}.

    Requires: every class outside the triple and outside its complements
    already meets the balance criterion; each non-self-inverse triple member
    s leads its complement by exactly one; at least one member is
    self-inverse, and every self-inverse member holds an odd count of at
    least 3.
    """
    d = v.d
    triple = {x, y, z}
    if len(triple) != 3 or not all(0 <= t < d for t in triple):
        return False
    selfinv = self_inverse_residues(d)
    if not triple & selfinv:
        return False
    complements = {(d - t) % d for t in triple if t not in selfinv}
    for r in range(d):
        if r in triple:
            if r in selfinv:
                if v[r] < 3 or v[r] % 2 == 0:
                    return False
            elif v[r] != v[(d - r) % d] + 1:
                return False
        elif r in complements:
            continue  # constrained through its triple partner above
        elif r in selfinv:
            if v[r] % 2 != 0:
                return False
        elif v[r] != v[(d - r) % d]:
            return False
    return True


def triple_opening(d: int, triple: tuple[int, int, int]) -> int:
    """Opening residue for a TRIPLE plan: smallest member outside the self-inverse set."""
    outside = [t for t in triple if t not in self_inverse_residues(d)]
    if not outside:
        raise DomainError(f"triple {triple} has no member outside {sorted(self_inverse_residues(d))}")
    return min(outside)


def triple_response(plan: StrategyPlan, v: ResidueVector, removed: int) -> tuple[int, StrategyPlan]:
    """Response move for a TRIPLE plan; returns (residue, advanced plan).

    While awaiting the trigger, a removal in the triple (other than the
    opened class) is answered with the remaining third member; everything
    else, and everything after the trigger, is mirrored.
    """
    if plan.mode is not Mode.TRIPLE or plan.triple is None:
        raise DomainError("not a TRIPLE plan")
    r = removed % v.d
    if plan.phase == AWAITING_TRIGGER and r in plan.triple and r != plan.opening:
        (third,) = set(plan.triple) - {plan.opening, r}
        if v[third] < 1:
            raise NoLegalResponse(f"triple answer {third} unavailable")
        return third, plan.triggered()
    return pairing_response(v, r), plan


def parity_endgame_pick(live: tuple[int, int, int] | frozenset[int]) -> int:
    """With three numbers left, remove the one whose parity class is odd-sized.

    The survivors then share a parity, so their sum is even.
    """
    members = sorted(live)
    if len(members) != 3:
        raise DomainError("parity endgame pick needs exactly three numbers")
    odd = [a for a in members if a % 2 == 1]
    even = [a for a in members if a % 2 == 0]
    lone = odd if len(odd) % 2 == 1 else even
    return min(lone)


def winning_board_sizes(d: int, k: int) -> frozenset[int]:
    """Board sizes n (all odd) with a known first-player plan for divisor d >= 7.

    The k-th batch of sizes; larger k shifts the same residue patterns up by
    multiples of d.
    """
    if d < 7:
        raise DomainError(f"size families start at divisor 7, got {d}")
    if k < 1:
        raise DomainError(f"family index must be >= 1, got {k}")
    if d % 2 == 0:
        return frozenset((k * d - 1, (k + 1) * d + 1, (k + 3) * d - 3))
    return frozenset(
        (
            (2 * k - 1) * d - 2,
            (2 * k - 1) * d,
            2 * k * d - 1,
            2 * k * d + 1,
            (2 * k + 1) * d + 2,
            (k + 1) * 2 * d - 3,
        )
    )


def known_first_player_divisors(n: int) -> frozenset[int]:
    """Divisors with a known first-player win on the odd board 1..n.

    Always 2, 3 and the near-n divisors (n-1)/2, (n+1)/2, n, n+1, n+2;
    divisors 4..6 once n >= 11.
    """
    if n % 2 == 0 or n < 5:
        return frozenset()
    ds = {2, 3, (n - 1) // 2, (n + 1) // 2, n, n + 1, n + 2}
    if n >= 11:
        ds |= {4, 5, 6}
    return frozenset(d for d in ds if d >= 2)


def in_size_family(n: int, d: int) -> bool:
    """True when n appears in some winning_board_sizes(d, k)."""
    if d < 7 or n % 2 == 0:
        return False
    k = 1
    while min(winning_board_sizes(d, k)) <= n:
        if n in winning_board_sizes(d, k):
            return True
        k += 1
    return False


def _checked(plan: StrategyPlan, config: GameConfig) -> StrategyPlan | None:
    """Verify a plan's own precondition before handing it out.

    Pairing-style plans must leave a balanced board after the opening;
    TRIPLE plans must pass triple_applicable.  A failed check is logged and
    dropped so callers fall back to the solver.
    """
    if plan.mode is Mode.PARITY_ENDGAME:
        return plan
    counts = initial_residue_counts(GameConfig(config.n, plan.modulus))
    if plan.mode is Mode.TRIPLE:
        assert plan.triple is not None
        if triple_applicable(counts, *plan.triple):
            return plan
    else:
        if counts[plan.opening] >= 1 and is_balanced(counts.decremented(plan.opening)):
            return plan
    log.warning(
        "plan %s failed its own precondition on Z(%d, %d); falling back to solver",
        plan,
        config.n,
        config.d,
    )
    return None


def _delegate_opening(n: int, m: int) -> int:
    """Opening residue (mod m) of the direct plan for modulus m."""
    if m == n:
        return 0  # the number n itself
    if m == n + 1:
        return (n + 1) // 2
    if m == n + 2:
        return 1
    if 2 * m + 1 == n:
        return 1  # modulus (n-1)/2: three classes hold an extra number, open class 1
    raise DomainError(f"no direct plan for modulus {m} on board {n}")


def _triple_plan(d: int, triple: tuple[int, int, int]) -> StrategyPlan:
    return StrategyPlan(Mode.TRIPLE, d, triple_opening(d, triple), triple=triple)


def _small_divisor_plan(config: GameConfig) -> StrategyPlan | None:
    """Divisors 4..6 on boards n >= 11 (divisibility cases already handled)."""
    n, d = config.n, config.d
    if d == 4:
        if n % 4 == 1:
            half = (n - 1) // 2
            if half % 4 == 0:
                return StrategyPlan(Mode.DELEGATED, half, _delegate_opening(n, half))
            return _triple_plan(4, (0, 1, 2))
    elif d == 5:
        if n % 5 == 1:
            half = (n - 1) // 2
            if half % 5 == 0:
                return StrategyPlan(Mode.DELEGATED, half, _delegate_opening(n, half))
        elif n % 5 == 2:
            return _triple_plan(5, (0, 1, 2))
    elif d == 6:
        if n % 6 == 1:
            if ((n - 1) // 6) % 2 == 0:
                return StrategyPlan(Mode.PAIRING, 6, 1)
            return _triple_plan(6, (0, 1, 3))
        if n % 6 == 3:
            if ((n - 3) // 6) % 2 == 0:
                return _triple_plan(6, (1, 2, 3))
            return _triple_plan(6, (0, 1, 2))
    return None


def _family_plan(config: GameConfig) -> StrategyPlan | None:
    """Plans for the size families of divisors >= 7.

    Families reachable through a divisor of n, n+1 or n+2 are handled by
    delegation before this point; the remaining shapes are covered here.
    """
    n, d = config.n, config.d
    if d % 2 == 0:
        if (n - 1) % d == 0:
            k = (n - 1) // d - 1
            if k >= 1:
                if k % 2 == 0:
                    return _triple_plan(d, (0, 1, d // 2))
                return StrategyPlan(Mode.PAIRING, d, 1)
        if (n + 3) % d == 0:
            k = (n + 3) // d - 3
            if k >= 1:
                if k % 2 == 0:
                    return _triple_plan(d, (1, 2, d // 2))
                return _triple_plan(d, (0, 1, 2))
    else:
        if (n - 1) % (2 * d) == 0 and (n - 1) // (2 * d) >= 1:
            return StrategyPlan(Mode.PAIRING, d, 1)
        if (n - 2) % d == 0:
            q = (n - 2) // d
            if q % 2 == 1 and q >= 3:
                return _triple_plan(d, (0, 1, 2))
        if (n + 3) % (2 * d) == 0 and (n + 3) // (2 * d) >= 2:
            return _triple_plan(d, (0, 1, 2))
    return None


def opening_plan(config: GameConfig) -> StrategyPlan | None:
    """Constructive first-player plan for Z(n, d), or None when none is known.

    Only odd boards of size >= 5 have known plans.  The cases are tried in a
    fixed order; the first match wins:

    1. d = 2: parity endgame.
    2. d properly divides one of n, n+1, n+2: delegate to that modulus.
    3. d = (n-1)/2, d = n, d = n+1, d = n+2: direct pairing openings.
    4. d in 4..6 on boards n >= 11: sub-cases by n mod d.
    5. n matches a size family of d >= 7.

    Every returned plan has passed its own mechanical precondition.
    """
    n, d = config.n, config.d
    if n % 2 == 0 or n < 5:
        return None
    if d == 2:
        return StrategyPlan(Mode.PARITY_ENDGAME, 2, None)
    for m in (n, n + 1, n + 2):
        if d < m and m % d == 0:
            return _checked(
                StrategyPlan(Mode.DELEGATED, m, _delegate_opening(n, m)), config
            )
    if 2 * d + 1 == n:
        return _checked(StrategyPlan(Mode.PAIRING, d, 1), config)
    if d == n:
        return _checked(StrategyPlan(Mode.PAIRING, d, 0), config)
    if d == n + 1:
        return _checked(StrategyPlan(Mode.PAIRING, d, (n + 1) // 2), config)
    if d == n + 2:
        return _checked(StrategyPlan(Mode.PAIRING, d, 1), config)
    if 4 <= d <= 6 and n >= 11:
        plan = _small_divisor_plan(config)
        if plan is not None:
            return _checked(plan, config)
    if d >= 7:
        plan = _family_plan(config)
        if plan is not None:
            return _checked(plan, config)
    return None


def _parity_free_move(v: ResidueVector) -> int:
    # any legal move keeps the endgame reachable; take the fuller class
    return 0 if v[0] >= v[1] else 1


def plan_opening(plan: StrategyPlan, v: ResidueVector) -> int:
    """Residue (mod plan.modulus) for the very first move of the game."""
    if plan.mode is Mode.PARITY_ENDGAME:
        return _parity_free_move(v)
    assert plan.opening is not None
    return plan.opening


def plan_response(
    plan: StrategyPlan, v: ResidueVector, removed: int
) -> tuple[int, StrategyPlan]:
    """Answer the opponent's removal; pure, returns (residue, advanced plan).

    ``v`` is the state after the opponent removed a number of class
    ``removed``, both mod ``plan.modulus``.
    """
    mode = plan.mode
    if mode is Mode.PARITY_ENDGAME:
        if v.total == 3:
            # drop the odd-sized parity class, leaving an even sum
            return (0 if v[0] % 2 == 1 else 1), plan
        return _parity_free_move(v), plan
    if mode is Mode.TRIPLE:
        return triple_response(plan, v, removed)
    return pairing_response(v, removed), plan


class PlanPolicy:
    """Stateful wrapper driving a StrategyPlan through one game.

    All residue arithmetic happens mod ``plan.modulus``; the whole internal
    state is the plan phase.
    """

    def __init__(self, config: GameConfig, plan: StrategyPlan):
        self.config = config
        self.plan = plan
        self.modulus = plan.modulus

    def key(self) -> str:
        return self.plan.phase

    def opening(self, v: ResidueVector) -> int:
        return plan_opening(self.plan, v)

    def respond(self, v: ResidueVector, removed: int) -> int:
        answer, self.plan = plan_response(self.plan, v, removed)
        return answer
