"""Brute-force oracles shared across the suite.

Everything here works on concrete number sets (bitmasks), deliberately
ignoring the residue abstraction the package itself uses, so agreement is
meaningful.
"""

from functools import lru_cache

from zahlenschlacht.core import PLAYER_A, PLAYER_B, ResidueVector
from zahlenschlacht.strategy_b import punisher_residue


def _mask_numbers(mask: int):
    while mask:
        bit = mask & -mask
        yield bit.bit_length()  # the number itself: bit i-1 holds i
        mask ^= bit


def make_value_fn(n: int, d: int):
    """Memoized exact value over subsets of 1..n; True means first player wins."""

    @lru_cache(maxsize=None)
    def a_wins(mask: int) -> bool:
        k = mask.bit_count()
        if k == 2:
            return sum(_mask_numbers(mask)) % d == 0
        mover_a = (n - k) % 2 == 0
        m = mask
        while m:
            bit = m & -m
            m ^= bit
            child = a_wins(mask ^ bit)
            if mover_a and child:
                return True
            if not mover_a and not child:
                return False
        return not mover_a

    return a_wins


def concrete_minimax(n: int, d: int) -> str:
    """Winner of Z(n, d) computed over actual number subsets."""
    value = make_value_fn(n, d)
    return PLAYER_A if value((1 << n) - 1) else PLAYER_B


def punisher_flip_suite(n: int, d: int) -> tuple[int, int]:
    """Exhaust every first-player line against the punishing bot.

    Checks the conversion property along every line: if the first player
    ever moves from a winning position to a losing one, the bot wins the
    game; if they never do, they win.  Returns (lines, flipped_lines).
    """
    value = make_value_fn(n, d)
    full = (1 << n) - 1
    lines = 0
    flipped_lines = 0

    def bot_number(mask: int) -> int | None:
        counts = [0] * d
        for a in _mask_numbers(mask):
            counts[a % d] += 1
        r = punisher_residue(ResidueVector(tuple(counts)))
        if r is None:
            return None
        return min(a for a in _mask_numbers(mask) if a % d == r)

    def walk(mask: int, flipped: bool) -> None:
        nonlocal lines, flipped_lines
        k = mask.bit_count()
        if k == 2:
            a_won = value(mask)
            assert a_won != flipped, (
                f"Z({n},{d}): flipped={flipped} but terminal winner "
                f"{'A' if a_won else 'B'} on mask {mask:b}"
            )
            lines += 1
            flipped_lines += int(flipped)
            return
        if (n - k) % 2 == 0:  # first player branches over every live number
            before = value(mask)
            for a in list(_mask_numbers(mask)):
                child = mask ^ (1 << (a - 1))
                after = value(child)
                walk(child, flipped or (before and not after))
        else:
            number = bot_number(mask)
            if number is None:
                # everything is superfluous: the game is decided against A
                assert flipped and not value(mask)
                lines += 1
                flipped_lines += 1
                return
            walk(mask ^ (1 << (number - 1)), flipped)

    walk(full, False)
    return lines, flipped_lines
