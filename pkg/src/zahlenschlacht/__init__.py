"""Zahlenschlacht: the crossing-out game Z(n, d).

Two players alternately cross out numbers from 1..n until two remain; the
first player wins exactly when the survivors' sum is divisible by d.  The
package bundles the rules, constructive winning strategies for both sides,
an exact solver, and a playable CLI / HTTP service.
"""

from .core import (
    PLAYER_A,
    PLAYER_B,
    BoardState,
    GameConfig,
    GameOutcome,
    GameError,
    IllegalMove,
    InvalidConfig,
    ResidueVector,
    initial_residue_counts,
    is_balanced,
    is_mod_pair,
    residue_of,
    self_inverse_residues,
    superfluous_numbers,
    superfluous_residues,
)
from .solver import (
    BudgetExceeded,
    GameValue,
    SolveState,
    StrategyStuck,
    VerificationReport,
    optimal_moves,
    predicted_winner,
    solve,
    solve_state,
    verify_defence,
    verify_plan,
    verify_strategy,
    winner_table,
)
from .strategy_a import (
    Mode,
    StrategyPlan,
    known_first_player_divisors,
    opening_plan,
    winning_board_sizes,
)
from .strategy_b import BotProfile, known_second_player_win, punisher_move
from .session import (
    MODE_HOT_SEAT,
    MODE_VS_BOT,
    NotYourTurn,
    SessionFinished,
    SessionNotFound,
    SessionStore,
    UnknownVariant,
)

__version__ = "0.1.0"
