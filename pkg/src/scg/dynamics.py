"""Best-response machinery and the constructive equilibrium algorithms.

Scheduling is deterministic everywhere: players are scanned in ascending
index with the pass restarting after every move, and best-response ties
break toward staying put, then toward the lowest strategy index.  The same
game and rule therefore always produce the same trace.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .model import player_utility, welfare_total
from .model import instance_stats
from .rationals import INF, at_least_sqrt2_times, format_rational

ONE = Fraction(1)


@dataclass(frozen=True)
class MoveRule:
    """Improvement gate for gated best-response dynamics.

    A move to the best response is allowed iff ``u_new >= alpha * u_old``
    and ``u_new > u_old`` (for a zero baseline: iff ``u_new > 0``).
    """

    alpha: Fraction = ONE

    def allows(self, u_old, u_new):
        if u_old == 0:
            return u_new > 0
        return u_new >= self.alpha * u_old and u_new > u_old


@dataclass(frozen=True)
class Move:
    player: int
    from_strategy: int
    to_strategy: int
    old_utility: Fraction
    new_utility: Fraction


@dataclass(frozen=True)
class DynamicsTrace:
    moves: tuple
    terminal: tuple
    reason: str  # converged | cycle-detected | step-cap

    def to_json_lines(self):
        lines = []
        for mv in self.moves:
            lines.append(json.dumps({
                "player": mv.player,
                "from": mv.from_strategy,
                "to": mv.to_strategy,
                "old_utility": format_rational(mv.old_utility),
                "new_utility": format_rational(mv.new_utility),
            }))
        return "\n".join(lines) + ("\n" if lines else "")


@dataclass(frozen=True)
class HybridReport:
    alpha: Fraction
    s1: tuple
    s2: tuple
    welfare_s1: Fraction
    welfare_s2: Fraction
    chosen: tuple
    chosen_welfare: Fraction
    rho: Fraction | None = None  # chosen welfare / brute-force OPT, if supplied


def best_response(game, profile, i):
    """Best strategy for player i against the rest of the profile.

    Returns (strategy, utility, improvement factor).  Ties break toward
    staying, then toward the lowest strategy index.  Factor conventions:
    0 -> positive is +inf, 0 -> 0 is 1.
    """
    current, _, _ = player_utility(game, profile, i)
    best_k, best_u = profile[i], current
    for k in range(1, game.m + 1):
        if k == profile[i]:
            continue
        u, _, _ = player_utility(game, profile, i, strategy=k)
        if u > best_u:
            best_k, best_u = k, u
    if current == 0:
        factor = INF if best_u > 0 else ONE
    else:
        factor = best_u / current
    return best_k, best_u, factor


def run_dynamics(game, start, rule=MoveRule(), step_cap=None):
    """Gated best-response dynamics from a starting profile.

    Applies the first eligible move in player order, restarting the pass
    after each move; stops at convergence, a revisited profile, or the
    step cap (default m^n * n).
    """
    game.validate_profile(start)
    if step_cap is None:
        step_cap = (game.m ** game.n) * max(game.n, 1)
    if step_cap < 1:
        raise ValueError("step_cap must be >= 1")
    profile = tuple(start)
    seen = {profile}
    moves = []
    reason = "converged"
    while True:
        mover = None
        for i in range(game.n):
            k, u_new, _ = best_response(game, profile, i)
            if k == profile[i]:
                continue
            u_old, _, _ = player_utility(game, profile, i)
            if rule.allows(u_old, u_new):
                mover = (i, k, u_old, u_new)
                break
        if mover is None:
            break
        i, k, u_old, u_new = mover
        moves.append(Move(i, profile[i], k, u_old, u_new))
        profile = profile[:i] + (k,) + profile[i + 1:]
        if len(moves) >= step_cap:
            reason = "step-cap"
            break
        if profile in seen:
            reason = "cycle-detected"
            break
        seen.add(profile)
    return DynamicsTrace(moves=tuple(moves), terminal=profile, reason=reason)


def _two_strategy_phase(game, profile, source, target, movable=None):
    """Move players from `source` to `target` while it strictly improves.

    Restricted to `movable` players when given; returns the final profile.
    """
    profile = list(profile)
    changed = True
    while changed:
        changed = False
        for i in range(game.n):
            if movable is not None and i not in movable:
                continue
            if profile[i] != source:
                continue
            u_cur, _, _ = player_utility(game, tuple(profile), i)
            u_alt, _, _ = player_utility(game, tuple(profile), i, strategy=target)
            if u_alt > u_cur:
                profile[i] = target
                changed = True
    return tuple(profile)


def algorithm1_two(game, start):
    """Nash equilibrium for two-strategy games by one-directional passes.

    First lets players leave strategy 1 for 2 while that is an improving
    best response, then the reverse.  The result is checked to be a Nash
    equilibrium before returning.
    """
    if game.m != 2:
        raise ValueError("algorithm1_two requires exactly two strategies")
    game.validate_profile(start)
    profile = _two_strategy_phase(game, start, source=1, target=2)
    profile = _two_strategy_phase(game, profile, source=2, target=1)
    for i in range(game.n):
        u_cur, _, _ = player_utility(game, profile, i)
        other = 3 - profile[i]
        u_alt, _, _ = player_utility(game, profile, i, strategy=other)
        if u_alt > u_cur:
            raise RuntimeError("two-strategy pass ended on a non-equilibrium")
    return profile


def _max_improving_coalition(game, profile, source, target):
    """Maximal coalition in `source` whose joint move to `target` strictly
    improves every member, found by the shrinking fixed point.

    Member utilities in the target are monotone in coalition size, so
    dropping non-improvers until stable yields the unique maximal coalition
    (empty iff no improving coalition exists).
    """
    coalition = {i for i in range(game.n) if profile[i] == source}
    while coalition:
        moved = list(profile)
        for i in coalition:
            moved[i] = target
        moved = tuple(moved)
        drop = set()
        for i in coalition:
            u_new, _, _ = player_utility(game, moved, i)
            u_old, _, _ = player_utility(game, profile, i)
            if not u_new > u_old:
                drop.add(i)
        if not drop:
            break
        coalition -= drop
    return coalition


def strong_two(game):
    """Strong Nash equilibrium for two-strategy games.

    Starts with everyone at strategy 1 and repeatedly moves the maximal
    strictly-improving coalition to strategy 2 until none exists.
    """
    if game.m != 2:
        raise ValueError("strong_two requires exactly two strategies")
    profile = tuple([1] * game.n)
    while True:
        coalition = _max_improving_coalition(game, profile, source=1, target=2)
        if not coalition:
            return profile
        profile = tuple(2 if i in coalition else s for i, s in enumerate(profile))


def sqrt2_three(game):
    """sqrt(2)-approximate equilibrium for three-strategy games.

    Stabilizes strategies {1, 2} against each other, then repeatedly lets a
    player whose move to strategy 3 clears the exact sqrt(2) gate deviate,
    re-stabilizing {1, 2} after every such move.  The gate is the squared
    comparison, never a rational approximation of sqrt(2).
    """
    if game.m != 3:
        raise ValueError("sqrt2_three requires exactly three strategies")

    def stabilize(profile):
        movable = {i for i in range(game.n) if profile[i] in (1, 2)}
        profile = _two_strategy_phase(game, profile, 1, 2, movable)
        profile = _two_strategy_phase(game, profile, 2, 1, movable)
        return profile

    profile = stabilize(tuple([1] * game.n))
    while True:
        mover = None
        for i in range(game.n):
            if profile[i] == 3:
                continue
            u_cur, _, _ = player_utility(game, profile, i)
            u3, _, _ = player_utility(game, profile, i, strategy=3)
            if u3 > 0 and at_least_sqrt2_times(u3, u_cur):
                mover = i
                break
        if mover is None:
            return profile
        profile = profile[:mover] + (3,) + profile[mover + 1:]
        profile = stabilize(profile)


def one_shot_alpha_br(game, k0, alpha):
    """One-shot gated best response from an all-at-k0 start.

    Only players still at k0 may move, each at most once, to their best
    response when it clears the alpha gate.  Returns (profile, trace).
    """
    alpha = Fraction(alpha)
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    if not (1 <= k0 <= game.m):
        raise ValueError(f"starting strategy {k0} out of range 1..{game.m}")
    rule = MoveRule(alpha=alpha)
    profile = tuple([k0] * game.n)
    moves = []
    while True:
        mover = None
        for i in range(game.n):
            if profile[i] != k0:
                continue
            k, u_new, _ = best_response(game, profile, i)
            if k == k0:
                continue
            u_old, _, _ = player_utility(game, profile, i)
            if rule.allows(u_old, u_new):
                mover = (i, k, u_old, u_new)
                break
        if mover is None:
            break
        i, k, u_old, u_new = mover
        moves.append(Move(i, k0, k, u_old, u_new))
        profile = profile[:i] + (k,) + profile[i + 1:]
    return profile, DynamicsTrace(moves=tuple(moves), terminal=profile,
                                  reason="converged")


def hybrid(game, alpha, opt_welfare=None):
    """Best of one-shot alpha-BR and one-shot 1/(alpha-1)-BR from k*.

    alpha must lie in [1618/1000, 2].  When the brute-force optimum welfare
    is supplied, the welfare ratio rho is recorded in the report.
    """
    alpha = Fraction(alpha)
    if not (Fraction(1618, 1000) <= alpha <= 2):
        raise ValueError("alpha must lie in [1618/1000, 2]")
    k_star = instance_stats(game).k_star
    s1, _ = one_shot_alpha_br(game, k_star, alpha)
    s2, _ = one_shot_alpha_br(game, k_star, 1 / (alpha - 1))
    w1 = welfare_total(game, s1)
    w2 = welfare_total(game, s2)
    chosen, chosen_w = (s1, w1) if w1 >= w2 else (s2, w2)
    rho = None
    if opt_welfare is not None:
        if opt_welfare <= 0:
            raise ValueError("optimum welfare must be positive")
        rho = chosen_w / opt_welfare
    return HybridReport(alpha=alpha, s1=s1, s2=s2, welfare_s1=w1,
                        welfare_s2=w2, chosen=chosen, chosen_welfare=chosen_w,
                        rho=rho)
