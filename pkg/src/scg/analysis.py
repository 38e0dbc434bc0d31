"""Verifiers and brute-force oracles.

Everything here is exact: deviation factors, welfare comparisons and the
price-of-anarchy/stability ratios are rationals, and equilibrium censuses
enumerate the full m^n profile space (guarded at 10^7 profiles).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .model import player_utility, welfare_total
from .rationals import INF

ONE = Fraction(1)

PROFILE_SPACE_CAP = 10**7


class SizeError(RuntimeError):
    """Exhaustive enumeration would exceed the profile-space guard."""


def _check_size(game):
    if game.m ** game.n > PROFILE_SPACE_CAP:
        raise SizeError(
            f"profile space {game.m}^{game.n} exceeds cap {PROFILE_SPACE_CAP}")


def _factor(u_old, u_new):
    if u_old == 0:
        return INF if u_new > 0 else ONE
    return u_new / u_old


@dataclass(frozen=True)
class DeviationReport:
    per_player: tuple  # (best deviation strategy, factor) per player
    max_factor: object
    witness: int | None  # player attaining max_factor

    def is_alpha_equilibrium(self, alpha):
        return self.max_factor <= alpha


@dataclass(frozen=True)
class StrongDeviationReport:
    verdict: str  # "stable-at-alpha" | "violated"
    alpha: Fraction
    witness_profile: tuple | None = None
    coalition: tuple | None = None


@dataclass(frozen=True)
class PaymentPlan:
    payments: tuple      # per-player payment in utility units
    total: Fraction
    nu: Fraction         # total / supplied OPT welfare


@dataclass(frozen=True)
class EquilibriumCensus:
    alpha: Fraction
    opt_profile: tuple
    opt_welfare: Fraction
    equilibria: tuple           # profiles with max deviation factor <= alpha
    equilibrium_welfares: tuple
    poa: object                 # OPT / worst equilibrium welfare, or None
    pos: object                 # OPT / best equilibrium welfare, or None
    exists: bool


def deviation_report(game, profile):
    """Best-response improvement factor for every player, exactly.

    Staying put is always a candidate, so factors are at least 1; the
    profile is an alpha-approximate equilibrium iff max_factor <= alpha.
    """
    game.validate_profile(profile)
    per = []
    max_factor = ONE
    witness = None
    for i in range(game.n):
        u_cur, _, _ = player_utility(game, profile, i)
        best_k, best_u = profile[i], u_cur
        for k in range(1, game.m + 1):
            if k == profile[i]:
                continue
            u, _, _ = player_utility(game, profile, i, strategy=k)
            if u > best_u:
                best_k, best_u = k, u
        f = _factor(u_cur, best_u)
        per.append((best_k, f))
        if f > max_factor:
            max_factor, witness = f, i
    return DeviationReport(per_player=tuple(per), max_factor=max_factor,
                           witness=witness)


def brute_force_optimum(game):
    """Exact welfare maximizer; ties go to the lexicographically smallest
    profile."""
    _check_size(game)
    best_profile, best_w = None, None
    for profile in itertools.product(range(1, game.m + 1), repeat=game.n):
        w = welfare_total(game, profile)
        if best_w is None or w > best_w:
            best_profile, best_w = profile, w
    return best_profile, best_w


def verify_approx_strong(game, profile, alpha):
    """Exhaustive group-deviation check.

    A violation is an alternative profile where every player who changed
    strategy improves by a factor strictly greater than alpha.
    """
    _check_size(game)
    game.validate_profile(profile)
    alpha = Fraction(alpha)
    base = [player_utility(game, profile, i)[0] for i in range(game.n)]
    for alt in itertools.product(range(1, game.m + 1), repeat=game.n):
        coalition = tuple(i for i in range(game.n) if alt[i] != profile[i])
        if not coalition:
            continue
        if all(_factor(base[i], player_utility(game, alt, i)[0]) > alpha
               for i in coalition):
            return StrongDeviationReport(verdict="violated", alpha=alpha,
                                         witness_profile=alt,
                                         coalition=coalition)
    return StrongDeviationReport(verdict="stable-at-alpha", alpha=alpha)


def equilibrium_census(game, alpha=ONE):
    """Exhaustive census of alpha-approximate equilibria with PoA/PoS."""
    _check_size(game)
    alpha = Fraction(alpha)
    opt_profile, opt_w = None, None
    equilibria, eq_welfares = [], []
    for profile in itertools.product(range(1, game.m + 1), repeat=game.n):
        w = welfare_total(game, profile)
        if opt_w is None or w > opt_w:
            opt_profile, opt_w = profile, w
        if deviation_report(game, profile).max_factor <= alpha:
            equilibria.append(profile)
            eq_welfares.append(w)
    exists = bool(equilibria)
    poa = pos = None
    if exists:
        worst, best = min(eq_welfares), max(eq_welfares)
        poa = _welfare_ratio(opt_w, worst)
        pos = _welfare_ratio(opt_w, best)
    return EquilibriumCensus(alpha=alpha, opt_profile=opt_profile,
                             opt_welfare=opt_w, equilibria=tuple(equilibria),
                             equilibrium_welfares=tuple(eq_welfares),
                             poa=poa, pos=pos, exists=exists)


def _welfare_ratio(opt_w, eq_w):
    if eq_w == 0:
        return ONE if opt_w == 0 else INF
    return opt_w / eq_w


def welfare_lower_bound(alpha, gamma, m):
    """Guaranteed welfare fraction of the hybrid algorithm's output.

    gamma may be +inf; m may be +inf, treated as the 1/m -> 0 limit.
    """
    alpha = Fraction(alpha)
    if not (Fraction(1618, 1000) <= alpha <= 2):
        raise ValueError("alpha must lie in [1618/1000, 2]")
    inf_m = m == INF
    if not inf_m and (not isinstance(m, int) or m < 1):
        raise ValueError("m must be an integer >= 1 or inf")
    if gamma != INF:
        gamma = Fraction(gamma)
        if gamma < 1:
            raise ValueError("gamma must be >= 1 or inf")

    lemma_frac = (ONE if not inf_m and m == 1
                  else (alpha - 1) / ((m - 1) + (alpha - 1)) if not inf_m
                  else Fraction(0))
    if gamma == INF:
        return lemma_frac
    inv_m = Fraction(0) if inf_m else Fraction(1, m)
    if inf_m or gamma + 1 <= alpha * m:
        return (alpha - 1) / (1 + ((gamma + 1) / alpha) * (alpha - (1 + inv_m)))
    return max(alpha / (gamma + 1), lemma_frac)


def table_fraction(alpha, gamma, m):
    """Welfare fraction as tabulated in the published performance table.

    In the high-imbalance regime (gamma + 1 > alpha * m) the published
    figures follow the balanced two-term formula rather than the proven
    worst-case maximum, so this includes that candidate; it is never below
    `welfare_lower_bound`.
    """
    guaranteed = welfare_lower_bound(alpha, gamma, m)
    if gamma == INF or m == INF:
        return guaranteed
    alpha = Fraction(alpha)
    gamma = Fraction(gamma)
    if gamma + 1 <= alpha * m:
        return guaranteed
    balanced = (alpha - 1) / (1 + ((gamma + 1) / alpha) * (alpha - (1 + Fraction(1, m))))
    return max(guaranteed, balanced)


def payment_stabilize(game, profile, opt_welfare):
    """Minimal per-player payments (conditional on staying) that make the
    profile a Nash equilibrium of the payment-augmented game."""
    game.validate_profile(profile)
    if opt_welfare <= 0:
        raise ValueError("optimum welfare must be positive")
    payments = []
    for i in range(game.n):
        u_cur, _, _ = player_utility(game, profile, i)
        best_alt = u_cur
        for k in range(1, game.m + 1):
            if k == profile[i]:
                continue
            u, _, _ = player_utility(game, profile, i, strategy=k)
            if u > best_alt:
                best_alt = u
        payments.append(best_alt - u_cur if best_alt > u_cur else Fraction(0))
    total = sum(payments, Fraction(0))
    return PaymentPlan(payments=tuple(payments), total=total,
                       nu=total / opt_welfare)


def post_payment_deviation_report(game, profile, plan):
    """Deviation report of the payment-augmented game at the paid profile.

    Payments are granted only while the player sticks to her prescribed
    strategy, so they raise the baseline and not the deviation utilities.
    """
    game.validate_profile(profile)
    per = []
    max_factor, witness = ONE, None
    for i in range(game.n):
        u_cur = player_utility(game, profile, i)[0] + plan.payments[i]
        best_k, best_u = profile[i], u_cur
        for k in range(1, game.m + 1):
            if k == profile[i]:
                continue
            u, _, _ = player_utility(game, profile, i, strategy=k)
            if u > best_u:
                best_k, best_u = k, u
        f = _factor(u_cur, best_u)
        per.append((best_k, f))
        if f > max_factor:
            max_factor, witness = f, i
    return DeviationReport(per_player=tuple(per), max_factor=max_factor,
                           witness=witness)


def semi_smoothness_check(game, profile):
    """Check the uniform-mixed-deviation inequality against brute-force OPT:
    sum_i (1/m) sum_k u_i(k, s_-i) >= u(OPT) / m, exactly."""
    game.validate_profile(profile)
    _, opt_w = brute_force_optimum(game)
    lhs = Fraction(0)
    for i in range(game.n):
        for k in range(1, game.m + 1):
            lhs += player_utility(game, profile, i, strategy=k)[0]
    return Fraction(lhs, game.m) >= Fraction(opt_w, game.m) if game.m else True


def mip_check(game, profile):
    """Minimum-intrinsic-preference condition: A(s) >= A_T / m."""
    game.validate_profile(profile)
    from .model import instance_stats, welfare
    a_s = welfare(game, profile).intrinsic_total
    a_t = instance_stats(game).a_total
    return a_s * game.m >= a_t
