"""Influence-weight recovery and ordinal potential auditing.

An instance whose split coefficients all arise from per-player influence
weights via share_ij = g_i / (g_i + g_j) admits an ordinal potential

    Phi(s) = sum_i w_i^{s_i} / g_i  +  sum_{s_i = s_j} w(i,j) / (g_i + g_j),

so gated best-response dynamics cannot cycle on such instances.  Recovery
propagates weights along a spanning tree of the positive-weight graph and
checks the remaining edges exactly; failure carries a witness edge.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .model import player_utility
from .rationals import format_rational, parse_rational

ONE = Fraction(1)


@dataclass(frozen=True)
class PotentialCertificate:
    """Per-player influence weights, normalized so each connected component
    of the positive-weight graph has minimum entry 1."""

    gamma: tuple  # positive Fractions, one per player

    def to_json(self):
        return json.dumps([format_rational(g) for g in self.gamma]) + "\n"

    @staticmethod
    def from_json(text):
        raw = json.loads(text)
        return PotentialCertificate(
            gamma=tuple(parse_rational(v, f"gamma[{i}]") for i, v in enumerate(raw)))


@dataclass(frozen=True)
class RecoveryFailure:
    """Witness that no influence-weight vector realizes the shares."""

    edge: tuple   # (i, j)
    reason: str


@dataclass(frozen=True)
class AuditReport:
    trials: int
    violations: int
    counterexample: tuple | None  # (profile, player, deviation, du, dphi)

    @property
    def ok(self):
        return self.violations == 0


def cc_recover(game):
    """Recover influence weights from split coefficients, or fail with the
    inconsistent edge.

    Only positive-weight edges constrain the weights; shares on zero-weight
    edges are payoff-irrelevant.  Players not on any positive-weight edge
    get weight 1.
    """
    positive = [e for e in game.edges if e.w > 0]
    for e in positive:
        if e.share_ij == 0 or e.share_ij == 1:
            return RecoveryFailure(edge=(e.i, e.j),
                                   reason="share 0 or 1 admits no positive weights")
    adj = [[] for _ in range(game.n)]
    for e in positive:
        # gamma_j = gamma_i * share_ji / share_ij along edge (i, j)
        adj[e.i].append((e.j, e.share_ji / e.share_ij))
        adj[e.j].append((e.i, e.share_ij / e.share_ji))
    gamma = [None] * game.n
    for root in range(game.n):
        if gamma[root] is not None:
            continue
        gamma[root] = ONE
        component = [root]
        stack = [root]
        while stack:
            i = stack.pop()
            for j, ratio in adj[i]:
                expected = gamma[i] * ratio
                if gamma[j] is None:
                    gamma[j] = expected
                    component.append(j)
                    stack.append(j)
                elif gamma[j] != expected:
                    return RecoveryFailure(edge=(i, j),
                                           reason="cycle forces two different weights")
        low = min(gamma[i] for i in component)
        for i in component:
            gamma[i] /= low
    return PotentialCertificate(gamma=tuple(gamma))


def certificate_shares_match(game, cert):
    """Exact round-trip check: every positive-weight edge's split equals
    g_i / (g_i + g_j)."""
    for e in game.edges:
        if e.w == 0:
            continue
        gi, gj = cert.gamma[e.i], cert.gamma[e.j]
        if e.share_ij != gi / (gi + gj):
            return False
    return True


def potential_value(game, profile, cert):
    game.validate_profile(profile)
    if len(cert.gamma) != game.n:
        raise ValueError("certificate must weight every player")
    phi = Fraction(0)
    for i in range(game.n):
        phi += game.intrinsic[i][profile[i] - 1] / cert.gamma[i]
    for e in game.edges:
        if profile[e.i] == profile[e.j]:
            phi += e.w / (cert.gamma[e.i] + cert.gamma[e.j])
    return phi


def potential_delta(game, profile, i, new_strategy, cert):
    """Phi(deviated) - Phi(profile) computed from player i's terms only.

    All other terms of the potential cancel exactly, so this equals the
    full difference; a unit test asserts the identity.
    """
    old_k, new_k = profile[i], new_strategy
    if old_k == new_k:
        return Fraction(0)
    gi = cert.gamma[i]
    delta = (game.intrinsic[i][new_k - 1] - game.intrinsic[i][old_k - 1]) / gi
    weights = game.edge_weight
    for j, _gain in game.adjacency[i]:
        if profile[j] == new_k:
            delta += weights[frozenset((i, j))] / (gi + cert.gamma[j])
        elif profile[j] == old_k:
            delta -= weights[frozenset((i, j))] / (gi + cert.gamma[j])
    return delta


def _sign(x):
    return (x > 0) - (x < 0)


def _audit_one(game, cert, profile, i, new_k):
    u_old, _, _ = player_utility(game, profile, i)
    u_new, _, _ = player_utility(game, profile, i, strategy=new_k)
    du = u_new - u_old
    dphi = potential_delta(game, profile, i, new_k, cert)
    return du, dphi, _sign(du) == _sign(dphi)


def ordinal_audit(game, cert, trials=10_000, seed=0):
    """Sampled sign audit: for random (profile, player, deviation) triples,
    the deviating player's utility change and the potential change must have
    the same sign.  Tiny instances (m^n * n * m <= 20_000) are audited
    exhaustively instead."""
    if len(cert.gamma) != game.n:
        raise ValueError("certificate must weight every player")
    if game.n == 0 or game.m < 2:
        return AuditReport(trials=0, violations=0, counterexample=None)

    exhaustive = (game.m ** game.n) * game.n * game.m <= 20_000
    done = violations = 0
    counterexample = None

    if exhaustive:
        import itertools
        for profile in itertools.product(range(1, game.m + 1), repeat=game.n):
            for i in range(game.n):
                for new_k in range(1, game.m + 1):
                    if new_k == profile[i]:
                        continue
                    du, dphi, ok = _audit_one(game, cert, profile, i, new_k)
                    done += 1
                    if not ok:
                        violations += 1
                        if counterexample is None:
                            counterexample = (profile, i, new_k, du, dphi)
    else:
        rng = random.Random(seed)
        for _ in range(trials):
            profile = tuple(rng.randint(1, game.m) for _ in range(game.n))
            i = rng.randrange(game.n)
            new_k = rng.randint(1, game.m)
            if new_k == profile[i]:
                new_k = new_k % game.m + 1
            du, dphi, ok = _audit_one(game, cert, profile, i, new_k)
            done += 1
            if not ok:
                violations += 1
                if counterexample is None:
                    counterexample = (profile, i, new_k, du, dphi)
    return AuditReport(trials=done, violations=violations,
                       counterexample=counterexample)
