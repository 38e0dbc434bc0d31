"""Coordination games beyond pairwise additive utilities.

Three model families live here:

* ``GeneralizedGame`` — per-player utility tables over (strategy, set of
  co-located others), with a measured complementarity degree r and a
  one-shot dynamic whose gate is tuned to r.
* ``HypergraphGame`` — group relationships that pay out only when every
  member (and an optional anchored strategy) coincides, with influence
  weight recovery and an ordinal potential.
* ``OmegaGame`` — unit-benefit games where originally-worthless pairs earn
  a fraction omega of the benefit and conflicted pairs may never co-locate;
  a lexicographically maximal mass vector gives a 1/omega-approximate
  strong equilibrium.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from .analysis import SizeError
from .rationals import (INF, ParseError, format_rational, parse_rational,
                        supermodular_alpha)

ONE = Fraction(1)
ZERO = Fraction(0)

TABLE_ENUM_CAP = 200_000  # subset-pair enumeration guard


class TableError(KeyError):
    """A utility table was queried at an unspecified (strategy, set) entry."""


# ---------------------------------------------------------------------------
# Generalized games: explicit utility tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneralizedGame:
    """n players, m strategies, sparse tables u[(i, k, others)] -> Fraction.

    ``others`` is a frozenset of co-located players excluding i.  Querying
    an absent entry is an error: complement structure must be fully
    specified rather than silently defaulted.
    """

    n: int
    m: int
    tables: dict  # (i, k, frozenset) -> Fraction

    def __post_init__(self):
        if self.n < 0 or self.m < 1:
            raise ValueError("need n >= 0 players and m >= 1 strategies")
        for (i, k, others), u in self.tables.items():
            if not (0 <= i < self.n) or not (1 <= k <= self.m):
                raise ValueError(f"table key ({i},{k}) out of range")
            if i in others or any(not (0 <= j < self.n) for j in others):
                raise ValueError(f"table key ({i},{k},{set(others)}): bad set")
            if u < 0:
                raise ValueError(f"table entry ({i},{k},{set(others)}): negative")

    def utility(self, i, k, others):
        try:
            return self.tables[(i, k, frozenset(others))]
        except KeyError:
            raise TableError(
                f"no entry for player {i}, strategy {k}, set {sorted(others)}")

    def utility_in_profile(self, profile, i, strategy=None):
        k = profile[i] if strategy is None else strategy
        others = frozenset(j for j in range(self.n)
                           if j != i and profile[j] == k)
        return self.utility(i, k, others)

    def validate_profile(self, profile):
        if len(profile) != self.n:
            raise ValueError("profile length must equal player count")
        for s in profile:
            if not (1 <= s <= self.m):
                raise ValueError(f"strategy {s} out of range 1..{self.m}")


def welfare_generalized(ggame, profile):
    ggame.validate_profile(profile)
    return sum((ggame.utility_in_profile(profile, i) for i in range(ggame.n)),
               ZERO)


def supermodularity_degree(ggame):
    """Smallest r with u_i(k, S∪T) <= r * (u_i(k, S) + u_i(k', T)) over all
    covered entries, floored at 1; +inf when a zero denominator meets a
    positive numerator.

    The second entry's strategy k' may differ from k: the one-shot analysis
    charges a player's gain against utilities at two different strategies,
    so the degree must bound those cross-strategy sums too.
    """
    by_player = {}
    for (i, k, others), u in ggame.tables.items():
        by_player.setdefault(i, []).append((k, others, u))
    total_pairs = sum(len(v) ** 2 for v in by_player.values())
    if total_pairs > TABLE_ENUM_CAP:
        raise SizeError(f"table too large for pairwise enumeration "
                        f"({total_pairs} pairs)")
    degree = ONE
    for i, entries in by_player.items():
        for (k1, o1, u1), (k2, o2, u2) in itertools.product(entries, repeat=2):
            key = (i, k1, o1 | o2)
            if key not in ggame.tables:
                continue
            top = ggame.tables[key]
            if u1 + u2 == 0:
                if top > 0:
                    return INF
                continue
            ratio = top / (u1 + u2)
            if ratio > degree:
                degree = ratio
    return degree


@dataclass(frozen=True)
class GeneralizedDeviationReport:
    per_player: tuple
    max_factor: object
    witness: int | None

    def is_alpha_equilibrium(self, alpha):
        return self.max_factor <= alpha


def verify_generalized(ggame, profile, alpha=None):
    """Best-response improvement factor per player, exactly.

    Staying put is always a candidate, so factors are at least 1.
    """
    ggame.validate_profile(profile)
    per, max_factor, witness = [], ONE, None
    for i in range(ggame.n):
        u_cur = ggame.utility_in_profile(profile, i)
        best_k, best_u = profile[i], u_cur
        for k in range(1, ggame.m + 1):
            if k == profile[i]:
                continue
            u = ggame.utility_in_profile(profile, i, strategy=k)
            if u > best_u:
                best_k, best_u = k, u
        if u_cur == 0:
            f = INF if best_u > 0 else ONE
        else:
            f = best_u / u_cur
        per.append((best_k, f))
        if f > max_factor:
            max_factor, witness = f, i
    report = GeneralizedDeviationReport(per_player=tuple(per),
                                        max_factor=max_factor, witness=witness)
    return report


def one_shot_generalized(ggame, k0, alpha=None):
    """One-shot gated best response on a generalized game.

    Everyone starts at k0; a player still there may leave once, to her best
    response, when it multiplies her utility by at least the gate alpha
    (zero baseline: any positive utility passes).  The default gate is the
    smallest rational at denominator 10^6 at or above
    (r + sqrt(r(r+4))) / 2 for the measured degree r.

    Returns (profile, alpha_used, moves) where moves lists
    (player, new strategy, old utility, new utility).
    """
    if not (1 <= k0 <= ggame.m):
        raise ValueError(f"starting strategy {k0} out of range 1..{ggame.m}")
    if alpha is None:
        r = supermodularity_degree(ggame)
        if r == INF:
            raise ValueError("unbounded complementarity: no finite gate exists")
        alpha = supermodular_alpha(r)
    else:
        alpha = Fraction(alpha)
        if alpha < 1:
            raise ValueError("alpha must be >= 1")
    profile = tuple([k0] * ggame.n)
    moves = []
    while True:
        mover = None
        for i in range(ggame.n):
            if profile[i] != k0:
                continue
            u_cur = ggame.utility_in_profile(profile, i)
            best_k, best_u = profile[i], u_cur
            for k in range(1, ggame.m + 1):
                if k == k0:
                    continue
                u = ggame.utility_in_profile(profile, i, strategy=k)
                if u > best_u:
                    best_k, best_u = k, u
            if best_k == k0:
                continue
            allowed = (best_u > 0) if u_cur == 0 else (
                best_u >= alpha * u_cur and best_u > u_cur)
            if allowed:
                mover = (i, best_k, u_cur, best_u)
                break
        if mover is None:
            break
        i, k, u_old, u_new = mover
        moves.append((i, k, u_old, u_new))
        profile = profile[:i] + (k,) + profile[i + 1:]
    return profile, alpha, tuple(moves)


def triangle_game(c):
    """Three-player cyclic table family with tunable complementarity.

    Player i favors strategy f = i+1 (cyclically) and benefits from player
    i+1.  With the benefactor co-located the favorite and the next strategy
    both pay c^3; alone they pay c^2 and c; the last strategy pays c with
    the benefactor and nothing alone.  The third player never matters.
    """
    c = Fraction(c)
    if c < 1:
        raise ValueError("c must be >= 1")
    n, m = 3, 3
    tables = {}
    for i in range(n):
        benefactor = (i + 1) % n
        other = (i + 2) % n
        fav = i + 1  # favorite strategy, 1-based
        base = {  # offset from favorite -> (alone, with benefactor)
            0: (c ** 2, c ** 3),
            1: (c, c ** 3),
            2: (ZERO, c),
        }
        for off, (alone, joint) in base.items():
            k = (fav - 1 + off) % m + 1
            for with_other in (False, True):
                extra = frozenset([other]) if with_other else frozenset()
                tables[(i, k, extra)] = alone
                tables[(i, k, extra | {benefactor})] = joint
    return GeneralizedGame(n=n, m=m, tables=tables)


def triangle_nonexistence_check(c):
    """Min over all 27 profiles of the max unilateral deviation factor.

    Equals c exactly: every profile of the triangle family leaves some
    player a factor-c improvement, so no better-than-c approximate
    equilibrium exists.
    """
    game = triangle_game(c)
    best = None
    for profile in itertools.product((1, 2, 3), repeat=3):
        f = verify_generalized(game, profile).max_factor
        if best is None or f < best:
            best = f
    return best


def additive_tables(game):
    """Full generalized tables equivalent to a pairwise additive instance.

    Exponential in n; intended for desk-scale oracle comparisons only.
    """
    if game.n > 12:
        raise ValueError("additive table expansion capped at n = 12")
    players = range(game.n)
    tables = {}
    for i in players:
        gains = dict()
        for j, gain in game.adjacency[i]:
            gains[j] = gain
        rest = [j for j in players if j != i]
        for size in range(len(rest) + 1):
            for combo in itertools.combinations(rest, size):
                coord = sum((gains.get(j, ZERO) for j in combo), ZERO)
                for k in range(1, game.m + 1):
                    tables[(i, k, frozenset(combo))] = (
                        game.intrinsic[i][k - 1] + coord)
    return GeneralizedGame(n=game.n, m=game.m, tables=tables)


def parse_generalized(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    for key in ("n", "m", "tables"):
        if key not in data:
            raise ParseError(f"{key}: missing field")
    tables = {}
    if not isinstance(data["tables"], list) or len(data["tables"]) != data["n"]:
        raise ParseError("tables: expected one entry list per player")
    for i, entries in enumerate(data["tables"]):
        for idx, e in enumerate(entries):
            where = f"tables[{i}][{idx}]"
            try:
                k, subset = e["strategy"], e["others"]
            except (KeyError, TypeError) as exc:
                raise ParseError(f"{where}: missing strategy/others") from exc
            u = parse_rational(e.get("u"), f"{where}.u")
            key = (i, k, frozenset(subset))
            if key in tables:
                raise ParseError(f"{where}: duplicate entry")
            tables[key] = u
    try:
        return GeneralizedGame(n=data["n"], m=data["m"], tables=tables)
    except (ValueError, TypeError) as exc:
        raise ParseError(str(exc)) from exc


def serialize_generalized(ggame):
    per_player = [[] for _ in range(ggame.n)]
    for (i, k, others), u in sorted(ggame.tables.items(),
                                    key=lambda kv: (kv[0][0], kv[0][1],
                                                    sorted(kv[0][2]))):
        per_player[i].append({"strategy": k, "others": sorted(others),
                              "u": format_rational(u)})
    return json.dumps({"n": ggame.n, "m": ggame.m, "tables": per_player}) + "\n"


# ---------------------------------------------------------------------------
# Hypergraph games
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Hyperedge:
    players: tuple          # member player indices
    weight: Fraction
    shares: tuple           # per member, summing to 1
    anchor: int | None = None  # strategy the edge is pinned to, if any

    def pays(self, profile):
        strategies = {profile[i] for i in self.players}
        if len(strategies) != 1:
            return False
        return self.anchor is None or strategies == {self.anchor}


@dataclass(frozen=True)
class HypergraphGame:
    n: int
    m: int
    edges: tuple

    def __post_init__(self):
        for e in self.edges:
            if len(set(e.players)) != len(e.players) or not e.players:
                raise ValueError("hyperedge members must be distinct and nonempty")
            if any(not (0 <= i < self.n) for i in e.players):
                raise ValueError("hyperedge member out of range")
            if e.anchor is not None and not (1 <= e.anchor <= self.m):
                raise ValueError("anchor strategy out of range")
            if e.weight < 0:
                raise ValueError("negative hyperedge weight")
            if len(e.shares) != len(e.players):
                raise ValueError("one share per member required")
            if any(s < 0 for s in e.shares) or sum(e.shares, ZERO) != 1:
                raise ValueError("shares must be nonnegative and sum to 1")

    def validate_profile(self, profile):
        if len(profile) != self.n:
            raise ValueError("profile length must equal player count")
        for s in profile:
            if not (1 <= s <= self.m):
                raise ValueError(f"strategy {s} out of range 1..{self.m}")


def hypergraph_utility(hgame, profile, i, strategy=None):
    k = profile[i] if strategy is None else strategy
    probe = profile[:i] + (k,) + profile[i + 1:]
    u = ZERO
    for e in hgame.edges:
        if i in e.players and e.pays(probe):
            u += e.shares[e.players.index(i)] * e.weight
    return u


def hypergraph_welfare(hgame, profile):
    hgame.validate_profile(profile)
    return sum((e.weight for e in hgame.edges if e.pays(profile)), ZERO)


def hypergraph_cc_recover(hgame):
    """Influence weights from hyperedge shares, or a failure witness.

    Within a positive edge, shares are proportional to member weights (an
    anchored strategy contributes weight 0 and no share).  Weights are
    propagated edge by edge and every remaining share is checked exactly.
    """
    from .potentials import RecoveryFailure, PotentialCertificate

    positive = [e for e in hgame.edges if e.weight > 0]
    for e in positive:
        if any(s == 0 for s in e.shares):
            return RecoveryFailure(edge=tuple(e.players),
                                   reason="zero share admits no positive weights")
    gamma = [None] * hgame.n
    pending = list(positive)
    while pending:
        progressed = []
        for e in pending:
            known = next((idx for idx, i in enumerate(e.players)
                          if gamma[i] is not None), None)
            if known is None:
                continue
            base = gamma[e.players[known]] / e.shares[known]
            for idx, i in enumerate(e.players):
                expected = base * e.shares[idx]
                if gamma[i] is None:
                    gamma[i] = expected
                elif gamma[i] != expected:
                    return RecoveryFailure(
                        edge=tuple(e.players),
                        reason="edge forces two different weights")
            progressed.append(e)
        if progressed:
            pending = [e for e in pending if e not in progressed]
        else:
            # every remaining edge sits in an untouched component: seed one
            e = pending[0]
            gamma[e.players[0]] = e.shares[0]
    # normalize per component: group by connectivity through positive edges
    comp = list(range(hgame.n))

    def find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for e in positive:
        for i in e.players[1:]:
            comp[find(i)] = find(e.players[0])
    groups = {}
    for i in range(hgame.n):
        if gamma[i] is not None:
            groups.setdefault(find(i), []).append(i)
    for members in groups.values():
        low = min(gamma[i] for i in members)
        for i in members:
            gamma[i] /= low
    for i in range(hgame.n):
        if gamma[i] is None:
            gamma[i] = ONE
    return PotentialCertificate(gamma=tuple(gamma))


def hypergraph_potential(hgame, profile, cert):
    """Phi(s) = sum over paying edges of w_e / (sum of member weights)."""
    hgame.validate_profile(profile)
    phi = ZERO
    for e in hgame.edges:
        if e.pays(profile):
            phi += e.weight / sum((cert.gamma[i] for i in e.players), ZERO)
    return phi


def hypergraph_br_dynamics(hgame, start, step_cap=None):
    """Plain best-response dynamics; returns (terminal, moves, reason)."""
    hgame.validate_profile(start)
    if step_cap is None:
        step_cap = (hgame.m ** hgame.n) * max(hgame.n, 1)
    profile = tuple(start)
    moves = []
    while True:
        mover = None
        for i in range(hgame.n):
            u_cur = hypergraph_utility(hgame, profile, i)
            best_k, best_u = profile[i], u_cur
            for k in range(1, hgame.m + 1):
                if k == profile[i]:
                    continue
                u = hypergraph_utility(hgame, profile, i, strategy=k)
                if u > best_u:
                    best_k, best_u = k, u
            if best_k != profile[i]:
                mover = (i, best_k)
                break
        if mover is None:
            return profile, tuple(moves), "converged"
        i, k = mover
        moves.append((i, profile[i], k))
        profile = profile[:i] + (k,) + profile[i + 1:]
        if len(moves) >= step_cap:
            return profile, tuple(moves), "step-cap"


def parse_hypergraph(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    for key in ("n", "m", "edges"):
        if key not in data:
            raise ParseError(f"{key}: missing field")
    edges = []
    for idx, raw in enumerate(data["edges"]):
        where = f"edges[{idx}]"
        try:
            players = tuple(raw["players"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"{where}: missing players") from exc
        w = parse_rational(raw.get("w"), f"{where}.w")
        shares = tuple(parse_rational(s, f"{where}.shares[{i}]")
                       for i, s in enumerate(raw.get("shares", [])))
        edges.append(Hyperedge(players=players, weight=w, shares=shares,
                               anchor=raw.get("anchor")))
    try:
        return HypergraphGame(n=data["n"], m=data["m"], edges=tuple(edges))
    except (ValueError, TypeError) as exc:
        raise ParseError(str(exc)) from exc


def serialize_hypergraph(hgame):
    data = {
        "n": hgame.n, "m": hgame.m,
        "edges": [
            {"players": list(e.players), "w": format_rational(e.weight),
             "shares": [format_rational(s) for s in e.shares],
             "anchor": e.anchor}
            for e in hgame.edges
        ],
    }
    return json.dumps(data) + "\n"


# ---------------------------------------------------------------------------
# Omega extension: unit benefits with conflicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OmegaGame:
    """Pairs labeled one/zero/conflict; zero pairs earn a fraction omega of
    the full benefit a_i * b_j; conflicted pairs may never co-locate."""

    n: int
    m: int
    a: tuple
    b: tuple
    labels: tuple  # n x n, symmetric, entries "one" | "zero" | "conflict"
    omega: Fraction

    def __post_init__(self):
        if not (Fraction(1, 2) <= self.omega <= 1):
            raise ValueError("omega must lie in [1/2, 1]")
        if len(self.a) != self.n or len(self.b) != self.n:
            raise ValueError("a and b must have one entry per player")
        if any(x <= 0 for x in self.a) or any(x <= 0 for x in self.b):
            raise ValueError("a and b entries must be positive")
        if len(self.labels) != self.n:
            raise ValueError("labels must be an n x n matrix")
        for i, row in enumerate(self.labels):
            if len(row) != self.n:
                raise ValueError("labels must be an n x n matrix")
            for j, lab in enumerate(row):
                if lab not in ("one", "zero", "conflict"):
                    raise ValueError(f"labels[{i}][{j}]: unknown label {lab!r}")
                if i != j and lab != self.labels[j][i]:
                    raise ValueError(f"labels[{i}][{j}]: not symmetric")

    def feasible(self, profile):
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if profile[i] == profile[j] and self.labels[i][j] == "conflict":
                    return False
        return True

    def validate_profile(self, profile):
        if len(profile) != self.n:
            raise ValueError("profile length must equal player count")
        for s in profile:
            if not (1 <= s <= self.m):
                raise ValueError(f"strategy {s} out of range 1..{self.m}")


def omega_utility(ogame, profile, i):
    u = ZERO
    for j in range(ogame.n):
        if j == i or profile[j] != profile[i]:
            continue
        lab = ogame.labels[i][j]
        if lab == "one":
            u += ogame.a[i] * ogame.b[j]
        elif lab == "zero":
            u += ogame.omega * ogame.a[i] * ogame.b[j]
        else:
            raise ValueError("infeasible profile: conflicted co-location")
    return u


def mass_vector(ogame, profile):
    """Per-strategy mass pi_k = sum of b_i over players at k."""
    pi = [ZERO] * ogame.m
    for i, s in enumerate(profile):
        pi[s - 1] += ogame.b[i]
    return tuple(pi)


def lex_compare(pi1, pi2):
    """-1/0/1 comparing sorted-non-increasing vectors lexicographically."""
    s1 = sorted(pi1, reverse=True)
    s2 = sorted(pi2, reverse=True)
    if s1 < s2:
        return -1
    if s1 > s2:
        return 1
    return 0


def lex_strong_eq(ogame):
    """Feasible state with lexicographically maximal mass vector.

    Ties break toward the lexicographically smallest profile.  The result
    is a 1/omega-approximate strong equilibrium; at omega = 1 it is an
    exact strong equilibrium.
    """
    if ogame.m ** ogame.n > 10**7:
        raise SizeError(f"state space {ogame.m}^{ogame.n} too large")
    best_profile, best_pi = None, None
    for profile in itertools.product(range(1, ogame.m + 1), repeat=ogame.n):
        if not ogame.feasible(profile):
            continue
        pi = mass_vector(ogame, profile)
        if best_pi is None or lex_compare(pi, best_pi) > 0:
            best_profile, best_pi = profile, pi
    if best_profile is None:
        raise ValueError("no feasible state exists")
    return best_profile, best_pi


def verify_omega_strong(ogame, profile, alpha):
    """Exhaustive feasible group-deviation check at factor alpha."""
    ogame.validate_profile(profile)
    if not ogame.feasible(profile):
        raise ValueError("profile is infeasible")
    alpha = Fraction(alpha)
    base = [omega_utility(ogame, profile, i) for i in range(ogame.n)]
    for alt in itertools.product(range(1, ogame.m + 1), repeat=ogame.n):
        coalition = tuple(i for i in range(ogame.n) if alt[i] != profile[i])
        if not coalition or not ogame.feasible(alt):
            continue
        violated = True
        for i in coalition:
            u_new = omega_utility(ogame, alt, i)
            if base[i] == 0:
                improving = u_new > 0  # any gain from nothing beats any factor
            else:
                improving = u_new > alpha * base[i]
            if not improving:
                violated = False
                break
        if violated:
            return alt
    return None


def parse_omega(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    for key in ("n", "m", "a", "b", "labels", "omega"):
        if key not in data:
            raise ParseError(f"{key}: missing field")
    try:
        return OmegaGame(
            n=data["n"], m=data["m"],
            a=tuple(parse_rational(v, f"a[{i}]") for i, v in enumerate(data["a"])),
            b=tuple(parse_rational(v, f"b[{i}]") for i, v in enumerate(data["b"])),
            labels=tuple(tuple(row) for row in data["labels"]),
            omega=parse_rational(data["omega"], "omega"),
        )
    except (ValueError, TypeError) as exc:
        raise ParseError(str(exc)) from exc


def serialize_omega(ogame):
    data = {
        "n": ogame.n, "m": ogame.m,
        "a": [format_rational(v) for v in ogame.a],
        "b": [format_rational(v) for v in ogame.b],
        "labels": [list(row) for row in ogame.labels],
        "omega": format_rational(ogame.omega),
    }
    return json.dumps(data) + "\n"
