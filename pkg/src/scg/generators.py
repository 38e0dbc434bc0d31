"""Instance generators: named families and seeded random corpora.

Generation is a pure function of the parameters and the seed, so fixtures
regenerate byte-identically.  Random rationals keep small denominators to
keep exact arithmetic cheap.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .generalized import (GeneralizedGame, Hyperedge, HypergraphGame,
                          OmegaGame, triangle_game)
from .model import Edge, GameInstance
from .rationals import SQRT2_APPROX

ZERO = Fraction(0)
HALF = Fraction(1, 2)


def example1(r=1):
    """Three-player cyclic instance with no Nash equilibrium.

    Player i's intrinsic is sqrt(2)-approx * r at strategy i+1 and r at the
    next strategy (cyclically); each player fully captures the benefit of
    one directed relationship of weight r around the cycle.
    """
    r = Fraction(r)
    if r <= 0:
        raise ValueError("r must be positive")
    n = m = 3
    intrinsic = []
    for i in range(n):
        row = [ZERO] * m
        row[i] = SQRT2_APPROX * r
        row[(i + 1) % m] = r
        intrinsic.append(tuple(row))
    edges = tuple(Edge(i=i, j=(i + 1) % n, w=r, share_ij=Fraction(1))
                  for i in range(n))
    return GameInstance(n=n, m=m, intrinsic=tuple(intrinsic), edges=edges)


def prop5(m, r=1, eps=Fraction(1, 100)):
    """Star family with a hub indifferent across strategies.

    m players, m strategies.  The hub (player 0) has intrinsic r everywhere
    and takes share r/(r+eps) of each weight-(r+eps) spoke; spoke player j
    has intrinsic 2*eps at her own strategy, so she strictly prefers
    isolation to her eps-sized share, pushing equilibria apart.
    """
    r, eps = Fraction(r), Fraction(eps)
    if m < 2 or r < 1 or eps <= 0:
        raise ValueError("need m >= 2, r >= 1, eps > 0")
    intrinsic = [tuple([r] * m)]
    for j in range(1, m):
        row = [ZERO] * m
        row[j] = 2 * eps
        intrinsic.append(tuple(row))
    edges = tuple(Edge(i=0, j=j, w=r + eps, share_ij=r / (r + eps))
                  for j in range(1, m))
    return GameInstance(n=m, m=m, intrinsic=tuple(intrinsic), edges=edges)


def symmetric_pos_tight(m, r=1, eps=Fraction(1, 10_000)):
    """Symmetric star whose best equilibrium welfare trails the optimum by
    a factor approaching 2 - 1/m as eps shrinks.

    Each player's own strategy pays r+eps; spokes of weight 2r split evenly
    connect player 0 to everyone, so gathering at strategy 1 is worth
    (2m-1)r + eps but no one will stay there for r alone.
    """
    r, eps = Fraction(r), Fraction(eps)
    if m < 2 or r <= 0 or eps <= 0:
        raise ValueError("need m >= 2, r > 0, eps > 0")
    intrinsic = []
    for i in range(m):
        row = [ZERO] * m
        row[i] = r + eps
        intrinsic.append(tuple(row))
    edges = tuple(Edge(i=0, j=j, w=2 * r, share_ij=HALF) for j in range(1, m))
    return GameInstance(n=m, m=m, intrinsic=tuple(intrinsic), edges=edges)


def triangle_c(c):
    """Generalized three-player family with no c'-approximate equilibrium
    for any c' < c."""
    return triangle_game(c)


def _random_fraction(rng, num_max, den_choices=(1, 2, 3)):
    return Fraction(rng.randint(0, num_max), rng.choice(den_choices))


def random_instance(n, m, seed, weight_max=10, edge_prob=Fraction(1, 2)):
    """Random instance with interior split coefficients (finite imbalance)."""
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    rng = random.Random(seed)
    intrinsic = tuple(
        tuple(_random_fraction(rng, weight_max) for _ in range(m))
        for _ in range(n))
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < edge_prob:
                w = Fraction(rng.randint(1, weight_max))
                share = Fraction(rng.randint(1, 9), 10)
                edges.append(Edge(i=i, j=j, w=w, share_ij=share))
    return GameInstance(n=n, m=m, intrinsic=intrinsic, edges=tuple(edges))


def random_cc(n, m, seed, gamma_max=5, weight_max=10):
    """Random instance whose splits come from per-player influence weights,
    so weight recovery succeeds by construction."""
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    rng = random.Random(seed)
    gamma = [Fraction(rng.randint(1, gamma_max)) for _ in range(n)]
    intrinsic = tuple(
        tuple(_random_fraction(rng, weight_max) for _ in range(m))
        for _ in range(n))
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.5:
                w = Fraction(rng.randint(1, weight_max))
                edges.append(Edge(i=i, j=j, w=w,
                                  share_ij=gamma[i] / (gamma[i] + gamma[j])))
    return GameInstance(n=n, m=m, intrinsic=intrinsic, edges=tuple(edges)), tuple(gamma)


def random_symmetric(n, m, seed, weight_max=10):
    """Random instance with every relationship split evenly."""
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    rng = random.Random(seed)
    intrinsic = tuple(
        tuple(_random_fraction(rng, weight_max) for _ in range(m))
        for _ in range(n))
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.5:
                edges.append(Edge(i=i, j=j, w=Fraction(rng.randint(1, weight_max)),
                                  share_ij=HALF))
    return GameInstance(n=n, m=m, intrinsic=intrinsic, edges=tuple(edges))


def random_supermodular(n, m, r, seed, base_max=6, gain_max=4):
    """Random generalized game with complementarity degree at most r.

    r = 1 gives additive tables; r = 2 squares an additive table, which
    keeps monotonicity and bounds every union ratio by 2 since
    (x + y)^2 <= 2 (x^2 + y^2).
    """
    if r not in (1, 2):
        raise ValueError("only degree bounds 1 and 2 are generated")
    if not (1 <= n <= 8):
        raise ValueError("n must be in 1..8 (tables are exponential in n)")
    rng = random.Random(seed)
    base = [[Fraction(rng.randint(0, base_max)) for _ in range(m)]
            for _ in range(n)]
    gain = {}
    for i in range(n):
        for j in range(n):
            if i != j:
                gain[(i, j)] = Fraction(rng.randint(0, gain_max))
    tables = {}
    for i in range(n):
        rest = [j for j in range(n) if j != i]
        for size in range(len(rest) + 1):
            for combo in itertools.combinations(rest, size):
                g = sum((gain[(i, j)] for j in combo), ZERO)
                for k in range(1, m + 1):
                    v = base[i][k - 1] + g
                    tables[(i, k, frozenset(combo))] = v if r == 1 else v * v
    return GeneralizedGame(n=n, m=m, tables=tables)


def random_omega(n, m, seed, omega=HALF, value_max=5):
    """Random conflict-aware game with a feasible state guaranteed.

    Players get a random home strategy; conflicts only appear between
    players with different homes, so the home profile is always feasible.
    """
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    rng = random.Random(seed)
    a = tuple(Fraction(rng.randint(1, value_max)) for _ in range(n))
    b = tuple(Fraction(rng.randint(1, value_max)) for _ in range(n))
    home = [rng.randint(1, m) for _ in range(n)]
    labels = [["zero"] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            roll = rng.random()
            if roll < 0.4:
                lab = "one"
            elif roll < 0.8 or home[i] == home[j]:
                lab = "zero"
            else:
                lab = "conflict"
            labels[i][j] = labels[j][i] = lab
    return OmegaGame(n=n, m=m, a=a, b=b,
                     labels=tuple(tuple(row) for row in labels),
                     omega=Fraction(omega))


def random_hypergraph_cc(n, m, seed, gamma_max=5, weight_max=8, edge_count=None):
    """Random hypergraph game whose shares derive from one influence-weight
    vector, so recovery succeeds and the potential is ordinal."""
    if n < 2 or m < 1:
        raise ValueError("need n >= 2 and m >= 1")
    rng = random.Random(seed)
    gamma = [Fraction(rng.randint(1, gamma_max)) for _ in range(n)]
    if edge_count is None:
        edge_count = n + 2
    edges = []
    for _ in range(edge_count):
        size = rng.randint(2, min(3, n))
        players = tuple(sorted(rng.sample(range(n), size)))
        total = sum((gamma[i] for i in players), ZERO)
        shares = tuple(gamma[i] / total for i in players)
        anchor = rng.randint(1, m) if rng.random() < 0.3 else None
        edges.append(Hyperedge(players=players,
                               weight=Fraction(rng.randint(1, weight_max)),
                               shares=shares, anchor=anchor))
    # anchored singleton edges play the role of intrinsic preferences
    for i in range(n):
        if rng.random() < 0.5:
            edges.append(Hyperedge(players=(i,),
                                   weight=Fraction(rng.randint(1, weight_max)),
                                   shares=(Fraction(1),),
                                   anchor=rng.randint(1, m)))
    return HypergraphGame(n=n, m=m, edges=tuple(edges)), tuple(gamma)
