from fractions import Fraction

import pytest

from scg.analysis import brute_force_optimum, equilibrium_census
from scg.generators import (example1, prop5, random_cc, random_hypergraph_cc,
                            random_instance, random_omega, random_supermodular,
                            random_symmetric, symmetric_pos_tight, triangle_c)
from scg.model import instance_stats, serialize_instance, welfare_total
from scg.potentials import PotentialCertificate, cc_recover
from scg.rationals import SQRT2_APPROX


def test_cyclic_instance_shape():
    g = example1(1)
    assert (g.n, g.m) == (3, 3)
    for i in range(3):
        assert g.intrinsic[i][i] == SQRT2_APPROX
        assert g.intrinsic[i][(i + 1) % 3] == 1
    assert all(e.share_ij == 1 and e.w == 1 for e in g.edges)
    g2 = example1(Fraction(5, 2))
    assert g2.intrinsic[0][0] == SQRT2_APPROX * Fraction(5, 2)
    with pytest.raises(ValueError):
        example1(0)


def test_star_family_shape():
    g = prop5(4, 1, Fraction(1, 100))
    assert (g.n, g.m) == (4, 4)
    assert g.intrinsic[0] == (1, 1, 1, 1)
    assert g.intrinsic[2][2] == Fraction(2, 100)
    for e in g.edges:
        assert e.i == 0 and e.w == 1 + Fraction(1, 100)
        assert e.share_ij == Fraction(1) / (1 + Fraction(1, 100))
    with pytest.raises(ValueError):
        prop5(1, 1, Fraction(1, 100))


def test_even_split_star_optimum():
    for m in (3, 4):
        eps = Fraction(1, 10_000)
        g = symmetric_pos_tight(m, 1, eps)
        _, opt = brute_force_optimum(g)
        assert opt == (2 * m - 1) + eps  # everyone gathered with the hub


def test_even_split_star_stability_gap():
    m = 4
    g = symmetric_pos_tight(m, 1, Fraction(1, 10_000))
    c = equilibrium_census(g, Fraction(1))
    assert c.exists
    assert float(c.pos) > 2 - Fraction(1, m) - Fraction(1, 100)
    assert c.pos <= 2 - Fraction(1, m)


def test_triangle_wrapper():
    g = triangle_c(2)
    assert (g.n, g.m) == (3, 3)


def test_generation_is_deterministic():
    a = serialize_instance(random_instance(6, 3, 123))
    b = serialize_instance(random_instance(6, 3, 123))
    assert a == b
    assert a != serialize_instance(random_instance(6, 3, 124))
    g1, gam1 = random_cc(5, 3, 7)
    g2, gam2 = random_cc(5, 3, 7)
    assert serialize_instance(g1) == serialize_instance(g2) and gam1 == gam2


def test_random_instances_have_finite_imbalance():
    import math
    for seed in range(20):
        g = random_instance(6, 3, seed)
        assert instance_stats(g).mri != math.inf


def test_generated_splits_are_recoverable():
    for seed in range(20):
        g, _ = random_cc(6, 3, seed)
        assert isinstance(cc_recover(g), PotentialCertificate)


def test_symmetric_generator_uses_even_splits():
    g = random_symmetric(6, 3, 5)
    assert all(e.share_ij == Fraction(1, 2) for e in g.edges)


def test_supermodular_generator_respects_bound():
    from scg.generalized import supermodularity_degree
    for seed in range(10):
        assert supermodularity_degree(random_supermodular(4, 2, 1, seed)) == 1
        assert supermodularity_degree(random_supermodular(4, 2, 2, seed)) <= 2
    with pytest.raises(ValueError):
        random_supermodular(4, 2, 3, 0)


def test_omega_generator_always_has_a_feasible_state():
    for seed in range(30):
        og = random_omega(5, 2, seed)
        found = False
        import itertools
        for p in itertools.product((1, 2), repeat=5):
            if og.feasible(p):
                found = True
                break
        assert found


def test_hypergraph_generator_shares_sum_to_one():
    hg, gamma = random_hypergraph_cc(5, 3, 3)
    for e in hg.edges:
        assert sum(e.shares) == 1
        total = sum(gamma[i] for i in e.players)
        assert e.shares == tuple(gamma[i] / total for i in e.players)
