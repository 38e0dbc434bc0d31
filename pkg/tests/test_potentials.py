import itertools
import random
from fractions import Fraction

import pytest

from scg.generators import example1, random_cc, random_instance, random_symmetric
from scg.model import Edge, GameInstance, player_utility
from scg.potentials import (PotentialCertificate, RecoveryFailure, cc_recover,
                            certificate_shares_match, ordinal_audit,
                            potential_delta, potential_value)


def test_even_splits_recover_unit_weights():
    g = random_symmetric(5, 3, 0)
    cert = cc_recover(g)
    assert isinstance(cert, PotentialCertificate)
    assert cert.gamma == (Fraction(1),) * 5


def test_triangle_of_shares_recovers_ratios():
    g = GameInstance(
        n=3, m=2,
        intrinsic=((Fraction(1), Fraction(0)),) * 3,
        edges=(Edge(0, 1, Fraction(1), Fraction(1, 3)),
               Edge(0, 2, Fraction(1), Fraction(1, 4)),
               Edge(1, 2, Fraction(1), Fraction(2, 5))))
    cert = cc_recover(g)
    assert cert.gamma == (Fraction(1), Fraction(2), Fraction(3))
    assert certificate_shares_match(g, cert)


def test_one_sided_split_fails_immediately():
    res = cc_recover(example1(1))
    assert isinstance(res, RecoveryFailure)
    assert "share 0 or 1" in res.reason


def test_inconsistent_cycle_reports_witness_edge():
    g = GameInstance(
        n=3, m=2,
        intrinsic=((Fraction(1), Fraction(0)),) * 3,
        edges=(Edge(0, 1, Fraction(1), Fraction(1, 3)),
               Edge(0, 2, Fraction(1), Fraction(1, 4)),
               Edge(1, 2, Fraction(1), Fraction(1, 2))))
    res = cc_recover(g)
    assert isinstance(res, RecoveryFailure)


def test_recovery_round_trip_on_generated_weights():
    for seed in range(30):
        g, gamma = random_cc(6, 3, seed)
        cert = cc_recover(g)
        assert isinstance(cert, PotentialCertificate)
        assert certificate_shares_match(g, cert)


def test_untouched_players_get_unit_weight():
    g = GameInstance(n=3, m=2,
                     intrinsic=((Fraction(1), Fraction(0)),) * 3,
                     edges=(Edge(0, 1, Fraction(1), Fraction(1, 3)),))
    cert = cc_recover(g)
    assert cert.gamma[2] == 1
    assert min(cert.gamma[:2]) == 1


def test_potential_evaluation():
    g = GameInstance(n=2, m=2,
                     intrinsic=((Fraction(3), Fraction(0)),
                                (Fraction(0), Fraction(0))),
                     edges=(Edge(0, 1, Fraction(4), Fraction(1, 2)),))
    cert = PotentialCertificate(gamma=(Fraction(1), Fraction(1)))
    assert potential_value(g, (1, 1), cert) == 5
    edge_free = GameInstance(n=2, m=2,
                             intrinsic=((Fraction(3), Fraction(0)),
                                        (Fraction(0), Fraction(7))),
                             edges=())
    cert2 = PotentialCertificate(gamma=(Fraction(1), Fraction(2)))
    assert potential_value(edge_free, (1, 2), cert2) == 3 + Fraction(7, 2)
    with pytest.raises(ValueError):
        potential_value(g, (1, 1), PotentialCertificate(gamma=(Fraction(1),)))


def test_local_delta_equals_full_difference():
    for seed in range(15):
        g, _ = random_cc(5, 3, seed + 50)
        cert = cc_recover(g)
        rng = random.Random(seed)
        for _ in range(40):
            profile = tuple(rng.randint(1, 3) for _ in range(5))
            i = rng.randrange(5)
            k = rng.randint(1, 3)
            moved = profile[:i] + (k,) + profile[i + 1:]
            assert (potential_delta(g, profile, i, k, cert)
                    == potential_value(g, moved, cert)
                    - potential_value(g, profile, cert))


def test_zero_change_deviation():
    g, _ = random_cc(4, 2, 3)
    cert = cc_recover(g)
    assert potential_delta(g, (1, 1, 2, 2), 0, 1, cert) == 0


def test_audit_clean_on_consistent_instances():
    for seed in range(20):
        g, _ = random_cc(5, 3, seed + 200)
        cert = cc_recover(g)
        rep = ordinal_audit(g, cert, trials=2000, seed=seed)
        assert rep.ok and rep.trials > 0


def test_audit_finds_violation_under_forced_certificate():
    g = example1(1)
    fake = PotentialCertificate(gamma=(Fraction(1),) * 3)
    rep = ordinal_audit(g, fake, trials=2000, seed=0)
    assert rep.violations > 0 and rep.counterexample is not None
    profile, i, k, du, dphi = rep.counterexample
    # replay the counterexample
    replayed = (player_utility(g, profile, i, strategy=k)[0]
                - player_utility(g, profile, i)[0])
    assert replayed == du
    sign = lambda x: (x > 0) - (x < 0)
    assert sign(du) != sign(dphi)


def test_symmetric_instances_have_an_exact_potential():
    # with even splits the potential change equals the mover's utility change
    for seed in range(10):
        g = random_symmetric(5, 3, seed + 400)
        cert = cc_recover(g)
        rng = random.Random(seed)
        for _ in range(30):
            profile = tuple(rng.randint(1, 3) for _ in range(5))
            i = rng.randrange(5)
            k = rng.randint(1, 3)
            du = (player_utility(g, profile, i, strategy=k)[0]
                  - player_utility(g, profile, i)[0])
            assert potential_delta(g, profile, i, k, cert) == du


def test_certificate_json_round_trip():
    cert = PotentialCertificate(gamma=(Fraction(1), Fraction(7, 3)))
    assert PotentialCertificate.from_json(cert.to_json()) == cert
