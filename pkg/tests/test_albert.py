from math import gcd

import pytest

from twistlgp.albert import (
    AlbertProfile,
    InconsistentProfile,
    admissible_m,
    coprimality_certificate,
    fermat_squarefree_check,
    is_squarefree,
    totient,
)


def test_totient():
    known = {1: 1, 2: 1, 3: 2, 9: 6, 15: 8, 21: 12, 255: 128}
    for n, phi in known.items():
        assert totient(n) == phi


def test_admissible_m_published_tables():
    assert admissible_m(3) == [3, 7, 9]
    assert admissible_m(5) == [3, 11]
    assert admissible_m(6) == [3, 5, 7, 9, 13, 21]
    assert admissible_m(7) == [3]


def test_admissible_m_scan_bound_is_complete():
    # rescanning four times further finds nothing new
    for g in range(1, 11):
        short = set(admissible_m(g))
        wide = {
            m
            for m in range(3, 8 * g * g + 2, 2)
            if (2 * g) % totient(m) == 0
        }
        assert short == wide


def test_admissible_m_divisibility():
    for g in (1, 2, 3, 4, 5, 6, 7, 8, 12):
        for m in admissible_m(g):
            assert m % 2 == 1 and m >= 3
            assert (2 * g) % totient(m) == 0


def test_fermat_squarefree_check():
    assert fermat_squarefree_check(3)
    assert fermat_squarefree_check(5)
    assert fermat_squarefree_check(15)  # 3 * 5
    assert fermat_squarefree_check(17)
    assert fermat_squarefree_check(255)  # 3 * 5 * 17
    assert not fermat_squarefree_check(9)  # not squarefree
    assert not fermat_squarefree_check(7)  # 7 - 1 = 6 is not a power of two
    assert not fermat_squarefree_check(21)
    with pytest.raises(ValueError):
        fermat_squarefree_check(4)


def test_power_of_two_dimensions_give_fermat_products():
    for a in range(0, 5):
        g = 2**a
        for m in admissible_m(g):
            assert fermat_squarefree_check(m)


def test_profile_validation():
    AlbertProfile(g=6, m=3, center_degree=2, d=6)
    with pytest.raises(InconsistentProfile):
        AlbertProfile(g=6, m=3, center_degree=5)  # 5 does not divide 12
    with pytest.raises(InconsistentProfile):
        AlbertProfile(g=6, m=9, center_degree=2)  # [Z:Q] < phi(9)
    with pytest.raises(InconsistentProfile):
        AlbertProfile(g=6, m=3, center_degree=4, d=6)  # 4 * 6 != 12
    with pytest.raises(InconsistentProfile):
        AlbertProfile(g=6, m=3, d=5)  # 5 does not divide 12
    with pytest.raises(InconsistentProfile):
        AlbertProfile(g=6, m=3, delta=2, e0=1)  # 4 does not divide 6
    AlbertProfile(g=4, m=3, delta=2, e0=1)


def test_certificate_rules():
    # (a) d given
    cert = coprimality_certificate(AlbertProfile(g=6, m=5, d=4))
    assert cert.rule == "given-d"
    assert coprimality_certificate(AlbertProfile(g=6, m=3, d=6)) is None
    # (b) center degree given
    cert = coprimality_certificate(AlbertProfile(g=6, m=3, center_degree=12))
    assert cert.rule == "center-degree" and cert.d_or_bound == 1
    assert coprimality_certificate(AlbertProfile(g=6, m=3, center_degree=2)) is None
    # (c) divisor bound
    cert = coprimality_certificate(AlbertProfile(g=5, m=11))
    assert cert.rule == "divisor-bound" and cert.d_or_bound == 1
    cert = coprimality_certificate(AlbertProfile(g=7, m=3))
    assert cert.rule == "divisor-bound" and cert.d_or_bound == 7
    assert coprimality_certificate(AlbertProfile(g=6, m=3)) is None
    assert coprimality_certificate(AlbertProfile(g=3, m=3)) is None


def test_certificate_never_lies():
    # a fully specified profile with gcd(m, d) > 1 never gets a certificate
    for g in range(1, 9):
        for m in admissible_m(g):
            for d in range(1, 2 * g + 1):
                if (2 * g) % d != 0:
                    continue
                try:
                    profile = AlbertProfile(g=g, m=m, d=d)
                except InconsistentProfile:
                    continue
                cert = coprimality_certificate(profile)
                if gcd(m, d) > 1:
                    assert cert is None
                else:
                    assert cert is not None and cert.rule == "given-d"


def test_certificate_inadmissible_pair_raises():
    with pytest.raises(InconsistentProfile):
        coprimality_certificate(AlbertProfile(g=1, m=5))  # phi(5) = 4 > 2


def test_power_of_two_always_certified():
    for a in range(0, 4):
        g = 2**a
        for m in admissible_m(g):
            cert = coprimality_certificate(AlbertProfile(g=g, m=m))
            assert cert is not None


def test_is_squarefree():
    assert is_squarefree(1) and is_squarefree(6) and is_squarefree(30)
    assert not is_squarefree(4) and not is_squarefree(12)
