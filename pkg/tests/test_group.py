import random
from fractions import Fraction

from twostep.algebra import bracket
from twostep.autos import LinearMap, n6_witness
from twostep.catalog import heis, n5, n6, quat
from twostep.group import (GroupElement, gcommutator, gidentity, ginv, gmul,
                           random_element, transport_check)
from twostep.linalg import Matrix
from twostep.scalars import QQ


def test_heis3_bch_formula():
    h = heis(1)
    gx = GroupElement(h.basis_element(0))
    gy = GroupElement(h.basis_element(1))
    prod = gmul(h, gx, gy)
    assert prod.log.coords() == [Fraction(1), Fraction(1), Fraction(1, 2)]


def test_identity_and_inverse():
    h = quat(1)
    rng = random.Random(4)
    e = gidentity(h)
    for _ in range(20):
        g = GroupElement(random_element(h, rng))
        assert gmul(h, g, e) == g
        assert gmul(h, e, g) == g
        assert gmul(h, g, ginv(h, g)) == e


def test_associativity_randomized():
    rng = random.Random(8)
    for a in [heis(1), heis(2), n5(), n6(), quat(1)]:
        for _ in range(50):
            g, h, k = (GroupElement(random_element(a, rng)) for _ in range(3))
            assert gmul(a, gmul(a, g, h), k) == gmul(a, g, gmul(a, h, k))


def test_commutator_equals_bracket():
    rng = random.Random(15)
    for a in [heis(2), n6(), quat(1)]:
        for _ in range(100):
            x, y = random_element(a, rng), random_element(a, rng)
            g, h = GroupElement(x), GroupElement(y)
            assert gcommutator(a, g, h).log == bracket(a, x, y)
        g = GroupElement(random_element(a, rng))
        assert gcommutator(a, g, g) == gidentity(a)


def test_group_center_contains_algebra_center():
    rng = random.Random(21)
    for a in [heis(1), n5(), n6()]:
        from twostep.algebra import center, Element
        cen = center(a)
        for v in cen.basis:
            z = GroupElement(Element.from_coords(a, v))
            for _ in range(20):
                g = GroupElement(random_element(a, rng))
                assert gmul(a, z, g) == gmul(a, g, z)


def test_transport_check_positive_and_negative():
    h = heis(2)
    lam = Fraction(2)
    dil = Matrix(QQ, [[lam if i == j and i < 4 else (lam * lam if i == j else Fraction(0))
                       for j in range(5)] for i in range(5)])
    ok, _ = transport_check(h, h, LinearMap(h, h, dil), trials=100, seed=1)
    assert ok

    h3 = heis(1)
    swap = Matrix(QQ, [[Fraction(0), Fraction(0), Fraction(1)],
                       [Fraction(0), Fraction(1), Fraction(0)],
                       [Fraction(1), Fraction(0), Fraction(0)]])
    ok, witness = transport_check(h3, h3, LinearMap(h3, h3, swap), trials=100, seed=1)
    assert not ok and witness is not None


def test_transport_check_n6_witness():
    a, f = n6_witness()
    ok, _ = transport_check(a, a, f, trials=100, seed=5)
    assert ok
