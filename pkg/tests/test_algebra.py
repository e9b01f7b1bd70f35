import random
from fractions import Fraction

import pytest

from twostep.algebra import (
    AlgebraError, Element, TwoStepAlgebra, abelian, abelian_factor_split,
    analyze, bracket, center, commutator_ideal, direct_sum, from_json_text,
    is_automorphism, is_derivation, is_heisenberg_type, is_homomorphism,
    j_map, nonsingularity, to_json_text,
)
from twostep.catalog import heis, heis3c, n5, n6, n6prime, oct, quat
from twostep.group import random_element
from twostep.linalg import Matrix, rank_kernel
from twostep.scalars import QQ


def test_bracket_examples():
    h = heis(1)
    x = h.basis_element(0)
    y = h.basis_element(1)
    z = bracket(h, x, y)
    assert z.v == [Fraction(0)] * 2 and z.z == [Fraction(1)]
    assert bracket(h, x, x).is_zero()
    a = n6()
    assert bracket(a, a.basis_element(1), a.basis_element(3)).z == [Fraction(0), Fraction(1)]


def test_bracket_bilinear_antisymmetric():
    rng = random.Random(3)
    a = quat(1)
    for _ in range(30):
        x, y = random_element(a, rng), random_element(a, rng)
        assert bracket(a, x, y) == -bracket(a, y, x)
        s = QQ.sample(rng)
        assert bracket(a, x.scale(s), y) == bracket(a, x, y).scale(s)


def test_jacobi_randomized():
    rng = random.Random(17)
    for a in [heis(2), n5(), n6(), n6prime(), quat(1)]:
        for _ in range(100):
            x, y, z = (random_element(a, rng) for _ in range(3))
            total = (bracket(a, x, bracket(a, y, z))
                     + bracket(a, y, bracket(a, z, x))
                     + bracket(a, z, bracket(a, x, y)))
            assert total.is_zero()


def test_bad_constructions_rejected():
    with pytest.raises(AlgebraError):
        TwoStepAlgebra(QQ, 2, 1, {(1, 0): (Fraction(1),)})
    with pytest.raises(AlgebraError):
        TwoStepAlgebra(QQ, 2, 1, {(0, 1): (Fraction(1), Fraction(2))})
    with pytest.raises(AlgebraError):
        TwoStepAlgebra(QQ, 2, 1, {(0, 0): (Fraction(1),)})


def test_commutator_and_center():
    h5 = heis(2)
    comm, full = commutator_ideal(h5)
    assert comm.dim == 1 and full
    # declared p=2 but only one independent bracket
    a = TwoStepAlgebra(QQ, 2, 2, {(0, 1): (Fraction(1), Fraction(0))})
    comm, full = commutator_ideal(a)
    assert comm.dim == 1 and not full

    n = n5()
    cen = center(n)
    assert cen.dim == 2
    h3r = direct_sum(heis(1), abelian(QQ, 1))
    assert center(h3r).dim == 2
    assert commutator_ideal(h3r)[0].dim == 1
    ab = abelian(QQ, 4)
    assert center(ab).dim == 4


def test_center_contains_commutator():
    rng = random.Random(9)
    from twostep.pac import sample_algebra
    algebras = [heis(1), heis(2), n5(), n6(), n6prime(), quat(1), oct(), heis3c()]
    algebras += [sample_algebra(2, 3, rng, 5) for _ in range(10)]
    for a in algebras:
        comm, _ = commutator_ideal(a)
        cen = center(a)
        embedded = [[a.field.zero] * a.q + list(v) for v in comm.basis]
        for v in embedded:
            assert cen.contains(v)


def test_abelian_factor_split():
    a = direct_sum(heis(1), abelian(QQ, 2))
    core, k, t = abelian_factor_split(a)
    assert k == 2
    assert core == heis(1)
    # the basis change is an isomorphism from core + R^k onto a
    recombined = direct_sum(core, abelian(QQ, k))
    assert is_homomorphism(recombined, a, t)
    rank, _ = rank_kernel(t)
    assert rank == a.dim

    core, k, _ = abelian_factor_split(n6())
    assert k == 0 and core == n6()

    core, k, _ = abelian_factor_split(abelian(QQ, 3))
    assert k == 3 and core.dim == 0


def test_abelian_split_recombination_randomized():
    rng = random.Random(23)
    from twostep.catalog import transform_presentation
    for base in [direct_sum(heis(1), abelian(QQ, 2)), direct_sum(n5(), abelian(QQ, 1))]:
        for _ in range(10):
            a = transform_presentation(base, rng)
            core, k, t = abelian_factor_split(a)
            recombined = direct_sum(core, abelian(QQ, k))
            assert is_homomorphism(recombined, a, t)
            rank, _ = rank_kernel(t)
            assert rank == a.dim


def test_direct_sum_types():
    s = direct_sum(heis(1), heis(1))
    assert (s.p, s.q) == (2, 4)
    s2 = direct_sum(heis(2), abelian(QQ, 1))
    assert s2.dim == 6 and commutator_ideal(s2)[0].dim == 1


def test_j_map_matrices():
    h = heis(1)
    j1 = j_map(h)[0]
    assert j1.data == [[Fraction(0), Fraction(-1)], [Fraction(1), Fraction(0)]]
    for a in [heis(2), quat(1), oct(), n6()]:
        for m in j_map(a):
            assert m.is_skew()


def test_j_map_reconstruction():
    rng = random.Random(31)
    for a in [heis(2), quat(1), n6prime()]:
        js = j_map(a)
        for _ in range(100):
            x, y = random_element(a, rng), random_element(a, rng)
            br = bracket(a, x, y)
            for k, jm in enumerate(js):
                pairing = sum((c * d for c, d in zip(jm.apply(x.v), y.v)), QQ.zero)
                assert pairing == br.z[k]


# expected booleans committed from an oracle run against the symbolic identity
H_TYPE_EXPECTED = [
    (heis(1), True), (heis(2), True), (heis(3), True),
    (quat(1), True), (quat(2), True), (oct(), True),
    (n5(), False), (n6(), False), (n6prime(), False),
    (heis3c(), True),  # realified heis3(C): j(z)^2 = -(z1^2+z2^2) I holds
]


def test_is_heisenberg_type():
    for a, expected in H_TYPE_EXPECTED:
        assert is_heisenberg_type(a) is expected, a.label
    assert not is_heisenberg_type(direct_sum(heis(1), heis(1)))
    assert not is_heisenberg_type(abelian(QQ, 3))


def test_nonsingularity_verdicts():
    for a in [heis(1), heis(3), quat(1), quat(2), oct(), heis3c()]:
        assert nonsingularity(a).kind == "nonsingular", a.label
    for a in [n5(), n6()]:
        v = nonsingularity(a)
        assert v.kind == "singular"
        # witness is exact: j(Z) X = 0
        from twostep.algebra import j_of
        assert all(QQ.is_zero(c) for c in j_of(a, list(v.witness_z)).apply(list(v.witness_x)))


def test_nonsingularity_seed_stability():
    for seed in [0, 1, 42]:
        assert nonsingularity(n6(), seed=seed).kind == "singular"
        assert nonsingularity(quat(1), seed=seed).kind == "nonsingular"


def test_is_derivation():
    for a in [heis(1), n5(), quat(1)]:
        n = a.dim
        d0 = Matrix(QQ, [[Fraction(2 if i >= a.q else 1) if i == j else Fraction(0)
                          for j in range(n)] for i in range(n)])
        assert is_derivation(a, d0)
        assert not is_derivation(a, Matrix.identity(QQ, n))
        # ad_x is a derivation (2-step Jacobi)
        rng = random.Random(7)
        x = random_element(a, rng)
        cols = []
        for i in range(n):
            img = bracket(a, x, a.basis_element(i))
            cols.append(img.coords())
        ad = Matrix(QQ, [[cols[j][i] for j in range(n)] for i in range(n)])
        assert is_derivation(a, ad)


def test_is_homomorphism_and_automorphism():
    h = heis(1)
    assert is_automorphism(h, Matrix.identity(QQ, 3))
    lam = Fraction(3)
    dil = Matrix(QQ, [[lam, 0, 0], [0, lam, 0], [0, 0, lam * lam]])
    assert is_automorphism(h, dil)
    swap = Matrix(QQ, [[0, 0, 1], [0, 1, 0], [1, 0, 0]])
    swap = Matrix(QQ, [[Fraction(x) for x in r] for r in swap.data])
    assert not is_homomorphism(h, h, swap)


def test_json_round_trip():
    for a in [heis(2), n6prime(), heis3c(), direct_sum(n5(), abelian(QQ, 1))]:
        text = to_json_text(a)
        b = from_json_text(text)
        assert b == a
        assert to_json_text(b) == text


def test_json_round_trip_qt():
    from twostep.autos import n6_algebra_qt
    a = n6_algebra_qt()
    text = to_json_text(a)
    assert from_json_text(text) == a
    assert to_json_text(from_json_text(text)) == text


def test_json_errors():
    with pytest.raises(AlgebraError):
        from_json_text("{not json")
    with pytest.raises(AlgebraError) as exc:
        from_json_text('{"field": "Q", "q": 2, "p": 1,'
                       ' "brackets": [{"i": 2, "j": 1, "z": ["1"]}]}')
    assert "i=2" in str(exc.value)
    with pytest.raises(AlgebraError):
        from_json_text('{"field": "Q", "q": 2, "p": 1,'
                       ' "brackets": [{"i": 1, "j": 2, "z": ["1", "2"]}]}')
    with pytest.raises(AlgebraError):
        from_json_text('{"field": "F17", "q": 2, "p": 1, "brackets": []}')


def test_analyze_report():
    rep = analyze(n6())
    assert rep.dim == 6
    assert rep.declared_type == (2, 4)
    assert rep.commutator_equals_z
    assert rep.abelian_factor_dim == 0
    assert not rep.h_type
    assert rep.nonsingular.kind == "singular"
