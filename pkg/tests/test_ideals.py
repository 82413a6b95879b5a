import random

import pytest

from atomzeta.errors import DomainError, ZeroElementError
from atomzeta.ideals import (
    Ideal,
    divisor_ideals,
    enumerate_ideals,
    factor_ideal,
    ideal_mul,
    kronecker_symbol,
    primes_above,
    principal_ideal,
    splitting_type,
    unit_ideal,
)
from atomzeta.ring import make_field, rational_field
from atomzeta.sieve import primes_upto
from oracles import hnf_triples_brute

F1 = make_field(-1)
F5 = make_field(-5)


def test_principal_ideal_examples():
    assert principal_ideal(F5.element(6)).norm == 36
    i = principal_ideal(F1.element(1, 1))
    assert (i.a, i.b, i.c) == (2, 1, 1) and i.norm == 2
    assert principal_ideal(F1.one) == unit_ideal(F1)
    with pytest.raises(ZeroElementError):
        principal_ideal(F1.zero)


def test_ideal_norm_by_residue_count():
    # N(I) = |Z_K / I|: the box {x + y*w : 0 <= x < a, 0 <= y < c} is a
    # transversal, checked by pairwise incongruence
    for ideal in (Ideal(F5, 2, 1, 1), Ideal(F1, 5, 2, 1), principal_ideal(F5.element(1, 1))):
        reps = [
            F5.element(x, y) if ideal.field is F5 else F1.element(x, y)
            for x in range(ideal.a)
            for y in range(ideal.c)
        ]
        for i, r1 in enumerate(reps):
            for r2 in reps[i + 1 :]:
                assert not ideal.contains(r1 - r2)
        assert len(reps) == ideal.norm
    assert unit_ideal(F1).norm == 1


def test_principal_norm_of_rational_integer():
    # N(mZ_K) = m^2 for quadratic fields
    for f in (F1, F5, make_field(2), make_field(13)):
        for m in (7, 12, 500):
            assert principal_ideal(f.element(m)).norm == m * m


def test_ideal_mul_examples():
    p2 = Ideal(F5, 2, 1, 1)
    assert ideal_mul(p2, p2) == principal_ideal(F5.element(2))
    i = principal_ideal(F5.element(1, 1))
    assert ideal_mul(i, unit_ideal(F5)) == i


def test_ideal_norm_multiplicative_random():
    rng = random.Random(23)
    for f in (F1, F5, make_field(2)):
        for _ in range(100):
            e1 = f.element(rng.randint(-20, 20), rng.randint(-20, 20))
            e2 = f.element(rng.randint(-20, 20), rng.randint(-20, 20))
            if e1.is_zero() or e2.is_zero():
                continue
            i1, i2 = principal_ideal(e1), principal_ideal(e2)
            assert ideal_mul(i1, i2).norm == i1.norm * i2.norm
            assert ideal_mul(i1, i2) == principal_ideal(e1 * e2)


def test_splitting_examples():
    assert splitting_type(2, F5) == "ramified"
    assert splitting_type(3, F5) == "split"
    assert splitting_type(11, F5) == "inert"
    with pytest.raises(DomainError):
        splitting_type(6, F5)


def test_splitting_classical_mod4_rule():
    for p in primes_upto(10**4):
        if p == 2:
            continue
        expected = "split" if p % 4 == 1 else "inert"
        assert splitting_type(p, F1) == expected


def test_primes_above_examples():
    above5 = primes_above(5, F1)
    assert [(p.ideal.a, p.ideal.b, p.ideal.c) for p in above5] == [(5, 2, 1), (5, 3, 1)]
    assert all(p.norm == 5 for p in above5)
    above3 = primes_above(3, F1)
    assert len(above3) == 1 and above3[0].norm == 9
    above2 = primes_above(2, F5)
    assert len(above2) == 1 and above2[0].kind == "ramified"
    assert (above2[0].ideal.a, above2[0].ideal.b, above2[0].ideal.c) == (2, 1, 1)


def test_primes_above_multiply_to_p():
    for f in (F1, F5, make_field(2), make_field(13), make_field(-3)):
        for p in (2, 3, 5, 7, 11, 13):
            acc = unit_ideal(f)
            for prime in primes_above(p, f):
                e = 2 if prime.kind == "ramified" else 1
                for _ in range(e):
                    acc = ideal_mul(acc, prime.ideal)
            assert acc == principal_ideal(f.element(p))


def test_factor_ideal_examples():
    factored = factor_ideal(principal_ideal(F5.element(6)))
    assert sorted(p.norm for p, e in factored.factors for _ in range(e)) == [2, 2, 3, 3]
    assert factored.unfactor() == principal_ideal(F5.element(6))
    inert = primes_above(11, F5)[0].ideal
    ff = factor_ideal(inert)
    assert len(ff.factors) == 1 and ff.factors[0][1] == 1
    assert factor_ideal(unit_ideal(F5)).factors == ()


def test_factor_ideal_round_trip_random():
    rng = random.Random(29)
    for f in (F1, F5, make_field(2)):
        for _ in range(50):
            e = f.element(rng.randint(-30, 30), rng.randint(-30, 30))
            if e.is_zero():
                continue
            i = principal_ideal(e)
            assert factor_ideal(i).unfactor() == i


def test_divisor_ideals_counts():
    factored = factor_ideal(principal_ideal(F5.element(6)))
    divisors = list(divisor_ideals(factored))
    assert len(divisors) == 12  # exponent box 3*2*2
    assert len(set(divisors)) == 12
    assert len(list(divisor_ideals(factor_ideal(unit_ideal(F5))))) == 1
    inert = primes_above(11, F5)[0].ideal
    assert len(list(divisor_ideals(factor_ideal(inert)))) == 2


def test_enumerate_ideals_examples():
    assert [i.norm for i in enumerate_ideals(F1, 5)] == [1, 2, 4, 5, 5]
    assert enumerate_ideals(F1, 1) == [unit_ideal(F1)]


def test_enumerate_ideals_matches_brute_hnf_scan():
    for f in (F1, F5, make_field(2)):
        for kappa in (50, 200):
            got = set(enumerate_ideals(f, kappa))
            brute = set(hnf_triples_brute(f, kappa))
            assert got == brute


def test_enumerate_ideals_rational():
    q = rational_field()
    assert [i.norm for i in enumerate_ideals(q, 6)] == [1, 2, 3, 4, 5, 6]


def test_kronecker_symbol_basics():
    assert kronecker_symbol(-20, 2) == 0
    assert kronecker_symbol(-20, 3) == 1
    assert kronecker_symbol(-20, 11) == -1
    assert kronecker_symbol(17, 2) == 1
    assert kronecker_symbol(5, 2) == -1
