import random

import pytest

from atomzeta.atoms import (
    atom_ideals_dividing,
    atoms_dividing,
    factor_into_atoms,
    is_atom,
    verify_norm_identity,
)
from atomzeta.errors import UnitElementError, ZeroElementError
from atomzeta.ring import canonical_associate, is_associated, make_field, rational_field
from oracles import atoms_dividing_brute, is_atom_brute, reps_by_norm

F1 = make_field(-1)
F5 = make_field(-5)

TABLES = {f: reps_by_norm(f, 60) for f in (F1, F5, make_field(-23), make_field(10))}


def test_is_atom_examples():
    assert is_atom(F1.element(1, 1))  # 1 + i, norm 2
    assert is_atom(F1.element(3))  # 3 inert in Q(i)
    assert not is_atom(F1.element(5))  # 5 = (2+i)(2-i)
    assert not is_atom(F1.element(0, 2))
    assert not is_atom(F1.one) and not is_atom(F1.omega)
    with pytest.raises(ZeroElementError):
        is_atom(F1.zero)


def test_is_atom_nonprincipal_field_examples():
    # the classical non-unique factorization 6 = 2 * 3 = (1+w)(1-w) in Z[sqrt(-5)]
    for e in (F5.element(2), F5.element(3), F5.element(1, 1), F5.element(1, -1)):
        assert is_atom(e)
    assert not is_atom(F5.element(6))
    # norm 9 atoms: 3 and 2 +- w (the split primes above 3 are non-principal)
    assert is_atom(F5.element(2, 1)) and is_atom(F5.element(3))


def test_is_atom_matches_brute_oracle():
    for f, table in TABLES.items():
        for reps in table.values():
            for e in reps:
                assert is_atom(e) == is_atom_brute(e, table), (f.d, e)


def test_factor_into_atoms_examples():
    fz = factor_into_atoms(F1.element(5))
    assert fz.value() == F1.element(5)
    assert sorted(abs(a.norm()) for a, e in fz.factors for _ in range(e)) == [5, 5]
    fz = factor_into_atoms(F5.element(6))
    assert fz.value() == F5.element(6)
    assert verify_norm_identity(6, fz)
    with pytest.raises(UnitElementError):
        factor_into_atoms(F1.omega)
    with pytest.raises(ZeroElementError):
        factor_into_atoms(F1.zero)


def test_factor_into_atoms_random_round_trip():
    rng = random.Random(43)
    for f in (F1, F5, make_field(-23), make_field(2), make_field(10)):
        for _ in range(40):
            e = f.element(rng.randint(-12, 12), rng.randint(-12, 12))
            if e.is_zero() or e.is_unit():
                continue
            fz = factor_into_atoms(e)
            assert fz.value() == e
            assert fz.unit.is_unit()
            for atom, k in fz.factors:
                assert k >= 1
                assert is_atom(atom)
                assert atom == canonical_associate(atom)


def test_atoms_dividing_examples():
    got = atoms_dividing(6, F5)
    assert [str(a) for a in got] == ["2", "1-√-5", "1+√-5", "3"]
    got = atoms_dividing(5, F1)
    assert len(got) == 2 and all(abs(a.norm()) == 5 for a in got)
    assert atoms_dividing(1, F1) == []


def test_atoms_dividing_matches_brute_oracle():
    for f, table in TABLES.items():
        for m in (2, 3, 5, 6, 7, 10, 12):
            got = atoms_dividing(m, f)
            brute = atoms_dividing_brute(m, f, table)
            assert len(got) == len(brute), (f.d, m)
            for a, b in zip(got, brute):
                assert is_associated(a, b), (f.d, m, str(a), str(b))


def test_atom_ideals_dividing_norm_cap():
    full = atom_ideals_dividing(6, F5)
    capped = atom_ideals_dividing(6, F5, norm_cap=5)
    assert capped == [i for i in full if i.norm <= 5]
    assert atom_ideals_dividing(6, F5, norm_cap=1) == []


def test_atom_ideals_dividing_prime_fast_path():
    # the prime-argument shortcut must agree with the generic route
    for f in (F1, F5, make_field(-23)):
        for p in (2, 3, 5, 7, 11, 13, 23):
            fast = atom_ideals_dividing(p, f)
            slow = atom_ideals_dividing(p * 1, f, norm_cap=p * p)  # same call, capped at max
            assert fast == slow
            for i in fast:
                assert (p * p) % i.norm == 0


def test_rational_field_atoms_are_primes():
    q = rational_field()
    assert [i.norm for i in atom_ideals_dividing(60, q)] == [2, 3, 5]
    assert [str(a) for a in atoms_dividing(60, q)] == ["2", "3", "5"]
    fz = factor_into_atoms(q.element(-12))
    assert fz.value() == q.element(-12)
    assert verify_norm_identity(12, fz)


def test_verify_norm_identity_detects_mismatch():
    fz = factor_into_atoms(F5.element(6))
    assert verify_norm_identity(6, fz)
    assert not verify_norm_identity(7, fz)
