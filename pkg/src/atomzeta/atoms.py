"""Irreducibility, atom factorizations and atom enumeration.

The key reduction: a nonzero non-unit e factors as e = x*y with both
factors non-units iff the principal ideal (e) splits as a product of two
proper principal ideals, i.e. iff some proper nonempty sub-multiset of
the prime-ideal factorization of (e) has principal product.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from sympy import isprime

from atomzeta.errors import (
    InternalInvariantError,
    UnitElementError,
    ZeroElementError,
)
from atomzeta.ideals import (
    FactoredIdeal,
    Ideal,
    factor_ideal,
    ideal_mul,
    ideal_pow,
    principal_ideal,
    unit_ideal,
)
from atomzeta.ring import (
    FieldSpec,
    RingElement,
    canonical_associate,
    exact_div,
)
from atomzeta.classgroup import is_principal, is_principal_class


def _sub_boxes(exps: tuple[int, ...]):
    """All nonzero exponent vectors k with 0 <= k_i <= e_i."""
    for k in product(*(range(e + 1) for e in exps)):
        if any(k):
            yield k


def _box_ideal(factored: FactoredIdeal, k: tuple[int, ...]) -> Ideal:
    out = unit_ideal(factored.field)
    for (prime, _), e in zip(factored.factors, k):
        if e:
            out = ideal_mul(out, ideal_pow(prime.ideal, e))
    return out


def _box_principal(factored: FactoredIdeal, k: tuple[int, ...]) -> bool:
    return is_principal_class(_box_ideal(factored, k))


def is_atom(e: RingElement) -> bool:
    """True iff e is irreducible in Z_K."""
    if e.is_zero():
        raise ZeroElementError("zero is not an atom candidate")
    if e.is_unit():
        return False
    if isprime(abs(e.norm())):
        return True  # single prime ideal, no proper sub-multiset
    factored = factor_ideal(principal_ideal(e))
    exps = tuple(v for _, v in factored.factors)
    full = exps
    for k in _sub_boxes(exps):
        if k == full:
            continue
        if _box_principal(factored, k):
            return False
    return True


@dataclass(frozen=True)
class AtomFactorization:
    """unit * prod(atom_i ^ e_i), atoms canonical and pairwise non-associated."""

    unit: RingElement
    factors: tuple[tuple[RingElement, int], ...]

    def value(self) -> RingElement:
        out = self.unit
        for atom, e in self.factors:
            out = out * atom**e
        return out

    def __str__(self) -> str:
        parts = [f"({a})^{e}" if e > 1 else f"({a})" for a, e in self.factors]
        return f"{self.unit} * " + " * ".join(parts) if parts else str(self.unit)


def factor_into_atoms(e: RingElement) -> AtomFactorization:
    """One valid atom factorization of e (non-uniqueness expected).

    Repeatedly extracts a generator of a minimal nonempty principal
    sub-product of the remaining prime-ideal multiset; minimality makes
    each extracted generator an atom.
    """
    if e.is_zero():
        raise ZeroElementError("zero has no atom factorization")
    if e.is_unit():
        raise UnitElementError("units have no atom factorization")
    factored = factor_ideal(principal_ideal(e))
    remaining = [list(pair) for pair in [(p, v) for p, v in factored.factors]]
    atoms: list[RingElement] = []
    while any(v for _, v in remaining):
        exps = tuple(v for _, v in remaining)
        boxes = sorted(_sub_boxes(exps), key=lambda k: (sum(k), k))
        extracted = None
        for k in boxes:
            ideal = unit_ideal(e.field)
            for (prime, _), kk in zip(remaining, k):
                if kk:
                    ideal = ideal_mul(ideal, ideal_pow(prime.ideal, kk))
            ok, gen = is_principal(ideal)
            if ok:
                extracted = (k, gen)
                break
        if extracted is None:
            raise InternalInvariantError("no principal sub-product found")
        k, gen = extracted
        atoms.append(canonical_associate(gen))
        for pair, kk in zip(remaining, k):
            pair[1] -= kk
    prod_elem = e.field.one
    for a in atoms:
        prod_elem = prod_elem * a
    unit = exact_div(e, prod_elem)
    if unit is None or not unit.is_unit():
        raise InternalInvariantError("leftover after atom extraction is not a unit")
    grouped: dict[RingElement, int] = {}
    for a in atoms:
        grouped[a] = grouped.get(a, 0) + 1
    ordered = sorted(grouped.items(), key=lambda t: (abs(t[0].norm()), t[0].x, t[0].y))
    return AtomFactorization(unit, tuple(ordered))


def atom_ideals_dividing(m: int, field: FieldSpec, norm_cap: int | None = None) -> list[Ideal]:
    """Principal divisor ideals of (m) whose generators are atoms."""
    if m < 1:
        raise ZeroElementError("m must be a positive integer")
    if m == 1:
        return []
    if field.is_rational:
        from sympy import factorint

        out = [Ideal(field, p, 0, 1) for p in sorted(factorint(m))]
        return [i for i in out if norm_cap is None or i.norm <= norm_cap]
    if isprime(m):
        # (p) factors straight off the splitting type; skips the generic
        # factor_ideal machinery on the hot X = primes path
        from atomzeta.ideals import FactoredIdeal as _FI, primes_above

        pl = primes_above(m, field)
        if pl[0].kind == "split":
            factored = _FI(field, ((pl[0], 1), (pl[1], 1)))
        elif pl[0].kind == "inert":
            factored = _FI(field, ((pl[0], 1),))
        else:
            factored = _FI(field, ((pl[0], 2),))
    else:
        factored = factor_ideal(principal_ideal(field.element(m)))
    exps = tuple(v for _, v in factored.factors)
    norms = tuple(p.norm for p, _ in factored.factors)
    principal_boxes = []
    for k in _sub_boxes(exps):
        n = 1
        for nn, kk in zip(norms, k):
            n *= nn**kk
        if norm_cap is not None and n > norm_cap:
            continue
        if _box_principal(factored, k):
            principal_boxes.append(k)
    out = []
    for k in principal_boxes:
        # atomic iff no other principal box sits strictly inside this one
        if any(
            k2 != k and all(a <= b for a, b in zip(k2, k))
            for k2 in principal_boxes
        ):
            # a smaller principal box within the cap rules it out, but a
            # sub-box may have been skipped by the cap; it can only have
            # smaller norm, so with a cap in place re-check uncapped
            continue
        if norm_cap is not None:
            smaller = False
            for k2 in _sub_boxes(k):
                if k2 != k and _box_principal(factored, k2):
                    smaller = True
                    break
            if smaller:
                continue
        out.append(_box_ideal(factored, k))
    return sorted(out, key=lambda i: i.sort_key())


def atoms_dividing(m: int, field: FieldSpec) -> list[RingElement]:
    """All associate classes (canonical representatives) of atoms dividing m."""
    ideals = atom_ideals_dividing(m, field)
    gens = []
    for ideal in ideals:
        ok, g = is_principal(ideal)
        if not ok or g is None:
            raise InternalInvariantError("atom ideal lost its generator")
        gens.append(canonical_associate(g))
    return sorted(set(gens), key=lambda a: (abs(a.norm()), a.x, a.y))


def verify_norm_identity(m: int, factorization: AtomFactorization) -> bool:
    """Check m^n = prod N(a_i Z_K)^(e_i) exactly in integers."""
    if m < 1:
        raise ZeroElementError("m must be a positive integer")
    field = factorization.unit.field
    rhs = 1
    for atom, e in factorization.factors:
        rhs *= principal_ideal(atom).norm ** e
    return m**field.degree == rhs
