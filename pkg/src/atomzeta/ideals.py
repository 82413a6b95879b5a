"""Nonzero ideals of Z_K in 2-row Hermite normal form.

An ideal is stored as the triple (a, b, c) meaning a*Z + (b + c*w)*Z with
a, c > 0, 0 <= b < a, c | a and c | b.  This form is unique, so ideal
equality is plain field-wise comparison.  The absolute norm is a*c
(or just a for the rational field, where ideals are m*Z).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from sympy import factorint, isprime

from atomzeta.errors import (
    DomainError,
    InternalInvariantError,
    MixedFieldError,
    ZeroElementError,
)
from atomzeta.ring import FieldSpec, RingElement


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, u, v) with u*a + v*b = g = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class Ideal:
    field: FieldSpec
    a: int
    b: int
    c: int

    @property
    def norm(self) -> int:
        if self.field.is_rational:
            return self.a
        return self.a * self.c

    def generators(self) -> tuple[RingElement, RingElement]:
        f = self.field
        return (f.element(self.a, 0), f.element(self.b, self.c))

    def contains(self, e: RingElement) -> bool:
        if e.field != self.field:
            raise MixedFieldError("element from a different field")
        if self.field.is_rational:
            return e.x % self.a == 0
        if e.y % self.c:
            return False
        return (e.x - (e.y // self.c) * self.b) % self.a == 0

    def is_unit_ideal(self) -> bool:
        return self.norm == 1

    def sort_key(self) -> tuple[int, int, int]:
        return (self.norm, self.a, self.b)

    def __str__(self) -> str:
        if self.field.is_rational:
            return f"({self.a})"
        g2 = self.field.element(self.b, self.c)
        return f"<{self.a}, {g2}>"


def unit_ideal(field: FieldSpec) -> Ideal:
    return Ideal(field, 1, 0, 1)


def _hnf_from_rows(field: FieldSpec, rows: list[tuple[int, int]]) -> Ideal:
    """HNF of the Z-module spanned by rows (x, y) ~ x + y*w.

    The row set must already be closed under multiplication by w
    (callers append w-multiples of their generators).
    """
    if field.is_rational:
        a = 0
        for x, _ in rows:
            a = gcd(a, x)
        if a == 0:
            raise ZeroElementError("zero module is not an ideal")
        return Ideal(field, a, 0, 1)
    bx = cy = 0
    xs: list[int] = []
    for x, y in rows:
        if y == 0:
            xs.append(x)
            continue
        if cy == 0:
            bx, cy = x, y
            continue
        g, u, v = _xgcd(cy, y)
        # unimodular 2x2 step: keep one row with y = g, zero the other
        xs.append((y // g) * bx - (cy // g) * x)
        bx, cy = u * bx + v * x, g
    if cy == 0:
        raise ZeroElementError("module has rank < 2; not a nonzero ideal")
    if cy < 0:
        bx, cy = -bx, -cy
    a = 0
    for x in xs:
        a = gcd(a, x)
    if a == 0:
        raise ZeroElementError("module has rank < 2; not a nonzero ideal")
    b = bx % a
    if a % cy or b % cy:
        raise InternalInvariantError("module is not closed under w")
    return Ideal(field, a, b, cy)


def ideal_from_elements(field: FieldSpec, gens: list[RingElement]) -> Ideal:
    rows: list[tuple[int, int]] = []
    for g in gens:
        rows.append((g.x, g.y))
        gw = g.mul_omega()
        rows.append((gw.x, gw.y))
    return _hnf_from_rows(field, rows)


def principal_ideal(e: RingElement) -> Ideal:
    if e.is_zero():
        raise ZeroElementError("zero does not generate a nonzero ideal")
    return ideal_from_elements(e.field, [e])


def ideal_norm(ideal: Ideal) -> int:
    return ideal.norm


def ideal_mul(i1: Ideal, i2: Ideal) -> Ideal:
    if i1.field != i2.field:
        raise MixedFieldError("ideals from different fields")
    f = i1.field
    if f.is_rational:
        return Ideal(f, i1.a * i2.a, 0, 1)
    g1a, g1b = i1.generators()
    g2a, g2b = i2.generators()
    prods = [g1a * g2a, g1a * g2b, g1b * g2a, g1b * g2b]
    return ideal_from_elements(f, prods)


def ideal_pow(ideal: Ideal, n: int) -> Ideal:
    r = unit_ideal(ideal.field)
    b = ideal
    while n:
        if n & 1:
            r = ideal_mul(r, b)
        b = ideal_mul(b, b) if n > 1 else b
        n >>= 1
    return r


def conj_ideal(ideal: Ideal) -> Ideal:
    f = ideal.field
    if f.is_rational:
        return ideal
    ga, gb = ideal.generators()
    return ideal_from_elements(f, [ga.conj(), gb.conj()])


# ---------------------------------------------------------------------------
# prime splitting


def kronecker_symbol(a: int, p: int) -> int:
    """Kronecker symbol (a | p) for prime p."""
    if p == 2:
        if a % 2 == 0:
            return 0
        return 1 if a % 8 in (1, 7) else -1
    r = pow(a % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


def sqrt_mod_prime(n: int, p: int) -> int:
    """A square root of n modulo an odd prime p (n must be a residue)."""
    n %= p
    if n == 0:
        return 0
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while kronecker_symbol(z, p) != -1:
        z += 1
    m, c = s, pow(z, q, p)
    t, r = pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


@dataclass(frozen=True)
class PrimeIdeal:
    p: int
    kind: str  # "split" | "inert" | "ramified" | "rational"
    ideal: Ideal
    f: int  # residue degree

    @property
    def norm(self) -> int:
        return self.ideal.norm


def splitting_type(p: int, field: FieldSpec) -> str:
    if not isprime(p):
        raise DomainError(f"{p} is not prime")
    if field.is_rational:
        return "rational"
    k = kronecker_symbol(field.disc, p)
    if k == 1:
        return "split"
    if k == -1:
        return "inert"
    return "ramified"


def primes_above(p: int, field: FieldSpec) -> list[PrimeIdeal]:
    kind = splitting_type(p, field)
    if kind == "rational":
        return [PrimeIdeal(p, kind, Ideal(field, p, 0, 1), 1)]
    d = field.d
    if kind == "inert":
        return [PrimeIdeal(p, kind, Ideal(field, p, 0, p), 2)]
    # roots of the minimal polynomial of w modulo p
    if field.half_basis:
        if p == 2:
            roots = [0, 1]  # split case; ramified impossible for odd disc
        else:
            r = sqrt_mod_prime(d, p) if kind == "split" else 0
            inv2 = pow(2, -1, p)
            roots = [(1 + r) * inv2 % p, (1 - r) * inv2 % p]
    else:
        if p == 2:
            roots = [d % 2, d % 2]
        else:
            r = sqrt_mod_prime(d, p) if kind == "split" else 0
            roots = [r, (-r) % p]
    ideals = sorted({Ideal(field, p, (-r) % p, 1) for r in roots}, key=lambda i: i.b)
    if kind == "ramified":
        return [PrimeIdeal(p, kind, ideals[0], 1)]
    return [PrimeIdeal(p, kind, i, 1) for i in ideals]


# ---------------------------------------------------------------------------
# factorization


@dataclass(frozen=True)
class FactoredIdeal:
    field: FieldSpec
    factors: tuple[tuple[PrimeIdeal, int], ...]  # sorted by (p, b)

    def unfactor(self) -> Ideal:
        out = unit_ideal(self.field)
        for prime, e in self.factors:
            out = ideal_mul(out, ideal_pow(prime.ideal, e))
        return out

    def norm(self) -> int:
        n = 1
        for prime, e in self.factors:
            n *= prime.norm**e
        return n


def _divide_by_prime(ideal: Ideal, prime: PrimeIdeal) -> Ideal:
    """ideal / prime.ideal, assuming prime.ideal contains ideal."""
    f = ideal.field
    p = prime.p
    if f.is_rational:
        return Ideal(f, ideal.a // p, 0, 1)
    if prime.kind == "inert":
        return Ideal(f, ideal.a // p, ideal.b // p, ideal.c // p)
    if prime.kind == "ramified":
        cof = prime.ideal
    else:
        cof = conj_ideal(prime.ideal)
    j = ideal_mul(ideal, cof)
    return Ideal(f, j.a // p, j.b // p, j.c // p)


def valuation(ideal: Ideal, prime: PrimeIdeal) -> int:
    v = 0
    j = ideal
    while all(prime.ideal.contains(g) for g in _ideal_gens(j)):
        j = _divide_by_prime(j, prime)
        v += 1
    return v


def _ideal_gens(ideal: Ideal) -> tuple[RingElement, ...]:
    f = ideal.field
    if f.is_rational:
        return (f.element(ideal.a),)
    return ideal.generators()


def factor_ideal(ideal: Ideal) -> FactoredIdeal:
    f = ideal.field
    n = ideal.norm
    if n > 10**18:
        raise DomainError("ideal norm exceeds the supported factoring range")
    factors: list[tuple[PrimeIdeal, int]] = []
    for p in sorted(factorint(n)):
        for prime in primes_above(p, f):
            v = valuation(ideal, prime)
            if v:
                factors.append((prime, v))
    out = FactoredIdeal(f, tuple(factors))
    if out.norm() != n:
        raise InternalInvariantError("factorization norm mismatch")
    return out


def divisor_ideals(factored: FactoredIdeal):
    """All divisors of the factored ideal, lexicographic in the exponent box."""
    primes = [prime for prime, _ in factored.factors]
    exps = [e for _, e in factored.factors]
    field = factored.field

    def rec(i: int, acc: Ideal):
        if i == len(primes):
            yield acc
            return
        cur = acc
        for k in range(exps[i] + 1):
            yield from rec(i + 1, cur)
            if k < exps[i]:
                cur = ideal_mul(cur, primes[i].ideal)

    yield from rec(0, unit_ideal(field))


def enumerate_ideals_factored(
    field: FieldSpec, kappa: int
) -> list[tuple[Ideal, tuple[tuple[PrimeIdeal, int], ...]]]:
    """Every ideal of norm <= kappa once, with its prime factorization,
    sorted by (norm, a, b)."""
    if kappa < 1:
        raise DomainError("kappa must be >= 1")
    if field.is_rational:
        out = [
            (Ideal(field, m, 0, 1), _rational_factorization(field, m))
            for m in range(1, kappa + 1)
        ]
        return out
    prime_pool: list[PrimeIdeal] = []
    for p in _primes_upto(kappa):
        for prime in primes_above(p, field):
            if prime.norm <= kappa:
                prime_pool.append(prime)
    # sorted by norm so the extension loop below can stop early; an
    # explicit stack keeps the depth independent of the pool size
    prime_pool.sort(key=lambda pr: pr.ideal.sort_key())
    results: list[tuple[Ideal, tuple[tuple[PrimeIdeal, int], ...]]] = []
    stack: list[tuple[int, Ideal, int, tuple[tuple[PrimeIdeal, int], ...]]] = [
        (0, unit_ideal(field), 1, ())
    ]
    while stack:
        i, acc, nrm, fac = stack.pop()
        results.append((acc, fac))
        for j in range(i, len(prime_pool)):
            prime = prime_pool[j]
            if nrm * prime.norm > kappa:
                break
            cur, n2, e = acc, nrm, 0
            while n2 * prime.norm <= kappa:
                cur = ideal_mul(cur, prime.ideal)
                n2 *= prime.norm
                e += 1
                stack.append((j + 1, cur, n2, fac + ((prime, e),)))
    results.sort(key=lambda t: t[0].sort_key())
    return results


def enumerate_ideals(field: FieldSpec, kappa: int) -> list[Ideal]:
    return [ideal for ideal, _ in enumerate_ideals_factored(field, kappa)]


def _rational_factorization(
    field: FieldSpec, m: int
) -> tuple[tuple[PrimeIdeal, int], ...]:
    return tuple(
        (PrimeIdeal(p, "rational", Ideal(field, p, 0, 1), 1), e)
        for p, e in sorted(factorint(m).items())
    )


def _primes_upto(n: int) -> list[int]:
    from atomzeta.sieve import primes_upto

    return primes_upto(n)
