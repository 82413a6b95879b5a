"""Restricted zeta partial sums, atom censuses and the asymptotic report.

Partial sums are accumulated in increasing-norm order with mpmath at a
configurable mantissa precision (>= 80 bits), terms of equal norm grouped,
so results are reproducible bit-for-bit regardless of thread count.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import e as _E, log

import mpmath

from atomzeta.atoms import _sub_boxes, atom_ideals_dividing
from atomzeta.classgroup import (
    class_group_structure,
    davenport_constant,
    ideal_class_form,
    is_principal_class,
    principal_form,
    reduce_form,
    compose,
    form_pow,
)
from atomzeta.errors import DomainError
from atomzeta.ideals import (
    Ideal,
    enumerate_ideals_factored,
    primes_above,
)
from atomzeta.ring import FieldSpec
from atomzeta.sieve import primes_upto

DEFAULT_PREC_BITS = 100


def default_threads() -> int:
    env = os.environ.get("ATOMZETA_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise DomainError(f"bad ATOMZETA_THREADS value: {env!r}")
    return 1


# ---------------------------------------------------------------------------
# set specifications


@dataclass(frozen=True)
class XSetSpec:
    """A set of positive integers, enumerable in increasing order."""

    kind: str  # "all" | "primes" | "ap" | "list" | "file"
    a: int = 0
    q: int = 0
    values: tuple[int, ...] = ()
    path: str = ""

    def members_upto(self, kappa: int) -> list[int]:
        if self.kind == "all":
            return list(range(1, kappa + 1))
        if self.kind == "primes":
            return primes_upto(kappa)
        if self.kind == "ap":
            start = self.a if self.a >= 1 else self.a + ((1 - self.a) // self.q + 1) * self.q
            return list(range(start, kappa + 1, self.q))
        if self.kind == "list":
            return sorted(v for v in set(self.values) if 1 <= v <= kappa)
        if self.kind == "file":
            with open(self.path) as fh:
                vals = {int(line) for line in fh if line.strip()}
            return sorted(v for v in vals if 1 <= v <= kappa)
        raise DomainError(f"unknown X-set kind {self.kind!r}")

    def label(self) -> str:
        if self.kind == "ap":
            return f"ap:{self.a},{self.q}"
        if self.kind == "list":
            return "list:" + ",".join(map(str, sorted(self.values)))
        if self.kind == "file":
            return f"file:{self.path}"
        return self.kind


def parse_xset(spec: str) -> XSetSpec:
    if spec == "all":
        return XSetSpec("all")
    if spec == "primes":
        return XSetSpec("primes")
    if spec.startswith("ap:"):
        try:
            a, q = (int(t) for t in spec[3:].split(","))
        except ValueError:
            raise DomainError(f"bad ap spec token: {spec!r}")
        if q < 1:
            raise DomainError(f"ap step must be >= 1 in {spec!r}")
        return XSetSpec("ap", a=a, q=q)
    if spec.startswith("list:"):
        try:
            values = tuple(int(t) for t in spec[5:].split(","))
        except ValueError:
            raise DomainError(f"bad list spec token: {spec!r}")
        return XSetSpec("list", values=values)
    if spec.startswith("file:"):
        return XSetSpec("file", path=spec[5:])
    raise DomainError(f"unknown X-set token: {spec!r}")


@dataclass(frozen=True)
class ASetSpec:
    """An ideal set: atoms dividing X, all atoms, or all prime ideals."""

    kind: str  # "atoms-dividing" | "all-atoms" | "prime-ideals"
    xset: XSetSpec | None = None

    def label(self) -> str:
        if self.kind == "atoms-dividing":
            return f"atoms-dividing:{self.xset.label()}"
        return self.kind


def parse_aset(spec: str) -> ASetSpec:
    if spec == "all-atoms":
        return ASetSpec("all-atoms")
    if spec == "prime-ideals":
        return ASetSpec("prime-ideals")
    if spec == "atoms-dividing-primes":
        return ASetSpec("atoms-dividing", xset=XSetSpec("primes"))
    if spec.startswith("atoms-dividing:"):
        return ASetSpec("atoms-dividing", xset=parse_xset(spec.split(":", 1)[1]))
    raise DomainError(f"unknown ideal-set token: {spec!r}")


# ---------------------------------------------------------------------------
# set builders


def _atomic_from_factorization(field: FieldSpec, fac) -> bool:
    """Does this principal ideal have an atomic generator?

    fac: tuple of (PrimeIdeal, exponent).  Assumes the full product is
    principal; checks no proper nonempty sub-product is principal.
    """
    if field.is_rational:
        return len(fac) == 1 and fac[0][1] == 1
    exps = tuple(v for _, v in fac)
    if sum(exps) == 1:
        return True  # a principal prime ideal
    if field.is_imaginary:
        ident = reduce_form(principal_form(field.disc))
        classes = [ideal_class_form(p.ideal) for p, _ in fac]
        for k in _sub_boxes(exps):
            if k == exps:
                continue
            acc = ident
            for cls, kk in zip(classes, k):
                if kk:
                    acc = compose(acc, form_pow(cls, kk))
            if acc == ident:
                return False
        return True
    # real fields: fall back to principality-by-search on each sub-product
    from atomzeta.ideals import ideal_mul, ideal_pow, unit_ideal

    for k in _sub_boxes(exps):
        if k == exps:
            continue
        acc = unit_ideal(field)
        for (p, _), kk in zip(fac, k):
            if kk:
                acc = ideal_mul(acc, ideal_pow(p.ideal, kk))
        if is_principal_class(acc):
            return False
    return True


def _chunks(seq, n):
    size = (len(seq) + n - 1) // n
    return [seq[i : i + size] for i in range(0, len(seq), size)] or [[]]


def build_ideal_set(
    field: FieldSpec, aspec: ASetSpec, kappa: int, threads: int | None = None
) -> list[Ideal]:
    """Deterministic list of the ideals of the set with norm <= kappa,
    sorted by (norm, a, b).

    For atoms-dividing-X the X members are additionally truncated at
    m <= kappa; omitted atoms can only lower the reported sums, which is
    conservative for a divergence exhibit.
    """
    if kappa < 1:
        raise DomainError("kappa must be >= 1")
    threads = threads or default_threads()
    if aspec.kind == "prime-ideals":
        out = []
        for p in primes_upto(kappa):
            for prime in primes_above(p, field):
                if prime.norm <= kappa:
                    out.append(prime.ideal)
        return sorted(set(out), key=lambda i: i.sort_key())
    if aspec.kind == "all-atoms":
        out = []
        for ideal, fac in enumerate_ideals_factored(field, kappa):
            if ideal.is_unit_ideal():
                continue
            if not is_principal_class(ideal):
                continue
            if _atomic_from_factorization(field, fac):
                out.append(ideal)
        return sorted(set(out), key=lambda i: i.sort_key())
    if aspec.kind == "atoms-dividing":
        ms = [m for m in aspec.xset.members_upto(kappa) if m >= 2]

        def work(chunk):
            found = []
            for m in chunk:
                found.extend(atom_ideals_dividing(m, field, norm_cap=kappa))
            return found

        if threads > 1 and len(ms) > 64:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                parts = pool.map(work, _chunks(ms, threads * 4))
            out = [i for part in parts for i in part]
        else:
            out = work(ms)
        return sorted(set(out), key=lambda i: i.sort_key())
    raise DomainError(f"unknown ideal-set kind {aspec.kind!r}")


# ---------------------------------------------------------------------------
# partial sums


def zeta_partial(
    ideals: list[Ideal],
    s: Fraction,
    kappa: int,
    prec_bits: int = DEFAULT_PREC_BITS,
) -> tuple[mpmath.mpf, int]:
    """(sum of N^-s over members with N <= kappa, count of members).

    Terms are grouped by norm and accumulated in increasing-norm order.
    """
    norms = [i.norm for i in ideals if i.norm <= kappa]
    count = len(norms)
    with mpmath.workprec(max(prec_bits, 80)):
        if s == 0:
            return mpmath.mpf(count), count
        sexp = mpmath.mpf(s.numerator) / s.denominator
        total = mpmath.mpf(0)
        for n, k in sorted(Counter(norms).items()):
            total += k * mpmath.mpf(n) ** (-sexp)
        return total, count


@dataclass(frozen=True)
class SeriesRow:
    kappa: int
    count: int
    partial_sum: mpmath.mpf


@dataclass(frozen=True)
class SeriesTable:
    field_label: str
    aset_label: str
    s: Fraction
    rows: tuple[SeriesRow, ...]
    increment_floor: float = 0.0  # heuristic threshold for the divergence flag

    @property
    def increments(self) -> list[float]:
        return [
            float(b.partial_sum - a.partial_sum)
            for a, b in zip(self.rows, self.rows[1:])
        ]

    @property
    def consistent_with_divergence(self) -> bool:
        """Heuristic only: increments stay above the floor.  Never a proof."""
        incs = self.increments
        return bool(incs) and all(i > self.increment_floor for i in incs)


def divergence_table(
    field: FieldSpec,
    aspec: ASetSpec,
    s: Fraction,
    kappa_grid: list[int],
    prec_bits: int = DEFAULT_PREC_BITS,
    threads: int | None = None,
    increment_floor: float = 0.05,
) -> SeriesTable:
    if list(kappa_grid) != sorted(set(kappa_grid)):
        raise DomainError("kappa grid must be strictly increasing")
    rows = []
    for kappa in kappa_grid:
        ideals = build_ideal_set(field, aspec, kappa, threads=threads)
        total, count = zeta_partial(ideals, s, kappa, prec_bits)
        rows.append(SeriesRow(kappa, count, total))
    return SeriesTable(
        field.label(), aspec.label(), s, tuple(rows), increment_floor
    )


def euler_primes_sum(x: int, prec_bits: int = DEFAULT_PREC_BITS) -> mpmath.mpf:
    """Sum of 1/p over primes p <= x, via a sieve, in increasing order."""
    if x < 2:
        raise DomainError("x must be >= 2")
    with mpmath.workprec(max(prec_bits, 80)):
        total = mpmath.mpf(0)
        one = mpmath.mpf(1)
        for p in primes_upto(x):
            total += one / p
        return total


# ---------------------------------------------------------------------------
# census


@dataclass(frozen=True)
class CensusTable:
    field_label: str
    kappa: int
    counts: tuple[tuple[int, int], ...]  # (n, a_n) for a_n > 0, ascending n
    davenport: int

    def a(self, n: int) -> int:
        for m, c in self.counts:
            if m == n:
                return c
        return 0

    def cumulative(self, x: float) -> int:
        return sum(c for n, c in self.counts if n <= x)

    def ratio(self, x: float) -> float | None:
        """A(x) * log(x) / (x * (log log x)^(D-1)); None for x <= e."""
        if x <= _E:
            return None
        return (
            self.cumulative(x)
            * log(x)
            / (x * log(log(x)) ** (self.davenport - 1))
        )


def atom_census(
    field: FieldSpec, kappa: int, threads: int | None = None
) -> CensusTable:
    ideals = build_ideal_set(field, ASetSpec("all-atoms"), kappa, threads=threads)
    counter = Counter(i.norm for i in ideals)
    counts = tuple(sorted(counter.items()))
    if field.is_imaginary or field.is_rational:
        d_const = davenport_constant(class_group_structure(field))
    else:
        raise DomainError("the census experiment is restricted to imaginary fields and Q")
    return CensusTable(field.label(), kappa, counts, d_const)


@dataclass(frozen=True)
class AsymptoticRow:
    x: int
    cumulative: int
    ratio: float | None
    note: str = ""


def asymptotic_report(census: CensusTable, xs: list[int]) -> list[AsymptoticRow]:
    """Ratio trend rows; states the trend only, never an estimate of the
    limiting constant (desk-scale x is far too small for log log x)."""
    out = []
    for x in xs:
        r = census.ratio(x)
        note = "" if r is not None else "skipped: log log undefined for x <= e"
        out.append(AsymptoticRow(x, census.cumulative(x), r, note))
    return out
