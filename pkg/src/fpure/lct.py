"""Log canonical thresholds, the gap ``lct - fpt``, and bad primes.

For a quasi-homogeneous isolated singularity over the rationals the log
canonical threshold is ``min(sum(w) / deg f, 1)``, the same ``lam`` that
heads every candidate list.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from .basep import lpr, mult_order, totient
from .candidates import lambda_of
from .errors import PreconditionError
from .gradedpoly import Grading

#: Largest sieve bound accepted by :func:`primes_up_to`.
SIEVE_LIMIT = 10**7


def lct_of(g: Grading, deg_f: int) -> Fraction:
    return lambda_of(g, deg_f)


@dataclass(frozen=True)
class DiffBounds:
    """Two-sided bound on ``lct - fpt`` whenever the two differ."""

    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        if not 0 < self.lower <= self.upper:
            raise PreconditionError(f"inconsistent bounds {self.lower} > {self.upper}")

    def contains(self, gap: Fraction) -> bool:
        return self.lower <= gap <= self.upper


def _check_reduced(a: int, b: int) -> None:
    if not (0 < a <= b and math.gcd(a, b) == 1):
        raise PreconditionError(f"{a}/{b} must be a reduced fraction in (0, 1]")


def difference_bounds(n: int, a: int, b: int, p: int) -> DiffBounds:
    """``(1/b) / p^ord_p(b) <= lct - fpt <= (n - 1 - 1/b) / p``."""
    _check_reduced(a, b)
    if b % p == 0:
        raise PreconditionError(f"p = {p} divides b = {b}")
    lower = Fraction(1, b * p ** mult_order(p, b))
    upper = (n - 1 - Fraction(1, b)) / p
    return DiffBounds(lower, upper)


def is_certified_bad_prime(a: int, b: int, p: int) -> bool:
    """True when ``p^e * a = 1 (mod b)`` for some ``e >= 1``.

    Then the tail of ``a/b`` from digit ``e + 1`` is ``1/b < a/b``, so
    ``a/b`` cannot be an F-pure threshold in characteristic ``p``.
    """
    _check_reduced(a, b)
    if a == 1:
        raise PreconditionError("the criterion needs a numerator a >= 2")
    if b % p == 0:
        raise PreconditionError(f"p = {p} divides b = {b}")
    x = a % b
    for _ in range(mult_order(p, b)):
        x = (x * p) % b
        if x == 1 % b:
            return True
    return False


def bad_density_lower_bound(a: int, b: int, almost_cy_degree: int | None = None) -> Fraction:
    """Lower bound on the density of primes where ``fpt != lct``.

    Pass ``almost_cy_degree=d`` for a degree-``d`` form in ``d - 1``
    variables (standard grading), where ``lct = 1 - 1/d``.
    """
    _check_reduced(a, b)
    if almost_cy_degree is not None:
        d = almost_cy_degree
        if Fraction(a, b) != 1 - Fraction(1, d):
            raise PreconditionError(f"{a}/{b} is not 1 - 1/{d}")
        return 1 - Fraction(1, totient(d))
    if a == 1:
        raise PreconditionError("no bound is available when the numerator is 1")
    return Fraction(1, totient(b))


def primes_up_to(cap: int) -> list[int]:
    if cap > SIEVE_LIMIT:
        raise PreconditionError(f"prime cap {cap} exceeds the sieve limit {SIEVE_LIMIT}")
    if cap < 2:
        return []
    sieve = np.ones(cap + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(cap) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return [int(q) for q in np.flatnonzero(sieve)]


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    return all(m % q for q in range(2, math.isqrt(m) + 1))


def empirical_density(predicate: Callable[[int], bool], prime_cap: int) -> Fraction:
    """Fraction of primes ``p <= prime_cap`` satisfying ``predicate``."""
    if prime_cap < 2:
        raise PreconditionError(f"prime_cap must be >= 2, got {prime_cap}")
    primes = primes_up_to(prime_cap)
    return Fraction(sum(1 for q in primes if predicate(q)), len(primes))


@dataclass(frozen=True)
class DensityRow:
    prime: int
    residue: int
    certified_bad: bool | None
    fpt: Fraction | None
    lct: Fraction

    @property
    def difference(self) -> Fraction | None:
        return None if self.fpt is None else self.lct - self.fpt


def density_rows(
    a: int, b: int, primes: Iterable[int], fpt_of: Callable[[int], Fraction | None] | None = None
) -> list[DensityRow]:
    lam = Fraction(a, b)
    rows = []
    for q in primes:
        if b % q == 0:
            bad = None
        else:
            bad = is_certified_bad_prime(a, b, q) if a != 1 else False
        rows.append(DensityRow(q, q % b, bad, fpt_of(q) if fpt_of else None, lam))
    return rows


def density_csv(rows: Iterable[DensityRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["prime", "residue_class", "certified_bad", "fpt", "lct", "difference"])
    for r in rows:
        w.writerow(
            [
                r.prime,
                r.residue,
                "" if r.certified_bad is None else str(r.certified_bad).lower(),
                "" if r.fpt is None else f"{r.fpt.numerator}/{r.fpt.denominator}",
                f"{r.lct.numerator}/{r.lct.denominator}",
                "" if r.difference is None else f"{r.difference.numerator}/{r.difference.denominator}",
            ]
        )
    return buf.getvalue()


def diagonal_gap(d: int, p: int) -> Fraction:
    """``lct - fpt`` for ``x_1^d + ... + x_d^d`` when ``p > d``."""
    if p <= d:
        raise PreconditionError(f"need p > d, got p = {p}, d = {d}")
    return Fraction(lpr(p, d) - 1, p)
