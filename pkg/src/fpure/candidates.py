"""Finite candidate lists for the F-pure threshold of a quasi-homogeneous
polynomial with an isolated singularity.

Writing ``lam = min(sum(w) / deg f, 1) = a/b`` in lowest terms, the threshold
is either ``lam`` or ``<lam>_L - E/p^L`` for a pair ``(L, E)`` with bounded
``E``; ``L`` is bounded by ``ord_p(b)`` for large ``p`` and by
``2*phi(b) + ceil(log2(n-1))`` otherwise.  Candidates that violate the
trailing-digit inequality (a threshold never exceeds any of its own tails)
can be removed with :func:`digit_minimality_filter`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

from .basep import INF, lpr, mult_order, totient, truncation
from .errors import PreconditionError
from .gradedpoly import Grading

LAMBDA = "lambda"
SECONDARY = "secondary"


@dataclass(frozen=True, order=True)
class Pair:
    """Provenance ``<lam>_L - E/p^L``."""

    L: int
    E: int

    def __str__(self) -> str:
        return f"(L={self.L}, E={self.E})"


Provenance = Union[str, Pair]


def _prov_key(prov: Provenance) -> tuple:
    return (0, 0, 0) if isinstance(prov, str) else (1, prov.L, prov.E)


@dataclass(frozen=True)
class Candidate:
    value: Fraction
    provenances: tuple[Provenance, ...]
    filters_passed: frozenset[str] = field(default_factory=frozenset)

    @property
    def pairs(self) -> tuple[Pair, ...]:
        return tuple(pr for pr in self.provenances if isinstance(pr, Pair))

    @property
    def is_lambda(self) -> bool:
        return LAMBDA in self.provenances

    @property
    def L(self) -> int | float:
        """Smallest truncation level in the provenance; ``INF`` for ``lam`` itself."""
        pairs = self.pairs
        return min(pr.L for pr in pairs) if pairs else INF

    def with_tag(self, tag: str) -> Candidate:
        return Candidate(self.value, self.provenances, self.filters_passed | {tag})


def _collect(entries: Iterable[tuple[Fraction, Provenance]], tag: str) -> list[Candidate]:
    merged: dict[Fraction, list[Provenance]] = {}
    for value, prov in entries:
        merged.setdefault(value, []).append(prov)
    return [
        Candidate(v, tuple(sorted(set(provs), key=_prov_key)), frozenset({tag}))
        for v, provs in sorted(merged.items())
    ]


def lambda_of(g: Grading, deg_f: int) -> Fraction:
    if deg_f < 1:
        raise PreconditionError(f"degree must be positive, got {deg_f}")
    return min(Fraction(g.total, deg_f), Fraction(1))


def uniform_L_bound(n: int, b: int) -> int:
    """``2*phi(b) + ceil(log2(n - 1))``."""
    if n < 2:
        raise PreconditionError(f"the uniform bound needs n >= 2, got {n}")
    if b < 1:
        raise PreconditionError(f"b must be positive, got {b}")
    return 2 * totient(b) + (n - 2).bit_length()


def mu(a: int, b: int, p: int, L: int) -> int:
    """``ceil((lpr(a p^L, b) + a) / b)``; always 1 or 2."""
    return -(-(lpr(a * p**L, b) + a) // b)


def _check_lambda(a: int, b: int) -> None:
    if not (0 < a <= b and math.gcd(a, b) == 1):
        raise PreconditionError(f"{a}/{b} must be a reduced fraction in (0, 1]")


def main_candidates(n: int, a: int, b: int, p: int) -> list[Candidate]:
    """Every value a threshold with this ``lam`` can take, ``lam`` included."""
    _check_lambda(a, b)
    if b % p == 0:
        raise PreconditionError(f"p = {p} divides the denominator {b}; no finite list")
    large = p > (n - 2) * b
    L_max = mult_order(p, b) if large else uniform_L_bound(n, b)
    need_growth = large and p > b
    lam = Fraction(a, b)
    entries: list[tuple[Fraction, Provenance]] = [(lam, LAMBDA)]
    for L in range(1, L_max + 1):
        # a < lpr(a p^e, b) for e < L; once it fails it fails for every larger L
        if need_growth and L >= 2 and a >= lpr(a * p ** (L - 1), b):
            break
        E_max = n - 1 - mu(a, b, p, L)
        base = truncation((a, b), p, L)
        for E in range(E_max + 1):
            v = base - Fraction(E, p**L)
            if v <= 0:
                break
            entries.append((v, Pair(L, E)))
    return _collect(entries, "main")


def two_variable_candidates(a: int, b: int, p: int) -> list[Candidate]:
    """Two-variable refinement: ``E = 0`` and ``lpr(a p^L, b) <= b - a``."""
    _check_lambda(a, b)
    if b % p == 0:
        raise PreconditionError(f"p = {p} divides the denominator {b}; L is unbounded")
    entries: list[tuple[Fraction, Provenance]] = [(Fraction(a, b), LAMBDA)]
    for L in range(1, mult_order(p, b) + 1):
        if p > b and L >= 2 and a >= lpr(a * p ** (L - 1), b):
            break
        t = truncation((a, b), p, L)
        if lpr(a * p**L, b) <= b - a and t > 0:
            entries.append((t, Pair(L, 0)))
    return _collect(entries, "two-variable")


def min_tail(value: Fraction, p: int, depth: int | None = None) -> Fraction | None:
    """Smallest tail ``. d_s d_(s+1) ...`` over ``2 <= s <= depth``.

    With ``depth=None`` every ``s >= 2`` is covered: tails are
    ``lpr(a p^(s-1), b) / b`` and the residues ``a p^k mod b`` cycle.
    Returns None when the range is empty.
    """
    a, b = value.numerator, value.denominator
    best = None
    seen: set[int] = set()
    x = a % b
    s = 1
    while depth is None or s < depth:
        x = (x * p) % b
        s += 1
        if depth is None:
            if x in seen:
                break
            seen.add(x)
        t = Fraction(x if x else b, b)
        if best is None or t < best:
            best = t
    return best


def digit_minimality_filter(cands: Iterable[Candidate], p: int, depth: int | None = None) -> list[Candidate]:
    """Drop candidates larger than one of their own trailing-digit tails."""
    if depth is not None and depth < 1:
        raise PreconditionError(f"depth must be >= 1, got {depth}")
    kept = []
    for c in cands:
        t = min_tail(c.value, p, depth)
        if t is None or t >= c.value:
            kept.append(c.with_tag("digit-minimality"))
    return kept


def almost_cy_candidates(n: int, d: int, p: int) -> list[Candidate]:
    """Candidates when ``deg f = sum(w) + 1 = d`` and ``p > (n - 2) d``."""
    if d < 2:
        raise PreconditionError(f"d must be at least 2, got {d}")
    if p <= (n - 2) * d:
        raise PreconditionError(f"need p > (n - 2) * d = {(n - 2) * d}, got p = {p}")
    entries: list[tuple[Fraction, Provenance]] = []
    lam = 1 - Fraction(1, d)
    if p % d == 1 % d:
        entries.append((lam, LAMBDA))
    A_max = d - 2 if p % d == d - 1 else d - 3
    r = lpr(p, d)
    for A in range(1, A_max + 1):
        v = lam - (A - Fraction(r, d)) / p
        if v > 0:
            entries.append((v, Pair(1, A - 1)))
    return _collect(entries, "almost-cy")


def secondary_theorem_applies(n: int, weights: Iterable[int], deg_f: int, p: int) -> bool:
    """True when ``sum(w) > deg f`` and ``p > (n - 3) / (rho - 1)``."""
    s = sum(weights)
    if s <= deg_f:
        return False
    return p > Fraction((n - 3) * deg_f, s - deg_f)


@dataclass(frozen=True)
class AccBound:
    M_max: int
    power_part: int
    lambda_part: int
    superset_size: int


def acc_superset(n: int, weight_cap: int, mu_: Fraction, p: int) -> AccBound:
    """Size of the finite superset of thresholds in ``(mu, 1]`` for weights ``<= weight_cap``."""
    mu_ = Fraction(mu_)
    if not 0 < mu_ <= 1:
        raise PreconditionError(f"mu must lie in (0, 1], got {mu_}")
    b_max = math.floor(n * weight_cap / mu_)
    dens = [b for b in range(1, b_max + 1) if b % p]
    M = max(uniform_L_bound(n, b) for b in dens)
    q = p**M
    power_part = q - math.floor(mu_ * q)
    lambdas = {Fraction(a, b) for b in dens for a in range(1, b + 1) if Fraction(a, b) > mu_}
    # only 1 = p^M / p^M lies in both parts, since p does not divide b
    overlap = 1 if Fraction(1) in lambdas and power_part > 0 else 0
    return AccBound(M, power_part, len(lambdas), power_part + len(lambdas) - overlap)
