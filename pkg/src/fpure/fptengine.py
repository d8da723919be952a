"""Exact computation of ``nu_e = max{N : f^N not in m^[e]}`` and of the
F-pure threshold by candidate elimination.

Levels are computed one base-p digit at a time.  Given the reduced power
``h = f^(nu_e) mod m^[e]``, its Frobenius twist ``h^p`` is already reduced
modulo ``m^[e+1]`` and equals ``f^(p nu_e)`` there; at most ``p - 1`` further
multiplications by ``f`` then find the next digit.

For a weighted homogeneous ``f`` every power is homogeneous, so a power of
known degree ``D`` is determined by its coefficients on the first ``n - 1``
exponents.  When that box (side ``p^e``) is small enough the power is stored
as a dense numpy array, and multiplying by ``f`` becomes a few shifted adds.
Larger levels fall back to sparse dictionaries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from .basep import INF, p_free_part, scaled_truncation, truncation
from .candidates import (
    SECONDARY,
    Candidate,
    Pair,
    Provenance,
    digit_minimality_filter,
    lambda_of,
    main_candidates,
    secondary_theorem_applies,
)
from .errors import InvariantViolation, PreconditionError
from .gradedpoly import (
    GradedPolynomial,
    Polynomial,
    frobenius_twist,
    has_isolated_singularity,
    mul_mod_frobenius,
    reduce_mod_frobenius,
    weighted_degree,
)

#: Largest box (number of int64 entries) handled by the dense representation.
DENSE_LIMIT = 1 << 24

DEFAULT_E_CAP = 12


class _DenseSlice:
    """Homogeneous element of degree ``degree`` in ``R / m^[e]``.

    ``arr[a_1, ..., a_(n-1)]`` is the coefficient of the unique monomial of
    that degree with those leading exponents (zero when no such monomial
    exists or its last exponent is ``>= p^e``).
    """

    __slots__ = ("f", "e", "q", "degree", "arr")

    def __init__(self, f: GradedPolynomial, e: int, degree: int, arr: np.ndarray):
        self.f = f
        self.e = e
        self.q = f.prime**e
        self.degree = degree
        self.arr = arr

    @staticmethod
    def fits(f: GradedPolynomial, e: int) -> bool:
        n = f.nvars
        return n >= 2 and (f.prime**e) ** (n - 1) <= DENSE_LIMIT

    @classmethod
    def one(cls, f: GradedPolynomial, e: int) -> _DenseSlice:
        q = f.prime**e
        arr = np.zeros((q,) * (f.nvars - 1), dtype=np.int64)
        arr[(0,) * (f.nvars - 1)] = 1
        return cls(f, e, 0, arr)

    @classmethod
    def from_polynomial(cls, f: GradedPolynomial, e: int, degree: int, h: Polynomial) -> _DenseSlice:
        q = f.prime**e
        arr = np.zeros((q,) * (f.nvars - 1), dtype=np.int64)
        for mono, c in h:
            arr[mono[:-1]] = c
        return cls(f, e, degree, arr)

    def is_zero(self) -> bool:
        return not self.arr.any()

    def _kill_overflow(self, acc: np.ndarray, degree: int) -> None:
        # zero the slots whose implied last exponent is >= q
        w = self.f.grading.weights
        threshold = degree - self.q * w[-1]
        if threshold < 0:
            return
        if len(w) == 2:
            acc[: threshold // w[0] + 1] = 0
            return
        grid = np.zeros(acc.shape, dtype=np.int64)
        for i, wi in enumerate(w[:-1]):
            shape = [1] * acc.ndim
            shape[i] = self.q
            grid = grid + (np.arange(self.q, dtype=np.int64) * wi).reshape(shape)
        acc[grid <= threshold] = 0

    def times_f(self) -> _DenseSlice:
        f = self.f
        q, p = self.q, f.prime
        acc = np.zeros_like(self.arr)
        for mono, c in f.poly:
            lead = mono[:-1]
            if any(a >= q for a in lead):
                continue
            dst = tuple(slice(a, q) for a in lead)
            src = tuple(slice(0, q - a) for a in lead)
            if c == 1:
                acc[dst] += self.arr[src]
            else:
                acc[dst] += c * self.arr[src]
        np.remainder(acc, p, out=acc)
        degree = self.degree + f.degree
        self._kill_overflow(acc, degree)
        return _DenseSlice(f, self.e, degree, acc)

    def twist(self) -> _DenseSlice:
        p = self.f.prime
        q = self.q * p
        arr = np.zeros((q,) * self.arr.ndim, dtype=np.int64)
        arr[(slice(None, None, p),) * self.arr.ndim] = self.arr
        return _DenseSlice(self.f, self.e + 1, self.degree * p, arr)

    def to_polynomial(self) -> Polynomial:
        f = self.f
        w = f.grading.weights
        terms = {}
        for idx in zip(*np.nonzero(self.arr)):
            lead = tuple(int(i) for i in idx)
            rest = self.degree - sum(a * wi for a, wi in zip(lead, w))
            terms[lead + (rest // w[-1],)] = int(self.arr[idx])
        return Polynomial(f.prime, f.nvars, terms)


_Power = Union[Polynomial, _DenseSlice]


@dataclass(frozen=True)
class NuRecord:
    """``nu_e`` together with a witness ``f^(nu_e) mod m^[e] != 0``."""

    e: int
    nu: int
    prime: int
    source: Union[GradedPolynomial, Polynomial] = field(repr=False, compare=False)
    _power: _Power = field(repr=False, compare=False)

    @property
    def reduced_power(self) -> Polynomial:
        h = self._power
        return h.to_polynomial() if isinstance(h, _DenseSlice) else h

    @property
    def lower_bound(self) -> Fraction:
        return Fraction(self.nu, self.prime**self.e)


def _poly_of(f: Union[GradedPolynomial, Polynomial]) -> Polynomial:
    return f.poly if isinstance(f, GradedPolynomial) else f


def _advance(f, h: _Power, e: int, max_steps: int) -> tuple[int, _Power]:
    """Multiply ``h`` by ``f`` modulo ``m^[e]`` until the product vanishes."""
    poly = _poly_of(f)
    d = 0
    while True:
        nxt = h.times_f() if isinstance(h, _DenseSlice) else mul_mod_frobenius(h, poly, e)
        if nxt.is_zero():
            return d, h
        d += 1
        h = nxt
        if d > max_steps:
            raise InvariantViolation(f"level {e}: more than {max_steps} further factors of f survive")


def _start(f, e: int) -> _Power:
    poly = _poly_of(f)
    if isinstance(f, GradedPolynomial) and _DenseSlice.fits(f, e):
        return _DenseSlice.one(f, e)
    return Polynomial.one(poly.prime, poly.nvars)


def nu_first(f: Union[GradedPolynomial, Polynomial]) -> NuRecord:
    poly = _poly_of(f)
    if poly.is_zero():
        raise PreconditionError("f must be nonzero")
    if poly.has_constant_term():
        raise PreconditionError("f has a constant term, so f is not in m")
    p = poly.prime
    d, h = _advance(f, _start(f, 1), 1, p - 1)
    return NuRecord(1, d, p, f, h)


def nu_next(prev: NuRecord) -> NuRecord:
    f = prev.source
    p = prev.prime
    e = prev.e + 1
    h = prev._power
    if isinstance(h, _DenseSlice):
        if _DenseSlice.fits(f, e):
            h = h.twist()
        else:
            h = frobenius_twist(h.to_polynomial())
    else:
        h = frobenius_twist(h)
        if isinstance(f, GradedPolynomial) and _DenseSlice.fits(f, e):
            h = _DenseSlice.from_polynomial(f, e, p * prev.nu * f.degree, h)
    d, h = _advance(f, h, e, p - 1)
    return NuRecord(e, p * prev.nu + d, p, f, h)


def nu_sequence(f: Union[GradedPolynomial, Polynomial], e_max: int) -> list[NuRecord]:
    if e_max < 1:
        raise PreconditionError(f"e_max must be >= 1, got {e_max}")
    recs = [nu_first(f)]
    while len(recs) < e_max:
        recs.append(nu_next(recs[-1]))
    return recs


def fpt_lower_bound(rec: NuRecord) -> Fraction:
    return rec.lower_bound


@dataclass(frozen=True)
class FptResult:
    """Outcome of :func:`fpt_exact`.

    ``kind`` is ``"exact"`` (``value`` set, ``certificates`` lists every
    provenance of the value) or ``"undetermined"`` (``survivors`` holds the
    candidates still consistent with every computed level).
    """

    kind: str
    prime: int
    lam: Fraction
    value: Fraction | None
    certificates: tuple[Provenance, ...]
    survivors: tuple[Candidate, ...]
    lower_bound: Fraction
    nus: tuple[int, ...]
    reason: str

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    @property
    def levels_computed(self) -> int:
        return len(self.nus)

    @property
    def pair(self) -> Pair | None:
        """Smallest ``(L, E)`` certificate, or None when the value is only ``lam`` or 1."""
        pairs = [c for c in self.certificates if isinstance(c, Pair)]
        return min(pairs) if pairs else None

    @property
    def L(self) -> int | float:
        pr = self.pair
        return pr.L if pr else INF


def fpt_exact(f: GradedPolynomial, e_cap: int = DEFAULT_E_CAP, check_isolated: bool = True) -> FptResult:
    """Determine ``fpt(f)`` exactly, or report the candidates left at ``e_cap``."""
    if not isinstance(f, GradedPolynomial):
        raise PreconditionError("fpt_exact needs a GradedPolynomial (use check_homogeneous)")
    if e_cap < 1:
        raise PreconditionError(f"e_cap must be >= 1, got {e_cap}")
    if check_isolated and not has_isolated_singularity(f):
        raise PreconditionError(f"{f} does not have an isolated singularity at the origin over F_{f.prime}")
    p, n, g = f.prime, f.nvars, f.grading
    lam = lambda_of(g, f.degree)

    if secondary_theorem_applies(n, g.weights, f.degree, p):
        return FptResult("exact", p, lam, Fraction(1), (SECONDARY,), (), Fraction(1), (), "sum of weights exceeds degree")

    a, b = lam.numerator, lam.denominator
    if b % p == 0:
        recs = nu_sequence(f, e_cap)
        nus = tuple(r.nu for r in recs)
        return FptResult(
            "undetermined", p, lam, None, (), (), recs[-1].lower_bound, nus, "p divides the denominator of lambda"
        )

    alive = digit_minimality_filter(main_candidates(n, a, b, p), p)
    nus: list[int] = []
    rec = None
    for e in range(1, e_cap + 1):
        rec = nu_first(f) if rec is None else nu_next(rec)
        nus.append(rec.nu)
        alive = [c for c in alive if scaled_truncation(c.value, p, e) == rec.nu]
        if not alive:
            raise InvariantViolation(f"no candidate matches nu_{e} = {rec.nu} for {f} at p = {p}")
        if len(alive) == 1:
            c = alive[0]
            if c.L == INF or e >= c.L:
                return FptResult("exact", p, lam, c.value, c.provenances, (c,), c.value, tuple(nus), "candidate elimination")
    return FptResult(
        "undetermined", p, lam, None, (), tuple(alive), rec.lower_bound, tuple(nus), f"e_cap = {e_cap} reached"
    )


def first_truncation_mismatch(f: Union[GradedPolynomial, Polynomial], fpt: Fraction, e_max: int) -> int | None:
    """First level ``e <= e_max`` with ``nu_e != p^e <fpt>_e``, or None."""
    fpt = Fraction(fpt)
    rec = None
    for e in range(1, e_max + 1):
        rec = nu_first(f) if rec is None else nu_next(rec)
        if rec.nu != scaled_truncation(fpt, rec.prime, e):
            return e
    return None


def verify_truncation_identity(f: Union[GradedPolynomial, Polynomial], fpt: Fraction, e_max: int) -> bool:
    return first_truncation_mismatch(f, fpt, e_max) is None


def membership_test(f: Polynomial, N: int, e: int) -> bool:
    """True iff ``f^N`` lies in ``m^[e]``."""
    if N < 0:
        raise PreconditionError(f"N must be non-negative, got {N}")
    result = Polynomial.one(f.prime, f.nvars)
    base = reduce_mod_frobenius(f, e)
    while N:
        if N & 1:
            result = mul_mod_frobenius(result, base, e)
            if result.is_zero():
                return True
        N >>= 1
        if N:
            base = mul_mod_frobenius(base, base, e)
            if base.is_zero():
                return True
    # reduce_mod_frobenius catches the N = 0 case: 1 is never in m^[e]
    return reduce_mod_frobenius(result, e).is_zero()


@dataclass(frozen=True)
class PerturbationReport:
    fpt: FptResult
    lower_ok: bool
    upper_ok: bool | None
    upper_level: int | None
    constancy_guaranteed: bool
    constancy_reasons: tuple[str, ...]
    min_perturbation_degree: int

    @property
    def strict_increase(self) -> bool:
        """``fpt(f + g) > fpt(f)`` is certified."""
        return self.upper_ok is False


def perturbation_report(f: GradedPolynomial, g: Polynomial, e_cap: int = DEFAULT_E_CAP) -> PerturbationReport:
    """Compare ``fpt(f + g)`` with ``fpt(f)`` for ``g`` of strictly higher degree."""
    grading = f.grading
    if g.nvars != f.nvars or g.prime != f.prime:
        raise PreconditionError("f and g must live in the same polynomial ring")
    degs = [weighted_degree(m, grading) for m, _ in g]
    if any(d <= f.degree for d in degs):
        raise PreconditionError(f"every term of g must have weighted degree > {f.degree}")
    res = fpt_exact(f, e_cap)
    if not res.is_exact:
        raise PreconditionError(f"fpt({f}) is not determined within e_cap = {e_cap}")
    v = res.value
    p, n = f.prime, f.nvars
    L, rest = p_free_part(v.denominator, p)
    L = max(L, 1)
    # the membership criterion needs p^L * fpt to be an integer
    upper_ok = membership_test(f.poly + g, int(v * p**L), L) if rest == 1 else None

    min_deg = n * f.degree - grading.total + 1
    lam_raw = Fraction(grading.total, f.degree)
    reasons = []
    if f.degree >= grading.total and (not degs or min(degs) >= min_deg):
        reasons.append("high-degree perturbation")
    if lam_raw <= 1:
        if v == lam_raw:
            reasons.append("fpt equals lambda")
        for k in range(1, L + 1):
            if v == truncation(lam_raw, p, k) and ((p**k - 1) * lam_raw).denominator == 1:
                reasons.append(f"fpt equals <lambda>_{k} with (p^{k} - 1) lambda integral")
                break
    return PerturbationReport(res, True, upper_ok, L if rest == 1 else None, bool(reasons), tuple(reasons), min_deg)
