"""Sparse polynomials over F_p, weighted gradings and Frobenius-power reduction.

A polynomial in ``n`` variables is a map from exponent tuples to residues in
``{1, ..., p-1}``.  Terms are kept in lexicographic order of their exponent
tuples so that iteration, printing and serialization are reproducible.

The ideal ``m^[e] = (x_1^(p^e), ..., x_n^(p^e))`` is monomial, so reducing
modulo it simply drops every term having some exponent ``>= p^e``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import DimensionError, HomogeneityError, PreconditionError

Monomial = tuple[int, ...]


class Polynomial:
    """Immutable sparse polynomial over the prime field F_p."""

    __slots__ = ("prime", "nvars", "_terms", "_hash")

    def __init__(self, prime: int, nvars: int, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]] = ()):
        if prime < 2:
            raise PreconditionError(f"prime must be >= 2, got {prime}")
        if nvars < 1:
            raise PreconditionError(f"need at least one variable, got {nvars}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, int] = {}
        for mono, coeff in items:
            mono = tuple(int(a) for a in mono)
            if len(mono) != nvars:
                raise DimensionError(f"monomial {mono} has length {len(mono)}, expected {nvars}")
            if any(a < 0 for a in mono):
                raise PreconditionError(f"negative exponent in {mono}")
            acc[mono] = (acc.get(mono, 0) + coeff) % prime
        self.prime = prime
        self.nvars = nvars
        self._terms = {m: acc[m] for m in sorted(acc) if acc[m]}
        self._hash = None

    @classmethod
    def _raw(cls, prime: int, nvars: int, terms: dict[Monomial, int]) -> Polynomial:
        # trusted constructor: terms already reduced, nonzero and valid
        obj = cls.__new__(cls)
        obj.prime = prime
        obj.nvars = nvars
        obj._terms = {m: terms[m] for m in sorted(terms)}
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, prime: int, nvars: int) -> Polynomial:
        return cls._raw(prime, nvars, {})

    @classmethod
    def one(cls, prime: int, nvars: int) -> Polynomial:
        return cls._raw(prime, nvars, {(0,) * nvars: 1})

    @classmethod
    def monomial(cls, prime: int, exponents: Monomial, coeff: int = 1) -> Polynomial:
        return cls(prime, len(exponents), {tuple(exponents): coeff})

    @classmethod
    def variable(cls, prime: int, nvars: int, index: int) -> Polynomial:
        exps = [0] * nvars
        exps[index] = 1
        return cls._raw(prime, nvars, {tuple(exps): 1})

    @property
    def terms(self) -> Mapping[Monomial, int]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self._terms.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.prime == other.prime and self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.prime, self.nvars, tuple(self._terms.items())))
        return self._hash

    def _check_compatible(self, other: Polynomial) -> None:
        if self.prime != other.prime:
            raise DimensionError(f"prime mismatch: {self.prime} vs {other.prime}")
        if self.nvars != other.nvars:
            raise DimensionError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        p = self.prime
        acc = dict(self._terms)
        for m, c in other._terms.items():
            v = (acc.get(m, 0) + c) % p
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)
        return Polynomial._raw(p, self.nvars, acc)

    def __neg__(self) -> Polynomial:
        p = self.prime
        return Polynomial._raw(p, self.nvars, {m: p - c for m, c in self._terms.items()})

    def __sub__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def scale(self, c: int) -> Polynomial:
        p = self.prime
        c %= p
        if c == 0:
            return Polynomial.zero(p, self.nvars)
        return Polynomial._raw(p, self.nvars, {m: (v * c) % p for m, v in self._terms.items()})

    def __mul__(self, other: Polynomial | int) -> Polynomial:
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        return _multiply(self, other, None)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Polynomial:
        """Exact power by square-and-multiply (no ideal reduction)."""
        if exponent < 0:
            raise PreconditionError("negative exponent")
        result = Polynomial.one(self.prime, self.nvars)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def has_constant_term(self) -> bool:
        return (0,) * self.nvars in self._terms

    def __str__(self) -> str:
        from .polytext import format_polynomial

        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial(p={self.prime}, {self})"


def _multiply(a: Polynomial, b: Polynomial, bound: int | None) -> Polynomial:
    # bound: drop every product monomial with an exponent >= bound
    p = a.prime
    acc: dict[Monomial, int] = {}
    if len(a) < len(b):
        a, b = b, a
    bterms = list(b._terms.items())
    for ma, ca in a._terms.items():
        for mb, cb in bterms:
            m = tuple(x + y for x, y in zip(ma, mb))
            if bound is not None and max(m) >= bound:
                continue
            acc[m] = (acc.get(m, 0) + ca * cb) % p
    return Polynomial._raw(p, a.nvars, {m: c for m, c in acc.items() if c})


@dataclass(frozen=True)
class Grading:
    """Positive integer weights ``deg x_i``."""

    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if not self.weights:
            raise PreconditionError("grading needs at least one weight")
        if any(w < 1 for w in self.weights):
            raise PreconditionError(f"weights must be positive, got {self.weights}")

    @classmethod
    def standard(cls, n: int) -> Grading:
        return cls((1,) * n)

    @property
    def nvars(self) -> int:
        return len(self.weights)

    @property
    def total(self) -> int:
        return sum(self.weights)


@dataclass(frozen=True)
class GradedPolynomial:
    """A nonzero polynomial in ``m`` that is homogeneous of ``degree`` for ``grading``.

    Build instances through :func:`check_homogeneous`.
    """

    poly: Polynomial
    grading: Grading
    degree: int

    @property
    def prime(self) -> int:
        return self.poly.prime

    @property
    def nvars(self) -> int:
        return self.poly.nvars

    def __str__(self) -> str:
        return str(self.poly)


def weighted_degree(m: Monomial, g: Grading) -> int:
    if len(m) != len(g.weights):
        raise DimensionError(f"monomial of length {len(m)} against {len(g.weights)} weights")
    return sum(a * w for a, w in zip(m, g.weights))


def check_homogeneous(f: Polynomial, g: Grading) -> GradedPolynomial:
    """Validate that ``f`` is a nonzero homogeneous element of ``m``."""
    if f.is_zero():
        raise PreconditionError("the zero polynomial has no degree")
    if f.nvars != g.nvars:
        raise DimensionError(f"polynomial in {f.nvars} variables against {g.nvars} weights")
    if f.has_constant_term():
        raise PreconditionError("f has a constant term, so f is not in m")
    first = None
    for mono, _ in f:
        d = weighted_degree(mono, g)
        if first is None:
            first = (mono, d)
        elif d != first[1]:
            raise HomogeneityError(
                f"monomials {first[0]} (degree {first[1]}) and {mono} (degree {d}) "
                f"have different weighted degrees for weights {g.weights}"
            )
    return GradedPolynomial(f, g, first[1])


def partial_derivative(f: Polynomial, i: int) -> Polynomial:
    p = f.prime
    acc = {}
    for mono, c in f:
        a = mono[i]
        if a % p == 0:
            continue
        m = list(mono)
        m[i] = a - 1
        acc[tuple(m)] = (c * a) % p
    return Polynomial._raw(p, f.nvars, acc)


def jacobian_generators(f: GradedPolynomial | Polynomial) -> list[Polynomial]:
    poly = f.poly if isinstance(f, GradedPolynomial) else f
    return [partial_derivative(poly, i) for i in range(poly.nvars)]


def reduce_mod_frobenius(f: Polynomial, e: int) -> Polynomial:
    """Canonical representative of ``f`` in ``R / m^[e]``."""
    if e < 1:
        raise PreconditionError(f"Frobenius exponent must be >= 1, got {e}")
    q = f.prime**e
    return Polynomial._raw(f.prime, f.nvars, {m: c for m, c in f if max(m) < q})


def mul_mod_frobenius(a: Polynomial, b: Polynomial, e: int) -> Polynomial:
    if e < 1:
        raise PreconditionError(f"Frobenius exponent must be >= 1, got {e}")
    a._check_compatible(b)
    return _multiply(a, b, a.prime**e)


def frobenius_twist(f: Polynomial) -> Polynomial:
    """``f^p``: in characteristic p this scales exponents and fixes coefficients."""
    p = f.prime
    return Polynomial._raw(p, f.nvars, {tuple(p * a for a in m): c for m, c in f})


def graded_monomials(g: Grading, d: int) -> list[Monomial]:
    """All monomials of weighted degree exactly ``d``, in lexicographic order."""
    if d < 0:
        return []
    w = g.weights
    n = len(w)
    out: list[Monomial] = []

    def rec(i: int, remaining: int, prefix: list[int]) -> None:
        if i == n - 1:
            if remaining % w[i] == 0:
                out.append(tuple(prefix + [remaining // w[i]]))
            return
        for a in range(remaining // w[i] + 1):
            rec(i + 1, remaining - a * w[i], prefix + [a])

    rec(0, d, [])
    out.sort()
    return out


def graded_dim(g: Grading, d: int) -> int:
    if d < 0:
        return 0
    # coefficient of t^d in prod 1/(1 - t^w)
    counts = [1] + [0] * d
    for w in g.weights:
        for k in range(w, d + 1):
            counts[k] += counts[k - w]
    return counts[d]


def _spans_graded_piece(gens: list[Polynomial], gen_degrees: list[int], g: Grading, d: int) -> bool:
    target = graded_monomials(g, d)
    if not target:
        return True
    p = gens[0].prime
    column = {m: i for i, m in enumerate(target)}
    pivots: dict[int, dict[int, int]] = {}
    for gen, gdeg in zip(gens, gen_degrees):
        for mu in graded_monomials(g, d - gdeg):
            row: dict[int, int] = {}
            for mono, c in gen:
                row[column[tuple(x + y for x, y in zip(mu, mono))]] = c
            while row:
                lead = min(row)
                piv = pivots.get(lead)
                if piv is None:
                    inv = pow(row[lead], -1, p)
                    pivots[lead] = {k: (v * inv) % p for k, v in row.items()}
                    break
                factor = row[lead]
                for k, v in piv.items():
                    nv = (row.get(k, 0) - factor * v) % p
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
            if len(pivots) == len(target):
                return True
    return len(pivots) == len(target)


def _leading_terms_artinian(gens: list[Polynomial]) -> bool:
    # in(J) contains the leading terms; if those already include a pure
    # power of every variable then R/J is finite, whatever the order chosen
    n = gens[0].nvars
    orders = itertools.permutations(range(n)) if n <= 6 else [tuple(range(n)), tuple(reversed(range(n)))]
    for order in orders:
        covered = set()
        for h in gens:
            lead = max(h.terms, key=lambda m: tuple(m[i] for i in order))
            support = [i for i, a in enumerate(lead) if a]
            if len(support) == 1:
                covered.add(support[0])
        if len(covered) == n:
            return True
    return False


def has_isolated_singularity(f: GradedPolynomial) -> bool:
    """True iff the radical of the Jacobian ideal contains ``m``.

    The partials are tested to span every graded piece in a window of
    ``max(w)`` consecutive degrees starting just above
    ``n * deg f - 2 * sum(w)``; stripping variables then gives all higher
    degrees.  A smooth ``f`` (unit Jacobian ideal) also returns True.
    """
    gens = jacobian_generators(f)
    if any(w == f.degree and not h.is_zero() for w, h in zip(f.grading.weights, gens)):
        return True
    # n - 1 generators of positive degree cannot be m-primary
    if any(h.is_zero() for h in gens):
        return False
    if _leading_terms_artinian(gens):
        return True
    g = f.grading
    n = f.nvars
    top = n * f.degree - 2 * g.total
    start = max(1, top + 1)
    gen_degrees = [f.degree - w for w in g.weights]
    return all(
        _spans_graded_piece(gens, gen_degrees, g, d) for d in range(start, start + max(g.weights))
    )


def euler_membership_check(f: GradedPolynomial) -> bool:
    """Check ``deg f * f == sum w_i x_i d_i f`` over F_p."""
    p = f.prime
    if f.degree % p == 0:
        raise PreconditionError(f"p = {p} divides deg f = {f.degree}")
    n = f.nvars
    lhs = f.poly.scale(f.degree)
    rhs = Polynomial.zero(p, n)
    for i, (w, d) in enumerate(zip(f.grading.weights, jacobian_generators(f))):
        rhs = rhs + (Polynomial.variable(p, n, i) * d).scale(w)
    return lhs == rhs

