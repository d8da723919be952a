"""Exact base-p digit calculus for rationals in (0, 1].

Every expansion here is the *non-terminating* one, so ``1 = .(p-1)(p-1)...``
and ``1/4 = .0011...`` in base 2.  Digits and truncations come from closed
formulas in terms of least positive residues; nothing is ever computed in
floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .errors import PreconditionError

RationalLike = Union[Fraction, int, tuple[int, int]]

#: Truncation depth meaning "keep every digit": ``truncation(x, p, INF) == x``.
INF = math.inf


def _as_pair(lam: RationalLike) -> tuple[int, int]:
    # (a, b) pairs are kept as given, possibly not in lowest terms
    if isinstance(lam, tuple):
        a, b = lam
        if b <= 0:
            raise PreconditionError(f"denominator must be positive, got {b}")
        return int(a), int(b)
    q = Fraction(lam)
    return q.numerator, q.denominator


def _check_unit_interval(a: int, b: int) -> None:
    if not 0 < a <= b:
        raise PreconditionError(f"{a}/{b} is not in (0, 1]")


def lpr(m: int, b: int) -> int:
    """Least positive residue of ``m`` modulo ``b``; lies in ``[1, b]``."""
    if b <= 0:
        raise PreconditionError(f"modulus must be positive, got {b}")
    r = m % b
    return r if r else b


def mult_order(p: int, b: int) -> int:
    """Least ``k >= 1`` with ``p^k = 1 (mod b)``."""
    if b <= 0:
        raise PreconditionError(f"modulus must be positive, got {b}")
    if math.gcd(p, b) != 1:
        raise PreconditionError(f"order of {p} mod {b} is undefined: not coprime")
    if b == 1:
        return 1
    k, x = 1, p % b
    while x != 1:
        x = (x * p) % b
        k += 1
    return k


def digit(lam: RationalLike, p: int, e: int) -> int:
    """The ``e``-th digit of the non-terminating base-``p`` expansion."""
    if e < 1:
        raise PreconditionError(f"digit index must be >= 1, got {e}")
    a, b = _as_pair(lam)
    _check_unit_interval(a, b)
    return (lpr(a * p ** (e - 1), b) * p - lpr(a * p**e, b)) // b


def truncation(lam: RationalLike, p: int, e: int | float) -> Fraction:
    """``<lam>_e``: the first ``e`` digits of ``lam`` read as a rational."""
    a, b = _as_pair(lam)
    _check_unit_interval(a, b)
    if e == INF:
        return Fraction(a, b)
    if e < 0:
        raise PreconditionError(f"truncation depth must be >= 0, got {e}")
    if e == 0:
        return Fraction(0)
    pe = p**e
    return Fraction(a, b) - Fraction(lpr(a * pe, b), b * pe)


def scaled_truncation(lam: RationalLike, p: int, e: int) -> int:
    """The integer ``p^e * <lam>_e``."""
    a, b = _as_pair(lam)
    _check_unit_interval(a, b)
    pe = p**e
    return (a * pe - lpr(a * pe, b)) // b


def tail(lam: RationalLike, p: int, s: int) -> Fraction:
    """Value of the digit string starting at position ``s``: ``. d_s d_(s+1) ...``."""
    if s < 1:
        raise PreconditionError(f"tail position must be >= 1, got {s}")
    a, b = _as_pair(lam)
    _check_unit_interval(a, b)
    return Fraction(lpr(a * p ** (s - 1), b), b)


def digit_stream_oracle(lam: RationalLike, p: int, count: int) -> list[int]:
    """First ``count`` digits by schoolbook long division.

    Independent of :func:`digit`; when the division terminates the last
    nonzero digit is lowered by one and followed by ``p - 1`` forever.
    """
    a, b = _as_pair(lam)
    _check_unit_interval(a, b)
    digits: list[int] = []
    r = a
    while len(digits) < count:
        d, r = divmod(r * p, b)
        if r == 0:
            digits.append(d - 1)
            digits.extend([p - 1] * (count - len(digits)))
            break
        digits.append(d)
    return digits


def delta_sequence(alpha: RationalLike, beta: RationalLike, p: int, e_max: int) -> tuple[list[int], int | None]:
    """``Delta_e = p^e <beta>_e - p^e <alpha>_e`` for ``e = 1..e_max``.

    Also returns the first index with ``Delta_e >= 1`` (``None`` if no such
    index within range).
    """
    a1, b1 = _as_pair(alpha)
    a2, b2 = _as_pair(beta)
    _check_unit_interval(a1, b1)
    _check_unit_interval(a2, b2)
    if Fraction(a1, b1) > Fraction(a2, b2):
        raise PreconditionError("delta_sequence needs alpha <= beta")
    deltas = [scaled_truncation((a2, b2), p, e) - scaled_truncation((a1, b1), p, e) for e in range(1, e_max + 1)]
    first = next((i + 1 for i, d in enumerate(deltas) if d >= 1), None)
    return deltas, first


def p_free_part(b: int, p: int) -> tuple[int, int]:
    """Split ``b = p^k * c`` with ``p`` not dividing ``c``; returns ``(k, c)``."""
    k = 0
    while b % p == 0:
        b //= p
        k += 1
    return k, b


def format_digits(digits: list[int]) -> str:
    """Render digits as ``. d1 : d2 : ...``."""
    return ". " + " : ".join(str(d) for d in digits)


def totient(n: int) -> int:
    if n < 1:
        raise PreconditionError(f"totient needs n >= 1, got {n}")
    result, m, q = n, n, 2
    while q * q <= m:
        if m % q == 0:
            while m % q == 0:
                m //= q
            result -= result // q
        q += 1
    if m > 1:
        result -= result // m
    return result
