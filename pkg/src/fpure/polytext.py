"""Text grammar for polynomials and rationals.

Polynomials are sums of terms such as ``3*x^2*y - z^4``.  Variables are
``x, y, z`` when there are at most three of them and ``x1, ..., xn``
otherwise; both spellings are accepted on input.  Rationals are written
``num/den``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .gradedpoly import Polynomial

_LETTERS = "xyz"
_TERM = re.compile(r"([+-])?([^+-]+)")
_FACTOR = re.compile(r"^(?:(\d+)|([a-z]\d*)(?:\^(\d+))?)$")


def variable_names(n: int) -> list[str]:
    if n <= len(_LETTERS):
        return list(_LETTERS[:n])
    return [f"x{i}" for i in range(1, n + 1)]


def _var_index(name: str) -> tuple[str, int]:
    if name in _LETTERS:
        return "letter", _LETTERS.index(name)
    if name[0] == "x" and name[1:].isdigit() and int(name[1:]) >= 1:
        return "indexed", int(name[1:]) - 1
    raise ParseError(f"unknown variable {name!r}")


def parse_polynomial(text: str, prime: int, nvars: int | None = None) -> Polynomial:
    """Parse ``text`` into a polynomial over F_prime.

    When ``nvars`` is omitted it is inferred from the highest variable used.
    """
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ParseError("empty polynomial")
    if re.search(r"[+-]{2}|[+-]$|\*\*|\*$|^\*", s):
        raise ParseError(f"malformed polynomial {text!r}")
    raw_terms: list[tuple[int, dict[int, int]]] = []
    styles = set()
    pos = 0
    for match in _TERM.finditer(s):
        if match.start() != pos:
            raise ParseError(f"malformed polynomial {text!r}")
        pos = match.end()
        sign = -1 if match.group(1) == "-" else 1
        coeff = sign
        exps: dict[int, int] = {}
        for factor in match.group(2).split("*"):
            fm = _FACTOR.match(factor)
            if fm is None:
                raise ParseError(f"cannot parse factor {factor!r} in {text!r}")
            if fm.group(1) is not None:
                coeff *= int(fm.group(1))
                continue
            style, idx = _var_index(fm.group(2))
            styles.add(style)
            exps[idx] = exps.get(idx, 0) + int(fm.group(3) or 1)
        raw_terms.append((coeff, exps))
    if pos != len(s):
        raise ParseError(f"malformed polynomial {text!r}")
    if len(styles) > 1:
        raise ParseError("mixing x,y,z with x1..xn is not allowed")
    used = max((i for _, e in raw_terms for i in e), default=-1) + 1
    n = nvars if nvars is not None else max(used, 1)
    if used > n:
        raise ParseError(f"polynomial uses {used} variables but nvars = {n}")
    terms = []
    for coeff, exps in raw_terms:
        mono = tuple(exps.get(i, 0) for i in range(n))
        terms.append((mono, coeff))
    return Polynomial(prime, n, terms)


def format_polynomial(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    names = variable_names(f.nvars)
    parts = []
    for mono, c in sorted(f.terms.items(), reverse=True):
        factors = []
        for name, a in zip(names, mono):
            if a == 1:
                factors.append(name)
            elif a > 1:
                factors.append(f"{name}^{a}")
        if c != 1 or not factors:
            factors.insert(0, str(c))
        parts.append("*".join(factors))
    return " + ".join(parts)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc
