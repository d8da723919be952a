import csv
import io
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fpure.basep import lpr, mult_order
from fpure.candidates import Candidate, digit_minimality_filter
from fpure.errors import PreconditionError
from fpure.fptengine import fpt_exact
from fpure.gradedpoly import Grading, check_homogeneous, has_isolated_singularity
from fpure.lct import (
    DiffBounds,
    bad_density_lower_bound,
    density_csv,
    density_rows,
    diagonal_gap,
    difference_bounds,
    empirical_density,
    is_certified_bad_prime,
    is_prime,
    lct_of,
    primes_up_to,
)
from fpure.polytext import parse_polynomial, variable_names
from fpure.reference import TABLE_FAST, QUINTIC_POLYS
from corpus import corpus_results, random_corpus


def G(text, p, weights):
    return check_homogeneous(parse_polynomial(text, p, len(weights)), Grading(weights))


def test_lct_examples():
    assert lct_of(Grading((1, 1, 1)), 3) == 1
    assert lct_of(Grading((1, 2)), 15) == Fraction(1, 5)
    assert lct_of(Grading((1,) * 6), 7) == Fraction(6, 7)


class TestDifferenceBounds:
    def test_examples(self):
        for d, p in ((4, 7), (5, 11)):
            db = difference_bounds(d, 1, 1, p)
            assert (db.lower, db.upper) == (Fraction(1, p), Fraction(d - 2, p))
        p = 13
        db = difference_bounds(2, 2, 5, p)
        assert (db.lower, db.upper) == (Fraction(1, 5 * p**4), Fraction(4, 5 * p))

    def test_errors(self):
        with pytest.raises(PreconditionError):
            difference_bounds(2, 2, 5, 5)
        with pytest.raises(PreconditionError):
            difference_bounds(2, 2, 4, 3)
        with pytest.raises(PreconditionError):
            DiffBounds(Fraction(1, 2), Fraction(1, 3))

    @pytest.mark.parametrize("p", sorted(TABLE_FAST))
    def test_table_rows(self, p):
        res = fpt_exact(G("x^15 + x*y^7", p, (1, 2)))
        if res.value != res.lam:
            assert difference_bounds(2, 1, 5, p).contains(res.lam - res.value)

    @pytest.mark.parametrize("p", [7, 11, 17, 19, 23, 29])
    def test_quintic_rows(self, p):
        for text in QUINTIC_POLYS:
            f = G(text, p, (1, 1))
            if not has_isolated_singularity(f):
                continue
            res = fpt_exact(f, check_isolated=False)
            if res.value != res.lam:
                assert difference_bounds(2, 2, 5, p).contains(res.lam - res.value)

    @pytest.mark.parametrize("idx", range(24))
    def test_corpus(self, idx):
        f, res = random_corpus()[idx], corpus_results()[idx]
        lam, p, n = res.lam, f.prime, f.nvars
        # the bounds are stated for p > (n - 2) b and p not dividing b
        if res.value != lam and lam.denominator % p and p > (n - 2) * lam.denominator:
            assert difference_bounds(n, lam.numerator, lam.denominator, p).contains(lam - res.value)

    @pytest.mark.parametrize("d", [3, 4, 5])
    def test_diagonal_identity_and_sharpness(self, d):
        text = " + ".join(f"{v}^{d}" for v in variable_names(d))
        for p in (q for q in primes_up_to(31) if q > d):
            res = fpt_exact(G(text, p, (1,) * d))
            gap = res.lam - res.value
            assert gap == diagonal_gap(d, p) == Fraction(lpr(p, d) - 1, p)
            db = difference_bounds(d, 1, 1, p)
            if gap:
                assert db.contains(gap)
            if p % d == 2 % d:
                assert gap == db.lower
            if p % d == d - 1 and d % 2:
                assert gap == db.upper

    def test_diagonal_needs_large_p(self):
        with pytest.raises(PreconditionError):
            diagonal_gap(5, 5)


class TestBadPrimes:
    def test_examples(self):
        assert is_certified_bad_prime(2, 5, 13)
        assert not is_certified_bad_prime(2, 5, 11)
        with pytest.raises(PreconditionError):
            is_certified_bad_prime(1, 5, 13)
        with pytest.raises(PreconditionError):
            is_certified_bad_prime(2, 5, 5)

    @given(st.integers(3, 60), st.integers(2, 59), st.sampled_from(primes_up_to(200)))
    def test_certified_lambda_fails_the_digit_filter(self, b, a, p):
        from math import gcd

        if a >= b or gcd(a, b) != 1 or b % p == 0:
            return
        lam = Fraction(a, b)
        brute = any(pow(p, e, b) * a % b == 1 for e in range(1, mult_order(p, b) + 1))
        assert is_certified_bad_prime(a, b, p) == brute
        if brute:
            assert not digit_minimality_filter([Candidate(lam, ("lambda",))], p)

    @pytest.mark.parametrize("p", [7, 11, 13, 17, 19, 23, 29])
    def test_certified_primes_never_give_lambda(self, p):
        for text in QUINTIC_POLYS:
            f = G(text, p, (1, 1))
            if has_isolated_singularity(f) and is_certified_bad_prime(2, 5, p):
                assert fpt_exact(f, check_isolated=False).value != Fraction(2, 5)

    @pytest.mark.parametrize("idx", range(24))
    def test_corpus_soundness(self, idx):
        f, res = random_corpus()[idx], corpus_results()[idx]
        a, b = res.lam.numerator, res.lam.denominator
        if a >= 2 and b % f.prime and is_certified_bad_prime(a, b, f.prime):
            assert res.value != res.lam

    def test_density_bounds(self):
        assert bad_density_lower_bound(2, 5) == Fraction(1, 4)
        assert bad_density_lower_bound(2, 3) == Fraction(1, 2)
        assert bad_density_lower_bound(6, 7, almost_cy_degree=7) == Fraction(5, 6)
        with pytest.raises(PreconditionError):
            bad_density_lower_bound(1, 5)
        with pytest.raises(PreconditionError):
            bad_density_lower_bound(2, 5, almost_cy_degree=7)


class TestDensity:
    def test_sieve(self):
        assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
        assert primes_up_to(1) == []
        assert len(primes_up_to(10**4)) == 1229
        assert all(is_prime(q) for q in primes_up_to(500))
        assert sum(map(is_prime, range(501))) == len(primes_up_to(500))

    def test_always_true(self):
        assert empirical_density(lambda q: True, 100) == 1

    @pytest.mark.parametrize("b", [3, 5, 7])
    def test_residue_classes(self, b):
        from math import gcd

        for c in range(1, b):
            if gcd(c, b) == 1:
                dens = empirical_density(lambda q, c=c: q % b == c, 10**4)
                assert abs(dens - Fraction(1, b - 1)) <= Fraction(1, 20)

    def test_bad_prime_density(self):
        dens = empirical_density(lambda q: q != 5 and is_certified_bad_prime(2, 5, q), 10**4)
        assert dens >= Fraction(1, 4) - Fraction(1, 20)

    def test_cap_errors(self):
        with pytest.raises(PreconditionError):
            empirical_density(lambda q: True, 1)
        with pytest.raises(PreconditionError):
            primes_up_to(10**8)

    def test_csv(self):
        rows = density_rows(2, 5, [5, 11, 13], lambda q: None if q == 5 else Fraction(1, 5))
        text = density_csv(rows)
        parsed = list(csv.reader(io.StringIO(text)))
        assert parsed[0] == ["prime", "residue_class", "certified_bad", "fpt", "lct", "difference"]
        assert parsed[1] == ["5", "0", "", "", "2/5", ""]
        assert parsed[2] == ["11", "1", "false", "1/5", "2/5", "1/5"]
        assert parsed[3][2] == "true"
