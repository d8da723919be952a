import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fpure.errors import DimensionError, HomogeneityError, PreconditionError
from fpure.gradedpoly import (
    Grading,
    Polynomial,
    check_homogeneous,
    euler_membership_check,
    frobenius_twist,
    graded_dim,
    graded_monomials,
    has_isolated_singularity,
    jacobian_generators,
    mul_mod_frobenius,
    reduce_mod_frobenius,
    weighted_degree,
)
from fpure.polytext import parse_polynomial
from oracles import pure_powers_in_jacobian


def P(text, p, n=None):
    return parse_polynomial(text, p, n)


def G(text, p, weights):
    return check_homogeneous(P(text, p, len(weights)), Grading(weights))


@st.composite
def small_polys(draw, p=None, n=2, max_exp=4, max_terms=4):
    p = p or draw(st.sampled_from([2, 3, 5, 7]))
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, max_exp)] * n), st.integers(0, p - 1), max_size=max_terms
        )
    )
    return Polynomial(p, n, terms)


@st.composite
def homogeneous_polys(draw, n=2):
    p = draw(st.sampled_from([2, 3, 5, 7]))
    w = draw(st.tuples(*[st.integers(1, 3)] * n))
    degrees = [d for d in range(max(w), 9) if graded_monomials(Grading(w), d)]
    monos = graded_monomials(Grading(w), draw(st.sampled_from(degrees)))
    chosen = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=5, unique=True))
    coeffs = draw(st.lists(st.integers(1, p - 1), min_size=len(chosen), max_size=len(chosen)))
    return check_homogeneous(Polynomial(p, n, dict(zip(chosen, coeffs))), Grading(w))


class TestPolynomial:
    def test_coefficients_normalized(self):
        f = Polynomial(5, 2, {(1, 0): 7, (0, 1): 5, (0, 0): -1})
        assert dict(f.terms) == {(0, 0): 4, (1, 0): 2}

    def test_dimension_checks(self):
        with pytest.raises(DimensionError):
            Polynomial(3, 2, {(1,): 1})
        with pytest.raises(DimensionError):
            P("x", 3, 2) + P("x", 5, 2)
        with pytest.raises(DimensionError):
            P("x", 3, 2) * P("x", 3, 3)

    def test_bad_construction(self):
        with pytest.raises(PreconditionError):
            Polynomial(1, 1)
        with pytest.raises(PreconditionError):
            Polynomial(3, 0)
        with pytest.raises(PreconditionError):
            Polynomial(3, 1, {(-1,): 1})

    def test_arithmetic(self):
        x, y = Polynomial.variable(3, 2, 0), Polynomial.variable(3, 2, 1)
        assert (x + y) ** 3 == x**3 + y**3
        assert (x - x).is_zero()
        assert 2 * x == x.scale(2) == x * 2
        assert x ** 0 == Polynomial.one(3, 2)

    def test_hash_and_equality(self):
        assert hash(P("x + y", 7)) == hash(P("y + x", 7))
        assert P("x", 7) != P("x", 5)

    @given(small_polys(p=5), small_polys(p=5), small_polys(p=5))
    def test_ring_laws(self, a, b, c):
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == Polynomial.zero(5, 2)


def test_weighted_degree_examples():
    assert weighted_degree((0, 0), Grading((1, 2))) == 0
    assert weighted_degree((1, 7), Grading((1, 2))) == 15
    assert weighted_degree((3, 4, 5), Grading.standard(3)) == 12
    with pytest.raises(DimensionError):
        weighted_degree((1, 2), Grading.standard(3))


def test_grading_validation():
    with pytest.raises(PreconditionError):
        Grading((1, 0))
    with pytest.raises(PreconditionError):
        Grading(())


class TestCheckHomogeneous:
    def test_degrees(self):
        assert G("x^15 + x*y^7", 11, (1, 2)).degree == 15
        assert G("x^5 + x^3*y + x*y^2", 7, (1, 2)).degree == 5

    def test_inhomogeneous_names_monomials(self):
        with pytest.raises(HomogeneityError) as exc:
            G("x^2 + y^3", 7, (1, 1))
        assert "(2, 0)" in str(exc.value) and "(0, 3)" in str(exc.value)

    def test_constant_term_and_zero(self):
        with pytest.raises(PreconditionError, match="not in m"):
            check_homogeneous(Polynomial.one(3, 2), Grading.standard(2))
        with pytest.raises(PreconditionError):
            check_homogeneous(Polynomial.zero(3, 2), Grading.standard(2))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            check_homogeneous(P("x*y", 3), Grading.standard(3))


def test_jacobian_examples():
    assert jacobian_generators(G("x^3 + y^3", 7, (1, 1))) == [P("3*x^2", 7, 2), P("3*y^2", 7, 2)]
    assert jacobian_generators(P("x^5", 5)) == [Polynomial.zero(5, 1)]
    assert jacobian_generators(G("x^7 + y^7 + z^7", 2, (1, 1, 1))) == [P(v + "^6", 2, 3) for v in "xyz"]


def test_reduce_examples():
    assert reduce_mod_frobenius(P("x^7 + y^3", 2), 2) == P("y^3", 2, 2)
    assert reduce_mod_frobenius(P("x^14 + y^14 + z^14", 2), 3).is_zero()
    f = P("x^3*y + 2*y^2", 5)
    assert reduce_mod_frobenius(f, 1) == f
    with pytest.raises(PreconditionError):
        reduce_mod_frobenius(f, 0)


def test_mul_mod_examples():
    x = P("x", 2, 2)
    assert mul_mod_frobenius(x, x, 1).is_zero()
    s = P("x + y", 2)
    assert mul_mod_frobenius(s, s, 2) == P("x^2 + y^2", 2)
    assert mul_mod_frobenius(P("x^3", 5, 2), P("y^3", 5, 2), 1) == P("x^3*y^3", 5)


def test_twist_examples():
    assert frobenius_twist(P("x + y", 3)) == P("x^3 + y^3", 3)
    assert frobenius_twist(P("2*x", 5)) == P("2*x^5", 5)
    assert frobenius_twist(Polynomial.zero(5, 2)).is_zero()


@given(small_polys(), st.integers(1, 3))
def test_reduce_is_a_projection(f, e):
    r = reduce_mod_frobenius(f, e)
    assert reduce_mod_frobenius(r, e) == r
    assert all(max(m) < f.prime**e for m, _ in r)


@given(small_polys(p=3), small_polys(p=3), st.integers(1, 2))
def test_reduce_is_additive_and_multiplicative(a, b, e):
    red = lambda h: reduce_mod_frobenius(h, e)  # noqa: E731
    assert red(a + b) == red(red(a) + red(b))
    assert mul_mod_frobenius(a, b, e) == red(a * b)
    assert mul_mod_frobenius(red(a), red(b), e) == red(a * b)


@settings(max_examples=50)
@given(small_polys(max_exp=3, max_terms=3))
def test_twist_is_the_pth_power(f):
    exact = Polynomial.one(f.prime, f.nvars)
    for _ in range(f.prime):
        exact = exact * f
    assert frobenius_twist(f) == exact


def test_graded_dim_examples():
    assert graded_dim(Grading((1, 1)), 3) == 4
    assert graded_monomials(Grading((1, 2)), 4) == [(0, 2), (2, 1), (4, 0)]
    assert graded_dim(Grading((2, 5, 7)), 0) == 1
    assert graded_dim(Grading((2,)), 3) == 0


@given(st.tuples(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4)), st.integers(0, 20))
def test_graded_dim_counts_enumeration(w, d):
    g = Grading(w)
    monos = graded_monomials(g, d)
    assert graded_dim(g, d) == len(monos) == len(set(monos))
    assert all(weighted_degree(m, g) == d for m in monos)


@given(homogeneous_polys(), st.integers(1, 2))
def test_surviving_degree_bound(f, e):
    p = f.prime
    for k in range(1, 5):
        h = reduce_mod_frobenius(f.poly**k, e)
        if not h.is_zero():
            assert k * f.degree <= (p**e - 1) * f.grading.total


class TestIsolatedSingularity:
    def test_examples(self):
        assert has_isolated_singularity(G("x^3 + y^3", 7, (1, 1)))
        assert not has_isolated_singularity(G("x^2*y", 5, (1, 1)))
        assert has_isolated_singularity(G("x^7 + y^7 + z^7", 2, (1, 1, 1)))
        assert has_isolated_singularity(G("x^15 + x*y^7", 11, (1, 2)))
        assert not has_isolated_singularity(G("x^15 + x*y^7", 7, (1, 2)))

    def test_smooth_counts_as_isolated(self):
        assert has_isolated_singularity(G("x + y^2", 3, (2, 1)))

    def test_window_needs_linear_algebra(self):
        # leading terms alone never give a pure power of y here
        f = G("x^5 + x*y^4 + 7*x^2*y^3", 13, (1, 1))
        assert not has_isolated_singularity(f)
        assert has_isolated_singularity(G("x^5 + x*y^4 + 7*x^2*y^3", 11, (1, 1)))

    @settings(max_examples=150, deadline=None)
    @given(homogeneous_polys(n=2))
    def test_agrees_with_pure_power_oracle(self, f):
        assert has_isolated_singularity(f) == pure_powers_in_jacobian(f)

    @settings(max_examples=40, deadline=None)
    @given(homogeneous_polys(n=3))
    def test_agrees_with_pure_power_oracle_three_vars(self, f):
        assert has_isolated_singularity(f) == pure_powers_in_jacobian(f)


def test_euler_identity_examples():
    assert euler_membership_check(G("x^5 + x^3*y + x*y^2", 7, (1, 2)))
    assert euler_membership_check(G("x^15 + x*y^7", 11, (1, 2)))
    with pytest.raises(PreconditionError):
        euler_membership_check(G("x^15 + x*y^7", 5, (1, 2)))


@given(homogeneous_polys(n=3))
def test_euler_identity_property(f):
    if f.degree % f.prime:
        assert euler_membership_check(f)
