import pytest
from hypothesis import given
from hypothesis import strategies as st

from capitul.arith import is_prime
from capitul.gaussian import (
    I,
    ONE_PLUS_I,
    DecompositionError,
    GaussInt,
    gauss_gcd,
    pell_gauss_decompose,
    products,
    split_prime,
)
from capitul.pell import fund_unit

gints = st.builds(GaussInt, st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
nonzero = gints.filter(lambda z: not z.is_zero())


def test_basic_ops():
    assert ONE_PLUS_I * ONE_PLUS_I == GaussInt(0, 2)
    assert I * I == GaussInt(-1)
    assert GaussInt(3, 4).norm() == 25
    assert GaussInt(3, 4).conj() == GaussInt(3, -4)


@given(gints, nonzero)
def test_divmod_euclidean(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert 2 * r.norm() <= b.norm()


@given(gints, nonzero)
def test_exact_div(a, b):
    assert (a * b).exact_div(b) == a


@given(nonzero)
def test_sqrt_of_squares(z):
    r = (z * z).sqrt()
    assert r is not None and r * r == z * z


def test_sqrt_non_square():
    assert GaussInt(2).sqrt() is None
    assert GaussInt(0, 2).sqrt() in (ONE_PLUS_I, -ONE_PLUS_I)
    assert GaussInt(-1).sqrt() in (I, -I)


@given(nonzero, nonzero, nonzero)
def test_gcd_divides(a, b, c):
    g = gauss_gcd(a * c, b * c)
    assert (a * c).exact_div(g) is not None and (b * c).exact_div(g) is not None
    assert (g.exact_div(c)) is not None
    assert g.re > 0 and g.im >= 0


@pytest.mark.parametrize("p,pi", [(5, GaussInt(1, 2)), (13, GaussInt(3, 2)), (17, GaussInt(1, 4))])
def test_split_prime_examples(p, pi):
    g = split_prime(p)
    assert g.pi == pi and g.pi * g.pi_bar == GaussInt(p)


@pytest.mark.parametrize("p,want_y1", [(5, GaussInt(1)), (13, GaussInt(1))])
def test_decompose_examples(p, want_y1):
    s = pell_gauss_decompose(fund_unit(p), split_prime(p))
    assert s.y1 == want_y1 and s.variant == "plain"


def test_decompose_rejects_two():
    with pytest.raises(ValueError):
        pell_gauss_decompose(fund_unit(2), split_prime(5))


def test_decompose_all_primes_below_2000():
    variants = set()
    for p in range(5, 2000, 4):
        if is_prime(p):
            s = pell_gauss_decompose(fund_unit(p), split_prime(p))
            assert s.check()
            variants.add(s.variant)
    assert "plain" in variants and any("twisted" in v for v in variants)


def test_decompose_wrong_prime_fails():
    # tau of the right norm is required, and a mismatched prime is rejected up front
    with pytest.raises(ValueError):
        pell_gauss_decompose(fund_unit(13), split_prime(5))
    assert issubclass(DecompositionError, ArithmeticError)


def test_products_order():
    out = products([[GaussInt(1), I], [GaussInt(2), GaussInt(3)]])
    assert out == [GaussInt(2), GaussInt(3), GaussInt(0, 2), GaussInt(0, 3)]
