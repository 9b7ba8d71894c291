import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from capitul.characters import character_table
from capitul.gaussian import GaussInt
from capitul.multiquad import Field, Subfield, charpoly, is_square, subfield_norm
from capitul.pell import fund_unit

from conftest import PAIRS

coeffs = st.fractions(min_value=-50, max_value=50, max_denominator=6)


def elements(F, sf_name="L"):
    sf = F.subfield(sf_name)
    return st.dictionaries(st.sampled_from(sorted(sf.mask)), coeffs, min_size=1, max_size=6).map(F.elem).filter(
        lambda x: not x.is_zero()
    )


def test_field_validation():
    with pytest.raises(ValueError):
        Field(5, 5)
    with pytest.raises(ValueError):
        Field(2, 5)
    with pytest.raises(ValueError):
        Field(5, 15)


def test_arithmetic_examples(F513):
    F = F513
    r2 = F.sqrt(2)
    assert (1 + r2) * (-1 + r2) == F.one
    assert (1 + F.i) ** 2 == 2 * F.i
    assert F.sqrt(5).inverse() == F.sqrt(5) / 5
    assert F.sqrt(130) * F.sqrt(130) == 130
    assert F.sqrt(-1) == F.i


def test_norm_examples(F513):
    F = F513
    eps2 = 1 + F.sqrt(2)
    assert subfield_norm(eps2, F.subfield("Q")) == F.one
    assert subfield_norm(F.sqrt(130), F.subfield("Qi"), F.subfield("k")) == -130


@given(st.data())
def test_relative_norm_lands_in_target(data):
    F = Field(*data.draw(st.sampled_from(PAIRS)))
    u = data.draw(elements(F, "K1"))
    assert subfield_norm(u, F.subfield("k"), F.subfield("K1")).lies_in(F.subfield("k"))


@given(st.data())
def test_field_axioms(data):
    F = Field(5, 13)
    x, y, z = (data.draw(elements(F)) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * x.inverse() == F.one
    assert (x / y) * y == x


@given(st.data())
def test_galois_is_ring_hom(data):
    F = Field(5, 17)
    x, y = data.draw(elements(F)), data.draw(elements(F))
    s = data.draw(st.integers(0, 15))
    assert (x * y).galois(s) == x.galois(s) * y.galois(s)
    assert (x + y).galois(s) == x.galois(s) + y.galois(s)


@pytest.mark.parametrize(
    "sf,x,root",
    [
        ("Q(sqrt2)", lambda F: 3 + 2 * F.sqrt(2), lambda F: 1 + F.sqrt(2)),
        ("Qi", lambda F: 2 * F.i, lambda F: 1 + F.i),
        ("K3", lambda F: F.gauss(GaussInt(1, 1)) * (1 + F.sqrt(2)), lambda F: (2 + F.gauss(GaussInt(1, 1)) * F.sqrt(2)) / 2),
    ],
)
def test_is_square_examples(F513, sf, x, root):
    assert is_square(x(F513), F513.subfield(sf)) == root(F513)


def test_two_eps2_not_square_in_L(F513):
    assert is_square(2 + 2 * F513.sqrt(2)) is None


def test_is_square_rejects_zero_and_outside(F513):
    with pytest.raises(ValueError):
        is_square(F513.zero)
    with pytest.raises(ValueError):
        is_square(F513.sqrt(5), F513.subfield("K3"))


def test_is_square_1000_random_roundtrips():
    rng = random.Random(1)
    fields = [Field(*p) for p in PAIRS]
    for n in range(1000):
        F = fields[n % len(fields)]
        terms = rng.randint(1, 6)
        r = F.elem({m: Fraction(rng.randint(-30, 30), rng.randint(1, 4)) for m in rng.sample(range(16), terms)})
        if r.is_zero():
            continue
        root = is_square(r * r)
        assert root in (r, -r)
        assert root.c[min(root.c)] > 0


@given(st.data())
def test_non_squares_detected(data):
    F = Field(5, 13)
    r = data.draw(elements(F))
    m = data.draw(st.sampled_from([F.sqrt(2), F.sqrt(5), F.sqrt(13), 3 * F.one, 1 + F.sqrt(2)]))
    # m is not a square in L, hence neither is m r^2
    assert is_square(m * r * r) is None


def test_charpoly_of_unit(F513):
    e = F513.unit(fund_unit(130))
    assert charpoly(e, F513.quadratic_subfield(130)) == [Fraction(-1), Fraction(-114), Fraction(1)]
    assert charpoly(F513.zeta8, Subfield.from_gens("Q(zeta8)", (0b0001, 0b0010))) == [1, 0, 0, 0, 1]
    assert charpoly(F513.zeta8, F513.subfield("K3")) == [1, 0, 0, 0, 2, 0, 0, 0, 1]


def test_zeta8(F513):
    z = F513.zeta8
    assert z**4 == -1 and z**2 == F513.i


@given(st.data())
def test_characters_are_multiplicative(data):
    F = Field(5, 13)
    sf = F.subfield("K1")
    tab = character_table(F, sf)
    x, y = data.draw(elements(F, "K1")), data.draw(elements(F, "K1"))
    (nx, kx), (ny, ky), (nxy, kxy) = tab.bits([x, y, x * y])
    known = kx & ky & kxy
    assert (nx ^ ny) & known == nxy & known
    (ns, _), = tab.bits([x * x])
    assert ns == 0
