import pytest
from hypothesis import given
from hypothesis import strategies as st

from capitul.arith import is_prime, squarefree_part
from capitul.capitulation import eligibility
from capitul.multiquad import Field, charpoly, is_square
from capitul.pell import fund_unit
from capitul.units import (
    InconsistentCase,
    genus_unit_subgroup,
    k_units,
    norm_index,
    sfu_classify,
    unit_index_K3,
    unit_index_quad_i,
    unit_index_square_test,
    verify_sfu,
)

from conftest import PAIRS

PRIMES = [p for p in range(5, 150, 4) if is_prime(p)]
ELIGIBLE = [(a, b) for a in PRIMES for b in PRIMES if a != b and eligibility(a, b).eligible]


def test_unit_index_examples():
    assert unit_index_quad_i(65).q == 1
    assert unit_index_square_test(10).q == unit_index_quad_i(10).q == 1
    assert unit_index_quad_i(34).q == 2  # 2 eps34 = (6 + sqrt34)^2
    assert unit_index_quad_i(2).q == 1
    with pytest.raises(ValueError):
        unit_index_quad_i(12)


def test_unit_index_rule_matches_square_test():
    for a in range(2, 1500):
        if squarefree_part(a) == a:
            assert unit_index_quad_i(a).q == unit_index_square_test(a).q, a


def test_unit_index_of_k_is_one():
    for p1, p2 in ELIGIBLE:
        assert unit_index_quad_i(2 * p1 * p2).q == 1


def test_sfu_shape_5_17_K1(F517):
    s = sfu_classify(F517, "K1")
    assert s.shape == "E_sqrt_i2"
    F = F517
    g = s.generators[1]
    assert g == (6 + F.sqrt(34)) * (1 + F.i) / 2
    assert g * g == F.i * F.unit(fund_unit(34))


def test_sfu_shape_5_13_K1_not_plain(F513):
    assert sfu_classify(F513, "K1").shape in ("E_sqrt123", "E_sqrt_i123")


@pytest.mark.parametrize("pair", ELIGIBLE[::7])
def test_sfu_dispatch(pair):
    F = Field(*pair)
    for t in ("K1", "K2", "K3"):
        s = sfu_classify(F, t)
        n2 = s.dictionary["eps2"]
        if t == "K3" and n2.norm == 1:
            assert s.shape == "E_plain"
        if t != "K3" and n2.norm == 1:
            assert s.shape == "E_sqrt_i2"
        if t != "K3" and n2.norm == -1:
            assert s.shape != "E_plain"
        # the generators square to their stated radicands
        for g, lab in zip(s.generators, s.labels):
            assert g.lies_in(F.subfield(t))
            assert abs(charpoly(g, F.subfield(t))[0]) == 1, lab


@pytest.mark.parametrize("pair", PAIRS)
def test_verify_sfu(pair):
    F = Field(*pair)
    for t in ("K1", "K2", "K3"):
        chk = verify_sfu(F, sfu_classify(F, t))
        assert chk.ok, (pair, t, chk)


def test_verify_sfu_catches_dependent_system(F513):
    s = sfu_classify(F513, "K3")
    import dataclasses

    bad = dataclasses.replace(s, generators=(s.generators[0], s.generators[0] ** 3, s.generators[2]))
    chk = verify_sfu(F513, bad)
    assert not chk.ok


def test_norm_index_values():
    for pair in ELIGIBLE[::5]:
        F = Field(*pair)
        s3 = sfu_classify(F, "K3")
        assert norm_index(F, sfu_classify(F, "K1")) == 2
        assert norm_index(F, sfu_classify(F, "K2")) == 2
        assert norm_index(F, s3) == (1 if unit_index_K3(s3).q == 2 else 2)


def test_k3_index_follows_shape():
    for pair in ELIGIBLE[::3]:
        F = Field(*pair)
        s3 = sfu_classify(F, "K3")
        assert unit_index_K3(s3).q == (2 if s3.shape == "E_sqrt123" else 1)
        if fund_unit(pair[0] * pair[1]).norm == 1:
            assert unit_index_K3(s3).q == 1


def test_k_units_requires_norm_minus_one():
    F = Field(5, 13)
    assert k_units(F).generators[0] == F.unit(fund_unit(130))
    # eps410 has norm +1 (and (5, 41) is ineligible)
    assert fund_unit(410).norm == 1
    with pytest.raises(InconsistentCase):
        k_units(Field(5, 41))


def test_genus_subgroup_contains_all(F513):
    systems = [sfu_classify(F513, t) for t in ("K1", "K2", "K3")]
    g = genus_unit_subgroup(F513, systems)
    assert g.tower == "L" and g.shape == "E_genus_subgroup"
    for s in systems:
        for u in s.generators:
            assert u in g.generators


@given(st.sampled_from(PAIRS), st.lists(st.integers(0, 1), min_size=4, max_size=4))
def test_products_of_sfu_are_units(pair, exps):
    F = Field(*pair)
    s = sfu_classify(F, "K2")
    u = s.element(tuple(exps))
    assert abs(charpoly(u, F.subfield("K2"))[0]) == 1
    # a unit times a nontrivial product of SFU classes is never a square
    if any(exps):
        assert is_square(u, F.subfield("K2")) is None
