from fractions import Fraction as F

import pytest

from shimura4.hypergeom import (
    HypergeomError,
    HypergeometricData,
    duality_holds,
    from_mu_triple,
    full_sum,
    hypergeometric_data,
    invariant_counts,
    invariant_table,
    line_invariant,
    mu_triple,
    stabilizer,
    unit_sum,
    units,
)


def test_mu_triples():
    assert mu_triple(7) == (F(13, 84), F(29, 84), F(43, 84))
    assert mu_triple(9) == (F(5, 36), F(13, 36), F(19, 36))
    with pytest.raises(HypergeomError):
        mu_triple(11)


def test_exponent_tuples():
    d7 = hypergeometric_data(7)
    assert d7.level == 84
    assert d7.exponents == (13, 29, 43, 83)
    d9 = hypergeometric_data(9)
    assert d9.level == 36
    assert d9.exponents == (5, 13, 19, 35)


def test_derived_exponent_is_level_minus_one():
    # the three exponents sum to N + 1 in both families
    for n in (7, 9):
        d = hypergeometric_data(n)
        assert sum(d.exponents[:3]) == d.level + 1
        assert d.exponents[3] == d.level - 1


def test_from_mu_triple_validation():
    with pytest.raises(HypergeomError):
        from_mu_triple((F(1, 2), F(1, 2), F(1)))
    with pytest.raises(HypergeomError):
        from_mu_triple((F(1, 3), F(1, 3), F(1, 3)))  # fourth exponent 0
    with pytest.raises(HypergeomError):
        HypergeometricData(12, (1, 2, 3, 4))  # sum not 0 mod 12


def test_line_invariant_values_84():
    d = hypergeometric_data(7)
    table = invariant_table(d)
    assert len(table) == 24
    assert {i for i, v in table.items() if v == 1} == \
        {1, 13, 29, 41, 43, 55, 71, 83}
    assert {i for i, v in table.items() if v == 2} == \
        {5, 11, 17, 19, 23, 25, 31, 37}
    assert {i for i, v in table.items() if v == 0} == \
        {47, 53, 59, 61, 65, 67, 73, 79}


def test_line_invariant_values_36():
    d = hypergeometric_data(9)
    table = invariant_table(d)
    assert len(table) == 12
    assert {i for i, v in table.items() if v == 1} == {1, 17, 19, 35}
    assert {i for i, v in table.items() if v == 2} == {5, 7, 11, 13}
    assert {i for i, v in table.items() if v == 0} == {23, 25, 29, 31}


def test_invariant_counts():
    assert invariant_counts(hypergeometric_data(7)) == {0: 8, 1: 8, 2: 8}
    assert invariant_counts(hypergeometric_data(9)) == {0: 4, 1: 4, 2: 4}


def test_duality():
    assert duality_holds(hypergeometric_data(7))
    assert duality_holds(hypergeometric_data(9))


def test_stabilizers():
    assert stabilizer(hypergeometric_data(7)) == (1, 41, 55, 71)
    assert stabilizer(hypergeometric_data(9)) == (1, 17)


def test_stabilizer_invariants_are_one():
    # the multiset stabilizer fixes d, and d_1 = 1 here
    for n in (7, 9):
        d = hypergeometric_data(n)
        for u in stabilizer(d):
            assert line_invariant(d, u) == 1


def test_unit_sums():
    assert unit_sum(hypergeometric_data(7)) == 24
    assert unit_sum(hypergeometric_data(9)) == 12


def test_full_sums():
    assert full_sum(hypergeometric_data(9)) == 35
    assert full_sum(hypergeometric_data(7)) == 83


def test_invariant_guards():
    d = hypergeometric_data(7)
    with pytest.raises(HypergeomError):
        line_invariant(d, 0)
    with pytest.raises(HypergeomError):
        line_invariant(d, 84)
    # a tuple with a non-unit exponent hits the undefined case
    bad = HypergeometricData(12, (6, 2, 3, 1))
    with pytest.raises(HypergeomError):
        line_invariant(bad, 2)


def test_units_helper():
    assert units(12) == (1, 5, 7, 11)
    assert len(units(84)) == 24
