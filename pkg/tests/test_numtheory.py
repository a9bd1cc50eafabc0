from math import isqrt

import pytest
from hypothesis import given, strategies as st

from oracles import (
    class_number_by_ideals,
    class_number_oracle,
    norm_by_exhaustive_search,
    norm_found_by_search,
    norm_oracle,
    smaller_unit_exists,
    unit_oracle,
)
from tatecoh.numtheory import (
    ExcludedField,
    NotSquarefree,
    class_number_real_quadratic,
    field_invariants,
    fundamental_unit,
    indicators,
    is_squarefree,
    norm_represents,
    prime_divisors,
    squarefree_part,
)

SQUAREFREE_300 = [D for D in range(2, 301) if is_squarefree(D)]


@pytest.mark.parametrize("D, expected", [(5, (1, 1)), (15, (2, 4)), (39, (2, 4)), (79, (3, 6)), (82, (4, 4))])
def test_class_numbers(D, expected):
    assert class_number_real_quadratic(D) == expected


def test_class_numbers_against_analytic_formula():
    for D in SQUAREFREE_300:
        assert class_number_real_quadratic(D)[0] == class_number_oracle(D), D


def test_class_numbers_against_ideal_enumeration():
    for D in SQUAREFREE_300:
        assert class_number_real_quadratic(D)[0] == class_number_by_ideals(D), D


@pytest.mark.parametrize("D, a, b, norm", [(5, 1, 1, -1), (2, 2, 2, -1), (3, 4, 2, 1), (13, 3, 1, -1)])
def test_fundamental_unit_examples(D, a, b, norm):
    u = fundamental_unit(D)
    assert (u.a, u.b, u.norm) == (a, b, norm)


def test_fundamental_units_against_sympy():
    for D in range(2, 1001):
        if is_squarefree(D):
            u = fundamental_unit(D)
            assert u.a ** 2 - D * u.b ** 2 == 4 * u.norm
            assert (u.a, u.b, u.norm) == unit_oracle(D), D


def test_fundamental_units_bounded_minimality():
    for D in range(2, 1001):
        if not is_squarefree(D):
            continue
        assert not smaller_unit_exists(D, min(fundamental_unit(D).b, 400)), D


@pytest.mark.parametrize("D, n, expected", [(2, 2, True), (15, 2, False), (5, -1, True), (3, -1, False)])
def test_norm_examples(D, n, expected):
    assert norm_represents(D, n) is expected


def test_norm_against_sympy_and_search():
    for D in range(2, 201):
        if not is_squarefree(D):
            continue
        for n in (-3, -2, -1, 1, 2, 3):
            got = norm_represents(D, n)
            assert got == norm_oracle(D, n), (D, n)
            assert got or not norm_found_by_search(D, n)
            assert got == norm_by_exhaustive_search(D, n), (D, n)


def test_unit_norm_matches_minus_one():
    for D in SQUAREFREE_300:
        assert (fundamental_unit(D).norm == -1) == norm_represents(D, -1)
        h, hn = class_number_real_quadratic(D)
        assert hn == (2 * h if fundamental_unit(D).norm == 1 else h)


def test_norm_range_guard():
    with pytest.raises(ValueError):
        norm_represents(5, 4)


@pytest.mark.parametrize("m, ell, Delta, delta, radicand", [
    (5, 2, -20, 2, 5), (15, 2, -15, 2, 15), (13, 3, -52, 2, 39), (6, 3, -24, 2, 2),
])
def test_field_invariants(m, ell, Delta, delta, radicand):
    inv = field_invariants(m, ell)
    assert (inv.Delta, inv.delta, inv.kplus_radicand) == (Delta, delta, radicand)
    assert inv.h_narrow in (inv.h_kplus, 2 * inv.h_kplus)


def test_field_errors():
    with pytest.raises(ExcludedField):
        field_invariants(3, 2)
    with pytest.raises(ExcludedField):
        field_invariants(1, 3)
    with pytest.raises(NotSquarefree):
        field_invariants(12, 2)


def test_indicators():
    i5 = indicators(5, 2)
    assert (i5.x, i5.y) == (1, 1)
    i2 = indicators(2, 2)
    assert (i2.z, i2.q, i2.w, i2.x) == (2, 2, 2, 1)
    i15 = indicators(15, 2)
    assert (i15.z, i15.w) == (1, 1)
    assert indicators(13, 3).x_prime is None
    assert indicators(6, 3).x_prime in (1, 2)


def test_z_implies_q():
    for m in range(2, 400):
        if is_squarefree(m) and m != 3:
            ind = indicators(m, 2)
            assert ind.z == 1 or ind.q == 2


@given(st.integers(min_value=2, max_value=10 ** 6))
def test_squarefree_part(n):
    s = squarefree_part(n)
    assert is_squarefree(s) and n % s == 0
    assert isqrt(n // s) ** 2 == n // s
    assert set(prime_divisors(s)) <= set(prime_divisors(n))
