from __future__ import annotations

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from padic_asai.errors import NotPrimeError
from padic_asai.exact_algebra import primes_up_to
from padic_asai.quadratic_field import (
    PrimeIdealLabel,
    QuadField,
    Slot,
    SplittingType,
    factor_rational_ideal,
    factorization_norm,
    kronecker,
    splitting_type,
)

K5 = QuadField(5)
FIELDS = [2, 3, 5, 6, 7, 10, 13, 21, 35]


@pytest.mark.parametrize(
    "ell, expected",
    [(5, SplittingType.RAMIFIED), (11, SplittingType.SPLIT), (2, SplittingType.INERT)],
)
def test_splitting_examples(ell, expected):
    assert splitting_type(K5, ell) is expected


def test_factor_examples():
    assert factor_rational_ideal(K5, 1) == {}
    assert factor_rational_ideal(K5, 22) == {
        PrimeIdealLabel(2, Slot.WHOLE): 1,
        PrimeIdealLabel(11, Slot.FIRST): 1,
        PrimeIdealLabel(11, Slot.SECOND): 1,
    }
    assert factor_rational_ideal(K5, 4) == {PrimeIdealLabel(2, Slot.WHOLE): 2}
    assert factor_rational_ideal(K5, 5) == {PrimeIdealLabel(5, Slot.RAMIFIED): 2}


def test_rejects_bad_input():
    with pytest.raises(NotPrimeError):
        splitting_type(K5, 9)
    with pytest.raises(ValueError):
        QuadField(12)
    with pytest.raises(ValueError):
        factor_rational_ideal(K5, 0)


@pytest.mark.parametrize("d", FIELDS)
def test_norm_of_m_is_m_squared(d):
    field = QuadField(d)
    for m in range(1, 10_001):
        assert factorization_norm(factor_rational_ideal(field, m)) == m * m


@pytest.mark.parametrize("d", FIELDS)
def test_splitting_matches_sympy(d):
    field = QuadField(d)
    disc = field.discriminant
    for ell in primes_up_to(300):
        kind = splitting_type(field, ell)
        if disc % ell == 0:
            assert kind is SplittingType.RAMIFIED
        elif ell == 2:
            assert (kind is SplittingType.SPLIT) == (disc % 8 == 1)
        else:
            # x^2 = d solvable mod an odd unramified prime exactly when it splits
            assert (kind is SplittingType.SPLIT) == sympy.ntheory.residue_ntheory.is_quad_residue(d, ell)


@pytest.mark.parametrize("d", FIELDS)
def test_splitting_depends_on_residue_mod_discriminant(d):
    field = QuadField(d)
    disc = field.discriminant
    primes = [q for q in primes_up_to(2000) if disc % q]
    by_class = {}
    for q in primes:
        by_class.setdefault(q % disc, set()).add(splitting_type(field, q))
    assert all(len(kinds) == 1 for kinds in by_class.values())


@given(st.integers(-500, 500), st.integers(1, 500))
def test_kronecker_matches_sympy_on_odd_moduli(a, n):
    if n % 2 == 0:
        n += 1
    assert kronecker(a, n) == sympy.jacobi_symbol(a % n, n)


def test_labels_and_conjugation():
    first = PrimeIdealLabel(11, Slot.FIRST)
    assert str(first) == "11:first"
    assert first.conjugate().conjugate() == first
    assert first.norm == 11 and PrimeIdealLabel(2, Slot.WHOLE).norm == 4
    assert sorted(K5.labels_over(11) + K5.labels_over(2)) == [
        PrimeIdealLabel(2, Slot.WHOLE),
        first,
        PrimeIdealLabel(11, Slot.SECOND),
    ]
