from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kummer.fields import PrimeField, RationalField, is_probable_prime, legendre, sqrt_mod_p

PRIMES = [3, 5, 7, 11, 13, 17, 19, 10007]


@given(st.sampled_from(PRIMES), st.integers(min_value=0, max_value=10**6))
def test_sqrt_roundtrip(p, x):
    r = sqrt_mod_p(x, p)
    if legendre(x, p) == -1:
        assert r is None
    else:
        assert r is not None and r * r % p == x % p
        assert r <= p - r or r == 0  # smaller root


@given(st.sampled_from(PRIMES), st.integers(1, 10**6), st.integers(1, 10**6))
def test_fp_field_axioms(p, a, b):
    F = PrimeField(p)
    x, y = F(a), F(b)
    if x:
        assert x * x.inverse() == F.one
    assert (x + y) * (x - y) == x * x - y * y
    assert int(F(a) ** (p - 1)) in (0, 1)


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError):
        PrimeField(21)
    assert is_probable_prime(10007) and not is_probable_prime(10001)


def test_smallest_nonresidue_and_zeta8():
    assert PrimeField(19).smallest_nonresidue() == 2
    F = PrimeField(17)  # 8 | p - 1
    z = F.zeta8(1)
    assert z**8 == F.one and z**4 != F.one


def test_rational_sqrt():
    Q = RationalField()
    assert Q.sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert Q.sqrt(Fraction(2)) is None
