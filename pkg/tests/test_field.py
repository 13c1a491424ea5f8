from fractions import Fraction

import pytest

from closurelab.field import FieldError, QQ, is_prime, prime_field


def test_rationals_arithmetic():
    assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert QQ.inv(Fraction(3, 4)) == Fraction(4, 3)
    assert QQ.from_fraction(2, 6) == Fraction(1, 3)


def test_rationals_zero_division():
    with pytest.raises(FieldError):
        QQ.inv(Fraction(0))


@pytest.mark.parametrize("p", [2, 3, 5, 7, 101])
def test_prime_field_inverses(p):
    fld = prime_field(p)
    for a in range(1, p):
        assert fld.mul(a, fld.inv(a)) == fld.one


def test_prime_field_rejects_composites():
    for n in (1, 4, 6, 9, 100):
        with pytest.raises(FieldError):
            prime_field(n)


def test_is_prime_small():
    primes = [n for n in range(60) if is_prime(n)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                      47, 53, 59]


def test_field_equality_and_hash():
    assert prime_field(5) == prime_field(5)
    assert prime_field(5) != prime_field(7)
    assert QQ == QQ
    assert hash(prime_field(5)) == hash(prime_field(5))
