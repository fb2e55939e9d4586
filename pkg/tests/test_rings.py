"""Exact coefficient rings: GF(ell), GF(ell^d), and the integers."""

import pytest
from hypothesis import given, strategies as st

from frobcong.rings import GF, ZZ, ExtField, FFElement, poly_is_irreducible

PRIMES = [2, 3, 5, 7, 11, 13, 19, 23]

# x^3 - 2 is irreducible mod 19: the cubes there are {1, 7, 8, 11, 12, 18}
F19_3 = ExtField(19, (17, 0, 0, 1))


@given(st.sampled_from(PRIMES), st.integers(), st.integers(), st.integers())
def test_prime_field_ring_axioms(ell, a, b, c):
    F = GF(ell)
    a, b, c = F.coerce(a), F.coerce(b), F.coerce(c)
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == F.zero
    assert F.mul(a, F.one) == a


@given(st.sampled_from(PRIMES), st.integers())
def test_prime_field_inverse(ell, a):
    F = GF(ell)
    a = F.coerce(a)
    if F.is_zero(a):
        with pytest.raises(ZeroDivisionError):
            F.inv(a)
    else:
        assert F.mul(a, F.inv(a)) == F.one


def test_integer_ring_units():
    assert ZZ.inv(1) == 1
    assert ZZ.inv(-1) == -1
    with pytest.raises(ZeroDivisionError):
        ZZ.inv(2)
    assert ZZ.coerce(7) == 7
    assert ZZ.mul(6, -4) == -24


def test_gf_dispatch():
    assert GF(7).ell == 7
    ext = GF(19, (17, 0, 0, 1))
    assert isinstance(ext, ExtField)
    assert ext.order == 19 ** 3


def test_irreducibility_known_cases():
    # x^2 + 1: -1 is a square mod 5 but not mod 3
    assert poly_is_irreducible((1, 0, 1), 3)
    assert not poly_is_irreducible((1, 0, 1), 5)
    # squares mod 7 are {1, 2, 4}
    assert poly_is_irreducible((-3, 0, 1), 7)
    assert not poly_is_irreducible((-2, 0, 1), 7)
    # 2 is not a cube mod 19, 7 is (4^3 = 64 = 7)
    assert poly_is_irreducible((-2, 0, 0, 1), 19)
    assert not poly_is_irreducible((-7, 0, 0, 1), 19)
    # x^4 + 1 = (x^2 + 2)(x^2 + 3) mod 5
    assert not poly_is_irreducible((1, 0, 0, 0, 1), 5)
    assert poly_is_irreducible((3, 1), 11)


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        ExtField(5, (1, 0, 1))
    with pytest.raises(ValueError):
        ExtField(19, (1, 0, 0, 2))  # not monic


vec3 = st.tuples(*([st.integers(min_value=0, max_value=18)] * 3))


@given(vec3, vec3)
def test_frobenius_is_additive(u, v):
    x, y = F19_3.element(u), F19_3.element(v)
    assert (x + y) ** 19 == x ** 19 + y ** 19
    assert (x * y) ** 19 == x ** 19 * y ** 19


@given(vec3)
def test_frobenius_orbit_closes(u):
    x = F19_3.element(u)
    assert x ** (19 ** 3) == x


@given(vec3)
def test_extension_field_inverse(u):
    x = F19_3.element(u)
    if x.is_zero():
        with pytest.raises(ZeroDivisionError):
            x ** (-1)
    else:
        assert x * x ** (-1) == F19_3.one
        assert (F19_3.one / x) * x == F19_3.one


@given(vec3)
def test_multiplicative_order_divides_group_order(u):
    x = F19_3.element(u)
    if x.is_zero():
        return
    n = x.multiplicative_order()
    assert (19 ** 3 - 1) % n == 0
    assert x ** n == F19_3.one


def test_generator_order_in_f19_cubed():
    # x^3 = 2 and 2 has order 18 mod 19, with x^27 = 2^9 = -1
    assert F19_3.gen().multiplicative_order() == 54


@given(st.integers(min_value=0, max_value=7000))
def test_gen_power_matches_pow(e):
    assert F19_3.gen_power(e) == F19_3.gen() ** e


def test_coercion_between_presentations():
    assert F19_3.coerce(21) == F19_3.element((2,))
    prime_line = ExtField(19, (12, 1))  # GF(19) presented with d = 1
    assert F19_3.coerce(prime_line.coerce(5)) == F19_3.element((5,))
    with pytest.raises(TypeError):
        F19_3.coerce(ExtField(19, (2, 0, 1)).gen())


def test_element_reduces_long_vectors():
    # x^3 = 2 under the fixed modulus
    assert F19_3.element((0, 0, 0, 1)) == F19_3.element((2,))
    assert isinstance(F19_3.element((0, 0, 0, 1)), FFElement)
