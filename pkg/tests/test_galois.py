"""Finite fields and cyclotomic characters; sympy checks irreducibility."""
import random
from itertools import product

import pytest
import sympy

from fltkit.errors import DomainError, NotPrime
from fltkit.exactnum import is_compatible
from fltkit.galois import (
    CycloAut,
    FqElement,
    all_elements,
    cyclotomic_character,
    cyclotomic_tower,
    element,
    frobenius,
    frobenius_order,
    generator,
    irreducible_modulus,
    one,
    subfield_lattice,
    zero,
)

FIELDS = [(p, k) for p in (2, 3, 5) for k in (1, 2, 3, 4)]


@pytest.mark.parametrize("p, k", FIELDS)
def test_modulus_irreducible(p, k):
    mod = irreducible_modulus(p, k)
    t = sympy.symbols("t")
    poly = sympy.Poly(list(reversed(mod)), t, modulus=p)
    assert poly.degree() == k and poly.is_irreducible


def test_chosen_moduli():
    assert irreducible_modulus(2, 3) == (1, 1, 0, 1)  # t^3 + t + 1
    assert irreducible_modulus(3, 2) == (1, 0, 1)  # t^2 + 1


@pytest.mark.parametrize("p, k", [(2, 3), (3, 2)])
def test_frobenius_homomorphism_exhaustive(p, k):
    elems = list(all_elements(p, k))
    assert len(set(elems)) == p**k
    for x, y in product(elems, repeat=2):
        assert frobenius(x + y) == frobenius(x) + frobenius(y)
        assert frobenius(x * y) == frobenius(x) * frobenius(y)


def test_frobenius_homomorphism_random_f125():
    rng = random.Random(0)
    for _ in range(300):
        x = element(5, 3, [rng.randrange(5) for _ in range(3)])
        y = element(5, 3, [rng.randrange(5) for _ in range(3)])
        assert frobenius(x + y) == frobenius(x) + frobenius(y)
        assert frobenius(x * y) == frobenius(x) * frobenius(y)


@pytest.mark.parametrize("p, k", FIELDS)
def test_frobenius_order_and_subfields(p, k):
    assert frobenius_order(p, k) == k
    sizes = subfield_lattice(p, k)
    assert sizes == {d: p**d for d in sympy.divisors(k)}


def test_field_axioms_f9():
    elems = list(all_elements(3, 2))
    for x in elems:
        assert x + zero(3, 2) == x and x * one(3, 2) == x
        if not x.is_zero():
            assert x ** (9 - 1) == one(3, 2)
    t = generator(3, 2)
    assert t * t == element(3, 2, [2])  # t^2 = -1


def test_prime_field_generator():
    g = generator(5, 1)
    assert frobenius(g) == g


def test_mixed_fields_rejected():
    with pytest.raises(DomainError):
        one(2, 2) + one(2, 3)
    with pytest.raises(NotPrime):
        irreducible_modulus(4, 2)


# --- cyclotomic ---


def test_character_independent_of_root():
    sigma = CycloAut(3, 4, 2)
    values = {cyclotomic_character(sigma, u).value for u in range(1, 81) if u % 3}
    assert values == {2}


def test_tower_multiplicative_and_compatible():
    for a in range(1, 81):
        if a % 3 == 0:
            continue
        for b in (2, 5, 7, 80):
            ta, tb = cyclotomic_tower(3, 4, a), cyclotomic_tower(3, 4, b)
            tab = cyclotomic_tower(3, 4, a * b)
            assert tab == ta * tb
            assert is_compatible(3, tab.digits)
            assert (CycloAut(3, 4, a) @ CycloAut(3, 4, b)).a == a * b % 81
    t = cyclotomic_tower(3, 4, 2)
    assert t.digits == (2, 2, 2, 2)
    assert t.project(2) == cyclotomic_tower(3, 2, 2)


def test_cyclo_errors():
    with pytest.raises(DomainError):
        CycloAut(3, 2, 6)
    with pytest.raises(DomainError):
        CycloAut(3, 2, 2).project(3)
    with pytest.raises(DomainError):
        cyclotomic_character(CycloAut(3, 2, 2), 3)


def test_element_equality_is_structural():
    assert FqElement(2, 3, (1, 1, 1, 1)) == FqElement(2, 3, (0, 0, 1))
