"""Number theory helpers, Z[rho] and truncated l-adic integers.

sympy is the oracle for primality, factorisation and Legendre symbols.
"""
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from fltkit.errors import DomainError, NotPrime
from fltkit.exactnum import (
    LAMBDA,
    ONE,
    RHO,
    UNITS,
    EisensteinInt,
    LAdicTrunc,
    ResidueInt,
    divisors,
    eis_lambda_valuation,
    eis_norm,
    euler_phi,
    exact_div,
    factorize,
    is_compatible,
    is_prime,
    is_unit,
    ladic_arith,
    legendre_symbol,
    mod_frac,
    parse_rational,
    primes_up_to,
    radical,
    valuation,
)


def test_is_prime_matches_sympy_small():
    assert [n for n in range(-5, 3000) if is_prime(n)] == list(sympy.primerange(0, 3000))


@given(st.integers(min_value=2, max_value=10**18))
def test_is_prime_matches_sympy_large(n):
    assert is_prime(n) == sympy.isprime(n)


def test_carmichael_and_strong_pseudoprimes_rejected():
    for n in (561, 1105, 1729, 2047, 3215031751, 3825123056546413051):
        assert not is_prime(n)


@given(st.integers(min_value=1, max_value=10**12))
def test_factorize_matches_sympy(n):
    assert factorize(n) == sympy.factorint(n)


def test_primes_up_to():
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_up_to(1) == []


def test_radical_squarefree_and_divides():
    for n in range(1, 10**4 + 1):
        r = radical(n)
        assert n % r == 0
        assert all(e == 1 for e in factorize(r).values())


def test_radical_examples():
    assert radical(72) == 6
    assert radical(1) == 1


@given(st.integers(min_value=1, max_value=10**6))
def test_divisors_and_phi(n):
    assert divisors(n) == sorted(sympy.divisors(n))
    assert euler_phi(n) == sympy.totient(n)


def test_valuation():
    assert valuation(72, 2) == 3
    assert valuation(72, 3) == 2
    assert valuation(-250, 5) == 3
    with pytest.raises(DomainError):
        valuation(0, 2)


def test_legendre_matches_sympy():
    for p in primes_up_to(101)[1:]:
        for a in range(-p, 2 * p):
            expected = 0 if a % p == 0 else sympy.legendre_symbol(a % p, p)
            assert legendre_symbol(a, p) == expected


def test_legendre_euler_criterion():
    for p in primes_up_to(101)[1:]:
        for a in range(1, p):
            chi = legendre_symbol(a, p)
            assert chi % p == pow(a, (p - 1) // 2, p)


@given(st.sampled_from(primes_up_to(200)[1:]), st.integers(), st.integers())
def test_legendre_multiplicative(p, a, b):
    if a * b % p:
        assert legendre_symbol(a * b, p) == legendre_symbol(a, p) * legendre_symbol(b, p)


def test_legendre_conventions():
    assert legendre_symbol(3, 2) == 0
    with pytest.raises(NotPrime):
        legendre_symbol(3, 9)


def test_mod_frac_and_parse():
    assert mod_frac(Fraction(1, 2), 7) == 4
    assert parse_rational(" -3/4 ") == Fraction(-3, 4)
    with pytest.raises(DomainError):
        mod_frac(Fraction(1, 7), 7)


def test_residue_int_canonical():
    x = ResidueInt(-3, 7)
    assert x.value == 4
    assert (x * x.inverse()).value == 1
    assert (x + 5).value == 2
    with pytest.raises(DomainError):
        ResidueInt(2, 4).inverse()
    with pytest.raises(DomainError):
        ResidueInt(1, 3) + ResidueInt(1, 5)


# --- Z[rho] ---

small = st.integers(min_value=-50, max_value=50)
eis = st.builds(EisensteinInt, small, small)


def test_rho_relations():
    assert RHO * RHO == EisensteinInt(-1, -1)
    assert RHO**3 == ONE
    assert eis_norm(LAMBDA) == 3
    assert eis_lambda_valuation(EisensteinInt(3, 0)) == 2
    assert len(UNITS) == 6 and all(is_unit(u) for u in UNITS)


@given(eis, eis)
def test_product_agrees_with_complex(x, y):
    assert abs((x * y).to_complex() - x.to_complex() * y.to_complex()) < 1e-9


@given(eis, eis)
def test_norm_multiplicative(x, y):
    assert eis_norm(x * y) == eis_norm(x) * eis_norm(y)


@given(eis)
def test_norm_nonnegative(x):
    n = eis_norm(x)
    assert n >= 0
    assert (n == 0) == x.is_zero()
    assert x * x.conj() == EisensteinInt(n, 0)


@given(eis, eis)
def test_lambda_valuation_additive(x, y):
    if not x.is_zero() and not y.is_zero():
        assert eis_lambda_valuation(x * y) == eis_lambda_valuation(x) + eis_lambda_valuation(y)


@given(eis, eis)
def test_exact_div_roundtrip(x, y):
    if not y.is_zero():
        assert exact_div(x * y, y) == x


def test_valuation_of_zero_rejected():
    with pytest.raises(DomainError):
        eis_lambda_valuation(EisensteinInt(0, 0))


# --- l-adic ---


@st.composite
def ladic_pair(draw):
    p = draw(st.sampled_from([2, 3, 5, 7]))
    depth = draw(st.integers(min_value=1, max_value=6))
    x = draw(st.integers(min_value=-(10**9), max_value=10**9))
    y = draw(st.integers(min_value=-(10**9), max_value=10**9))
    return LAdicTrunc.from_top(x, p, depth), LAdicTrunc.from_top(y, p, depth), x, y


@given(ladic_pair())
def test_ladic_ops_stay_compatible(pair):
    a, b, x, y = pair
    for op, ref in (("add", x + y), ("mul", x * y)):
        r = ladic_arith(a, b, op)
        assert is_compatible(r.prime, r.digits)
        assert r == LAdicTrunc.from_top(ref, a.prime, a.depth)


def test_ladic_rejects_incompatible():
    with pytest.raises(DomainError):
        LAdicTrunc(3, (1, 2))
    with pytest.raises(NotPrime):
        LAdicTrunc(4, (1,))


def test_ladic_projection_and_negation():
    x = LAdicTrunc.embed(-1, 5, 4)
    assert x.digits == (4, 24, 124, 624)
    assert x.project(2).digits == (4, 24)
    assert (x + (-x)) == LAdicTrunc.embed(0, 5, 4)
    assert x.is_unit()
