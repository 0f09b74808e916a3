"""Finite fields F_{p^k}, their Frobenius, and cyclotomic characters.

Roots of unity never appear as complex numbers here: a p^k-th root of unity
zeta^e is stored as its exponent e mod p^k, and an automorphism
zeta -> zeta^a acts on exponents by multiplication.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd

from .errors import DomainError, NotPrime
from .exactnum import LAdicTrunc, ResidueInt, divisors, is_prime

MAX_ENUM_DEGREE = 8
MAX_ENUM_SIZE = 5**6


def _polymod(num: list[int], mod: tuple[int, ...], p: int) -> list[int]:
    """Remainder of num by a monic polynomial; coefficient lists low -> high."""
    num = [c % p for c in num]
    k = len(mod) - 1
    for i in range(len(num) - 1, k - 1, -1):
        c = num[i]
        if c:
            for j in range(k + 1):
                num[i - k + j] = (num[i - k + j] - c * mod[j]) % p
    return (num + [0] * k)[:k]


def _monic_polys(p: int, degree: int):
    """Monic polynomials of a degree, ordered by coefficients read from high to low."""
    for high in product(range(p), repeat=degree):
        yield tuple(reversed(high)) + (1,)


def is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """No monic factor of degree <= deg/2 (trial division)."""
    k = len(poly) - 1
    for d in range(1, k // 2 + 1):
        for f in _monic_polys(p, d):
            if not any(_polymod(list(poly), f, p)):
                return False
    return True


@lru_cache(maxsize=None)
def irreducible_modulus(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree k in lexicographic search order."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise DomainError("degree must be positive")
    for poly in _monic_polys(p, k):
        if is_irreducible(poly, p):
            return poly
    raise AssertionError("no irreducible polynomial found")  # impossible for a prime p


@dataclass(frozen=True)
class FqElement:
    p: int
    k: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        mod = irreducible_modulus(self.p, self.k)
        object.__setattr__(self, "coeffs", tuple(_polymod(list(self.coeffs), mod, self.p)))

    @property
    def modulus(self) -> tuple[int, ...]:
        return irreducible_modulus(self.p, self.k)

    def _check(self, other):
        if (other.p, other.k) != (self.p, self.k):
            raise DomainError("elements of different fields")

    def __add__(self, other):
        self._check(other)
        return FqElement(self.p, self.k, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return FqElement(self.p, self.k, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return FqElement(self.p, self.k, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        prod = [0] * (2 * self.k - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return FqElement(self.p, self.k, tuple(prod))

    def __pow__(self, e: int):
        result = one(self.p, self.k)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self):
        terms = [f"{c}" if i == 0 else f"{c}t^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


def element(p: int, k: int, coeffs) -> FqElement:
    coeffs = list(coeffs) + [0] * k
    return FqElement(p, k, tuple(coeffs[: max(k, len(coeffs))]))


def zero(p: int, k: int) -> FqElement:
    return FqElement(p, k, (0,) * k)


def one(p: int, k: int) -> FqElement:
    return FqElement(p, k, (1,) + (0,) * (k - 1))


def generator(p: int, k: int) -> FqElement:
    """The class of t, a root of the defining polynomial."""
    if k == 1:
        # F_p = F_p[t]/(t - c): t is the constant -c
        return FqElement(p, 1, (-irreducible_modulus(p, 1)[0],))
    return FqElement(p, k, (0, 1) + (0,) * (k - 2))


def all_elements(p: int, k: int):
    if p**k > MAX_ENUM_SIZE:
        raise DomainError(f"F_{p}^{k} is too large to enumerate")
    for coeffs in product(range(p), repeat=k):
        yield FqElement(p, k, coeffs)


def frobenius(x: FqElement) -> FqElement:
    """x -> x^p."""
    return x**x.p


def frobenius_power(x: FqElement, m: int) -> FqElement:
    for _ in range(m):
        x = frobenius(x)
    return x


def frobenius_order(p: int, k: int) -> int:
    """Least m >= 1 with Frob^m fixing the generator t; equals k."""
    t = generator(p, k)
    x, m = frobenius(t), 1
    while x != t:
        x = frobenius(x)
        m += 1
    if m != k:
        raise AssertionError(f"Frobenius order {m} != degree {k}")
    return m


def subfield_lattice(p: int, k: int, closure_pairs: int = 4000, seed: int = 0) -> dict[int, int]:
    """For each d | k, the number of elements fixed by Frob^d (expected p^d).

    Also checks each fixed set is closed under + and *; exhaustively when
    small, on ``closure_pairs`` random pairs otherwise.
    """
    if k > MAX_ENUM_DEGREE:
        raise DomainError(f"degree {k} exceeds {MAX_ENUM_DEGREE}")
    elems = list(all_elements(p, k))
    rng = random.Random(seed)
    out = {}
    for d in divisors(k):
        fixed = [x for x in elems if frobenius_power(x, d) == x]
        fixed_set = set(fixed)
        if len(fixed) ** 2 <= closure_pairs:
            pairs = product(fixed, repeat=2)
        else:
            pairs = ((rng.choice(fixed), rng.choice(fixed)) for _ in range(closure_pairs))
        for x, y in pairs:
            if x + y not in fixed_set or x * y not in fixed_set:
                raise AssertionError(f"fixed set of Frob^{d} not closed")
        out[d] = len(fixed)
    return out


# --- cyclotomic characters ---


@dataclass(frozen=True)
class CycloAut:
    """The automorphism zeta -> zeta^a of the p^k-th roots of unity."""

    p: int
    k: int
    a: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if self.k < 1:
            raise DomainError("level must be positive")
        if gcd(self.a, self.p) != 1:
            raise DomainError(f"{self.a} is not a unit mod {self.p}")
        object.__setattr__(self, "a", self.a % self.p**self.k)

    @property
    def modulus(self) -> int:
        return self.p**self.k

    def act(self, exponent: int) -> int:
        """Image of zeta^exponent."""
        return self.a * exponent % self.modulus

    def __matmul__(self, other: "CycloAut") -> "CycloAut":
        if (self.p, self.k) != (other.p, other.k):
            raise DomainError("automorphisms of different levels")
        return CycloAut(self.p, self.k, self.a * other.a)

    def project(self, k: int) -> "CycloAut":
        if not 1 <= k <= self.k:
            raise DomainError(f"cannot project level {self.k} to {k}")
        return CycloAut(self.p, k, self.a)


def cyclotomic_character(sigma: CycloAut, primitive_exponent: int = 1) -> ResidueInt:
    """chi(sigma) in (Z/p^k)^*, read off from any primitive root zeta^u."""
    u = primitive_exponent % sigma.modulus
    if gcd(u, sigma.p) != 1:
        raise DomainError("exponent does not give a primitive root")
    return ResidueInt(sigma.act(u) * pow(u, -1, sigma.modulus), sigma.modulus)


def cyclotomic_tower(p: int, depth: int, a: int) -> LAdicTrunc:
    """chi_{p^n}(sigma) for n = 1..depth assembled into a truncated p-adic unit."""
    top = CycloAut(p, depth, a)
    digits = tuple(cyclotomic_character(top.project(n)).value for n in range(1, depth + 1))
    return LAdicTrunc(p, digits)
