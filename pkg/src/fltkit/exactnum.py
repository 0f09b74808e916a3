"""Exact arithmetic foundations.

Rationals are plain :class:`fractions.Fraction` (aliased as ``BigRat``);
Python ints are already arbitrary precision, which matters because Frey
discriminants ``(abc)^(2P)`` leave machine words behind immediately.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt
from typing import Iterable, Sequence

from .errors import DomainError, FactorizationLimit, NotPrime

BigRat = Fraction

# Trial division up to this bound fully factors every n <= TRIAL_BOUND**2.
TRIAL_BOUND = 10**6

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``|n|`` by trial division.

    Trial division runs to ``TRIAL_BOUND``; a leftover cofactor is accepted
    only if it is prime, otherwise :class:`FactorizationLimit` is raised.
    """
    n = abs(int(n))
    if n == 0:
        raise DomainError("cannot factor 0")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p, step = 5, 2
    while p * p <= n and p <= TRIAL_BOUND:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += step
        step = 6 - step
    if n > 1:
        if p * p <= n and not is_prime(n):
            raise FactorizationLimit(f"composite cofactor {n} beyond trial bound {TRIAL_BOUND}")
        out[n] = out.get(n, 0) + 1
    return out


def prime_factors(n: int) -> list[int]:
    return sorted(factorize(n))


def radical(n: int) -> int:
    """Product of the distinct primes dividing ``n``; ``radical(1) == 1``."""
    if n <= 0:
        raise DomainError(f"radical needs n >= 1, got {n}")
    return reduce(lambda acc, p: acc * p, factorize(n), 1)


def divisors(n: int) -> list[int]:
    if n <= 0:
        raise DomainError(f"divisors needs n >= 1, got {n}")
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result = result // p * (p - 1)
    return result


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise DomainError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a/p) via Euler's criterion.

    For ``p == 2`` this returns 0 regardless of ``a``; that is the convention
    the Gamma_0(N) dimension formula relies on.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        return 0
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def mod_frac(x: Fraction | int, p: int) -> int:
    """Reduce a rational with denominator prime to ``p`` into ``[0, p)``."""
    x = Fraction(x)
    if x.denominator % p == 0:
        raise DomainError(f"{x} is not integral at {p}")
    return x.numerator * pow(x.denominator, -1, p) % p


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


@dataclass(frozen=True)
class ResidueInt:
    """An element of Z/mZ, stored canonically in ``[0, m)``."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus <= 0:
            raise DomainError("modulus must be positive")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, ResidueInt):
            if other.modulus != self.modulus:
                raise DomainError("mismatched moduli")
            return other.value
        return int(other)

    def __add__(self, other):
        return ResidueInt(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return ResidueInt(self.value - self._coerce(other), self.modulus)

    def __neg__(self):
        return ResidueInt(-self.value, self.modulus)

    def __mul__(self, other):
        return ResidueInt(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return ResidueInt(pow(self.value, e, self.modulus), self.modulus)

    def inverse(self) -> "ResidueInt":
        if gcd(self.value, self.modulus) != 1:
            raise DomainError(f"{self.value} is not a unit mod {self.modulus}")
        return ResidueInt(pow(self.value, -1, self.modulus), self.modulus)

    def is_unit(self) -> bool:
        return gcd(self.value, self.modulus) == 1


# --- Eisenstein integers Z[rho], rho = exp(2 pi i / 3), rho^2 = -1 - rho ---


@dataclass(frozen=True)
class EisensteinInt:
    a: int
    b: int

    def __add__(self, other):
        other = _eis(other)
        return EisensteinInt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _eis(other)
        return EisensteinInt(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return _eis(other) - self

    def __neg__(self):
        return EisensteinInt(-self.a, -self.b)

    def __mul__(self, other):
        other = _eis(other)
        a, b, c, d = self.a, self.b, other.a, other.b
        return EisensteinInt(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = ONE
        for _ in range(e):
            result = result * self
        return result

    def conj(self) -> "EisensteinInt":
        # conj(rho) = rho^2 = -1 - rho
        return EisensteinInt(self.a - self.b, -self.b)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def divides(self, other) -> bool:
        return exact_div(_eis(other), self) is not None

    def to_complex(self) -> complex:
        rho = complex(-0.5, 3**0.5 / 2)
        return self.a + self.b * rho

    def __str__(self):
        return f"{self.a}{self.b:+d}ρ"


def _eis(x) -> EisensteinInt:
    if isinstance(x, EisensteinInt):
        return x
    if isinstance(x, int):
        return EisensteinInt(x, 0)
    raise TypeError(f"cannot treat {x!r} as an Eisenstein integer")


def eis_norm(alpha: EisensteinInt) -> int:
    """N(a + b rho) = a^2 - ab + b^2."""
    return alpha.a * alpha.a - alpha.a * alpha.b + alpha.b * alpha.b


def exact_div(alpha: EisensteinInt, beta: EisensteinInt) -> EisensteinInt | None:
    """alpha / beta if it lies in Z[rho], else None."""
    n = eis_norm(beta)
    if n == 0:
        raise DomainError("division by zero in Z[rho]")
    num = alpha * beta.conj()
    if num.a % n or num.b % n:
        return None
    return EisensteinInt(num.a // n, num.b // n)


ZERO = EisensteinInt(0, 0)
ONE = EisensteinInt(1, 0)
RHO = EisensteinInt(0, 1)
LAMBDA = EisensteinInt(1, -1)  # 1 - rho
# Norm-one elements; listed here rather than derived from the descent argument.
UNITS = (
    EisensteinInt(1, 0),
    EisensteinInt(-1, 0),
    EisensteinInt(0, 1),
    EisensteinInt(0, -1),
    EisensteinInt(-1, -1),
    EisensteinInt(1, 1),
)


def is_unit(alpha: EisensteinInt) -> bool:
    return eis_norm(alpha) == 1


def eis_lambda_valuation(alpha: EisensteinInt) -> int:
    """Largest k with lambda^k | alpha, by repeated exact division."""
    if alpha.is_zero():
        raise DomainError("lambda-adic valuation of 0 is infinite")
    k = 0
    while True:
        q = exact_div(alpha, LAMBDA)
        if q is None:
            return k
        alpha = q
        k += 1


# --- truncated l-adic integers ---


@dataclass(frozen=True)
class LAdicTrunc:
    """A compatible sequence (a_1, ..., a_depth), a_n in Z/l^n Z."""

    prime: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.prime):
            raise NotPrime(f"{self.prime} is not prime")
        digits = tuple(int(d) % self.prime ** (n + 1) for n, d in enumerate(self.digits))
        if not digits:
            raise DomainError("depth must be positive")
        for n in range(len(digits) - 1):
            mod = self.prime ** (n + 1)
            if (digits[n + 1] - digits[n]) % mod:
                raise DomainError(f"incompatible digits at level {n + 1}: {digits[n]} vs {digits[n + 1]}")
        object.__setattr__(self, "digits", digits)

    @property
    def depth(self) -> int:
        return len(self.digits)

    @classmethod
    def embed(cls, n: int, prime: int, depth: int) -> "LAdicTrunc":
        return cls(prime, tuple(n % prime**k for k in range(1, depth + 1)))

    @classmethod
    def from_top(cls, value: int, prime: int, depth: int) -> "LAdicTrunc":
        """Build the tower from its top level by successive reduction."""
        return cls.embed(value % prime**depth, prime, depth)

    def project(self, depth: int) -> "LAdicTrunc":
        if not 1 <= depth <= self.depth:
            raise DomainError(f"cannot project depth {self.depth} to {depth}")
        return LAdicTrunc(self.prime, self.digits[:depth])

    def is_unit(self) -> bool:
        return self.digits[0] % self.prime != 0

    def __add__(self, other):
        return ladic_arith(self, other, "add")

    def __mul__(self, other):
        return ladic_arith(self, other, "mul")

    def __neg__(self):
        return LAdicTrunc(self.prime, tuple(-d for d in self.digits))


def is_compatible(prime: int, digits: Sequence[int]) -> bool:
    return all((digits[n + 1] - digits[n]) % prime ** (n + 1) == 0 for n in range(len(digits) - 1))


def ladic_arith(x: LAdicTrunc, y: LAdicTrunc, op: str) -> LAdicTrunc:
    if x.prime != y.prime or x.depth != y.depth:
        raise DomainError("l-adic operands must share prime and depth")
    if op == "add":
        digits = [a + b for a, b in zip(x.digits, y.digits)]
    elif op == "mul":
        digits = [a * b for a, b in zip(x.digits, y.digits)]
    else:
        raise DomainError(f"unknown op {op!r}")
    return LAdicTrunc(x.prime, tuple(digits))


def product(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b, values, 1)
