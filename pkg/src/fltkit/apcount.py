"""Point counts over F_p and the coefficient system A_n attached to a curve."""
from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .ecurve import FreyData, ReductionType, WeierstrassModel, cubic_mod_p, reduction_type
from .errors import BadReductionPrime, NotPrime, UnsupportedPrime
from .exactnum import factorize, is_prime, legendre_symbol, primes_up_to

log = logging.getLogger(__name__)

# above this, fall back to the scalar loop to bound memory
VECTOR_LIMIT = 10**7


def _require_odd_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        raise UnsupportedPrime("point counting needs an odd prime")


@lru_cache(maxsize=None)
def count_points(m: WeierstrassModel, p: int) -> int:
    """|E(F_p)| = 1 + sum_x (1 + (f(x)/p)) for y^2 = f(x) mod p."""
    _require_odd_prime(p)
    a, b, c = cubic_mod_p(m, p)
    if p > VECTOR_LIMIT:
        return 1 + sum(1 + legendre_symbol(((x + a) * x + b) * x + c, p) for x in range(p))
    x = np.arange(p, dtype=np.int64)
    fx = ((((x + a) * x) % p + b) * x % p + c) % p
    # number of y with y^2 = v, for each residue v
    roots = np.bincount(x * x % p, minlength=p)
    return 1 + int(roots[fx].sum())


@lru_cache(maxsize=None)
def ap(m: WeierstrassModel, p: int) -> int:
    rt = reduction_type(m, p)
    if rt is ReductionType.Additive:
        return 0
    if rt is ReductionType.MultiplicativeSplit:
        return 1
    if rt is ReductionType.MultiplicativeNonsplit:
        return -1
    _require_odd_prime(p)
    value = p + 1 - count_points(m, p)
    if value * value > 4 * p:
        log.warning("a_%d = %d exceeds the Hasse bound for %s", p, value, m)
    return value


def ap_prime_power(m: WeierstrassModel, p: int, k: int) -> int:
    """A_{p^k}: A_p A_{p^(k-1)} at bad p, minus p A_{p^(k-2)} at good p."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return 1
    a = ap(m, p)
    good = reduction_type(m, p) is ReductionType.Good
    prev2, prev = 1, a
    for _ in range(k - 1):
        nxt = a * prev - (p * prev2 if good else 0)
        prev2, prev = prev, nxt
    return prev


def an(m: WeierstrassModel, n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    out = 1
    for p, k in factorize(n).items():
        out *= ap_prime_power(m, p, k)
    return out


def frey_ap_formula(f: FreyData, p: int) -> int:
    """a_p = -sum_x ( x (x - a^P)(x + b^P) / p ) at a prime of good reduction."""
    _require_odd_prime(p)
    if f.disc % p == 0:
        raise BadReductionPrime(f"{p} divides the discriminant")
    u, v = f.a**f.P % p, f.b**f.P % p
    return -sum(legendre_symbol(x * (x - u) * (x + v), p) for x in range(p))


@dataclass
class ApTable:
    model: WeierstrassModel
    pmax: int
    values: dict[int, int] = field(default_factory=dict)
    skipped: list[int] = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "a_n"])
        for n in sorted(self.values):
            w.writerow([n, self.values[n]])
        return buf.getvalue()


def build_ap_table(m: WeierstrassModel, pmax: int, nmax: int | None = None) -> ApTable:
    """A_n for 1 <= n <= nmax (default pmax).

    Indices divisible by a prime whose A_p cannot be computed (p = 2 on a
    model that is not y^2 = f(x), say) are listed in ``skipped``.
    """
    nmax = pmax if nmax is None else nmax
    table = ApTable(m, pmax)
    bad = set()
    for p in primes_up_to(min(pmax, nmax)):
        try:
            ap(m, p)
        except UnsupportedPrime:
            bad.add(p)
    for n in range(1, nmax + 1):
        primes = factorize(n) if n > 1 else {}
        if any(p in bad or p > pmax for p in primes):
            table.skipped.append(n)
            continue
        table.values[n] = an(m, n)
    return table


def hasse_ok(m: WeierstrassModel, p: int) -> bool:
    a = ap(m, p)
    return abs(a) <= 2 * math.sqrt(p)
