"""Classical exponent cases: Pythagorean triples, n = 4, n = 3 in Z[rho], abc."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from math import gcd, isqrt

import numpy as np

from .errors import DomainError
from .exactnum import (
    LAMBDA,
    EisensteinInt,
    eis_lambda_valuation,
    eis_norm,
    exact_div,
    is_unit,
    radical,
)


@dataclass(frozen=True)
class PythagTriple:
    x: int  # even leg
    y: int  # odd leg
    z: int
    a: int
    b: int


def pythag_param(a: int, b: int) -> PythagTriple:
    """(2ab, a^2 - b^2, a^2 + b^2) for coprime a > b > 0 of opposite parity."""
    problems = []
    if not b > 0:
        problems.append("b must be positive")
    if not a > b:
        problems.append("need a > b")
    if gcd(a, b) != 1:
        problems.append(f"gcd(a, b) = {gcd(a, b)}, not 1")
    if (a + b) % 2 == 0:
        problems.append("both odd" if a % 2 else "both even")
    if problems:
        raise DomainError("; ".join(problems))
    x, y, z = 2 * a * b, a * a - b * b, a * a + b * b
    assert x * x + y * y == z * z
    return PythagTriple(x, y, z, a, b)


def primitive_triples(zmax: int) -> list[tuple[int, int, int]]:
    """All primitive (even leg, odd leg, hypotenuse) with hypotenuse <= zmax, from the parametrization."""
    out = []
    for a in range(2, isqrt(zmax) + 1):
        for b in range(1, a):
            if (a + b) % 2 and gcd(a, b) == 1 and a * a + b * b <= zmax:
                t = pythag_param(a, b)
                out.append((t.x, t.y, t.z))
    return sorted(out, key=lambda t: (t[2], t[0]))


@dataclass(frozen=True)
class ExponentReduction:
    n: int
    kind: str  # "Four" or "OddPrime"
    prime: int  # 4 for the Four branch
    cofactor: int  # r with n = prime * r, or 2^(k-2) when kind == "Four"

    @property
    def witness(self) -> str:
        return f"x^{self.n} = (x^{self.cofactor})^{self.prime}"

    def as_dict(self) -> dict:
        return {"n": self.n, "kind": self.kind, "prime": self.prime, "cofactor": self.cofactor, "witness": self.witness}


def exponent_reduce(n: int) -> ExponentReduction:
    """Reduce FLT for exponent n to exponent 4 or to an odd prime factor of n."""
    if n <= 2:
        raise DomainError("exponent must exceed 2")
    if n & (n - 1) == 0:
        return ExponentReduction(n, "Four", 4, n // 4)
    m = n
    while m % 2 == 0:
        m //= 2
    p = 3
    while m % p:
        p += 2
    return ExponentReduction(n, "OddPrime", p, n // p)


def n4_search(bound: int) -> list[tuple[int, int, int]]:
    """All 1 <= x <= y <= bound with x^4 + y^4 a perfect square."""
    if not 1 <= bound <= 10**4:
        raise DomainError("bound must be in 1..10^4")
    found = []
    ys = np.arange(1, bound + 1, dtype=np.int64)
    y4 = ys**4
    for x in range(1, bound + 1):
        s = x**4 + y4[x - 1 :]
        r = np.rint(np.sqrt(s.astype(np.float64))).astype(np.int64)
        for delta in (-1, 0, 1):
            rr = r + delta
            hits = np.nonzero(rr * rr == s)[0]
            for h in hits:
                y = x + int(h)
                total = x**4 + y**4
                if isqrt(total) ** 2 == total:
                    found.append((x, y, isqrt(total)))
    return sorted(set(found))


def residue_mod_lambda(w: EisensteinInt) -> int:
    """The r in {0, 1, -1} with lambda | (w - r)."""
    for r in (0, 1, -1):
        if exact_div(w - r, LAMBDA) is not None:
            return r
    raise AssertionError(f"{w} has no residue in {{0, 1, -1}} mod lambda")


@dataclass
class LemmaReport:
    range: int
    checked: int
    residues_ok: bool
    cube_lemma_ok: bool
    cube_lemma_cases: int
    norm_lambda: int
    lambda_valuation_of_3: int
    three_over_lambda_sq_is_unit: bool

    @property
    def passed(self) -> bool:
        return (
            self.residues_ok
            and self.cube_lemma_ok
            and self.norm_lambda == 3
            and self.lambda_valuation_of_3 == 2
            and self.three_over_lambda_sq_is_unit
        )

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__} | {"passed": self.passed}


def eisenstein_lemma_check(rng: int) -> LemmaReport:
    """Brute-force the n = 3 congruence lemmas over |a|, |b| <= rng.

    Every w is 0 or +-1 mod lambda, and lambda not dividing w forces
    lambda^4 | w^3 - 1 or lambda^4 | w^3 + 1.  Any failure raises with the
    offending element.
    """
    if not 1 <= rng <= 50:
        raise DomainError("range must be in 1..50")
    checked = cube_cases = 0
    for a in range(-rng, rng + 1):
        for b in range(-rng, rng + 1):
            w = EisensteinInt(a, b)
            checked += 1
            residue_mod_lambda(w)
            if w.is_zero() or eis_lambda_valuation(w) > 0:
                continue
            cube = w**3
            if not any((cube - s).is_zero() or eis_lambda_valuation(cube - s) >= 4 for s in (1, -1)):
                raise AssertionError(f"cube lemma fails for {w}")
            cube_cases += 1
    lam_sq = LAMBDA * LAMBDA
    quotient = exact_div(EisensteinInt(3, 0), lam_sq)
    return LemmaReport(
        rng,
        checked,
        True,
        True,
        cube_cases,
        eis_norm(LAMBDA),
        eis_lambda_valuation(EisensteinInt(3, 0)),
        quotient is not None and is_unit(quotient),
    )


@dataclass(frozen=True)
class AbcQuality:
    a: int
    b: int
    c: int
    rad: int
    q: float


def abc_quality(a: int, b: int, c: int) -> AbcQuality:
    if a + b != c:
        raise DomainError(f"{a} + {b} != {c}")
    if min(a, b, c) <= 0:
        raise DomainError("abc triples are positive")
    if gcd(a, b) != 1:
        raise DomainError("a and b must be coprime")
    r = radical(a * b * c)
    return AbcQuality(a, b, c, r, math.log(c) / math.log(r))


def flt_exponent_bound(x: int, y: int, z: int) -> int:
    """Largest n with z^n <= rad(xyz)^1.5, taking the abc constant K to be 1.

    Illustrative only: the true constant is unknown, so this is not a theorem.
    """
    if min(x, y, z) <= 0 or z < 2:
        raise DomainError("need positive x, y and z >= 2")
    r3 = radical(x * y * z) ** 3
    n = 0
    # z^n <= r^1.5  <=>  z^(2n) <= r^3, checked in exact integers
    while z ** (2 * (n + 1)) <= r3:
        n += 1
    return n


def abc_scan(cmax: int, threshold: float = 1.4) -> list[AbcQuality]:
    """Coprime a + b = c <= cmax with quality above threshold, best first."""
    out = []
    rad_cache = [0, 1] + [radical(n) for n in range(2, cmax + 1)]
    for c in range(3, cmax + 1):
        for a in range(1, c // 2 + 1):
            b = c - a
            if gcd(a, b) != 1:
                continue
            r = rad_cache[a] * rad_cache[b] * rad_cache[c]
            q = math.log(c) / math.log(r)
            if q > threshold:
                out.append(AbcQuality(a, b, c, r, q))
    return sorted(out, key=lambda t: (-t.q, t.c, t.a))


def abc_csv(rows: list[AbcQuality]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["a", "b", "c", "rad", "q"])
    for t in rows:
        w.writerow([t.a, t.b, t.c, t.rad, f"{t.q:.12g}"])
    return buf.getvalue()
