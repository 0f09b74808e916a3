"""Truncated q-expansions with exact coefficients.

A :class:`QSeries` stores coefficients of q^lowest, ..., q^(prec-1); every
coefficient at or beyond ``prec`` is unknown, so arithmetic truncates to the
smaller precision of its operands.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DomainError, FormulaViolation, InsufficientPrecision, InternalInconsistency
from .exactnum import divisors, euler_phi, factorize, legendre_symbol


@dataclass(frozen=True)
class QSeries:
    weight: int
    lowest: int
    prec: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != self.prec - self.lowest:
            raise DomainError(f"expected {self.prec - self.lowest} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_list(cls, weight: int, coeffs, lowest: int = 0) -> "QSeries":
        coeffs = list(coeffs)
        return cls(weight, lowest, lowest + len(coeffs), tuple(coeffs))

    def coeff(self, n: int) -> Fraction:
        if n >= self.prec:
            raise InsufficientPrecision(n + 1, self.prec)
        if n < self.lowest:
            return Fraction(0)
        return self.coeffs[n - self.lowest]

    __getitem__ = coeff

    def truncate(self, prec: int) -> "QSeries":
        if prec > self.prec:
            raise InsufficientPrecision(prec, self.prec)
        prec = max(prec, self.lowest)
        return QSeries(self.weight, self.lowest, prec, self.coeffs[: prec - self.lowest])

    def is_cusp_form(self) -> bool:
        return self.lowest >= 1 or self.coeff(0) == 0

    def _aligned(self, other: "QSeries"):
        low = min(self.lowest, other.lowest)
        prec = min(self.prec, other.prec)
        return low, prec

    def __add__(self, other: "QSeries") -> "QSeries":
        low, prec = self._aligned(other)
        return QSeries(self.weight, low, prec, tuple(self.coeff(n) + other.coeff(n) for n in range(low, prec)))

    def __neg__(self) -> "QSeries":
        return QSeries(self.weight, self.lowest, self.prec, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def scale(self, c) -> "QSeries":
        c = Fraction(c)
        return QSeries(self.weight, self.lowest, self.prec, tuple(c * x for x in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        low = self.lowest + other.lowest
        # relative precision is the limiting one
        prec = min(self.prec + other.lowest, other.prec + self.lowest)
        out = [Fraction(0)] * max(prec - low, 0)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                k = i + j
                if k >= len(out):
                    break
                out[k] += a * b
        return QSeries(self.weight + other.weight, low, max(prec, low), tuple(out))

    __rmul__ = scale

    def __pow__(self, e: int) -> "QSeries":
        result = self
        for _ in range(e - 1):
            result = result * self
        return result

    def __truediv__(self, other: "QSeries") -> "QSeries":
        """Exact Laurent series division; ``other`` must have a nonzero leading term."""
        lead_idx = next((i for i, c in enumerate(other.coeffs) if c != 0), None)
        if lead_idx is None:
            raise ZeroDivisionError("division by a series with no known nonzero term")
        shift = other.lowest + lead_idx
        den = other.coeffs[lead_idx:]
        rel = min(self.prec - self.lowest, len(den))
        num = [self.coeff(n) for n in range(self.lowest, self.lowest + rel)]
        out = []
        for k in range(rel):
            acc = num[k] - sum(out[i] * den[k - i] for i in range(max(0, k - len(den) + 1), k))
            out.append(acc / den[0])
        low = self.lowest - shift
        return QSeries(self.weight - other.weight, low, low + rel, tuple(out))

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        low, prec = self._aligned(other)
        return self.weight == other.weight and all(self.coeff(n) == other.coeff(n) for n in range(low, prec))

    def __hash__(self):
        return hash((self.weight, self.lowest, self.prec, self.coeffs))

    def as_dict(self) -> dict:
        return {
            "weight": self.weight,
            "lowest": self.lowest,
            "prec": self.prec,
            "coeffs": [_fmt(c) for c in self.coeffs],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "QSeries":
        """Accepts both :meth:`to_json` output and the CLI's all-strings form."""
        d = json.loads(text)
        return cls(int(d["weight"]), int(d["lowest"]), int(d["prec"]), tuple(Fraction(c) for c in d["coeffs"]))

    def evaluate(self, z: complex) -> complex:
        """Numerically sum the truncated series at q = exp(2 pi i z)."""
        import cmath

        q = cmath.exp(2j * cmath.pi * z)
        return sum(float(c) * q**n for n, c in zip(range(self.lowest, self.prec), self.coeffs))

    def __str__(self):
        terms = []
        for n, c in zip(range(self.lowest, self.prec), self.coeffs):
            if c:
                terms.append(f"{_fmt(c)}q^{n}")
        return " + ".join(terms) + f" + O(q^{self.prec})"


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def sigma_k(n: int, k: int) -> int:
    if n <= 0:
        raise DomainError("sigma_k needs n >= 1")
    return sum(d**k for d in divisors(n))


_EISENSTEIN_NORM = {4: 240, 6: -504}


def eisenstein_series(k: int, prec: int) -> QSeries:
    """E_4 = 1 + 240 sum sigma_3(n) q^n, E_6 = 1 - 504 sum sigma_5(n) q^n."""
    if k not in _EISENSTEIN_NORM:
        raise DomainError(f"only E_4 and E_6 are provided, not E_{k}")
    if prec < 1:
        raise DomainError("prec must be >= 1")
    c = _EISENSTEIN_NORM[k]
    return QSeries.from_list(k, [1] + [c * sigma_k(n, k - 1) for n in range(1, prec)])


def delta_product(prec: int) -> QSeries:
    """q prod_{n>=1} (1 - q^n)^24, expanded directly to O(q^prec)."""
    coeffs = [0] * prec
    if prec > 1:
        coeffs[1] = 1
    for n in range(1, prec):
        for _ in range(24):
            # multiply in place by (1 - q^n), high degree first
            for i in range(prec - 1, n - 1, -1):
                coeffs[i] -= coeffs[i - n]
    return QSeries.from_list(12, coeffs)


def delta_from_eisenstein(prec: int) -> QSeries:
    e4, e6 = eisenstein_series(4, prec), eisenstein_series(6, prec)
    diff = e4**3 - e6 * e6
    for c in diff.coeffs:
        if (c / 1728).denominator != 1:
            raise InternalInconsistency(f"E4^3 - E6^2 coefficient {c} not divisible by 1728")
    return QSeries(12, 0, prec, tuple(c / 1728 for c in diff.coeffs))


def delta_series(prec: int) -> QSeries:
    """The discriminant form, built two ways and cross-checked."""
    if prec < 2:
        raise DomainError("prec must be >= 2")
    a = delta_from_eisenstein(prec)
    b = delta_product(prec)
    if a.coeffs != b.coeffs:
        raise InternalInconsistency("Delta constructions disagree")
    return b


def tau(n: int) -> int:
    return int(delta_product(n + 1).coeff(n))


def j_series(prec: int) -> QSeries:
    """E_4^3 / Delta to O(q^prec); Laurent with leading q^-1."""
    if prec < 0:
        raise DomainError("prec must be >= 0")
    # dividing by Delta = q + ... loses one order, so build one extra term
    n = prec + 2
    j = eisenstein_series(4, n) ** 3 / delta_series(n)
    return j.truncate(prec)


def hecke_Tn(f: QSeries, n: int) -> QSeries:
    """Hecke operator T_n on a level-1 form of weight k.

    From the upper-triangular representatives (a, b; 0, d), ad = n, one gets
    a_m(T_n f) = sum_{d | gcd(m, n)} d^(k-1) a_{mn/d^2}(f).
    Output precision is floor(prec(f) / n).
    """
    if n < 1:
        raise DomainError("n must be positive")
    if f.lowest < 0:
        raise DomainError("Hecke operators act on holomorphic q-expansions")
    out_prec = f.prec // n
    if out_prec < 1:
        raise InsufficientPrecision(n, f.prec)
    k = f.weight
    coeffs = []
    for m in range(out_prec):
        if m == 0:
            # a_0(T_n f) = sigma_{k-1}(n) a_0(f)
            coeffs.append(sigma_k(n, k - 1) * f.coeff(0))
            continue
        coeffs.append(sum(Fraction(d) ** (k - 1) * f.coeff(m * n // (d * d)) for d in divisors(gcd(m, n))))
    return QSeries(k, 0, out_prec, tuple(coeffs))


def hecke_slash_numeric(f: QSeries, n: int, z: complex) -> complex:
    """T_n f(z) = n^(k-1) sum_mu j(mu, z)^-k f(mu z) evaluated numerically.

    Independent of :func:`hecke_Tn`'s coefficient rule; used to guard it.
    """
    from .matrix2 import coset_reps_Mn

    k = f.weight
    total = 0j
    for mu in coset_reps_Mn(n):
        w = (mu.a * z + mu.b) / (mu.c * z + mu.d)
        total += (mu.c * z + mu.d) ** (-k) * f.evaluate(w)
    return n ** (k - 1) * total


@dataclass(frozen=True)
class DimFormulaParts:
    N: int
    mu0: int
    mu02: int
    mu03: int
    c0: int
    g0: Fraction

    def as_dict(self) -> dict:
        return {"N": self.N, "mu0": self.mu0, "mu02": self.mu02, "mu03": self.mu03, "c0": self.c0, "g0": self.g0}


def dim_S2_gamma0(N: int) -> DimFormulaParts:
    """Parts of the genus formula g_0(N) = dim S_2(Gamma_0(N))."""
    if N < 1:
        raise DomainError("level must be positive")
    fac = factorize(N) if N > 1 else {}
    mu0 = 1
    for p, v in fac.items():
        mu0 *= p**v + p ** (v - 1)
    if N % 4 == 0:
        mu02 = 0
    else:
        mu02 = 1
        for p in fac:
            mu02 *= 1 + legendre_symbol(-4, p)
    if N % 2 == 0 or N % 9 == 0:
        mu03 = 0
    else:
        mu03 = 1
        for p in fac:
            mu03 *= 1 + legendre_symbol(-3, p)
    c0 = sum(euler_phi(gcd(d, N // d)) for d in divisors(N))
    g0 = 1 + Fraction(mu0, 12) - Fraction(mu02, 4) - Fraction(mu03, 3) - Fraction(c0, 2)
    if g0.denominator != 1 or g0 < 0:
        raise FormulaViolation(f"g0({N}) = {g0} is not a nonnegative integer")
    return DimFormulaParts(N, mu0, mu02, mu03, c0, g0)
