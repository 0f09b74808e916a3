"""2x2 integer matrices and their action on the upper half-plane."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .errors import DomainError
from .exactnum import divisors

MOBIUS_TOL = 1e-9
DOMAIN_TOL = 1e-12
MAX_REDUCE_STEPS = 10_000


@dataclass(frozen=True)
class IntMat2:
    """Row-major (a, b; c, d)."""

    a: int
    b: int
    c: int
    d: int

    def __matmul__(self, other: "IntMat2") -> "IntMat2":
        return IntMat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    __mul__ = __matmul__

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def trace(self) -> int:
        return self.a + self.d

    def inverse_sl2(self) -> "IntMat2":
        if self.det() != 1:
            raise DomainError("not in SL2(Z)")
        return IntMat2(self.d, -self.b, -self.c, self.a)

    def inverse_q(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        """Inverse over Q as nested tuples of Fractions."""
        n = self.det()
        if n == 0:
            raise DomainError("singular matrix")
        f = Fraction(1, n)
        return ((self.d * f, -self.b * f), (-self.c * f, self.a * f))

    def is_sl2(self) -> bool:
        return self.det() == 1

    def reduce_mod(self, n: int) -> "IntMat2":
        return IntMat2(self.a % n, self.b % n, self.c % n, self.d % n)

    def automorphy(self, z: complex) -> complex:
        """j(alpha, z) = cz + d."""
        return self.c * z + self.d

    def __pow__(self, e: int) -> "IntMat2":
        base = self if e >= 0 else self.inverse_sl2()
        out = IDENTITY
        for _ in range(abs(e)):
            out = out @ base
        return out

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


IDENTITY = IntMat2(1, 0, 0, 1)
S = IntMat2(0, -1, 1, 0)
T = IntMat2(1, 1, 0, 1)


def trace_of_product_q(x, y) -> Fraction:
    """Trace of a product of 2x2 matrices given as nested sequences over Q."""
    return sum(Fraction(x[i][k]) * y[k][i] for i in range(2) for k in range(2))


def matmul_q(x, y):
    return tuple(tuple(sum(Fraction(x[i][k]) * y[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def as_rows(m: IntMat2):
    return ((m.a, m.b), (m.c, m.d))


@dataclass(frozen=True)
class UpperHalfPoint:
    re: float
    im: float

    def __post_init__(self):
        if not self.im > 0:
            raise DomainError(f"point {self.re}+{self.im}i is not in the upper half-plane")

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)

    @classmethod
    def from_complex(cls, z: complex) -> "UpperHalfPoint":
        return cls(z.real, z.imag)

    def __str__(self):
        return f"{_fmt(self.re)}{'+' if self.im >= 0 else '-'}{_fmt(abs(self.im))}i"


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def mobius_apply(gamma: IntMat2, z: UpperHalfPoint) -> UpperHalfPoint:
    if gamma.det() != 1:
        raise DomainError(f"Mobius action needs det 1, got {gamma.det()}")
    w = complex(z.re, z.im)
    den = gamma.c * w + gamma.d
    out = (gamma.a * w + gamma.b) / den
    # Im((az+b)/(cz+d)) = Im(z)/|cz+d|^2 exactly for det 1; use it to keep im > 0.
    return UpperHalfPoint(out.real, z.im / abs(den) ** 2)


def in_fundamental_domain(z: UpperHalfPoint, tol: float = DOMAIN_TOL) -> bool:
    return abs(z.re) <= 0.5 + tol and abs(z.z) >= 1 - tol


def fundamental_reduce(z: UpperHalfPoint, max_steps: int = MAX_REDUCE_STEPS) -> tuple[UpperHalfPoint, IntMat2]:
    """Move ``z`` into the standard fundamental domain for SL2(Z).

    Alternates translation into the strip with inversion while ``|z| < 1``.
    Returns ``(z*, gamma)`` with ``gamma . z == z*``; Re(z*) lands in
    [-1/2, 1/2) and boundary points on the unit circle with Re > 0 are
    flipped by S so the representative is deterministic.
    """
    w, gamma, _ = reduce_with_word(z, max_steps)
    return w, gamma


def reduce_with_word(z: UpperHalfPoint, max_steps: int = MAX_REDUCE_STEPS):
    """As :func:`fundamental_reduce`, also returning the steps taken as a word in S and T.

    The word is written leftmost-last, e.g. ``S·T^-10`` means translate by
    -10 and then invert.
    """
    if not z.im > 0:
        raise DomainError("nonpositive imaginary part")
    gamma = IDENTITY
    w = z
    steps: list[str] = []
    for _ in range(max_steps):
        n = floor(w.re + 0.5)
        if n:
            gamma = IntMat2(1, -n, 0, 1) @ gamma
            w = UpperHalfPoint(w.re - n, w.im)
            steps.append(f"T^{-n}")
        if abs(w.z) < 1 - DOMAIN_TOL:
            gamma = S @ gamma
            w = mobius_apply(S, w)
            steps.append("S")
            continue
        break
    else:
        raise DomainError(f"fundamental_reduce did not converge in {max_steps} steps")
    if abs(abs(w.z) - 1) <= MOBIUS_TOL and w.re > DOMAIN_TOL:
        gamma = S @ gamma
        w = mobius_apply(S, w)
        steps.append("S")
    if w.re == 0:
        w = UpperHalfPoint(0.0, w.im)
    word = "·".join(reversed(steps)) or "I"
    return w, gamma, word


def subgroup_contains(gamma: IntMat2, kind: str, n: int) -> bool:
    """Membership in Gamma(N) (``kind='Gamma'``) or Gamma_0(N) (``'Gamma0'``)."""
    if gamma.det() != 1:
        raise DomainError("congruence subgroups live in SL2(Z)")
    if n < 1:
        raise DomainError("level must be positive")
    if kind in ("Gamma", "Γ"):
        return (gamma.a - 1) % n == 0 and gamma.b % n == 0 and gamma.c % n == 0 and (gamma.d - 1) % n == 0
    if kind in ("Gamma0", "Γ0", "Γ₀"):
        return gamma.c % n == 0
    raise DomainError(f"unknown subgroup {kind!r}")


def coset_reps_Mn(n: int) -> list[IntMat2]:
    """Upper-triangular representatives of SL2(Z) \\ M_n."""
    if n <= 0:
        raise DomainError("n must be positive")
    reps = []
    for a in divisors(n):
        d = n // a
        reps.extend(IntMat2(a, b, 0, d) for b in range(d))
    return reps


def hermite_normal_form(m: IntMat2) -> IntMat2:
    """The upper-triangular representative of the SL2(Z)-orbit of ``m`` (det > 0).

    Runs the Euclidean algorithm on the first column by left multiplication.
    """
    if m.det() <= 0:
        raise DomainError("need positive determinant")
    while m.c != 0:
        if abs(m.a) < abs(m.c) or m.a == 0:
            m = S @ m
            continue
        q = m.a // m.c
        m = IntMat2(m.a - q * m.c, m.b - q * m.d, m.c, m.d)
    if m.a < 0:
        m = IntMat2(-m.a, -m.b, 0, -m.d)
    return IntMat2(m.a, m.b % m.d, 0, m.d)
