"""Elliptic curves over Q and F_p.

Three presentations are supported:

* ``long``  y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
* ``short`` y^2 = x^3 + A x + B
* ``root``  y^2 = (x - r1)(x - r2)(x - r3)

c4 and c6 follow the normalisation
``c4 = (b2^2 - 24 b4) / 12`` and ``c6 = (-b2^3 + 36 b2 b4 - 216 b6) / 216``,
i.e. the usual textbook c4, c6 divided by 12 and 216.  With this choice
``j = 1728 c4^3 / Delta`` still equals the usual j-invariant.

Discriminant conventions differ by a factor 16: a root-form model reports
``prod (ri - rj)^2`` (the cubic's discriminant) while short and long forms
report ``-16(4A^3 + 27B^2)``.  :attr:`Invariants.disc_std` always holds the
latter.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Optional

import numpy as np

from .errors import (
    DomainError,
    NonIntegralModel,
    NotAFermatTriple,
    NotCoprime,
    NotPrime,
    OffCurve,
    SingularCurve,
    UnsupportedAdditiveSmallPrime,
    UnsupportedPrime,
)
from .exactnum import factorize, is_prime, legendre_symbol, mod_frac, radical

Q = Fraction


@dataclass(frozen=True)
class WeierstrassModel:
    form: str
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        expected = {"long": 5, "short": 2, "root": 3}
        if self.form not in expected:
            raise DomainError(f"unknown form {self.form!r}")
        if len(self.coeffs) != expected[self.form]:
            raise DomainError(f"{self.form} form takes {expected[self.form]} coefficients")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def a_invariants(self) -> tuple[Fraction, ...]:
        if self.form == "long":
            return self.coeffs
        if self.form == "short":
            A, B = self.coeffs
            return (Q(0), Q(0), Q(0), A, B)
        r1, r2, r3 = self.coeffs
        return (Q(0), -(r1 + r2 + r3), Q(0), r1 * r2 + r1 * r3 + r2 * r3, -r1 * r2 * r3)

    @property
    def b_invariants(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        a1, a2, a3, a4, a6 = self.a_invariants
        b2 = a1 * a1 + 4 * a2
        b4 = a1 * a3 + 2 * a4
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def c4(self) -> Fraction:
        b2, b4, _, _ = self.b_invariants
        return (b2 * b2 - 24 * b4) / 12

    @property
    def c6(self) -> Fraction:
        b2, b4, b6, _ = self.b_invariants
        return (-(b2**3) + 36 * b2 * b4 - 216 * b6) / 216

    @property
    def disc_std(self) -> Fraction:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def is_plain(self) -> bool:
        """True when the model already reads y^2 = f(x) (a1 = a3 = 0)."""
        a1, _, a3, _, _ = self.a_invariants
        return a1 == 0 and a3 == 0

    def __str__(self):
        body = ",".join(_fmt_q(c) for c in self.coeffs)
        return {"long": body, "short": f"[{body}]", "root": f"({body})"}[self.form]


def Long(a1, a2, a3, a4, a6) -> WeierstrassModel:
    return WeierstrassModel("long", (a1, a2, a3, a4, a6))


def Short(A, B) -> WeierstrassModel:
    return WeierstrassModel("short", (A, B))


def RootForm(r1, r2, r3) -> WeierstrassModel:
    return WeierstrassModel("root", (r1, r2, r3))


def _fmt_q(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


_MODEL_RE = re.compile(r"^\s*([\[\(]?)(.*?)([\]\)]?)\s*$")


def parse_model(text: str) -> WeierstrassModel:
    """Parse ``a1,a2,a3,a4,a6`` / ``[A,B]`` / ``(r1,r2,r3)``."""
    m = _MODEL_RE.match(text)
    opening, body, closing = m.groups()
    pairs = {"": "", "[": "]", "(": ")"}
    if pairs[opening] != closing:
        raise DomainError(f"unbalanced brackets in {text!r}")
    try:
        values = [Fraction(part.strip()) for part in body.split(",")]
    except ValueError as exc:
        raise DomainError(f"bad coefficient in {text!r}: {exc}") from None
    form = {"": "long", "[": "short", "(": "root"}[opening]
    return WeierstrassModel(form, tuple(values))


def depressed_short(m: WeierstrassModel) -> WeierstrassModel:
    """Translate x to kill the x^2 term of a y^2 = f(x) model (no rescaling)."""
    if not m.is_plain:
        raise DomainError("depressed_short needs a1 = a3 = 0")
    _, a2, _, a4, a6 = m.a_invariants
    A = a4 - a2 * a2 / 3
    B = a6 - a2 * a4 / 3 + 2 * a2**3 / 27
    return Short(A, B)


def to_short_form(m: WeierstrassModel) -> WeierstrassModel:
    """Short model y^2 = x^3 + Ax + B with A = -4 c4, B = -16 c6.

    Models that are already short (a1 = a2 = a3 = 0) are returned as
    ``Short(a4, a6)`` untouched; the general pipeline would rescale them by
    x -> 4x, y -> 8y, which is isomorphic but needlessly changes B.
    """
    a1, a2, a3, a4, a6 = m.a_invariants
    if a1 == 0 and a2 == 0 and a3 == 0:
        return Short(a4, a6)
    return Short(-4 * m.c4, -16 * m.c6)


def root_discriminant(r1, r2, r3) -> Fraction:
    r1, r2, r3 = Q(r1), Q(r2), Q(r3)
    return ((r1 - r2) * (r1 - r3) * (r2 - r3)) ** 2


@dataclass(frozen=True)
class Invariants:
    disc: Fraction
    disc_std: Fraction
    c4: Fraction
    c6: Fraction
    j: Fraction


def invariants(m: WeierstrassModel) -> Invariants:
    if m.form == "root":
        disc = root_discriminant(*m.coeffs)
    elif m.form == "short":
        A, B = m.coeffs
        disc = -16 * (4 * A**3 + 27 * B * B)
    else:
        disc = m.disc_std
    disc_std = m.disc_std
    if disc == 0:
        raise SingularCurve(f"discriminant vanishes for {m}")
    c4 = m.c4
    return Invariants(disc, disc_std, c4, m.c6, 1728 * c4**3 / disc_std)


def j_invariant(m: WeierstrassModel) -> Fraction:
    return invariants(m).j


# --- points and the group law ---


@dataclass(frozen=True)
class CurvePoint:
    x: Optional[object] = None
    y: Optional[object] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self):
        if self.is_infinity:
            return "O"
        return f"({self.x}, {self.y})"


INFINITY = CurvePoint()


class _Field:
    """Q when p is None, otherwise F_p with canonical representatives."""

    def __init__(self, p: Optional[int]):
        self.p = p

    def __call__(self, v):
        return Fraction(v) if self.p is None else mod_frac(v, self.p)

    def div(self, num, den):
        if self.p is None:
            return Fraction(num) / den
        return num * pow(den, -1, self.p) % self.p

    def norm(self, v):
        return v if self.p is None else v % self.p


def _coeffs_in(m: WeierstrassModel, field: _Field):
    return tuple(field(a) for a in m.a_invariants)


def on_curve(m: WeierstrassModel, P: CurvePoint, p: Optional[int] = None) -> bool:
    if P.is_infinity:
        return True
    F = _Field(p)
    a1, a2, a3, a4, a6 = _coeffs_in(m, F)
    x, y = F(P.x), F(P.y)
    lhs = y * y + a1 * x * y + a3 * y
    rhs = x**3 + a2 * x * x + a4 * x + a6
    return F.norm(lhs - rhs) == 0


def neg_point(m: WeierstrassModel, P: CurvePoint, p: Optional[int] = None) -> CurvePoint:
    if P.is_infinity:
        return P
    F = _Field(p)
    a1, _, a3, _, _ = _coeffs_in(m, F)
    x, y = F(P.x), F(P.y)
    return CurvePoint(x, F.norm(-y - a1 * x - a3))


def add_points(m: WeierstrassModel, P: CurvePoint, Q_: CurvePoint, p: Optional[int] = None) -> CurvePoint:
    """Chord-tangent addition, exactly over Q (``p=None``) or over F_p."""
    for pt in (P, Q_):
        if not on_curve(m, pt, p):
            raise OffCurve(f"{pt} is not on {m}")
    if P.is_infinity:
        return _canon(Q_, p)
    if Q_.is_infinity:
        return _canon(P, p)
    F = _Field(p)
    a1, a2, a3, a4, a6 = _coeffs_in(m, F)
    x1, y1, x2, y2 = F(P.x), F(P.y), F(Q_.x), F(Q_.y)
    if F.norm(x1 - x2) == 0:
        if F.norm(y1 + y2 + a1 * x2 + a3) == 0:
            return INFINITY
        # tangent slope from implicit differentiation
        lam = F.div(3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1, 2 * y1 + a1 * x1 + a3)
    else:
        lam = F.div(y2 - y1, x2 - x1)
    nu = y1 - lam * x1
    x3 = F.norm(lam * lam + a1 * lam - a2 - x1 - x2)
    y3 = F.norm(-(lam + a1) * x3 - nu - a3)
    return CurvePoint(x3, y3)


def _canon(P: CurvePoint, p: Optional[int]) -> CurvePoint:
    if P.is_infinity:
        return P
    F = _Field(p)
    return CurvePoint(F(P.x), F(P.y))


def scalar_mul(m: WeierstrassModel, k: int, P: CurvePoint, p: Optional[int] = None) -> CurvePoint:
    if not on_curve(m, P, p):
        raise OffCurve(f"{P} is not on {m}")
    if k < 0:
        return scalar_mul(m, -k, neg_point(m, P, p), p)
    result, addend = INFINITY, _canon(P, p)
    while k:
        if k & 1:
            result = add_points(m, result, addend, p)
        addend = add_points(m, addend, addend, p)
        k >>= 1
    return result


def points_mod_p(m: WeierstrassModel, p: int) -> Iterator[CurvePoint]:
    """Every affine point of the reduction mod p (brute force, small p only)."""
    yield INFINITY
    F = _Field(p)
    a1, a2, a3, a4, a6 = _coeffs_in(m, F)
    for x in range(p):
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - (x**3 + a2 * x * x + a4 * x + a6)) % p == 0:
                yield CurvePoint(x, y)


# --- 2-torsion ---


def _monic_cubic(m: WeierstrassModel) -> tuple[Fraction, Fraction, Fraction]:
    """(a, b, c) with the model isomorphic to y^2 = x^3 + a x^2 + b x + c.

    Completes the square in y; the x-coordinate is unchanged.
    """
    b2, b4, b6, _ = m.b_invariants
    return b2 / 4, b4 / 2, b6 / 4


def _rational_roots(a: Fraction, b: Fraction, c: Fraction) -> list[Fraction]:
    """Rational roots of x^3 + a x^2 + b x + c, each checked exactly."""
    D = math.lcm(a.denominator, b.denominator, c.denominator)
    # X = D x is a root of the monic integer cubic X^3 + Da X^2 + D^2 b X + D^3 c.
    ca, cb, cc = int(D * a), int(D * D * b), int(D**3 * c)

    def g(X: int) -> int:
        return ((X + ca) * X + cb) * X + cc

    found: set[int] = set()
    if cc == 0:
        found.add(0)
    for r in np.roots([1.0, float(ca), float(cb), float(cc)]):
        if abs(r.imag) > 1e-6 * max(1.0, abs(r.real)):
            continue
        guess = round(r.real)
        for X in range(guess - 2, guess + 3):
            if g(X) == 0:
                found.add(X)
    if len(found) == 2:
        found.add(-ca - sum(found))
    return sorted(Fraction(X, D) for X in found)


@dataclass(frozen=True)
class TwoTorsion:
    points: tuple[CurvePoint, ...]
    structure: str


def two_torsion(m: WeierstrassModel) -> TwoTorsion:
    a1, _, a3, _, _ = m.a_invariants
    pts = [INFINITY]
    for r in _rational_roots(*_monic_cubic(m)):
        pts.append(CurvePoint(r, -(a1 * r + a3) / 2))
    structure = {1: "trivial", 2: "Z/2", 4: "Z/2+Z/2"}[len(pts)]
    return TwoTorsion(tuple(pts), structure)


# --- reduction theory ---


class ReductionType(enum.Enum):
    Good = "good"
    MultiplicativeSplit = "split multiplicative"
    MultiplicativeNonsplit = "nonsplit multiplicative"
    Additive = "additive"

    @property
    def is_multiplicative(self) -> bool:
        return self in (ReductionType.MultiplicativeSplit, ReductionType.MultiplicativeNonsplit)

    @property
    def is_bad(self) -> bool:
        return self is not ReductionType.Good


def _check_integral(m: WeierstrassModel, p: int) -> None:
    for a in m.a_invariants:
        if a.denominator % p == 0:
            raise NonIntegralModel(f"coefficient {a} of {m} is not integral at {p}")


def cubic_mod_p(m: WeierstrassModel, p: int) -> tuple[int, int, int]:
    """Coefficients (a, b, c) of the monic cubic f with E: y^2 = f(x) mod p."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    _check_integral(m, p)
    if p == 2:
        if not m.is_plain:
            raise UnsupportedPrime("p = 2 needs a model of the form y^2 = f(x)")
        _, a2, _, a4, a6 = m.a_invariants
        return mod_frac(a2, 2), mod_frac(a4, 2), mod_frac(a6, 2)
    return tuple(mod_frac(v, p) for v in _monic_cubic(m))


def _cubic_disc(a, b, c):
    return a * a * b * b - 4 * b**3 - 4 * a**3 * c - 27 * c * c + 18 * a * b * c


def _root_multiplicity(coeffs: list[int], r: int, p: int) -> int:
    """How often (x - r) divides the polynomial (high-to-low coefficients) mod p."""
    k = 0
    while len(coeffs) > 1:
        quotient, acc = [], 0
        for co in coeffs:
            acc = (acc * r + co) % p
            quotient.append(acc)
        if quotient.pop() != 0:
            break
        coeffs = quotient
        k += 1
    return k


def _node_roots(a: int, b: int, c: int, p: int) -> tuple[int, int] | None:
    """(double root, simple root) of a cubic with a repeated root mod p; None if triple."""
    if p == 2:
        mult = {x: _root_multiplicity([1, a, b, c], x, 2) for x in range(2)}
        if 3 in mult.values():
            return None
        double = next(x for x, k in mult.items() if k == 2)
        return double, (-a - 2 * double) % 2
    den = (2 * a * a - 6 * b) % p
    if den == 0:
        return None
    x0 = (9 * c - a * b) * pow(den, -1, p) % p
    return x0, (-a - 2 * x0) % p


def reduction_type(m: WeierstrassModel, p: int) -> ReductionType:
    """Classify the reduction of ``m`` at ``p`` from the roots of y^2 = f(x) mod p.

    Good when f has distinct roots, additive for a triple root, multiplicative
    for a node; split when (double root - simple root) is a nonzero square.
    For p >= 5 this agrees with the c4 test (p | c4 <=> additive).  At p = 2
    only models already written as y^2 = f(x) are accepted.
    """
    a, b, c = cubic_mod_p(m, p)
    if _cubic_disc(a, b, c) % p:
        return ReductionType.Good
    node = _node_roots(a, b, c, p)
    if node is None:
        return ReductionType.Additive
    x0, x1 = node
    slope_sq = (x0 - x1) % p
    square = slope_sq == 1 if p == 2 else legendre_symbol(slope_sq, p) == 1
    return ReductionType.MultiplicativeSplit if square else ReductionType.MultiplicativeNonsplit


def bad_primes(m: WeierstrassModel) -> list[int]:
    if m.is_plain:
        a, b, c = _monic_cubic(m)
        d = _cubic_disc(a, b, c)
    else:
        d = m.disc_std
    if d == 0:
        raise SingularCurve(f"{m} is singular")
    for a_i in m.a_invariants:
        if a_i.denominator != 1:
            raise NonIntegralModel(f"{m} is not integral")
    return sorted(factorize(d.numerator))


def conductor_exponents(m: WeierstrassModel) -> dict[int, int]:
    """f_p at each bad prime: 1 multiplicative, 2 additive (p >= 5 only)."""
    out = {}
    for p in bad_primes(m):
        rt = reduction_type(m, p)
        if rt is ReductionType.Good:
            continue
        if rt is ReductionType.Additive:
            if p in (2, 3):
                raise UnsupportedAdditiveSmallPrime(f"additive reduction at {p}: wild part not implemented")
            out[p] = 2
        else:
            out[p] = 1
    return out


def conductor_from_exponents(exps: dict[int, int]) -> int:
    n = 1
    for p, e in exps.items():
        n *= p**e
    return n


def conductor(m: WeierstrassModel) -> int:
    return conductor_from_exponents(conductor_exponents(m))


def is_semistable(m: WeierstrassModel) -> bool:
    return all(e == 1 for e in conductor_exponents(m).values())


# --- Frey curves ---


@dataclass(frozen=True)
class FreyData:
    a: int
    b: int
    c: int
    P: int
    model: WeierstrassModel
    disc: int
    conductor: int
    reductions: dict

    def as_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "P": self.P,
            "model": str(self.model),
            "disc": self.disc,
            "conductor": self.conductor,
            "reductions": {str(p): rt.value for p, rt in sorted(self.reductions.items())},
        }


def frey_curve(a: int, b: int, c: int, P: int) -> FreyData:
    """y^2 = x (x - a^P)(x + b^P) for a^P + b^P = c^P."""
    if P < 1:
        raise DomainError("exponent must be positive")
    if a * b * c == 0:
        raise NotAFermatTriple("abc must be nonzero")
    if a**P + b**P != c**P:
        raise NotAFermatTriple(f"{a}^{P} + {b}^{P} != {c}^{P}")
    if gcd(a, b) != 1 or gcd(b, c) != 1 or gcd(a, c) != 1:
        raise NotCoprime(f"{a}, {b}, {c} are not pairwise coprime")
    model = RootForm(0, a**P, -(b**P))
    disc = root_discriminant(*model.coeffs)
    expected = (a * b * c) ** (2 * P)
    if disc != expected:
        raise AssertionError(f"root discriminant {disc} != (abc)^(2P) = {expected}")
    # Root differences are a^P, b^P, c^P: pairwise coprime, so no prime can
    # merge all three roots.  This covers 2 and 3 where the c4 test is silent.
    reductions = {}
    for p in factorize(a * b * c):
        rt = reduction_type(model, p)
        if rt is ReductionType.Additive:
            raise AssertionError(f"Frey curve additive at {p}")
        reductions[p] = rt
    N = radical(abs(a * b * c))
    if conductor(model) != N:
        raise AssertionError("conductor disagrees with rad(abc)")
    return FreyData(a, b, c, P, model, int(disc), N, reductions)
