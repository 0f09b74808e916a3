"""Complex lattices, Eisenstein sums and the Weierstrass p-function.

Two summation engines are available for every lattice sum:

``rows`` (default)
    The lattice is rebased so tau = w2/w1 lies in the SL2(Z) fundamental
    domain, then summed row by row: each row {m + n tau : m in Z} is summed
    exactly (cosecant identities, Lipschitz formula) and ``radius`` bounds
    |n|.  Row contributions decay like exp(-2 pi |n| Im tau), so R = 10 is
    already at double precision.

``shells``
    Direct partial sums over |k1| + |k2| <= R.  The tail decays only like
    R^-2; kept as the plain definition and for convergence studies.

Both are rearrangements of absolutely convergent series and converge to the
same values.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import DomainError, NearPole
from .exactnum import LAdicTrunc, is_prime
from .matrix2 import UpperHalfPoint, fundamental_reduce

CURVE_TOL = 1e-6
POINT_TOL = 1e-8
POLE_GUARD = 1e-8
DEFAULT_RADIUS = 40


@dataclass(frozen=True)
class LatticeSpec:
    w1: complex
    w2: complex
    radius: int = DEFAULT_RADIUS
    method: str = "rows"

    def __post_init__(self):
        object.__setattr__(self, "w1", complex(self.w1))
        object.__setattr__(self, "w2", complex(self.w2))
        if self.w1 == 0 or (self.w2 / self.w1).imag <= 0:
            raise DomainError("need Im(w2/w1) > 0")
        if self.radius < 1:
            raise DomainError("radius must be positive")
        if self.method not in ("rows", "shells"):
            raise DomainError(f"unknown summation method {self.method!r}")

    @property
    def tau(self) -> complex:
        return self.w2 / self.w1

    def with_radius(self, radius: int) -> "LatticeSpec":
        return LatticeSpec(self.w1, self.w2, radius, self.method)

    def scaled(self, lam: complex) -> "LatticeSpec":
        return LatticeSpec(lam * self.w1, lam * self.w2, self.radius, self.method)

    def coords(self, z: complex) -> tuple[float, float]:
        """Real coordinates (t1, t2) with z = t1 w1 + t2 w2."""
        m = np.array([[self.w1.real, self.w2.real], [self.w1.imag, self.w2.imag]])
        t1, t2 = np.linalg.solve(m, [z.real, z.imag])
        return float(t1), float(t2)

    def point(self, t1: float, t2: float) -> complex:
        return float(t1) * self.w1 + float(t2) * self.w2


def square_lattice(radius: int = DEFAULT_RADIUS, method: str = "rows") -> LatticeSpec:
    return LatticeSpec(1, 1j, radius, method)


def hexagonal_lattice(radius: int = DEFAULT_RADIUS, method: str = "rows") -> LatticeSpec:
    return LatticeSpec(1, cmath.exp(2j * math.pi / 3), radius, method)


@dataclass(frozen=True)
class Estimate:
    value: complex
    error: float


@lru_cache(maxsize=None)
def _reduced_basis(w1: complex, w2: complex) -> tuple[complex, complex]:
    """An equivalent basis (u1, u2) with u2/u1 in the fundamental domain."""
    _, g = fundamental_reduce(UpperHalfPoint.from_complex(w2 / w1))
    # tau' = (a tau + b)/(c tau + d) corresponds to the basis (c w2 + d w1, a w2 + b w1)
    u1 = g.c * w2 + g.d * w1
    u2 = g.a * w2 + g.b * w1
    return u1, u2


def _bernoulli(n: int) -> Fraction:
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(math.comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return B[n]


def zeta_even(k: int) -> float:
    """zeta(k) for even k >= 2 from Bernoulli numbers."""
    return float((-1) ** (k // 2 + 1) * _bernoulli(k) * (2 * math.pi) ** k / (2 * math.factorial(k)))


def _row_power_sum(w: complex, k: int, tol: float = 1e-18) -> complex:
    """sum_{m in Z} (w + m)^-k for Im w > 0 (Lipschitz formula)."""
    q = cmath.exp(2j * math.pi * w)
    total, r, qr = 0j, 1, q
    while True:
        term = r ** (k - 1) * qr
        total += term
        if abs(term) < tol * max(abs(total), 1e-300) or r > 10_000:
            break
        r += 1
        qr *= q
    return (-2j * math.pi) ** k / math.factorial(k - 1) * total


def _shell_points(L: LatticeSpec, radius: int) -> np.ndarray:
    k = np.arange(-radius, radius + 1)
    K1, K2 = np.meshgrid(k, k)
    mask = (np.abs(K1) + np.abs(K2) <= radius) & ~((K1 == 0) & (K2 == 0))
    return K1[mask] * L.w1 + K2[mask] * L.w2


def _gk_value(L: LatticeSpec, k: int, radius: int) -> complex:
    if L.method == "shells":
        return complex(np.sum(_shell_points(L, radius) ** (-k)))
    u1, u2 = _reduced_basis(L.w1, L.w2)
    tau = u2 / u1
    total = 2 * zeta_even(k)
    for n in range(1, radius + 1):
        total += 2 * _row_power_sum(n * tau, k)
    return total * u1 ** (-k)


def eisenstein_Gk_numeric(L: LatticeSpec, k: int) -> Estimate:
    """G_k(L) = sum over nonzero w in L of w^-k, with a truncation error estimate."""
    if k < 3:
        raise DomainError("G_k diverges for k < 3")
    if k % 2:
        return Estimate(0j, 0.0)
    value = _gk_value(L, k, L.radius)
    coarser = _gk_value(L, k, max(1, L.radius // 2))
    return Estimate(value, abs(value - coarser))


def g2_g3(L: LatticeSpec) -> tuple[complex, complex]:
    return 60 * eisenstein_Gk_numeric(L, 4).value, 140 * eisenstein_Gk_numeric(L, 6).value


def distance_to_lattice(L: LatticeSpec, z: complex) -> float:
    """Distance from z to the nearest lattice point, in basis coordinates."""
    t1, t2 = L.coords(z)
    return math.hypot(t1 - round(t1), t2 - round(t2))


def _csc2(w: complex) -> complex:
    # pi^2 csc^2(pi w) and its derivative, written via exp to stay finite far from the real axis
    if w.imag >= 0:
        x = cmath.exp(2j * math.pi * w)
        sign = 1
    else:
        x = cmath.exp(-2j * math.pi * w)
        sign = -1
    one_minus = 1 - x
    val = -4 * math.pi**2 * x / one_minus**2
    # d/dw of -4 pi^2 x/(1-x)^2 with dx/dw = 2 pi i sign x
    deriv = -4 * math.pi**2 * (2j * math.pi * sign * x) * (1 + x) / one_minus**3
    return val, deriv


def _wp_rows(L: LatticeSpec, z: complex, radius: int) -> tuple[complex, complex]:
    u1, u2 = _reduced_basis(L.w1, L.w2)
    tau = u2 / u1
    s = z / u1
    # recentre s into the fundamental parallelogram; wp is L-periodic
    t1, t2 = LatticeSpec(1, tau).coords(s)
    s = s - round(t1) - round(t2) * tau
    c0, d0 = _csc2(s)
    wp = c0 - math.pi**2 / 3
    dwp = d0
    for n in range(1, radius + 1):
        for sgn in (1, -1):
            c, d = _csc2(s - sgn * n * tau)
            c_ref, _ = _csc2(sgn * n * tau)
            wp += c - c_ref
            dwp += d
    return wp / u1**2, dwp / u1**3


def _wp_shells(L: LatticeSpec, z: complex, radius: int) -> tuple[complex, complex]:
    w = _shell_points(L, radius)
    wp = 1 / z**2 + np.sum(1 / (z - w) ** 2 - 1 / w**2)
    dwp = -2 / z**3 - 2 * np.sum(1 / (z - w) ** 3)
    return complex(wp), complex(dwp)


def _wp(L: LatticeSpec, z: complex, radius: int):
    return (_wp_rows if L.method == "rows" else _wp_shells)(L, z, radius)


@dataclass(frozen=True)
class WpValue:
    wp: complex
    dwp: complex
    wp_error: float
    dwp_error: float


def wp_eval(L: LatticeSpec, z: complex) -> WpValue:
    """Weierstrass p and p' at z, with successive-truncation error estimates."""
    z = complex(z)
    if distance_to_lattice(L, z) < POLE_GUARD:
        raise NearPole(f"{z} is within {POLE_GUARD} of a lattice point")
    wp, dwp = _wp(L, z, L.radius)
    wp2, dwp2 = _wp(L, z, max(1, L.radius // 2))
    return WpValue(wp, dwp, abs(wp - wp2), abs(dwp - dwp2))


def ode_residual(L: LatticeSpec, z: complex) -> float:
    """|p'^2 - 4 p^3 + 60 G4 p + 140 G6| at z."""
    v = wp_eval(L, z)
    g2, g3 = g2_g3(L)
    return abs(v.dwp**2 - 4 * v.wp**3 + g2 * v.wp + g3)


# --- the torus C/L and its image on the cubic ---


@dataclass(frozen=True)
class TorusPoint:
    """z = t1 w1 + t2 w2 mod L, coordinates canonical in [0, 1)."""

    t1: object
    t2: object

    def __post_init__(self):
        object.__setattr__(self, "t1", self.t1 % 1)
        object.__setattr__(self, "t2", self.t2 % 1)

    def __add__(self, other: "TorusPoint") -> "TorusPoint":
        return TorusPoint(self.t1 + other.t1, self.t2 + other.t2)

    def __neg__(self):
        return TorusPoint(-self.t1, -self.t2)

    def scale(self, n: int) -> "TorusPoint":
        return TorusPoint(n * self.t1, n * self.t2)

    def is_zero(self) -> bool:
        return self.t1 == 0 and self.t2 == 0

    def order(self) -> int:
        """Additive order for rational coordinates."""
        a, b = Fraction(self.t1), Fraction(self.t2)
        return math.lcm(a.denominator, b.denominator)

    def to_complex(self, L: LatticeSpec) -> complex:
        return L.point(self.t1, self.t2)


@dataclass(frozen=True)
class TorsionGroup:
    n: int
    points: tuple[TorusPoint, ...]
    generators: tuple[TorusPoint, TorusPoint]
    structure: str


def torus_torsion(L: LatticeSpec | None, n: int) -> TorsionGroup:
    """E[n] = (1/n)L / L, i.e. the n^2 points (j/n, k/n)."""
    if n < 1:
        raise DomainError("n must be positive")
    pts = tuple(TorusPoint(Fraction(j, n), Fraction(k, n)) for j, k in product(range(n), repeat=2))
    gens = (TorusPoint(Fraction(1, n), Fraction(0)), TorusPoint(Fraction(0), Fraction(1, n)))
    return TorsionGroup(n, pts, gens, f"Z/{n}+Z/{n}")


INFINITY = None


def torus_to_curve(L: LatticeSpec, t: TorusPoint):
    """z + L -> (p(z), p'(z)) on y^2 = 4x^3 - g2 x - g3; zero maps to infinity."""
    if t.is_zero():
        return INFINITY
    v = wp_eval(L, t.to_complex(L))
    return (v.wp, v.dwp)


def numeric_curve_add(g2: complex, g3: complex, P, Q):
    """Chord-tangent law on y^2 = 4x^3 - g2 x - g3 in floating point."""
    if P is INFINITY:
        return Q
    if Q is INFINITY:
        return P
    (x1, y1), (x2, y2) = P, Q
    scale = max(1.0, abs(x1), abs(x2))
    if abs(x1 - x2) <= 1e-12 * scale:
        if abs(y1 + y2) <= 1e-9 * max(1.0, abs(y1)):
            return INFINITY
        lam = (12 * x1 * x1 - g2) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    nu = y1 - lam * x1
    # 4x^3 - lam^2 x^2 - ... : roots sum to lam^2 / 4
    x3 = lam * lam / 4 - x1 - x2
    return (x3, -(lam * x3 + nu))


def homomorphism_error(L: LatticeSpec, a: TorusPoint, b: TorusPoint) -> float:
    """Relative gap between Phi(a + b) and Phi(a) (+) Phi(b)."""
    g2, g3 = g2_g3(L)
    lhs = torus_to_curve(L, a + b)
    rhs = numeric_curve_add(g2, g3, torus_to_curve(L, a), torus_to_curve(L, b))
    if lhs is INFINITY or rhs is INFINITY:
        return 0.0 if lhs is rhs else math.inf
    return max(abs(u - v) / max(1.0, abs(u)) for u, v in zip(lhs, rhs))


def half_period_values(L: LatticeSpec) -> tuple[complex, complex, complex]:
    return tuple(wp_eval(L, z).wp for z in (L.w1 / 2, L.w2 / 2, (L.w1 + L.w2) / 2))


# --- truncated Tate modules on the torus model ---


@dataclass
class TateReport:
    prime: int
    depth: int
    level_sizes: dict
    transitions_surjective: dict
    generators_compatible: bool
    rank: int
    free: bool
    sample_sequences_ok: bool

    def as_dict(self) -> dict:
        return {
            "prime": self.prime,
            "depth": self.depth,
            "level_sizes": {str(k): v for k, v in self.level_sizes.items()},
            "transitions_surjective": {str(k): v for k, v in self.transitions_surjective.items()},
            "generators_compatible": self.generators_compatible,
            "rank": self.rank,
            "free": self.free,
            "sample_sequences_ok": self.sample_sequences_ok,
        }


def tate_truncation(ell: int, depth: int, samples: int = 20, seed: int = 0) -> TateReport:
    """Check the tower E[l] <- E[l^2] <- ... <- E[l^depth] under multiplication by l.

    Points of E[l^n] are pairs (j, k) mod l^n standing for (j/l^n, k/l^n).
    Multiplication by l sends E[l^(n+1)] to E[l^n] and, in these
    coordinates, is reduction mod l^n.
    """
    if not is_prime(ell) or ell > 5:
        raise DomainError("tate_truncation supports l in {2, 3, 5}")
    if not 1 <= depth <= 6:
        raise DomainError("depth must be in 1..6")
    sizes, surjective = {}, {}
    for n in range(1, depth + 1):
        group = torus_torsion(None, ell**n)
        sizes[n] = len(group.points)
        if n > 1:
            image = {p.scale(ell) for p in torus_torsion(None, ell**n).points}
            lower = set(torus_torsion(None, ell ** (n - 1)).points)
            surjective[n] = image == lower
    gens_ok = all(
        torus_torsion(None, ell ** (n + 1)).generators[i].scale(ell) == torus_torsion(None, ell**n).generators[i]
        for n in range(1, depth)
        for i in (0, 1)
    )
    # a (Z/l^d)^2-basis: the map (a, b) -> a P + b Q must hit every point exactly once
    top = torus_torsion(None, ell**depth)
    P, Qg = top.generators
    images = {P.scale(a) + Qg.scale(b) for a, b in product(range(ell**depth), repeat=2)}
    free = len(images) == ell ** (2 * depth) == len(top.points)
    rank = 2 if free and P.order() == Qg.order() == ell**depth else 0
    # compatible sequences from l-adic coordinates: P_n = (a_n / l^n, b_n / l^n)
    rng = np.random.default_rng(seed)
    seq_ok = True
    for _ in range(samples):
        a = LAdicTrunc.from_top(int(rng.integers(0, ell**depth)), ell, depth)
        b = LAdicTrunc.from_top(int(rng.integers(0, ell**depth)), ell, depth)
        pts = [TorusPoint(Fraction(a.digits[n], ell ** (n + 1)), Fraction(b.digits[n], ell ** (n + 1))) for n in range(depth)]
        seq_ok &= all(pts[n + 1].scale(ell) == pts[n] for n in range(depth - 1))
        seq_ok &= all(p.scale(ell ** (n + 1)).is_zero() for n, p in enumerate(pts))
    return TateReport(ell, depth, sizes, surjective, gens_ok, rank, free, seq_ok)
