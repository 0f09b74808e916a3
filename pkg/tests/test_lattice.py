"""Lattice sums, the p-function and the torus.

Oracle: Jacobi theta functions from mpmath give p(z), g2 and g3 for the
lattice Z + tau Z independently of any lattice summation.
"""
import cmath
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fltkit.errors import DomainError, NearPole
from fltkit.lattice import (
    INFINITY,
    LatticeSpec,
    TorusPoint,
    eisenstein_Gk_numeric,
    g2_g3,
    half_period_values,
    hexagonal_lattice,
    homomorphism_error,
    ode_residual,
    square_lattice,
    tate_truncation,
    torus_to_curve,
    torus_torsion,
    wp_eval,
)


def theta_oracle(tau, z):
    q = mp.exp(1j * mp.pi * tau)
    t2, t3, t4 = (mp.jtheta(k, 0, q) for k in (2, 3, 4))
    wp = (mp.pi * t2 * t3 * mp.jtheta(4, mp.pi * z, q) / mp.jtheta(1, mp.pi * z, q)) ** 2 - mp.pi**2 / 3 * (t2**4 + t3**4)
    g2 = mp.mpf(2) / 3 * mp.pi**4 * (t2**8 + t3**8 + t4**8)
    g3 = mp.mpf(4) / 27 * mp.pi**6 * (t2**4 + t3**4) * (t3**4 + t4**4) * (t4**4 - t2**4)
    return complex(wp), complex(g2), complex(g3)


LATTICES = [square_lattice(), hexagonal_lattice(), LatticeSpec(1, 0.3 + 1.7j), LatticeSpec(2, 0.7 + 0.4j)]


def sample_points(L, n, seed=0):
    rng = np.random.default_rng(seed)
    return [L.point(*rng.uniform(0.05, 0.95, 2)) for _ in range(n)]


@pytest.mark.parametrize("L", LATTICES)
def test_against_theta_oracle(L):
    g2, g3 = g2_g3(L)
    for z in sample_points(L, 5):
        wp, og2, og3 = theta_oracle(L.tau, z / L.w1)
        w = L.w1
        assert abs(wp_eval(L, z).wp - wp / w**2) < 1e-9 * max(1, abs(wp))
        assert abs(g2 - og2 / w**4) < 1e-9 * max(1, abs(og2))
        assert abs(g3 - og3 / w**6) < 1e-9 * max(1, abs(og3))


def test_special_values():
    sq, hx = square_lattice(), hexagonal_lattice()
    assert abs(eisenstein_Gk_numeric(sq, 6).value) < 1e-10
    assert abs(eisenstein_Gk_numeric(hx, 4).value) < 1e-10
    # lemniscatic case: G4(Z[i]) = Gamma(1/4)^8 / (960 pi^2)
    assert abs(eisenstein_Gk_numeric(sq, 4).value - float(mp.gamma(0.25) ** 8 / (960 * mp.pi**2))) < 1e-10
    assert eisenstein_Gk_numeric(sq, 5).value == 0
    with pytest.raises(DomainError):
        eisenstein_Gk_numeric(sq, 2)


@given(st.floats(min_value=0.3, max_value=3), st.floats(min_value=-3, max_value=3), st.sampled_from([4, 6, 8]))
def test_scaling_covariance(r, theta, k):
    L = LatticeSpec(1, 0.2 + 1.1j)
    lam = r * cmath.exp(1j * theta)
    base = eisenstein_Gk_numeric(L, k).value
    scaled = eisenstein_Gk_numeric(L.scaled(lam), k).value
    assert abs(scaled - lam ** (-k) * base) <= 1e-8 * abs(lam ** (-k) * base)


@pytest.mark.parametrize("L", [square_lattice(), hexagonal_lattice()])
def test_ode_and_symmetries(L):
    for z in sample_points(L, 20):
        assert ode_residual(L, z) < 1e-6
        v, m = wp_eval(L, z), wp_eval(L, -z)
        assert abs(v.wp - m.wp) < 1e-6
        assert abs(v.dwp + m.dwp) < 1e-6
        for w in (L.w1, L.w2, L.w1 - 3 * L.w2):
            assert abs(wp_eval(L, z + w).wp - v.wp) < 1e-6


def test_shell_sums_converge():
    L = square_lattice(method="shells")
    pts = sample_points(L, 20, seed=3)
    res = [max(ode_residual(L.with_radius(R), z) for z in pts) for R in (10, 20, 40)]
    assert res[0] > res[1] > res[2]


def test_methods_agree():
    z = 0.23 + 0.41j
    rows = wp_eval(square_lattice(), z).wp
    shells = wp_eval(square_lattice(160, method="shells"), z).wp
    assert abs(rows - shells) < 1e-3


def test_near_pole():
    with pytest.raises(NearPole):
        wp_eval(square_lattice(), 1 + 1j + 1e-10)


def test_half_periods_distinct():
    for L in LATTICES:
        e = half_period_values(L)
        assert min(abs(e[i] - e[j]) for i, j in ((0, 1), (0, 2), (1, 2))) > 1e-6
        # they are the roots of 4x^3 - g2 x - g3
        g2, g3 = g2_g3(L)
        assert abs(sum(e)) < 1e-8 * max(1, max(map(abs, e)))
        assert all(abs(4 * x**3 - g2 * x - g3) < 1e-7 * max(1, abs(g2 * x)) for x in e)


@pytest.mark.parametrize("L", [square_lattice(), hexagonal_lattice()])
def test_homomorphism(L):
    rng = np.random.default_rng(7)
    for _ in range(50):
        a = TorusPoint(*rng.uniform(0, 1, 2))
        b = TorusPoint(*rng.uniform(0, 1, 2))
        assert homomorphism_error(L, a, b) < 1e-6


def test_zero_maps_to_infinity():
    assert torus_to_curve(square_lattice(), TorusPoint(0, 0)) is INFINITY
    assert homomorphism_error(square_lattice(), TorusPoint(0.25, 0.5), TorusPoint(0.75, 0.5)) == 0.0


@pytest.mark.parametrize("n", range(1, 7))
def test_torsion(n):
    g = torus_torsion(square_lattice(), n)
    assert len(set(g.points)) == n * n
    assert all(x.order() == n for x in g.generators)
    assert all(p.scale(n).is_zero() for p in g.points)


def test_torus_point_arithmetic():
    a = TorusPoint(Fraction(2, 3), Fraction(1, 2))
    assert (a + (-a)).is_zero()
    assert a.order() == 6
    assert TorusPoint(Fraction(5, 4), Fraction(-1, 4)) == TorusPoint(Fraction(1, 4), Fraction(3, 4))


@pytest.mark.parametrize("ell, depth", [(2, 3), (3, 3), (5, 2)])
def test_tate(ell, depth):
    r = tate_truncation(ell, depth)
    assert r.level_sizes == {n: ell ** (2 * n) for n in range(1, depth + 1)}
    assert all(r.transitions_surjective.values())
    assert r.generators_compatible and r.free and r.rank == 2 and r.sample_sequences_ok


def test_lattice_spec_validation():
    with pytest.raises(DomainError):
        LatticeSpec(1, 2)
    with pytest.raises(DomainError):
        LatticeSpec(1, 1j, method="other")
