import cmath
import math
from fractions import Fraction as F

import numpy as np
import pytest
from scipy.linalg import expm

from sp4ps.exact import ExactScalar, HalfInt, half_range
from sp4ps.wigner import (EulerAngles, OutOfRange, WignerIndex, c_factor,
                          clebsch_gordan_j1, dl_gamma, dr_gamma,
                          euler_from_u2, jacobi_genfun_check, jacobi_hyp,
                          jacobi_sum, little_d, product_expand, su2_matrix,
                          wigner_D, wigner_D_matrix, wigner_via_jacobi)

_G = {
    "g0": np.array([[0.5j, 0], [0, 0.5j]]),
    "g1": np.array([[0, 0.5j], [0.5j, 0]]),
    "g2": np.array([[0, 0.5], [-0.5, 0]]),
    "g3": np.array([[0.5j, 0], [0, -0.5j]]),
}


def _wig(idx, u):
    return wigner_D(idx, EulerAngles(*euler_from_u2(u)))


# ---------------------------------------------------------------------------
# Jacobi polynomials
# ---------------------------------------------------------------------------

def test_jacobi_sum_examples():
    assert jacobi_sum(0, F(3), F(-1, 2), F(1, 4)) == 1
    assert jacobi_sum(1, F(0), F(0), F(5, 9)) == F(5, 9)     # P1^{(0,0)} = x
    # brute-forced from the Gamma-sum definition
    assert jacobi_sum(2, F(1), F(1), F(0)) == F(-3, 4)


def test_jacobi_hyp_examples():
    assert jacobi_hyp(0, F(2), F(5), F(1, 3)) == 1
    assert jacobi_hyp(1, F(0), F(0), F(1, 2)) == jacobi_sum(1, F(0), F(0), F(1, 2)) == F(1, 2)
    assert jacobi_hyp(3, F(2), F(-1), F(1)) == 10            # binom(5,3) at x=1
    # reflection value at x = -1
    assert jacobi_hyp(2, F(1), F(3), F(-1)) == 10            # (-1)^2 binom(5,2)


def test_jacobi_sum_equals_hyp(rng):
    done = 0
    while done < 50:
        n = rng.randrange(0, 11)
        al = F(rng.randrange(-6, 7), rng.choice([1, 2, 3]))
        be = F(rng.randrange(-6, 7), rng.choice([1, 2, 3]))
        x = F(rng.randrange(-9, 10), rng.choice([2, 3, 4, 5]))
        try:
            a = jacobi_sum(n, al, be, x)
            b = jacobi_hyp(n, al, be, x)
        except Exception:
            continue
        done += 1
        assert a == b, (n, al, be, x)


def test_jacobi_genfun_check():
    assert jacobi_genfun_check(3, 2, F(1, 2), 0)
    assert jacobi_genfun_check(2, 1, F(1, 2), 3)
    assert jacobi_genfun_check(-1, 3, F(0), 4)


# ---------------------------------------------------------------------------
# little d and the full D-function
# ---------------------------------------------------------------------------

def test_little_d_special_values():
    # single p = 0 term: cos^{2j}(theta/2)/(2j)!
    for tj in (2, 3, 5):
        j = HalfInt(tj)
        d = little_d(j, j, j, F(1, 2))
        expect = ExactScalar.sqrt_rational(F(1, 2)) ** tj / math.factorial(tj)
        assert d == expect
    # theta = 0 collapses to the Kronecker delta over (j+m)!(j-m)!
    assert little_d(2, 1, 1, F(0)) == ExactScalar(F(1, math.factorial(3) * math.factorial(1)))
    assert little_d(2, 1, -1, F(0)).is_zero()
    # two cancelling terms at theta = pi/2
    assert little_d(1, 0, 0, F(1, 2)).is_zero()


def test_wigner_D_identity_and_axis_values():
    ang0 = EulerAngles.pi_units(0, 0, 0, 0)
    for (j, n, m1, m2) in [(1, 0, 1, 1), (2, 1, -1, -1), (2, 0, 1, -1)]:
        v = wigner_D(WignerIndex.of(j, n, m1, m2), ang0)
        assert v == ExactScalar(1 if m1 == m2 else 0)
    # W(zeta,psi,0,0) = e^{i n zeta + i m1 psi} delta_{m1,m2}
    ang = EulerAngles.pi_units(F(1, 2), F(1), 0, 0)
    idx = WignerIndex.of(2, 1, 1, 1)
    assert wigner_D(idx, ang) == ExactScalar.i_power(1) * ExactScalar(-1)
    angf = EulerAngles(0.37, -1.1, 0.0, 0.0)
    v = wigner_D(idx, angf)
    assert abs(v - cmath.exp(1j * (0.37 - 1.1))) < 1e-12
    assert abs(wigner_D(WignerIndex.of(2, 1, 1, -1), angf)) < 1e-12


def test_wigner_D_theta_pi():
    idx = WignerIndex.of(1, 1, 1, -1)
    v = wigner_D(idx, EulerAngles.pi_units(0, 0, 1, 0))
    # brute force from the d-sum: c c * single surviving term
    d = little_d(1, 1, -1, F(1))
    assert v == c_factor(HalfInt.of(1), HalfInt.of(1)) ** 2 * d
    assert v == ExactScalar(1)   # single p=2 term: sqrt2*sqrt2*(1/2)


def test_wigner_via_jacobi_matches_little_d(rng):
    # exact at theta in {0, pi} (where the prefactor powers are defined)
    for tj in range(0, 11):
        j = HalfInt(tj)
        for m1 in half_range(-j, j):
            for m2 in half_range(-j, j):
                if (m1 - m2).as_int() >= 0:
                    assert wigner_via_jacobi(j, m1, m2, F(0)) == little_d(j, m1, m2, F(0))
                if (m1 + m2).as_int() >= 0:
                    assert wigner_via_jacobi(j, m1, m2, F(1)) == little_d(j, m1, m2, F(1))
    # float tolerance on interior angles
    for _ in range(60):
        tj = rng.randrange(0, 11)
        j = HalfInt(tj)
        m1 = HalfInt(rng.randrange(-tj, tj + 1, 2) if tj else 0)
        m2 = HalfInt(rng.randrange(-tj, tj + 1, 2) if tj else 0)
        th = rng.uniform(0.15, math.pi - 0.15)
        a = little_d(j, m1, m2, th)
        b = wigner_via_jacobi(j, m1, m2, th)
        assert abs(a - b) <= 1e-12 * max(1.0, abs(a))


def test_unitarity_and_multiplicativity(rng):
    for _ in range(4):
        u1 = su2_matrix(*[rng.uniform(-3, 3) for _ in range(4)])
        u2 = su2_matrix(*[rng.uniform(-3, 3) for _ in range(4)])
        for tj in range(0, 7):
            j, n = HalfInt(tj), HalfInt(tj % 2)
            d1 = wigner_D_matrix(j, n, u1)
            d2 = wigner_D_matrix(j, n, u2)
            d12 = wigner_D_matrix(j, n, u1 @ u2)
            assert np.abs(d1 @ d1.conj().T - np.eye(tj + 1)).max() < 1e-10
            assert np.abs(d1 @ d2 - d12).max() < 1e-10


# ---------------------------------------------------------------------------
# Clebsch-Gordan
# ---------------------------------------------------------------------------

def test_cg_examples():
    j = F(7, 2)
    assert clebsch_gordan_j1(j, F(3, 2), 0, 0) == \
        F(3, 2) * ExactScalar.sqrt_rational(1 / (j * (j + 1)))
    assert clebsch_gordan_j1(1, 1, 0, 0) == ExactScalar.sqrt_rational(F(1, 2))
    for j in (1, 2, F(5, 2)):
        assert clebsch_gordan_j1(j, j, 1, 1) == ExactScalar(1)
    with pytest.raises(OutOfRange):
        clebsch_gordan_j1(0, 0, 1, 0)
    with pytest.raises(OutOfRange):
        clebsch_gordan_j1(F(1, 2), F(1, 2), 1, -1)


def test_cg_orthonormality():
    # sum_J <J,M|j,m1,1,m2><J,M|j,m1',1,m2'> = delta over fixed M
    for tj in range(1, 9):
        j = HalfInt(tj)
        for m1 in half_range(-j, j):
            for d1 in (-1, 0, 1):
                for d2 in (-1, 0, 1):
                    m1p_t = m1.twice + 2 * (d1 - d2)
                    if abs(m1p_t) > tj:
                        continue
                    m1p = HalfInt(m1p_t)
                    acc = ExactScalar(0)
                    for j0 in (-1, 0, 1):
                        try:
                            a = clebsch_gordan_j1(j, m1, d1, j0)
                            b = clebsch_gordan_j1(j, m1p, d2, j0)
                        except OutOfRange:
                            continue
                        if not (a.is_zero() or b.is_zero()):
                            acc = acc + a * b
                    want = ExactScalar(1 if (m1 == m1p and d1 == d2) else 0)
                    assert acc == want, (j, m1, d1, d2)


def test_product_expand_trivial_and_stretched():
    one = WignerIndex.of(0, 0, 0, 0)
    idx = WignerIndex.of(1, 1, 1, 0)
    out = product_expand(one, WignerIndex.of(1, 1, 1, 0))
    assert out == {idx: ExactScalar(1)}
    out = product_expand(WignerIndex.of(1, 0, 1, 1), WignerIndex.of(1, 1, 1, 1))
    assert out == {WignerIndex.of(2, 1, 2, 2): ExactScalar(1)}
    # the (0,0)x(0,0) weight kills the J=1 coupling: two surviving terms
    out = product_expand(WignerIndex.of(1, 0, 0, 0), WignerIndex.of(1, 1, 0, 0))
    assert out == {WignerIndex.of(0, 1, 0, 0): ExactScalar(F(1, 3)),
                   WignerIndex.of(2, 1, 0, 0): ExactScalar(F(2, 3))}


def test_product_expand_pointwise(rng):
    for _ in range(20):
        u = su2_matrix(*[rng.uniform(-3, 3) for _ in range(4)])
        ea = EulerAngles(*euler_from_u2(u))
        tj = rng.randrange(0, 7)
        j1, n1 = HalfInt(tj), HalfInt(tj % 2)
        m11 = HalfInt(rng.randrange(-tj, tj + 1, 2) if tj else 0)
        m12 = HalfInt(rng.randrange(-tj, tj + 1, 2) if tj else 0)
        idx1 = WignerIndex.of(j1, n1, m11, m12)
        idx2 = WignerIndex.of(1, 1, rng.choice([-1, 0, 1]), rng.choice([-1, 0, 1]))
        lhs = wigner_D(idx1, ea) * wigner_D(idx2, ea)
        rhs = sum(c.to_complex() * wigner_D(t, ea) for t, c in product_expand(idx1, idx2).items())
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


# ---------------------------------------------------------------------------
# infinitesimal actions against numeric differentiation
# ---------------------------------------------------------------------------

def _nd(side, gen, idx, u, h=1e-6):
    if side == "r":
        f = lambda t: _wig(idx, u @ expm(t * gen))
    else:
        f = lambda t: _wig(idx, expm(-t * gen) @ u)
    return (f(h) - f(-h)) / (2 * h)


def test_dr_dl_gamma_eigen_and_ladder(rng):
    idx = WignerIndex.of(2, 1, 1, 0)
    assert dr_gamma("g0", idx) == {idx: ExactScalar(-1, 1, 0, True)}
    assert dl_gamma("g0", idx) == {idx: ExactScalar(1, 1, 0, True)}
    assert dl_gamma("g3", idx) == {idx: ExactScalar(1, 1, 0, True)}
    assert dr_gamma("g3", idx) == {}                       # m2 = 0
    top = WignerIndex.of(2, 0, 1, 2)
    out = dr_gamma("g+", top)
    assert out == {WignerIndex.of(2, 0, 1, 1): ExactScalar(2, 1, 0, True)}
    assert dl_gamma("g+", WignerIndex.of(2, 0, 2, 0)) == {}
    # ladder at the top weight: dr(g1+ig2) at m2=j gives i sqrt(2j) at m2-1
    j = 3
    out = dr_gamma("g+", WignerIndex.of(j, 0, 0, j))
    assert out == {WignerIndex.of(j, 0, 0, j - 1): ExactScalar(1, 2 * j, 0, True)}


def test_gamma_actions_vs_numeric(rng):
    for _ in range(3):
        u = su2_matrix(*[rng.uniform(-2, 2) for _ in range(4)])
        idx = WignerIndex.of(2, 1, 1, 0)
        for gen, mat in [("g0", _G["g0"]), ("g3", _G["g3"])]:
            num_r = _nd("r", mat, idx, u)
            num_l = _nd("l", mat, idx, u)
            want_r = sum(c.to_complex() * _wig(t, u) for t, c in dr_gamma(gen, idx).items())
            want_l = sum(c.to_complex() * _wig(t, u) for t, c in dl_gamma(gen, idx).items())
            assert abs(num_r - want_r) < 1e-8
            assert abs(num_l - want_l) < 1e-8
        for sign, gen in [(1, "g+"), (-1, "g-")]:
            num_r = _nd("r", _G["g1"], idx, u) + sign * 1j * _nd("r", _G["g2"], idx, u)
            num_l = _nd("l", _G["g1"], idx, u) + sign * 1j * _nd("l", _G["g2"], idx, u)
            want_r = sum(c.to_complex() * _wig(t, u) for t, c in dr_gamma(gen, idx).items())
            want_l = sum(c.to_complex() * _wig(t, u) for t, c in dl_gamma(gen, idx).items())
            assert abs(num_r - want_r) < 1e-8
            assert abs(num_l - want_l) < 1e-8


def test_index_validation():
    with pytest.raises(ValueError):
        WignerIndex.of(1, 0, 2, 0)
    with pytest.raises(ValueError):
        WignerIndex.of(F(3, 2), 0, 1, F(1, 2))
