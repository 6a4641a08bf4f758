"""U(2) compact-group kit: Euler angles, Wigner D-functions, Jacobi
polynomials, Clebsch-Gordan coefficients, and the infinitesimal left/right
actions on matrix coefficients.

Exact evaluation is supported at quarter-turn angles (integer multiples of
pi/2, where sin/cos of half-angles lie in {0, +-1, +-1/sqrt2}); everything
else runs on the complex float path.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import (ExactScalar, HalfInt, PoleError, binomial, half_range,
                    hyp_terminating, pochhammer)


class OutOfRange(ValueError):
    """Clebsch-Gordan target outside the coupled representation."""


# ---------------------------------------------------------------------------
# angles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EulerAngles:
    """Euler angles (zeta, psi, theta, phi).

    Exact angles are Fractions in units of pi; float entries are radians.
    The tuple is exact only if every component is an int or Fraction.
    """

    zeta: object
    psi: object
    theta: object
    phi: object

    @staticmethod
    def pi_units(zeta, psi, theta, phi) -> "EulerAngles":
        return EulerAngles(Fraction(zeta), Fraction(psi), Fraction(theta), Fraction(phi))

    def is_exact(self) -> bool:
        return all(isinstance(a, (int, Fraction)) for a in
                   (self.zeta, self.psi, self.theta, self.phi))

    def radians(self) -> tuple[float, float, float, float]:
        if self.is_exact():
            return tuple(float(a) * math.pi for a in (self.zeta, self.psi, self.theta, self.phi))
        return (float(self.zeta), float(self.psi), float(self.theta), float(self.phi))


_HALF_SQRT2 = ExactScalar(Fraction(1, 2), 2)   # 1/sqrt(2)


def sin_pi(c: Fraction) -> ExactScalar:
    """sin(c*pi) for c a multiple of 1/4."""
    c = Fraction(c) % 2
    table = {Fraction(0): ExactScalar(0), Fraction(1, 4): _HALF_SQRT2,
             Fraction(1, 2): ExactScalar(1), Fraction(3, 4): _HALF_SQRT2,
             Fraction(1): ExactScalar(0), Fraction(5, 4): -_HALF_SQRT2,
             Fraction(3, 2): ExactScalar(-1), Fraction(7, 4): -_HALF_SQRT2}
    if c not in table:
        raise ValueError("sin(%s*pi) is not a quarter-turn value" % c)
    return table[c]


def cos_pi(c: Fraction) -> ExactScalar:
    return sin_pi(Fraction(c) + Fraction(1, 2))


def phase_i(c: Fraction) -> ExactScalar:
    """exp(i*pi*c) for 2c integral, i.e. a fourth root of unity."""
    c = Fraction(c)
    if (2 * c).denominator != 1:
        raise ValueError("exp(i pi %s) is not a fourth root of unity" % c)
    return ExactScalar.i_power(int(2 * c))


# ---------------------------------------------------------------------------
# index
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WignerIndex:
    """One Wigner basis function W^{(j,n)}_{m1,m2}."""

    j: HalfInt
    n: HalfInt
    m1: HalfInt
    m2: HalfInt

    @staticmethod
    def of(j, n, m1, m2) -> "WignerIndex":
        idx = WignerIndex(HalfInt.of(j), HalfInt.of(n), HalfInt.of(m1), HalfInt.of(m2))
        if idx.j.twice < 0:
            raise ValueError("negative spin j")
        for m in (idx.m1, idx.m2):
            if abs(m.twice) > idx.j.twice:
                raise ValueError("|m| exceeds j in %s" % (idx,))
            if (idx.j.twice + m.twice) % 2:
                raise ValueError("j+m not an integer in %s" % (idx,))
        return idx

    def __str__(self):
        return "W[(%s,%s);%s,%s]" % (self.j, self.n, self.m1, self.m2)


@lru_cache(maxsize=None)
def c_factor(j: HalfInt, m: HalfInt) -> ExactScalar:
    """c^j_m = sqrt((j+m)!(j-m)!)."""
    return ExactScalar.sqrt_rational(
        math.factorial((j + m).as_int()) * math.factorial((j - m).as_int()))


# ---------------------------------------------------------------------------
# little d
# ---------------------------------------------------------------------------

def little_d(j, m1, m2, theta):
    """d^{(j)}_{m1,m2}(theta): trigonometric-polynomial sum.

    theta: Fraction (units of pi, must be a multiple of 1/2) for the exact
    path, or a float in radians.
    """
    j, m1, m2 = HalfInt.of(j), HalfInt.of(m1), HalfInt.of(m2)
    lo = max(0, (m1 - m2).as_int())
    hi = min((j - m2).as_int(), (j + m1).as_int())
    if isinstance(theta, (int, Fraction)):
        s = sin_pi(Fraction(theta) / 2)
        c = cos_pi(Fraction(theta) / 2)
        total = ExactScalar(0)
        for p in range(lo, hi + 1):
            a = (m2 - m1).as_int() + 2 * p
            b = (j + j).as_int() + (m1 - m2).as_int() - 2 * p
            num = Fraction((-1) ** ((m2 - m1).as_int() + p),
                           math.factorial((j + m1).as_int() - p) * math.factorial(p)
                           * math.factorial((m2 - m1).as_int() + p)
                           * math.factorial((j - m2).as_int() - p))
            sa = ExactScalar(1) if a == 0 else (ExactScalar(0) if s.is_zero() else s ** a)
            cb = ExactScalar(1) if b == 0 else (ExactScalar(0) if c.is_zero() else c ** b)
            if sa.is_zero() or cb.is_zero():
                continue
            total = total + num * sa * cb
        return total
    th = float(theta)
    s, c = math.sin(th / 2), math.cos(th / 2)
    total = 0.0
    for p in range(lo, hi + 1):
        a = (m2 - m1).as_int() + 2 * p
        b = (j + j).as_int() + (m1 - m2).as_int() - 2 * p
        num = (-1) ** ((m2 - m1).as_int() + p) / (
            math.factorial((j + m1).as_int() - p) * math.factorial(p)
            * math.factorial((m2 - m1).as_int() + p) * math.factorial((j - m2).as_int() - p))
        total += num * s ** a * c ** b
    return total


def wigner_D(idx: WignerIndex, angles: EulerAngles):
    """Full Wigner D-function; ExactScalar at quarter-turn angles, complex
    on the float path."""
    if angles.is_exact():
        theta = Fraction(angles.theta)
        c = idx.n.frac * Fraction(angles.zeta) + idx.m1.frac * Fraction(angles.psi) \
            + idx.m2.frac * Fraction(angles.phi)
        if (2 * c).denominator == 1 and (Fraction(theta) / 2) * 4 % 1 == 0:
            ph = phase_i(c)
            d = little_d(idx.j, idx.m1, idx.m2, theta)
            return c_factor(idx.j, idx.m1) * c_factor(idx.j, idx.m2) * ph * d
    z, psi, th, ph = angles.radians()
    d = little_d(idx.j, idx.m1, idx.m2, th)
    return (c_factor(idx.j, idx.m1).to_complex() * c_factor(idx.j, idx.m2).to_complex()
            * cmath.exp(1j * (float(idx.n) * z + float(idx.m1) * psi + float(idx.m2) * ph)) * d)


# ---------------------------------------------------------------------------
# Jacobi polynomials (two definitions)
# ---------------------------------------------------------------------------

def jacobi_sum(n: int, alpha, beta, x):
    """Gamma-prefactor sum definition, rewritten over Pochhammers so every
    term is a finite product.  PoleError if the Gamma prefactor degenerates."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    for arg in (alpha + n + 1, alpha + beta + n + 1):
        if isinstance(arg, (int, Fraction)) and Fraction(arg).denominator == 1 and arg <= 0:
            raise PoleError("degenerate Gamma prefactor at %s" % arg)
    total = 0
    for m in range(n + 1):
        term = (binomial(Fraction(n), m) / math.factorial(n)
                * pochhammer(alpha + m + 1, n - m) * pochhammer(alpha + beta + n + 1, m))
        total = total + term * ((x - 1) / 2) ** m
    return total


def jacobi_hyp(n: int, alpha, beta, x):
    """Hypergeometric definition; x = -1 handled by the reflection value."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if x == -1:
        return binomial(beta + n, n) * (-1) ** n
    arg = (x - 1) / (x + 1)
    f = hyp_terminating([Fraction(-n), -n - beta], [alpha + 1], arg, n)
    return binomial(alpha + n, n) * ((x + 1) / 2) ** n * f


def wigner_via_jacobi(idx_j, m1, m2, theta):
    """little_d through the Jacobi-polynomial expression; interior angles
    only when the sin/cos prefactor exponents are negative."""
    j, m1, m2 = HalfInt.of(idx_j), HalfInt.of(m1), HalfInt.of(m2)
    a = (m1 - m2).as_int()
    b = (m1 + m2).as_int()
    deg = (j - m1).as_int()
    pref_den = math.factorial((j + m2).as_int()) * math.factorial((j - m2).as_int())
    if isinstance(theta, (int, Fraction)):
        s = sin_pi(Fraction(theta) / 2)
        c = cos_pi(Fraction(theta) / 2)
        xc = cos_pi(Fraction(theta))
        if not xc.is_rational():
            raise ValueError("exact path needs cos(theta) rational (theta multiple of pi/2)")
        if (s.is_zero() and a < 0) or (c.is_zero() and b < 0):
            raise ValueError("negative prefactor power at a boundary angle")
        sa = ExactScalar(1) if a == 0 else (ExactScalar(0) if s.is_zero() else s ** a)
        cb = ExactScalar(1) if b == 0 else (ExactScalar(0) if c.is_zero() else c ** b)
        if sa.is_zero() or cb.is_zero():
            return ExactScalar(0)
        # the sum definition never degenerates at Wigner parameters
        # (alpha+n+1 = j-m2+1 > 0, alpha+beta+n+1 = j+m1+1 > 0)
        pval = jacobi_sum(deg, Fraction(a), Fraction(b), xc.as_fraction())
        return sa * cb * ExactScalar.of(Fraction(1, pref_den)) * ExactScalar.of(pval)
    th = float(theta)
    s, c = math.sin(th / 2), math.cos(th / 2)
    # evaluate the polynomial over exact rationals at the binary-exact cos
    # so the alternating sum does not lose absolute precision
    pval = jacobi_sum(deg, Fraction(a), Fraction(b), Fraction(math.cos(th)))
    return s ** a * c ** b / pref_den * float(pval)


# ---------------------------------------------------------------------------
# Clebsch-Gordan (V^j tensor V^1)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def clebsch_gordan_j1(j, m1, m2: int, j0: int) -> ExactScalar:
    """<j+j0, m1+m2 | j, m1, 1, m2> from the nine-entry table."""
    j, m1 = HalfInt.of(j), HalfInt.of(m1)
    if m2 not in (-1, 0, 1) or j0 not in (-1, 0, 1):
        raise OutOfRange("second factor is V^1: m2, j0 in {-1,0,1}")
    if abs(m1.twice) > j.twice:
        raise OutOfRange("|m1| > j")
    J = j + j0
    if J.twice < 0 or (j.twice == 0 and j0 != 1):
        raise OutOfRange("target spin %s does not occur in V^%s (x) V^1" % (J, j))
    if abs((m1 + m2).twice) > J.twice:
        raise OutOfRange("target weight exceeds target spin")
    jf, mf = j.frac, m1.frac
    if j0 == -1:
        den = 2 * jf * (2 * jf + 1)
        if m2 == -1:
            val, sgn = (jf + mf) * (jf + mf - 1) / den, 1
        elif m2 == 0:
            val, sgn = (jf - mf) * (jf + mf) / (jf * (2 * jf + 1)), -1
        else:
            val, sgn = (jf - mf) * (jf - mf - 1) / den, 1
    elif j0 == 0:
        if m2 == 0:
            return mf * ExactScalar.sqrt_rational(Fraction(1) / (jf * (jf + 1)))
        den = 2 * jf * (jf + 1)
        if m2 == -1:
            val, sgn = (jf + mf) * (jf - mf + 1) / den, 1
        else:
            val, sgn = (jf - mf) * (jf + mf + 1) / den, -1
    else:
        den = (2 * jf + 2) * (2 * jf + 1)
        if m2 == -1:
            val, sgn = (jf - mf + 1) * (jf - mf + 2) / den, 1
        elif m2 == 0:
            val, sgn = (jf - mf + 1) * (jf + mf + 1) / ((jf + 1) * (2 * jf + 1)), 1
        else:
            val, sgn = (jf + mf + 1) * (jf + mf + 2) / den, 1
    return sgn * ExactScalar.sqrt_rational(val)


def product_expand(idx1: WignerIndex, idx2: WignerIndex) -> dict:
    """W^{(j1,n1)} * W^{(j2,n2)} as a Clebsch-Gordan sum; only j2 = 1 is
    needed (the p_C action), so that is all we support."""
    if idx2.j.twice != 2:
        raise ValueError("product expansion implemented for j2 = 1 only")
    out = {}
    for j0 in (-1, 0, 1):
        J = idx1.j + j0
        M1, M2 = idx1.m1 + idx2.m1, idx1.m2 + idx2.m2
        if J.twice < 0 or abs(M1.twice) > J.twice or abs(M2.twice) > J.twice:
            continue
        if idx1.j.twice == 0 and j0 != 1:
            continue
        c = clebsch_gordan_j1(idx1.j, idx1.m1, idx2.m1.as_int(), j0) * \
            clebsch_gordan_j1(idx1.j, idx1.m2, idx2.m2.as_int(), j0)
        if not c.is_zero():
            out[WignerIndex.of(J, idx1.n + idx2.n, M1, M2)] = c
    return out


# ---------------------------------------------------------------------------
# infinitesimal actions (right and left regular, u(2) generators)
# ---------------------------------------------------------------------------

_I = ExactScalar.i_power(1)


def dr_gamma(gen: str, idx: WignerIndex) -> dict:
    """Right regular action of gamma_0, gamma_3, gamma_1 +- i gamma_2
    ("g0", "g3", "g+", "g-").  Zero coefficients are never stored."""
    j, n, m1, m2 = idx.j, idx.n, idx.m1, idx.m2
    if gen == "g0":
        return {} if n.twice == 0 else {idx: -_I * ExactScalar.of(n.frac)}
    if gen == "g3":
        return {} if m2.twice == 0 else {idx: -_I * ExactScalar.of(m2.frac)}
    if gen == "g+":
        coef = (j + m2).frac * (j - m2 + 1).frac
        if coef == 0:
            return {}
        return {WignerIndex.of(j, n, m1, m2 - 1): _I * ExactScalar.sqrt_rational(coef)}
    if gen == "g-":
        coef = (j - m2).frac * (j + m2 + 1).frac
        if coef == 0:
            return {}
        return {WignerIndex.of(j, n, m1, m2 + 1): _I * ExactScalar.sqrt_rational(coef)}
    raise ValueError("unknown generator %r" % gen)


def dl_gamma(gen: str, idx: WignerIndex) -> dict:
    j, n, m1, m2 = idx.j, idx.n, idx.m1, idx.m2
    if gen == "g0":
        return {} if n.twice == 0 else {idx: _I * ExactScalar.of(n.frac)}
    if gen == "g3":
        return {} if m1.twice == 0 else {idx: _I * ExactScalar.of(m1.frac)}
    if gen == "g+":
        coef = (j - m1).frac * (j + m1 + 1).frac
        if coef == 0:
            return {}
        return {WignerIndex.of(j, n, m1 + 1, m2): -_I * ExactScalar.sqrt_rational(coef)}
    if gen == "g-":
        coef = (j + m1).frac * (j - m1 + 1).frac
        if coef == 0:
            return {}
        return {WignerIndex.of(j, n, m1 - 1, m2): -_I * ExactScalar.sqrt_rational(coef)}
    raise ValueError("unknown generator %r" % gen)


# ---------------------------------------------------------------------------
# Jacobi generating function check
# ---------------------------------------------------------------------------

def jacobi_genfun_check(alpha: int, beta: int, x, order: int) -> bool:
    """Does (1+(x+1)t/2)^alpha (1+(x-1)t/2)^beta match
    sum_n P^{(alpha-n,beta-n)}_n(x) t^n through the given order?"""
    from .laurent import LSeries1
    x = Fraction(x)
    c1, c2 = (x + 1) / 2, (x - 1) / 2
    f1 = LSeries1("t", 0, [binomial(Fraction(alpha), k) * c1 ** k for k in range(order + 1)], order)
    f2 = LSeries1("t", 0, [binomial(Fraction(beta), k) * c2 ** k for k in range(order + 1)], order)
    prod = f1 * f2
    for nn in range(order + 1):
        # the two definitions degenerate on complementary parameter sets
        try:
            expect = jacobi_sum(nn, Fraction(alpha - nn), Fraction(beta - nn), x)
        except PoleError:
            expect = jacobi_hyp(nn, Fraction(alpha - nn), Fraction(beta - nn), x)
        if prod.coeff(nn) != expect:
            return False
    return True


# ---------------------------------------------------------------------------
# float-path helpers (2x2 matrices, Euler extraction)
# ---------------------------------------------------------------------------

def su2_matrix(z: float, psi: float, th: float, ph: float):
    """The generic U(2) Euler-angle matrix e^{-z g0} e^{-psi g3} e^{-th g2} e^{-ph g3}."""
    import numpy as np
    c, s = math.cos(th / 2), math.sin(th / 2)
    return np.array([
        [cmath.exp(0.5j * (-z - ph - psi)) * c, -cmath.exp(0.5j * (-z + ph - psi)) * s],
        [cmath.exp(0.5j * (-z - ph + psi)) * s, cmath.exp(0.5j * (-z + ph + psi)) * c]])


def euler_from_u2(u) -> tuple[float, float, float, float]:
    """Extract (zeta, psi, theta, phi) from a unitary 2x2 matrix."""
    det = u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]
    zeta = -cmath.phase(det)
    a = u[0, 0] * cmath.exp(0.5j * zeta)
    b = u[1, 0] * cmath.exp(0.5j * zeta)
    c, s = abs(a), abs(b)
    theta = 2 * math.atan2(s, c)
    if s < 1e-14:
        return zeta, -2 * cmath.phase(a), theta, 0.0
    if c < 1e-14:
        return zeta, 2 * cmath.phase(b), theta, 0.0
    return zeta, cmath.phase(b) - cmath.phase(a), theta, -cmath.phase(b) - cmath.phase(a)


def wigner_D_matrix(j, n, u):
    """Float D-matrix of a unitary 2x2 u, rows/cols ordered -j..j."""
    import numpy as np
    j = HalfInt.of(j)
    z, psi, th, ph = euler_from_u2(u)
    ms = half_range(-j, j)
    ang = EulerAngles(z, psi, th, ph)
    return np.array([[wigner_D(WignerIndex.of(j, n, a, b), ang) for b in ms] for a in ms])
