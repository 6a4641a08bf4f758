"""Intertwining operators for the Sp(4,R) minimal principal series.

The rank-one building blocks are the scalar integrals Q(z,nu), the
change-of-basis matrices M, N (Wigner D-values at quarter-turn angles), and
the simple-operator entries S (finite sum over M N Q, or the terminating
3F2 closed form).  Normalized entries are rational in the spectral
parameter up to one fixed radical, so the default computations are exact at
any rational lambda.

Removable singularities (a prefactor pole cancelling a vanishing
hypergeometric sum, and the spurious per-term poles of the long-operator
generating function on lambda1 hyperplanes) are evaluated by perturbing the
parameter with a formal epsilon and extracting the constant Laurent
coefficient; a surviving pole part is a genuine pole and raises.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import (Character, ExactScalar, HalfInt, PoleError, binomial,
                    gamma_half, half_range, pochhammer)
from .gkmod import m_set
from .laurent import LSeries1, TruncationError, binom_series, hyp2f1_series
from .wigner import EulerAngles, WignerIndex, c_factor, wigner_D


class QuadratureError(ArithmeticError):
    """Numerical quadrature failed to converge."""


KINDS = ("A1", "A2", "A3", "A4", "LONG", "LONG_GENFUN")


# ---------------------------------------------------------------------------
# block matrices
# ---------------------------------------------------------------------------

@dataclass
class BlockMatrix:
    """An operator on one K-isotypic block, rows/cols indexed by m-values."""

    ktype: tuple
    row_index: list
    col_index: list
    entries: list

    def get(self, mr, mc):
        return self.entries[self.row_index.index(HalfInt.of(mr))][self.col_index.index(HalfInt.of(mc))]

    def matmul(self, other: "BlockMatrix") -> "BlockMatrix":
        if self.col_index != other.row_index:
            raise ValueError("index mismatch in block product")
        exact = isinstance(self.entries[0][0], ExactScalar) if self.entries else True
        rows = []
        for i in range(len(self.row_index)):
            row = []
            for k in range(len(other.col_index)):
                acc = ExactScalar(0) if exact else 0j
                for l in range(len(self.col_index)):
                    a, b = self.entries[i][l], other.entries[l][k]
                    if exact:
                        if not (a.is_zero() or b.is_zero()):
                            acc = acc + a * b
                    else:
                        acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return BlockMatrix(self.ktype, list(self.row_index), list(other.col_index), rows)

    def is_identity(self) -> bool:
        if self.row_index != self.col_index:
            return False
        for i in range(len(self.row_index)):
            for k in range(len(self.col_index)):
                e = self.entries[i][k]
                want = 1 if i == k else 0
                if isinstance(e, ExactScalar):
                    if e != ExactScalar.of(want):
                        return False
                elif abs(e - want) > 1e-10:
                    return False
        return True

    def scale(self, c) -> "BlockMatrix":
        return BlockMatrix(self.ktype, list(self.row_index), list(self.col_index),
                           [[c * e for e in row] for row in self.entries])


# ---------------------------------------------------------------------------
# Q factor
# ---------------------------------------------------------------------------

def _gamma_meromorphic(args_num, args_den):
    """Product/ratio of Gammas at half-integer points with pole bookkeeping.

    Each argument comes with the slope of its dependence on the underlying
    variable, so equal-order numerator/denominator poles yield the correct
    directional limit.  Returns (value, net pole order); the value is the
    limit of the regular factor.
    """
    val = ExactScalar(1)
    order = 0
    for a, slope in args_num:
        if a.is_integer() and a.as_int() <= 0:
            p = -a.as_int()
            order += 1
            # Gamma(x) ~ (-1)^p/(p! (x+p)), x+p = slope*(z-z0)
            val = val * ExactScalar(Fraction((-1) ** p) / (math.factorial(p) * Fraction(slope)))
        else:
            val = val * gamma_half(a)
    for a, slope in args_den:
        if a.is_integer() and a.as_int() <= 0:
            p = -a.as_int()
            order -= 1
            val = val / ExactScalar(Fraction((-1) ** p) / (math.factorial(p) * Fraction(slope)))
        else:
            val = val / gamma_half(a)
    return val, order


def q_factor(z, nu):
    """Q(z,nu) = pi 2^{2-2z} Gamma(2z-1) / (Gamma(z+nu) Gamma(z-nu)).

    Exact at half-integer z; complex z runs on the float path.  A pole
    excess in the numerator raises; denominator-dominated points are an
    exact zero.
    """
    if isinstance(z, (int, Fraction)):
        z = Fraction(z)
        nu = nu.frac if isinstance(nu, HalfInt) else Fraction(nu)
        if (2 * z).denominator != 1:
            raise ValueError("exact Q needs a half-integer z, got %s" % z)
        num = [(HalfInt.of(2 * z - 1), 2)]
        den = [(HalfInt.of(z + nu), 1), (HalfInt.of(z - nu), 1)]
        val, order = _gamma_meromorphic(num, den)
        if order > 0:
            raise PoleError("Q(%s,%s): uncancelled Gamma(2z-1) pole" % (z, nu))
        if order < 0:
            return ExactScalar(0)
        return ExactScalar(Fraction(2) ** int(2 - 2 * z), 1, 2) * val
    from scipy.special import gamma as cgamma
    z = complex(z)
    nu = complex(float(nu) if isinstance(nu, HalfInt) else nu)
    return math.pi * 2 ** (2 - 2 * z) * cgamma(2 * z - 1) / (cgamma(z + nu) * cgamma(z - nu))


def q_ratio(z, m):
    """Q(z,m)/Q(z,0) = Gamma(z)^2/(Gamma(z+m)Gamma(z-m)).

    Integer m: the rational function (z-|m|)^{(|m|)}/(z)^{(|m|)}, exact at
    any rational z.  Half-odd m (half-integer-spin blocks) needs a
    half-integer z and routes through exact Gammas.
    """
    m = HalfInt.of(m)
    if not m.is_integer():
        mf = abs(m.frac)
        z = Fraction(z)
        if (2 * z).denominator != 1:
            raise PoleError("half-integer-spin block needs half-integer z, got %s" % z)
        val, order = _gamma_meromorphic(
            [(HalfInt.of(z), 1), (HalfInt.of(z), 1)],
            [(HalfInt.of(z + mf), 1), (HalfInt.of(z - mf), 1)])
        if order > 0:
            raise PoleError("q_ratio(%s,%s) pole" % (z, m))
        return ExactScalar(0) if order < 0 else val
    k = abs(m.as_int())
    den = pochhammer(Fraction(z), k)
    if den == 0:
        raise PoleError("q_ratio pole: (z)^(%d) vanishes at z=%s" % (k, z))
    return ExactScalar.of(pochhammer(Fraction(z) - k, k) / den)


# ---------------------------------------------------------------------------
# change-of-basis matrices
# ---------------------------------------------------------------------------

_M_ANGLES = EulerAngles.pi_units(0, Fraction(-1, 2), Fraction(3, 2), Fraction(1, 2))
_N_ANGLES = EulerAngles.pi_units(0, Fraction(-1, 2), Fraction(-3, 2), Fraction(1, 2))


@lru_cache(maxsize=None)
def mn_matrices(j) -> tuple[BlockMatrix, BlockMatrix]:
    """M and N: Wigner D-values of exp(-+(3 pi/2) U1); N is the exact
    inverse of M."""
    j = HalfInt.of(j)
    ms = half_range(-j, j)
    m_rows, n_rows = [], []
    for a in ms:
        m_rows.append([wigner_D(WignerIndex.of(j, 0, a, b), _M_ANGLES) for b in ms])
        n_rows.append([wigner_D(WignerIndex.of(j, 0, a, b), _N_ANGLES) for b in ms])
    return (BlockMatrix((j, None), ms, ms, m_rows),
            BlockMatrix((j, None), ms, ms, n_rows))


def _two_pow(m: HalfInt) -> ExactScalar:
    """2^m for half-integer m."""
    f = m.frac
    if f.denominator == 1:
        return ExactScalar(Fraction(2) ** int(f))
    k = int(f - Fraction(1, 2))
    return ExactScalar(Fraction(2) ** k) * ExactScalar.sqrt_rational(2)


def m_entry_genfun(j, m3, m4) -> ExactScalar:
    """M^j_{m3,m4} as a constant Laurent coefficient: the independent
    generating-function route used to cross-check mn_matrices."""
    j, m3, m4 = HalfInt.of(j), HalfInt.of(m3), HalfInt.of(m4)
    tj = (j + j).as_int()
    order = tj + 1
    e1, e2 = (j - m3).as_int(), (j + m3).as_int()
    f1 = LSeries1("t", 0, [binomial(Fraction(e1), k) * Fraction(1, 2 ** k)
                           for k in range(order + 1)], order)
    f2 = LSeries1("t", 0, [binomial(Fraction(e2), k) * Fraction((-1) ** k, 2 ** k)
                           for k in range(order + 1)], order)
    ct = (f1 * f2).coeff((j - m4).as_int())
    phase = ExactScalar.i_power((m4 - m3).as_int()) * ExactScalar((-1) ** tj)
    return (c_factor(j, m4) / c_factor(j, m3)) * phase * _two_pow(-m4) * ExactScalar.of(ct)


# ---------------------------------------------------------------------------
# S entries
# ---------------------------------------------------------------------------

def s_entry_sum(j, n, m3, m2, z):
    """S^{j,n}_{m3,m2}(z) = sum_{m4} i^{-2 m4} M_{m3,m4} N_{m4,m2} Q(z,m4)."""
    j, m3, m2 = HalfInt.of(j), HalfInt.of(m3), HalfInt.of(m2)
    M, N = mn_matrices(j)
    exact = isinstance(z, (int, Fraction))
    total = ExactScalar(0) if exact else 0j
    for m4 in half_range(-j, j):
        a = M.get(m3, m4)
        b = N.get(m4, m2)
        if a.is_zero() or b.is_zero():
            continue
        ph = ExactScalar.i_power(-m4.twice)
        if exact:
            total = total + ph * a * b * q_factor(z, m4)
        else:
            total = total + ph.to_complex() * a.to_complex() * b.to_complex() * q_factor(z, float(m4))
    return total


def s_norm(j, n, m3, m2, z):
    """Normalized entry script-S = S / S^{(0,n)}_{0,0}: exact at any
    rational z for integer-spin blocks."""
    j, m3, m2 = HalfInt.of(j), HalfInt.of(m3), HalfInt.of(m2)
    M, N = mn_matrices(j)
    exact = isinstance(z, (int, Fraction))
    total = ExactScalar(0) if exact else 0j
    for m4 in half_range(-j, j):
        a = M.get(m3, m4)
        b = N.get(m4, m2)
        if a.is_zero() or b.is_zero():
            continue
        ph = ExactScalar.i_power(-m4.twice)
        if exact:
            total = total + ph * a * b * q_ratio(z, m4)
        else:
            total = total + ph.to_complex() * a.to_complex() * b.to_complex() * _q_ratio_float(z, float(m4))
    return total


def _q_ratio_float(z, m):
    k = abs(int(round(m)))
    num = den = 1.0 + 0j
    for i in range(k):
        num *= z - k + i
        den *= z + i
    return num / den


def _i_int_power(k: HalfInt) -> ExactScalar:
    """i^k for an integer-valued half-integer k."""
    return ExactScalar.i_power(k.as_int())


def t_norm(n, m, z):
    """script-T^n_m(z) = i^{m-n} / ((z)^{((m-n)/2)} (z)^{((n-m)/2)})."""
    n, m = HalfInt.of(n), HalfInt.of(m)
    diff = m - n
    if not diff.is_integer():
        raise ValueError("t_norm needs m-n integral, got %s" % diff)
    e = Fraction(diff.as_int(), 2)
    ph = _i_int_power(diff)
    if isinstance(z, (int, Fraction)):
        return ph * _poch_pair_exact(Fraction(z), e)
    from scipy.special import gamma as cgamma
    zc = complex(z)
    ef = float(e)
    return (1j) ** diff.as_int() * cgamma(zc) ** 2 / (cgamma(zc + ef) * cgamma(zc - ef))


def _poch_pair_exact(z: Fraction, e: Fraction) -> ExactScalar:
    """1/((z)^{(e)} (z)^{(-e)}) = Gamma(z)^2/(Gamma(z+e)Gamma(z-e)).

    Integer e: rational at any rational z.  Half-odd e: exact only at
    half-integer z (through half-integer Gammas)."""
    if e.denominator == 1:
        k = abs(int(e))
        den = pochhammer(z, k)
        if den == 0:
            raise PoleError("Pochhammer pair pole: (%s)^(%d) = 0" % (z, k))
        return ExactScalar.of(pochhammer(z - k, k) / den)
    if (2 * z).denominator != 1:
        raise PoleError("half-odd Pochhammer pair exponent %s needs a "
                        "half-integer argument, got %s" % (e, z))
    ea = abs(e)
    val, order = _gamma_meromorphic(
        [(HalfInt.of(z), 1), (HalfInt.of(z), 1)],
        [(HalfInt.of(z + ea), 1), (HalfInt.of(z - ea), 1)])
    if order > 0:
        raise PoleError("Pochhammer pair pole at %s" % z)
    return ExactScalar(0) if order < 0 else val


# ---------------------------------------------------------------------------
# epsilon jets
# ---------------------------------------------------------------------------

_JET_HI = 4


def _jet(z0) -> LSeries1:
    return LSeries1("eps", 0, [Fraction(z0), Fraction(1)], _JET_HI)


def _jet_const(c) -> LSeries1:
    return LSeries1("eps", 0, [c], _JET_HI)


def _jet_poch(base: LSeries1, e: int) -> LSeries1:
    if e >= 0:
        out = _jet_const(Fraction(1))
        for i in range(e):
            out = out * (base + i)
        return out
    out = _jet_const(Fraction(1))
    for i in range(1, -e + 1):
        out = out * (base - i)
    return out.inverse()


def _jet_value(total: LSeries1, what: str) -> Fraction:
    for e in range(total.min_exp, 0):
        c = total.coeff(e)
        if not ((isinstance(c, int) and c == 0) or c == 0):
            raise PoleError("%s has a genuine pole (eps^%d survives)" % (what, e))
    v = total.coeff(0)
    return Fraction(v) if isinstance(v, int) else v


# ---------------------------------------------------------------------------
# closed-form S (terminating 3F2)
# ---------------------------------------------------------------------------

def _s00(z: Fraction) -> ExactScalar:
    """S^{(0,n)}_{0,0}(z) = sqrt(pi) Gamma(z-1/2)/Gamma(z)."""
    val, order = _gamma_meromorphic([(HalfInt.of(z - Fraction(1, 2)), 1)],
                                    [(HalfInt.of(z), 1)])
    if order > 0:
        raise PoleError("S00 pole at z=%s" % z)
    if order < 0:
        return ExactScalar(0)
    return ExactScalar(1, 1, 1) * val


def s_entry_3f2(j, n, m1, m4, z):
    """Closed-form S^{j,n}_{m1,m4}(z): terminating 3F2 at unit argument with
    its Gamma/Pochhammer prefactor.  Equals s_entry_sum wherever both are
    defined; removable prefactor poles are taken as limits."""
    j, m1, m4 = HalfInt.of(j), HalfInt.of(m1), HalfInt.of(m4)
    if not j.is_integer():
        raise ValueError("closed form assumes integer j (delta in {(0,0),(1,1)})")
    if (m1 - m4).as_int() % 2:
        raise ValueError("closed form needs m1 = m4 mod 2")
    if isinstance(z, (int, Fraction)):
        z = Fraction(z)
        if (2 * z).denominator != 1:
            raise ValueError("exact closed form needs half-integer z")
        return _s00(z) * _s_norm_closed_exact(j, m1, m4, z)
    from scipy.special import gamma as cgamma
    jj, a, b = j.as_int(), m1.as_int(), m4.as_int()
    kmax = min(jj + a, jj - b)
    f, term = 0j, 1 + 0j
    for k in range(kmax + 1):
        f += term
        if k == kmax:
            break
        term *= (-jj + z - 1 + k) * (-jj - a + k) * (b - jj + k)
        term /= (-2 * jj + k) * (float(-jj - Fraction(a - b, 2)) + 0.5 + k) * (k + 1)
    pref = (-1) ** ((a + b) // 2) * math.factorial(2 * jj) * math.pi \
        / (c_factor(j, m1).to_complex() * c_factor(j, m4).to_complex())
    return pref * cgamma((2 * z - a + b - 1) / 2) / (cgamma((-2 * jj - a + b + 1) / 2) * cgamma(jj + z)) * f


def _s_norm_closed_exact(j: HalfInt, m1: HalfInt, m2: HalfInt, z: Fraction) -> ExactScalar:
    jj, a, b = j.as_int(), m1.as_int(), m2.as_int()
    kmax = min(jj + a, jj - b)
    zj = _jet(z)
    pref = _jet_poch(zj - Fraction(1, 2), -((a - b) // 2)) * _jet_poch(zj, jj).inverse()
    total = _jet_const(Fraction(0))
    coef = _jet_const(Fraction(1))
    for k in range(kmax + 1):
        total = total + coef * _jet_poch(zj - jj - 1, k)
        if k == kmax:
            break
        num = Fraction((-jj - a + k) * (-jj + b + k))
        den = Fraction(-2 * jj + k) * (Fraction(1 - 2 * jj - a + b, 2) + k) * (k + 1)
        coef = coef * (num / den)
    rat = _jet_value(pref * total, "closed-form S at z=%s" % z)
    ghalf = gamma_half(Fraction(1 - 2 * jj - a + b, 2))
    const = (ExactScalar(Fraction((-1) ** ((a + b) // 2) * math.factorial(2 * jj)), 1, 1)
             / (c_factor(j, m1) * c_factor(j, m2) * ghalf))
    return const * ExactScalar.of(rat)


# ---------------------------------------------------------------------------
# H and G generating functions for script-S
# ---------------------------------------------------------------------------

def hg_entry_ct(which: str, j, m1, m2, z) -> ExactScalar:
    """Constant Laurent coefficient of H^j_{m1,m2}(z;t) or G^j_{m1,m2}(z;t);
    both must equal s_norm."""
    j, m1, m2 = HalfInt.of(j), HalfInt.of(m1), HalfInt.of(m2)
    jj, a, b = j.as_int(), m1.as_int(), m2.as_int()
    z = Fraction(z)
    zj = _jet(z)
    if which == "H":
        npow, fpar, fa = jj + a, Fraction(-1 + a + b, 2), -jj + b
        gam, fac = gamma_half(Fraction(1 - a - b, 2)), math.factorial(jj + a)
    elif which == "G":
        npow, fpar, fa = jj - b, Fraction(-1 - a - b, 2), -jj - a
        gam, fac = gamma_half(Fraction(1 + a + b, 2)), math.factorial(jj - b)
    else:
        raise ValueError("which must be 'H' or 'G'")
    f = hyp2f1_series(Fraction(fa), zj - 1 - jj, Fraction(-2 * jj), 1, npow)
    g = binom_series(fpar, -1, npow)
    ct = (f * g).coeff(npow)
    if not isinstance(ct, LSeries1):
        ct = _jet_const(Fraction(ct))
    pref = _jet_poch(zj - Fraction(1, 2), -((a - b) // 2)) * _jet_poch(zj, jj).inverse()
    rat = _jet_value(pref * ct, "[%s]_0 at z=%s" % (which, z))
    const = (ExactScalar(Fraction((-1) ** npow * math.factorial(2 * jj) * fac), 1, -1)
             * gam / (c_factor(j, m1) * c_factor(j, m2)))
    return const * ExactScalar.of(rat)


# ---------------------------------------------------------------------------
# simple operators and the product path
# ---------------------------------------------------------------------------

def _stage_args(chi: Character) -> dict:
    l1, l2 = chi.lam_frac if chi.is_exact() else chi.lam
    return {
        "A1": (l1 - l2 + 1) / 2,
        "A2": (l1 + 1) / 2,
        "A3": (l1 + l2 + 1) / 2,
        "A4": (l2 + 1) / 2,
    }


def simple_operator(kind: str, ktype, chi: Character) -> BlockMatrix:
    """One normalized factor of the long operator: script-S blocks for
    A1/A3 (with the delta-swapped row parity set), diagonal script-T for
    A2/A4."""
    j, n = HalfInt.of(ktype[0]), HalfInt.of(ktype[1])
    d1, d2 = chi.delta
    z = _stage_args(chi)[kind]
    plain = m_set(j, n, (d1, d2))
    swap = m_set(j, n, (d2, d1))
    try:
        if kind == "A1":
            rows, cols = swap, plain
            ent = [[s_norm(j, n, mr, mc, z) for mc in cols] for mr in rows]
        elif kind == "A3":
            rows, cols = plain, swap
            ent = [[s_norm(j, n, mr, mc, z) for mc in cols] for mr in rows]
        elif kind == "A2":
            rows = cols = swap
            ent = [[t_norm(n, mr, z) if mr == mc else _zero_like(z) for mc in cols] for mr in rows]
        elif kind == "A4":
            rows = cols = plain
            ent = [[t_norm(n, mr, z) if mr == mc else _zero_like(z) for mc in cols] for mr in rows]
        else:
            raise ValueError("simple_operator kind must be one of A1..A4")
    except PoleError as exc:
        raise PoleError("stage %s (argument %s): %s" % (kind, z, exc)) from exc
    return BlockMatrix((j, n), rows, cols, ent)


def _zero_like(z):
    return ExactScalar(0) if isinstance(z, (int, Fraction)) else 0j


def long_operator_product(ktype, chi: Character) -> BlockMatrix:
    """A4 A3 A2 A1, each stage at its Weyl-translated spectral argument."""
    a1 = simple_operator("A1", ktype, chi)
    a2 = simple_operator("A2", ktype, chi)
    a3 = simple_operator("A3", ktype, chi)
    a4 = simple_operator("A4", ktype, chi)
    return a4.matmul(a3).matmul(a2).matmul(a1)


# ---------------------------------------------------------------------------
# the long operator via the two-variable generating function
# ---------------------------------------------------------------------------

def _epsilon_case(j: HalfInt, n: HalfInt, delta) -> int:
    return 0 if ((j - n).as_int() - delta[0]) % 2 == 0 else 1


def genfun_entry_raw(j, n, delta, m1, m2, lam, order=None) -> ExactScalar:
    """[A(lambda)]^{j,n}_{m1,m2}: the constant (t1,t2) Laurent coefficient
    of the generating function, assembled as a p-indexed sum of separable
    terms (the partial-sum form of the 5F4).

    lambda1 is perturbed by a formal epsilon; per-term poles on lambda1
    hyperplanes must cancel across the sum, else PoleError.
    """
    j, n, m1, m2 = HalfInt.of(j), HalfInt.of(n), HalfInt.of(m1), HalfInt.of(m2)
    jj, nn, a, b = j.as_int(), n.as_int(), m1.as_int(), m2.as_int()
    eps = _epsilon_case(j, n, delta)
    l1, l2 = Fraction(lam[0]), Fraction(lam[1])
    if order is None:
        order = 6 * jj + 6
    l1j = _jet(l1)
    half = Fraction(1, 2)

    f1 = hyp2f1_series(Fraction(-jj + a), (l1j - l2 - 2 * jj - 1) * half,
                       Fraction(-2 * jj), 1, order, var="t1")
    f2 = hyp2f1_series(Fraction(-jj - b), (l1j + l2 - 2 * jj - 1) * half,
                       Fraction(-2 * jj), 1, order, var="t2")

    # entry = const * sum_p [jet factors] * [Gamma-route factors]
    tpair = _poch_pair_exact((l2 + 1) / 2, Fraction(b - nn, 2))
    const = (ExactScalar(Fraction(math.factorial(2 * jj)) ** 2, 1, -2)
             / (c_factor(j, m1) * c_factor(j, m2)))
    # i^{-n+j-2p-eps} = i^{j-n-eps} * (-1)^p: a fixed phase times a sign
    const = const * ExactScalar.i_power(-nn + b) * ExactScalar.i_power(jj - nn - eps) * tpair

    l1pair_exp_is_int = ((jj - nn - eps) % 2 == 0)
    buckets: dict = {}
    for p in range(0, jj - eps + 1):
        sgn = Fraction((-1) ** p)
        if eps == 0:
            pair_e = Fraction(jj - nn - 2 * p, 2)
            gam = gamma_half(Fraction(1 + jj + b, 2) - p) * gamma_half(Fraction(1 - jj - a, 2) + p)
            e_dm = (-jj + a) // 2 + p
            e_dp = (jj - b) // 2 - p
            bin1 = Fraction(-1 + jj + a, 2) - p
            bin2 = Fraction(-1 - jj - b, 2) + p
            n1, n2 = 2 * jj - 2 * p, 2 * p
        else:
            pair_e = Fraction(jj - nn - 2 * p - 1, 2)
            gam = gamma_half(Fraction(jj + b, 2) - p) * gamma_half(Fraction(2 - jj - a, 2) + p)
            e_dm = (1 - jj + a) // 2 + p
            e_dp = (jj - b - 1) // 2 - p
            bin1 = Fraction(-2 + jj + a, 2) - p
            bin2 = Fraction(-jj - b, 2) + p
            n1, n2 = 2 * jj - 2 * p - 1, 2 * p + 1
        c1 = _ct_at(f1, bin1, n1)
        c2 = _ct_at(f2, bin2, n2)
        jetpart = c1 * c2 * sgn
        base = (l1j + 1) * half
        if l1pair_exp_is_int:
            k = int(pair_e)
            jetpart = jetpart * (_jet_poch(base, k) * _jet_poch(base, -k)).inverse()
            exactpart = gam
        else:
            exactpart = gam * _poch_pair_exact((l1 + 1) / 2, pair_e)
        jetpart = jetpart * _jet_poch((l1j - l2) * half, e_dm) * _jet_poch((l1j + l2) * half, e_dp)
        key = (exactpart.r, exactpart.p, exactpart.im)
        prev = buckets.get(key)
        add = jetpart * exactpart.q
        buckets[key] = add if prev is None else prev + add
    live = {k: v for k, v in buckets.items() if not v.is_zero()}
    if not live:
        return ExactScalar(0)
    if len(live) > 1:
        raise AssertionError("generating-function terms span several radical classes")
    (key, jet), = live.items()
    rat = _jet_value(jet, "genfun entry (%s,%s) of block (%s,%s)" % (m1, m2, j, n))
    return const * ExactScalar(rat, key[0], key[1], key[2])


def _ct_at(f: LSeries1, binom_exp: Fraction, shift: int) -> LSeries1:
    """Coefficient of t^shift in (1-t)^{binom_exp} * f(t), as an eps jet."""
    if shift < 0:
        return _jet_const(Fraction(0))
    g = binom_series(binom_exp, -1, shift, var=f.var)
    acc = None
    for k in range(shift + 1):
        av = f.coeff(k)
        bv = g.coeff(shift - k)
        if (isinstance(av, int) and av == 0) or bv == 0:
            continue
        t = av * bv
        acc = t if acc is None else acc + t
    if acc is None:
        return _jet_const(Fraction(0))
    return acc if isinstance(acc, LSeries1) else _jet_const(Fraction(acc))


def genfun_vs_product(ktype, chi: Character, order=None):
    """Generating-function entries against the four-factor product.

    Returns (normalized genfun block in product layout, per-block constant);
    raises if the entry ratio is not one constant across the block.
    """
    j, n = HalfInt.of(ktype[0]), HalfInt.of(ktype[1])
    delta = tuple(chi.delta)
    if delta not in ((0, 0), (1, 1)):
        raise ValueError("generating function requires delta in {(0,0),(1,1)}")
    if not j.is_integer():
        raise ValueError("generating function requires integer j")
    if not chi.is_exact():
        raise ValueError("generating-function path is exact-only")
    lam = chi.lam_frac
    pm = long_operator_product((j, n), chi)
    ms = m_set(j, n, delta)
    ordr = order if order is not None else 6 * j.as_int() + 6
    last = None
    for _ in range(4):
        try:
            raw = [[genfun_entry_raw(j, n, delta, mi, mk, lam, ordr) for mk in ms] for mi in ms]
            break
        except TruncationError as exc:   # re-expand and retry
            last = exc
            ordr += 2
    else:
        raise last
    const = None
    for i, mi in enumerate(ms):
        for k, mk in enumerate(ms):
            g = raw[i][k]
            p = pm.get(mk, mi)       # the generating function's (m1,m2) layout is the transpose
            if p.is_zero():
                if not g.is_zero():
                    raise AssertionError("genfun nonzero where the product vanishes")
                continue
            r = g / p
            if const is None:
                const = r
            elif r != const:
                raise AssertionError("per-block constant varies: %s vs %s" % (r, const))
    if const is None or const.is_zero():
        raise AssertionError("degenerate block (no nonzero product entries)")
    inv = const.inverse()
    ent = [[raw[k][i] * inv for k in range(len(ms))] for i in range(len(ms))]
    return BlockMatrix((j, n), list(ms), list(ms), ent), const


def long_operator_genfun(ktype, chi: Character) -> BlockMatrix:
    """Long-operator block from the two-variable generating function,
    rescaled by the per-block constant to match long_operator_product."""
    bm, _ = genfun_vs_product(ktype, chi)
    return bm


# ---------------------------------------------------------------------------
# inversion identity and the Mellin check
# ---------------------------------------------------------------------------

def inversion_check(j, n, delta, z) -> bool:
    """sum_{m2} script-S_{m1,m2}(z) script-S_{m2,m3}(1-z) = delta_{m1,m3}
    over the delta-swapped parity set."""
    j, n = HalfInt.of(j), HalfInt.of(n)
    d1, d2 = delta
    ms = m_set(j, n, (d2, d1))
    z = Fraction(z)
    for m1 in ms:
        for m3 in ms:
            acc = ExactScalar(0)
            for m2 in ms:
                av = s_norm(j, n, m1, m2, z)
                bv = s_norm(j, n, m2, m3, 1 - z)
                if not (av.is_zero() or bv.is_zero()):
                    acc = acc + av * bv
            if acc != ExactScalar(1 if m1 == m3 else 0):
                return False
    return True


def mellin_numeric_check(z: float, m, rel_tol: float = 1e-8) -> bool:
    """Quadrature of int_0^1 x^{z-1} cos(2m arcsin sqrt(1-x))/sqrt(x(1-x)) dx
    against q_factor(z,m); the substitution x = sin^2 u removes the endpoint
    singularities."""
    from scipy.integrate import quad
    if z <= 0.5:
        raise ValueError("need z > 1/2 for absolute convergence")
    m = HalfInt.of(m) if not isinstance(m, HalfInt) else m
    mf = float(m)

    def integrand(u):
        return 2.0 * math.sin(u) ** (2 * z - 2) * math.cos(2 * mf * (math.pi / 2 - u))

    val, err = quad(integrand, 0.0, math.pi / 2, limit=200)
    if err > 1e-9 * max(1.0, abs(val)):
        raise QuadratureError("quadrature error estimate %g too large" % err)
    zf = Fraction(z).limit_denominator(10 ** 9)
    if (2 * zf).denominator == 1:
        q = q_factor(zf, m).to_complex().real
    else:
        q = q_factor(complex(z), float(m)).real
    return abs(val - q) <= rel_tol * max(1.0, abs(q))


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------

def _scalar_str(x) -> str:
    return str(x) if isinstance(x, ExactScalar) else repr(x)


def _scalar_parse(s: str):
    from .exact import parse_scalar
    try:
        return parse_scalar(s)
    except ValueError:
        return complex(s.replace(" ", "").replace("(", "").replace(")", ""))


def _lam_str(x) -> str:
    if isinstance(x, (int, Fraction)):
        f = Fraction(x)
        return "%d/%d" % (f.numerator, f.denominator)
    return repr(x)


def block_to_json(bm: BlockMatrix, chi: Character, kind: str) -> str:
    j, n = bm.ktype
    doc = {
        "ktype": [str(j), str(n)],
        "delta": list(chi.delta),
        "lambda": [_lam_str(x) for x in chi.lam],
        "kind": kind,
        "rows": [str(m) for m in bm.row_index],
        "cols": [str(m) for m in bm.col_index],
        "entries": [[_scalar_str(e) for e in row] for row in bm.entries],
    }
    return json.dumps(doc, indent=1)


def block_from_json(text: str) -> tuple[BlockMatrix, dict]:
    doc = json.loads(text)
    rows = [HalfInt.of(Fraction(m)) for m in doc["rows"]]
    cols = [HalfInt.of(Fraction(m)) for m in doc["cols"]]
    ent = [[_scalar_parse(e) for e in row] for row in doc["entries"]]
    ktype = (HalfInt.of(Fraction(doc["ktype"][0])), HalfInt.of(Fraction(doc["ktype"][1])))
    return BlockMatrix(ktype, rows, cols, ent), doc


def block_to_csv(bm: BlockMatrix) -> str:
    lines = ["m," + ",".join(str(m) for m in bm.col_index)]
    for m, row in zip(bm.row_index, bm.entries):
        lines.append(str(m) + "," + ",".join(_scalar_str(e) for e in row))
    return "\n".join(lines) + "\n"
