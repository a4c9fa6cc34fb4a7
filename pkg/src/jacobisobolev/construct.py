"""Casorati-determinant construction of the Sobolev-orthogonal family.

From a `SobolevConfig` this module builds the sequence functions z_l (as
polynomials in x) together with their theta-basis counterparts Y_l, the
normalizing polynomials p and q, the rho weights, the Casorati determinant
Lambda(n) that certifies existence of the orthogonal polynomial q_n, and
q_n itself as an explicit combination of m+1 consecutive Jacobi polynomials.

For n >= m the determinant entries are plain rationals and p(n) q(n) != 0.
For n < m the quotient by p(x) q(x) may be 0/0 at integer points, so the
determinant cofactors are carried symbolically in x, reduced against
p(x) q(x), and only then evaluated; divisibility is asserted, not assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import _linalg
from .exactmath import (
    ONE,
    X,
    Poly,
    RationalFunction,
    falling_binomial,
    gamma_ratio,
    pochhammer,
    theta_poly,
)
from .jacobi import JacobiContext, integrate_against_weight, jacobi_poly
from .sobolev import SobolevConfig


class DegenerateConfigError(ValueError):
    """Lambda(k) vanished for some k in range: no orthogonal family exists."""


@dataclass(frozen=True)
class ZSystem:
    """The sequence functions and normalizers attached to one configuration."""

    z: Tuple[Poly, ...]  # z_l as polynomials in x, l = 1..m
    Y: Tuple[Poly, ...]  # the same functions as polynomials in theta
    p: Poly
    q: Poly
    rho: Tuple[Tuple[RationalFunction, ...], ...]  # rho[h-1][j], j = 0..m


def _u_polys(alpha: Fraction, beta: Fraction, lam: Fraction, j: int) -> Tuple[Poly, Poly]:
    """The degree-2j building block (x+a-lam+1)_j (x+b+lam-j+1)_j.

    Returns the polynomial both in x and in theta; the theta form follows
    from the factorization into factors (a-lam+i)(b+lam-i+1) + theta_x.
    """
    u_x = pochhammer(X + (alpha - lam + 1), j) * pochhammer(X + (beta + lam - j + 1), j)
    u_t = ONE
    for i in range(1, j + 1):
        u_t = u_t * Poly([(alpha - lam + i) * (beta + lam - i + 1), 1])
    return u_x, u_t


def build_p(alpha, beta, m1: int, m2: int) -> Poly:
    a, b, m = Fraction(alpha), Fraction(beta), m1 + m2
    # primary definition as a product of Pochhammer pairs
    p1 = ONE
    for i in range(1, m1):
        p1 = (
            p1
            * (-1) ** (m1 - i)
            * pochhammer(X + (a - m + 1), m1 - i)
            * pochhammer(X + (b - m1 + i), m1 - i)
        )
    # equivalent product over the shifted factorial functions; must agree
    p2 = ONE
    for i in range(1, m1):
        j = m1 - i
        n1 = (-1) ** j * pochhammer(X + (-m2 - i - j + a + 1), j)
        n2 = pochhammer(X + (-1 - j + b + 1), j)
        p2 = p2 * n1 * n2
    assert p1 == p2
    return p1


def build_q(alpha, beta, m: int) -> Poly:
    a, b = Fraction(alpha), Fraction(beta)
    sign = (-1) ** math.comb(m, 2)
    q1 = ONE
    q2 = ONE
    for h in range(1, m):
        for i in range(1, h + 1):
            q1 = q1 * Poly([2 * Fraction(-m) + a + b + i + h, 2])
            # sigma_{x - m + (i+h+1)/2} with sigma_y = 2y + a + b - 1
            q2 = q2 * Poly([2 * (Fraction(i + h + 1, 2) - m) + a + b - 1, 2])
    assert q1 == q2
    return sign * q1


_ZSYS_CACHE: Dict[SobolevConfig, ZSystem] = {}


def build_z(cfg: SobolevConfig) -> ZSystem:
    """Assemble z_l, Y_l, p, q and the rho table for a configuration."""
    cached = _ZSYS_CACHE.get(cfg)
    if cached is not None:
        return cached
    a, b = Fraction(cfg.alpha), Fraction(cfg.beta)
    m1, m2, m = cfg.m1, cfg.m2, cfg.m
    zs: List[Poly] = []
    ys: List[Poly] = []
    for l in range(1, m1 + 1):
        front = (
            Fraction(2) ** (cfg.alpha + cfg.beta - m1 + l)
            * math.factorial(cfg.beta - m1 + l - 1)
            / math.factorial(m1 - l)
        )
        u_x, u_t = _u_polys(a, b, a, m1 - l)
        z = front * u_x
        y = front * u_t
        for i in range(m1):
            inner = Fraction(0)
            for j in range(l, min(l + m2, m1) + 1):
                inner += (
                    math.factorial(j - 1)
                    * math.comb(m2, j - l)
                    * cfg.M[i][j - 1]
                    / Fraction(-2) ** (i + j - l)
                )
            if inner == 0:
                continue
            w = Fraction(2) ** m2 * inner / math.factorial(cfg.beta + i)
            u_x, u_t = _u_polys(a, b, Fraction(0), cfg.beta + i)
            z = z + w * u_x
            y = y + w * u_t
        zs.append(z)
        ys.append(y)
    for l in range(m1 + 1, m + 1):
        front = (
            Fraction(2) ** (cfg.alpha + cfg.beta - m + l)
            * math.factorial(cfg.alpha - m + l - 1)
            / math.factorial(m - l)
        )
        u_x, u_t = _u_polys(a, b, a, m - l)
        z = front * u_x
        y = front * u_t
        for i in range(m2):
            inner = Fraction(0)
            for j in range(l - m1, min(l, m2) + 1):
                inner += (
                    math.factorial(j - 1)
                    * math.comb(m1, l - j)
                    * cfg.N[i][j - 1]
                    / ((-1) ** (l - m1 - 1) * Fraction(2) ** (i + j - l))
                )
            if inner == 0:
                continue
            w = inner / math.factorial(cfg.alpha + i)
            u_x, u_t = _u_polys(a, b, a - b, cfg.alpha + i)
            z = z + w * u_x
            y = y + w * u_t
        zs.append(z)
        ys.append(y)
    theta = theta_poly(a, b)
    for z, y in zip(zs, ys):
        if y(theta) != z:
            raise AssertionError("theta-basis form disagrees with z")
    rho: List[Tuple[RationalFunction, ...]] = []
    for h in range(1, m + 1):
        if h <= m1:
            row = tuple(
                (-1) ** (m - j) * gamma_ratio(a - j, b - 1, a - m, b - j) for j in range(m + 1)
            )
        else:
            row = tuple(RationalFunction(ONE) for _ in range(m + 1))
        rho.append(row)
    system = ZSystem(
        z=tuple(zs),
        Y=tuple(ys),
        p=build_p(cfg.alpha, cfg.beta, m1, m2),
        q=build_q(cfg.alpha, cfg.beta, m),
        rho=tuple(rho),
    )
    _ZSYS_CACHE[cfg] = system
    return system


_LAMBDA_CACHE: Dict[Tuple[SobolevConfig, int], Fraction] = {}


def casorati_lambda(sys: ZSystem, cfg: SobolevConfig, n: int) -> Fraction:
    """Lambda(n) = det(rho^h_{n,j} z_h(n-j)) / (p(n) q(n)), exactly.

    Nonvanishing of Lambda(0..n) is equivalent to existence of the
    orthogonal polynomials q_0..q_n.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    key = (cfg, n)
    cached = _LAMBDA_CACHE.get(key)
    if cached is not None:
        return cached
    m = cfg.m
    pq = sys.p(n) * sys.q(n)
    if n >= m:
        assert pq != 0
        matrix = [
            [sys.rho[h][j](n) * sys.z[h](n - j) for j in range(1, m + 1)] for h in range(m)
        ]
        value = _linalg.det(matrix) / pq
    else:
        matrix = [
            [sys.rho[h][j].as_poly() * sys.z[h].shift(-j) for j in range(1, m + 1)]
            for h in range(m)
        ]
        ratio = RationalFunction(_linalg.det(matrix), sys.p * sys.q)
        value = ratio(n)  # reduced quotient must be regular at n
    _LAMBDA_CACHE[key] = value
    return value


def sobolev_poly(sys: ZSystem, cfg: SobolevConfig, n: int) -> Poly:
    """The degree-n Sobolev-orthogonal polynomial from the bordered determinant."""
    for k in range(n + 1):
        if casorati_lambda(sys, cfg, k) == 0:
            raise DegenerateConfigError(f"Lambda({k}) = 0")
    ctx = JacobiContext(Fraction(cfg.alpha), Fraction(cfg.beta))
    m = cfg.m
    if n >= m:
        pq = sys.p(n) * sys.q(n)
        rows = [[sys.rho[h][j](n) * sys.z[h](n - j) for j in range(m + 1)] for h in range(m)]
        values = [
            _linalg.det([[row[r] for r in range(m + 1) if r != j] for row in rows]) / pq
            for j in range(m + 1)
        ]
    else:
        pq_poly = sys.p * sys.q
        entries = [
            [sys.rho[h][r] * RationalFunction(sys.z[h].shift(-r)) for r in range(m + 1)]
            for h in range(m)
        ]
        values = []
        for j in range(m + 1):
            if j > n:
                values.append(Fraction(0))  # multiplies the zero polynomial anyway
                continue
            minor = _linalg.det([[row[r] for r in range(m + 1) if r != j] for row in entries])
            values.append((minor / RationalFunction(pq_poly))(n))
    result = Poly()
    for j in range(m + 1):
        if values[j] != 0:
            result = result + values[j] * jacobi_poly(ctx, n - j)
    assert result.degree == n
    return result


def rl_cross_check(cfg: SobolevConfig, l: int, n: int) -> Tuple[Fraction, Fraction]:
    """Rebuild R_l(n) from exact integrals and jets, next to its z_l closed form.

    Returns the pair (integral route, prefactor * z_l(n)); the two must agree.
    The integral route uses the two-node Sobolev recipe with nodes -1 and +1
    directly, so it shares nothing with build_z.
    """
    if not 1 <= l <= cfg.m:
        raise ValueError("l out of range")
    a, b, m1, m2 = cfg.alpha, cfg.beta, cfg.m1, cfg.m2
    ctx = JacobiContext(Fraction(a), Fraction(b))
    pn = jacobi_poly(ctx, n)
    if l <= m1:
        w1 = integrate_against_weight((X + 1) ** (l - 1) * (1 - X) ** m2 * pn, a - m2, b - m1)
        extra = Fraction(0)
        for i in range(m1):
            inner = Fraction(0)
            for j in range(l, min(l + m2, m1) + 1):
                inner += (
                    math.factorial(j - 1)
                    * math.comb(m2, j - l)
                    * cfg.M[i][j - 1]
                    / ((-1) ** m2 * Fraction(-2) ** (j - l - m2))
                )
            if inner:
                extra += inner * pn.derivative(i)(-1)
        integral_route = w1 + extra
        prefactor = Fraction(
            math.factorial(b) * math.factorial(n + a),
            math.factorial(a + b) * math.factorial(n + b),
        )
    else:
        w2 = integrate_against_weight(
            (X + 1) ** m1 * (1 - X) ** (l - m1 - 1) * pn, a - m2, b - m1
        )
        extra = Fraction(0)
        for i in range(m2):
            inner = Fraction(0)
            for j in range(l - m1, min(l, m2) + 1):
                inner += (
                    math.factorial(j - 1)
                    * math.comb(m1, l - j)
                    * cfg.N[i][j - 1]
                    / ((-1) ** (l - m1 - 1) * Fraction(2) ** (j - l))
                )
            if inner:
                extra += inner * pn.derivative(i)(1)
        integral_route = w2 + extra
        prefactor = (-1) ** n * Fraction(math.factorial(b), math.factorial(a + b))
    z_val = build_z(cfg).z[l - 1](n)
    return integral_route, prefactor * z_val


# -- combinatorial identities ------------------------------------------------


class _GammaProduct:
    """A rational multiple of a product of Gamma values at non-integer points.

    Each Gamma(x) is normalized to Gamma(r) with r = x mod 1 in (0, 1) times
    a rational Pochhammer factor, so products with matching residues can be
    compared and summed exactly.
    """

    __slots__ = ("coeff", "powers")

    def __init__(self, coeff: Fraction, powers: Optional[Dict[Fraction, int]] = None):
        self.coeff = Fraction(coeff)
        self.powers = {r: e for r, e in (powers or {}).items() if e != 0}

    @classmethod
    def gamma(cls, x: Fraction) -> "_GammaProduct":
        x = Fraction(x)
        if x.denominator == 1:
            raise ValueError("integer Gamma argument: use factorials instead")
        r = x - math.floor(x)
        steps = math.floor(x)
        if steps >= 0:
            coeff = pochhammer(r, steps)
        else:
            coeff = 1 / pochhammer(x, -steps)
        return cls(coeff, {r: 1})

    @classmethod
    def binomial(cls, top: Fraction, bottom: Fraction) -> "_GammaProduct":
        return cls.gamma(top + 1) / (cls.gamma(bottom + 1) * cls.gamma(top - bottom + 1))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return _GammaProduct(self.coeff * other, self.powers)
        powers = dict(self.powers)
        for r, e in other.powers.items():
            powers[r] = powers.get(r, 0) + e
        return _GammaProduct(self.coeff * other.coeff, powers)

    __rmul__ = __mul__

    def __truediv__(self, other):
        inv = _GammaProduct(1 / other.coeff, {r: -e for r, e in other.powers.items()})
        return self * inv

    def __rtruediv__(self, other):
        return _GammaProduct(Fraction(other)) / self


def _gamma_sum_is_zero(terms: List[_GammaProduct]) -> bool:
    live = [t for t in terms if t.coeff != 0]
    if not live:
        return True
    powers = live[0].powers
    if any(t.powers != powers for t in live[1:]):
        raise AssertionError("incomparable Gamma products in one sum")
    return sum(t.coeff for t in live) == 0


def verify_comb_identities(alpha: Fraction, beta: Fraction, m1: int, m2: int) -> bool:
    """Check both families of combinatorial identities exactly.

    Requires alpha, beta and alpha+beta non-integer (the identities' own
    hypothesis); every admissible (k, h) pair is evaluated and must give 0.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if 1 in (alpha.denominator, beta.denominator, (alpha + beta).denominator):
        raise ValueError("alpha, beta and alpha+beta must be non-integers")
    m = m1 + m2

    def comb(nn: int, kk: int) -> int:
        return math.comb(nn, kk) if 0 <= kk <= nn else 0

    # first family
    for h in range(0, m1 - 1):
        for k in range(1, m1 - h):
            terms = []
            for l in range(m1):
                c = (
                    Fraction((-1) ** l)
                    * comb(h, m1 - l)
                    * falling_binomial(l - k, l)
                    / (Fraction(2) ** l * (beta - l))
                )
                if c == 0:
                    continue
                terms.append(c / _GammaProduct.binomial(alpha + beta - k - l, alpha - k))
            if not _gamma_sum_is_zero(terms):
                return False
    # second family
    for k in range(1, m):
        terms = []
        for l in range(m1):
            c = (
                Fraction((-1) ** k)
                * comb(m - l - 2, m2 - 1)
                * falling_binomial(l - k, l)
                / (beta - l)
            )
            if c == 0:
                continue
            terms.append(c / _GammaProduct.binomial(alpha + beta - k - l, alpha - k))
        for l in range(m2):
            c = Fraction(comb(m - l - 2, m1 - 1)) * falling_binomial(l - k, l) / (alpha - l)
            if c == 0:
                continue
            terms.append(c / _GammaProduct.binomial(alpha + beta - k - l, beta - k))
        if not _gamma_sum_is_zero(terms):
            return False
    return True
