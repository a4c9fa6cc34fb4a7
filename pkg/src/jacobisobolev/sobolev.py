"""The discrete Jacobi-Sobolev bilinear form and its Gram-matrix oracle.

The bilinear form is

    B(p, q) = int p q (1-x)^(alpha-m2) (1+x)^(beta-m1) dx
              + T(p, -1, m1) . M . T(q, -1, m1)
              + T(p, +1, m2) . N . T(q, +1, m2)

where T(p, point, k) is the jet (p, p', ..., p^(k-1)) at the point. The form
is generally non-symmetric, so orthogonality is one-sided ("left"): q_n is
orthogonal when B(q_n, q) = 0 for every q of lower degree and
B(q_n, q_n) != 0.

The Gram oracle here solves the moment system directly and serves as the
independent ground truth for the Casorati construction in `construct`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from . import _linalg
from .exactmath import ONE, Poly, involute, rat, rat_str
from .jacobi import integrate_against_weight

Matrix = Tuple[Tuple[Fraction, ...], ...]


class ParameterOutOfRangeError(ValueError):
    """The configuration puts a negative exponent in the weight."""


def _freeze_matrix(rows, size: int, name: str) -> Matrix:
    rows = tuple(tuple(Fraction(c) for c in row) for row in rows)
    if len(rows) != size or any(len(row) != size for row in rows):
        raise ValueError(f"{name} must be a {size}x{size} matrix")
    return rows


@dataclass(frozen=True)
class SobolevConfig:
    """Full problem statement: parameters, mass matrices and the Xi factor."""

    alpha: int
    beta: int
    m1: int
    m2: int
    M: Matrix = ()
    N: Matrix = ()
    xi: Poly = field(default=ONE)

    def __post_init__(self):
        if self.m1 < 0 or self.m2 < 0 or self.m < 1:
            raise ValueError("need m1, m2 >= 0 with m1 + m2 >= 1")
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha and beta must be nonnegative integers")
        object.__setattr__(self, "M", _freeze_matrix(self.M, self.m1, "M"))
        object.__setattr__(self, "N", _freeze_matrix(self.N, self.m2, "N"))
        if self.matrix_nonzero(self.N) and self.alpha < self.m2:
            raise ValueError("alpha >= m2 is required when N is nonzero")
        if self.matrix_nonzero(self.M) and self.beta < self.m1:
            raise ValueError("beta >= m1 is required when M is nonzero")
        if self.alpha < self.m2 or self.beta < self.m1:
            raise ParameterOutOfRangeError("weight exponents would be negative")
        shift = self.alpha + self.beta - self.m - 1
        if involute(self.xi, shift) != self.xi:
            raise ValueError("xi must be invariant under x -> -(x + alpha+beta-m)")

    @property
    def m(self) -> int:
        return self.m1 + self.m2

    @staticmethod
    def matrix_nonzero(matrix: Matrix) -> bool:
        return any(c != 0 for row in matrix for c in row)

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "m1": self.m1,
            "m2": self.m2,
            "M": [[rat_str(c) for c in row] for row in self.M],
            "N": [[rat_str(c) for c in row] for row in self.N],
            "xi": self.xi.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "SobolevConfig":
        return cls(
            alpha=int(data["alpha"]),
            beta=int(data["beta"]),
            m1=int(data["m1"]),
            m2=int(data["m2"]),
            M=[[rat(c) for c in row] for row in data.get("M", [])],
            N=[[rat(c) for c in row] for row in data.get("N", [])],
            xi=Poly.from_json(data.get("xi", ["1"])),
        )


def jet(p: Poly, point, k: int) -> Tuple[Fraction, ...]:
    """The vector (p, p', ..., p^(k-1)) evaluated at the point."""
    values = []
    q = p
    for _ in range(k):
        values.append(q(point))
        q = q.derivative()
    return tuple(values)


def bilinear(cfg: SobolevConfig, p: Poly, q: Poly) -> Fraction:
    """Evaluate the Sobolev bilinear form exactly."""
    total = integrate_against_weight(p * q, cfg.alpha - cfg.m2, cfg.beta - cfg.m1)
    if cfg.m1:
        tp = jet(p, -1, cfg.m1)
        tq = jet(q, -1, cfg.m1)
        total += sum(tp[i] * cfg.M[i][j] * tq[j] for i in range(cfg.m1) for j in range(cfg.m1))
    if cfg.m2:
        tp = jet(p, 1, cfg.m2)
        tq = jet(q, 1, cfg.m2)
        total += sum(tp[i] * cfg.N[i][j] * tq[j] for i in range(cfg.m2) for j in range(cfg.m2))
    return total


def gram_orthogonal_oracle(cfg: SobolevConfig, n: int) -> Optional[Poly]:
    """Monic degree-n left-orthogonal polynomial from the moment system.

    Solves B(q_n, x^j) = 0 for j < n with q_n monic. Returns None when the
    system is singular or the resulting norm B(q_n, q_n) vanishes: in either
    case the orthogonal polynomial does not exist.
    """
    monomials = [Poly.monomial(k) for k in range(n + 1)]
    if n == 0:
        q = ONE
    else:
        matrix = [[bilinear(cfg, monomials[j], monomials[i]) for j in range(n)] for i in range(n)]
        rhs = [-bilinear(cfg, monomials[n], monomials[i]) for i in range(n)]
        coeffs = _linalg.solve(matrix, rhs)
        if coeffs is None:
            return None
        q = Poly(coeffs + [Fraction(1)])
    if bilinear(cfg, q, q) == 0:
        return None
    return q
