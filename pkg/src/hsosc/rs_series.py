"""Weak-coupling Rayleigh-Schroedinger series E_n = m * sum_j c_j(n) lambda^j.

Results are in units of m, not M.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import DomainError, check_level

MAX_RS_ORDER = 3


@dataclass(frozen=True)
class RSCoefficients:
    n: int
    exact: tuple  # Fractions c0..c3

    @property
    def c(self) -> tuple:
        return tuple(float(v) for v in self.exact)

    c0 = property(lambda self: float(self.exact[0]))
    c1 = property(lambda self: float(self.exact[1]))
    c2 = property(lambda self: float(self.exact[2]))
    c3 = property(lambda self: float(self.exact[3]))


def rs_coeffs(n) -> RSCoefficients:
    n = Fraction(check_level(n))
    return RSCoefficients(int(n), (
        n + Fraction(1, 2),
        Fraction(3) * (2 * n**2 + 2 * n + 1) / 16,
        -(34 * n**3 + 51 * n**2 + 59 * n + 21) / Fraction(128),
        Fraction(3) * (125 * n**4 + 250 * n**3 + 472 * n**2 + 347 * n + 111) / 1024,
    ))


def rs_terms(n, lam: float, jmax: int = MAX_RS_ORDER) -> list[float]:
    """Individual contributions c_j lambda^j for j <= jmax."""
    if not 0 <= jmax <= MAX_RS_ORDER:
        raise DomainError(f"jmax must be in 0..{MAX_RS_ORDER}")
    if lam < 0:
        raise DomainError("lambda must be >= 0")
    c = rs_coeffs(n).c
    return [c[j] * lam**j for j in range(jmax + 1)]


def rs_partial_sum(n, lam: float, jmax: int = MAX_RS_ORDER) -> float:
    """Truncated series in units of m."""
    return sum(rs_terms(n, lam, jmax))
