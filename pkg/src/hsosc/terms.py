"""Halliday-Suranyi energies E_n^(0..3)(Z), the first-order state norm and
the resummed expectation values, all in units of M.

The formulas are kept in their grouped printed form.  Each ``*_groups``
function returns the additive groups separately so vanishing conditions can
be checked group by group; the public functions just sum them.

All kernels accept scalars, numpy arrays, or ``Dual`` numbers for ``z`` and
``x``.  ``partial_sum_dz`` and friends feed duals through the same code to
get exact Z-derivatives with X = g Z^(-2/3) riding along.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._dual import Dual
from .model import DomainError, OscillatorModel, check_level, check_z, x_of

MAX_ORDER = 3


def _check_x(x):
    xv = x.val if isinstance(x, Dual) else x
    if np.any(np.asarray(xv) < 0.0):
        raise DomainError("X must be >= 0")


def _check(n, z, x=0.0):
    n = check_level(n)
    check_z(z.val if isinstance(z, Dual) else z)
    _check_x(x)
    return n


def _scale(z):
    return z ** (-2.0 / 3.0)


def e0(n, z):
    """E_n^(0) = Z^(-2/3) (n + 1/2)^2."""
    n = _check(n, z)
    return _scale(z) * (n + 0.5) ** 2


def _lin(z, x, c1, c0):
    # c1/4 Z(1+X) - c0/16
    return c1 / 4 * z * (1 + x) - c0 / 16


def e1(n, z, x):
    n = _check(n, z, x)
    return _scale(z) * _lin(z, x, 2 * n + 1, 10 * n * n + 10 * n + 1)


def e2_groups(n, z, x):
    """The three bracketed groups of E_n^(2), signs applied, without the Z^(-2/3) prefactor."""
    n = _check(n, z, x)
    a = z * (1 - x)
    g_const = 3 * (n**4 + 2 * n**3 - 2 * n**2 - 3 * n - 3) / (2**7 * (2 * n - 3) * (2 * n + 5))
    g_down = n * (n - 1) / (2**5 * (2 * n - 1)) * (a - (2 * n - 1) / 2) ** 2
    g_up = (n + 1) * (n + 2) / (2**5 * (2 * n + 3)) * (a - (2 * n + 3) / 2) ** 2
    return [-g_const, g_down, -g_up]


def e2(n, z, x):
    groups = e2_groups(n, z, x)
    return _scale(z) * sum(groups)


def _norm_groups(n, a):
    # a = Z(1-X)/4
    up2 = (n + 1) * (n + 2) / (4 * (2 * n + 3) ** 2) * (a - (2 * n + 3) / 8) ** 2
    up4 = (n + 1) * (n + 2) * (n + 3) * (n + 4) / (2**12 * (2 * n + 5) ** 2)
    dn2 = n * (n - 1) / (4 * (2 * n - 1) ** 2) * (a - (2 * n - 1) / 8) ** 2
    dn4 = n * (n - 1) * (n - 2) * (n - 3) / (2**12 * (2 * n - 3) ** 2)
    return up2, up4, dn2, dn4


def e3_groups(n, z, x):
    """The nine additive groups of E_n^(3) without the Z^(-2/3) prefactor.

    Order follows the printed expression; the last entry is the subtracted
    braced term (already negated).
    """
    n = _check(n, z, x)
    a = z * (1 - x) / 4
    up2, up4, dn2, dn4 = _norm_groups(n, a)
    return [
        up2 * _lin(z, x, 2 * n + 5, 10 * n * n + 50 * n + 61),
        dn2 * _lin(z, x, 2 * n - 3, 10 * n * n - 30 * n + 21),
        (n + 1) * (n + 2) * (n + 3) * (n + 4) / (2**6 * (2 * n + 5) * (2 * n + 3))
        * (a - (2 * n + 3) / 8) * (a - (2 * n + 7) / 8),
        -n * (n - 1) * (n + 1) * (n + 2) / (2**5 * (2 * n + 3) * (2 * n - 1))
        * (a - (2 * n - 1) / 8) * (a - (2 * n + 3) / 8),
        n * (n - 1) * (n - 2) * (n - 3) / (2**6 * (2 * n - 1) * (2 * n - 3))
        * (a - (2 * n - 5) / 8) * (a - (2 * n - 1) / 8),
        up4 * _lin(z, x, 2 * n + 9, 10 * n * n + 90 * n + 201),
        dn4 * _lin(z, x, 2 * n - 7, 10 * n * n - 70 * n + 121),
        -(up2 + up4 + dn2 + dn4) * _lin(z, x, 2 * n + 1, 10 * n * n + 10 * n + 1),
    ]


def e3(n, z, x):
    groups = e3_groups(n, z, x)
    return _scale(z) * sum(groups)


def norm1_groups(n, z, x):
    n = _check(n, z, x)
    return list(_norm_groups(n, z * (1 - x) / 4))


def first_order_norm(n, z, x):
    """<n^(1)|n^(1)>, dimensionless and non-negative."""
    return sum(norm1_groups(n, z, x))


def _terms_at(n, z, x, k):
    # looked up at call time so patched terms propagate
    fns = (lambda n, z, x: e0(n, z), e1, e2, e3)
    return [fns[j](n, z, x) for j in range(k + 1)]


def _check_order(k):
    if k not in range(MAX_ORDER + 1):
        raise DomainError(f"order must be in 0..{MAX_ORDER}, got {k!r}")


def partial_sum_x(n, z, x, k):
    """Sum_{j<=k} E_n^(j) at explicit (Z, X)."""
    _check_order(k)
    return sum(_terms_at(n, z, x, k))


def h_expect_1_x(n, z, x):
    """<H>_n^(1) = E0 + E1 + (E2 + E3) / (1 + <n1|n1>) at explicit (Z, X)."""
    t = _terms_at(n, z, x, 3)
    return t[0] + t[1] + (t[2] + t[3]) / (1 + first_order_norm(n, z, x))


def partial_sum(n, z, model: OscillatorModel, k):
    return partial_sum_x(n, z, x_of(z, model), k)


def h_expect_0(n, z, model: OscillatorModel):
    """<H>_n^(0): expectation of H in the unperturbed state, i.e. E0 + E1."""
    return partial_sum(n, z, model, 1)


def h_expect_1(n, z, model: OscillatorModel):
    return h_expect_1_x(n, z, x_of(z, model))


def _dual_zx(z, model):
    check_z(z)
    x = x_of(z, model)
    # dX/dZ = -(2/3) X / Z
    return Dual(z, np.ones_like(z, dtype=float)), Dual(x, -2.0 / 3.0 * x / z)


def partial_sum_dz(n, z, model: OscillatorModel, k):
    """Exact d/dZ of ``partial_sum`` at fixed g."""
    zd, xd = _dual_zx(z, model)
    return partial_sum_x(n, zd, xd, k).der


def h_expect_1_dz(n, z, model: OscillatorModel):
    zd, xd = _dual_zx(z, model)
    return h_expect_1_x(n, zd, xd).der


@dataclass(frozen=True)
class HSTermValues:
    n: int
    z: float
    x: float
    e0: float
    e1: float
    e2: float
    e3: float
    norm1: float

    def partial_sum(self, k: int) -> float:
        return sum((self.e0, self.e1, self.e2, self.e3)[: k + 1])

    @property
    def h_expect_1(self) -> float:
        return self.e0 + self.e1 + (self.e2 + self.e3) / (1 + self.norm1)


def hs_terms(n, z: float, model: OscillatorModel) -> HSTermValues:
    n = check_level(n)
    x = float(x_of(z, model))
    return HSTermValues(
        n=n, z=float(z), x=x,
        e0=float(e0(n, z)), e1=float(e1(n, z, x)), e2=float(e2(n, z, x)),
        e3=float(e3(n, z, x)), norm1=float(first_order_norm(n, z, x)),
    )


@dataclass(frozen=True)
class XPolynomial:
    """Partial sum at fixed Z as a polynomial in X: sum_j coeffs[j] X^j."""
    n: int
    z: float
    order: int
    coeffs: tuple

    def __call__(self, x):
        return np.polynomial.polynomial.polyval(x, self.coeffs)


def x_polynomial(n, z: float, k: int) -> XPolynomial:
    """Collect powers of X in the order-k partial sum at fixed Z.

    The order-k sum has degree k in X, so k+1 nodes determine it.
    """
    n = check_level(n)
    _check_order(k)
    check_z(z)
    nodes = np.arange(k + 1, dtype=float)
    values = np.array([partial_sum_x(n, z, xv, k) for xv in nodes], dtype=float)
    coeffs = np.linalg.solve(np.vander(nodes, increasing=True), values)
    return XPolynomial(n=n, z=float(z), order=k, coeffs=tuple(float(c) for c in coeffs))
