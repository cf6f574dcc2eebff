"""Reference eigenvalues of H by diagonalization in a truncated
harmonic-oscillator basis, plus a brute-force perturbation-sum check of the
Halliday-Suranyi corrections.  Both are built from ladder-operator matrices
and share nothing with the closed-form terms."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .eigen import eigen_lowest
from .model import DomainError, OscillatorModel, check_level, check_z


class OracleNotConverged(RuntimeError):
    def __init__(self, message, energies, error_estimates, basis_used):
        super().__init__(message)
        self.energies = energies
        self.error_estimates = error_estimates
        self.basis_used = basis_used


def _ladder(size):
    return np.diag(np.sqrt(np.arange(1.0, size)), 1)


def _operators(omega, size):
    """q^2, p^2 and q^4 on a basis of frequency ``omega``, exact in the first ``size`` states."""
    big = size + 4
    a = _ladder(big)
    xs = a + a.T          # sqrt(2 omega) q
    ps = a.T - a          # i sqrt(2/omega) p
    q2 = xs @ xs / (2.0 * omega)
    p2 = -(ps @ ps) * (omega / 2.0)
    q4 = q2 @ q2
    cut = np.s_[:size, :size]
    return q2[cut], p2[cut], q4[cut]


def build_hamiltonian(model: OscillatorModel, basis_omega: float, size: int, quartic: float = 1.0):
    """Matrix of p^2/2 + m^2 q^2/2 + quartic * M^3 q^4/4 in caller units.

    ``basis_omega`` is in units of M.  Only |i-j| in {0, 2, 4} is populated.
    """
    if size < 8:
        raise DomainError(f"basis size must be >= 8, got {size}")
    if basis_omega <= 0:
        raise DomainError("basis_omega must be > 0")
    M = model.energy_unit
    q2, p2, q4 = _operators(basis_omega * M, size)
    h = 0.5 * p2 + 0.5 * model.mass**2 * q2 + 0.25 * quartic * M**3 * q4
    return 0.5 * (h + h.T)


@dataclass(frozen=True)
class OracleConfig:
    basis_omega: float | None = None
    initial_size: int = 16
    rel_tol: float = 1e-10
    max_doublings: int = 6

    def __post_init__(self):
        if self.basis_omega is not None and self.basis_omega <= 0:
            raise DomainError("basis_omega must be > 0")
        if self.initial_size < 16:
            raise DomainError("initial_size must be >= 16")
        if self.rel_tol <= 0:
            raise DomainError("rel_tol must be > 0")


@dataclass(frozen=True)
class OracleResult:
    energies: tuple
    basis_used: int
    converged: bool
    per_level_error_estimate: tuple
    basis_omega: float = field(default=1.0)


def default_basis_omega(model: OscillatorModel, n_max: int, quartic: float = 1.0) -> float:
    """Match the quartic well's natural frequency at the highest level, in units of M."""
    m = math.sqrt(model.g)
    if quartic == 0.0:
        return m
    return max(m, (n_max + 1) ** (1.0 / 3.0))


def exact_energies(model: OscillatorModel, n_max: int, config: OracleConfig | None = None,
                   quartic: float = 1.0, strict: bool = True) -> OracleResult:
    """Lowest n_max+1 eigenvalues, doubling the basis until they settle."""
    n_max = check_level(n_max)
    config = config or OracleConfig()
    omega = config.basis_omega or default_basis_omega(model, n_max, quartic)
    count = n_max + 1

    size = config.initial_size
    while size < 2 * count + 8:
        size *= 2
    prev = eigen_lowest(build_hamiltonian(model, omega, size, quartic), count)
    delta = np.full(count, np.inf)
    for _ in range(config.max_doublings):
        size *= 2
        cur = eigen_lowest(build_hamiltonian(model, omega, size, quartic), count)
        delta = np.abs(cur - prev)
        scale = np.maximum(np.abs(cur), np.finfo(float).tiny)
        prev = cur
        if np.all(delta <= config.rel_tol * scale):
            return OracleResult(tuple(map(float, cur)), size, True,
                                tuple(map(float, delta)), float(omega))
    if strict:
        raise OracleNotConverged(
            f"eigenvalues not converged to rel_tol={config.rel_tol:g} at basis size {size}",
            tuple(map(float, prev)), tuple(map(float, delta)), size)
    return OracleResult(tuple(map(float, prev)), size, False, tuple(map(float, delta)), float(omega))


def perturbation_terms(n, z: float, x: float, size: int | None = None):
    """E^(1), E^(2), E^(3) and <n1|n1> from explicit Rayleigh-Schroedinger sums.

    Works in units M = 1 on the basis of frequency Omega = Z^(1/3), where
    H_0 is diagonal with entries (k+1/2)^2 / Z^(2/3) and V = H - H_0.
    """
    n = check_level(n)
    check_z(z)
    if x < 0:
        raise DomainError("X must be >= 0")
    size = size or n + 20
    omega = z ** (1.0 / 3.0)
    h = build_hamiltonian(OscillatorModel(g=x * omega**2), omega, size)
    k = np.arange(size)
    h0 = (k + 0.5) ** 2 / omega**2
    v = h - np.diag(h0)
    gap = h0[n] - h0
    gap[n] = np.inf
    c = v[:, n] / gap         # first-order state coefficients
    first = v[n, n]
    second = v[n] @ c
    third = c @ v @ c - first * (c @ c)
    return float(first), float(second), float(third), float(c @ c)
