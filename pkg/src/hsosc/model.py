"""Dimensionless parameterization of H = p^2/2 + m^2 q^2/2 + M^3 q^4/4.

Everything downstream works in units where M = 1; the coupling is carried
by ``g = (m/M)^2``.  ``energy_unit`` (the value of M in caller units) is
only applied when energies leave the library.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

INFINITE_COUPLING = math.inf


class DomainError(ValueError):
    """Raised for arguments outside an operation's domain."""


@dataclass(frozen=True)
class OscillatorModel:
    g: float = 0.0
    energy_unit: float = 1.0

    def __post_init__(self):
        if not (self.g >= 0.0 and math.isfinite(self.g)):
            raise DomainError(f"g must be finite and >= 0, got {self.g!r}")
        if not (self.energy_unit > 0.0 and math.isfinite(self.energy_unit)):
            raise DomainError(f"energy_unit must be > 0, got {self.energy_unit!r}")

    @classmethod
    def from_lambda(cls, lam: float, energy_unit: float = 1.0) -> "OscillatorModel":
        """Build from the weak-coupling constant lambda = (M/m)^3."""
        if math.isinf(lam):
            return cls(0.0, energy_unit)
        if lam <= 0.0:
            raise DomainError(f"lambda must be > 0, got {lam!r}")
        return cls(lam ** (-2.0 / 3.0), energy_unit)

    @classmethod
    def from_masses(cls, m: float, M: float) -> "OscillatorModel":
        if m < 0.0 or M <= 0.0:
            raise DomainError(f"need m >= 0 and M > 0, got m={m!r}, M={M!r}")
        return cls((m / M) ** 2, M)

    @property
    def mass(self) -> float:
        """Quadratic mass m in caller units."""
        return math.sqrt(self.g) * self.energy_unit


@dataclass(frozen=True)
class Level:
    n: int

    def __post_init__(self):
        check_level(self.n)

    def __index__(self):
        return self.n


def check_level(n) -> int:
    if isinstance(n, Level):
        return n.n
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 0:
        raise DomainError(f"level must be a non-negative integer, got {n!r}")
    return int(n)


def check_z(z):
    if np.any(np.asarray(z) <= 0.0):
        raise DomainError("regulator Z must be > 0")


def x_of(z, model: OscillatorModel):
    """X = m^2/Omega^2 = g / Z^(2/3)."""
    check_z(z)
    return model.g * np.power(z, -2.0 / 3.0)


def lambda_of(model: OscillatorModel) -> float:
    """lambda = g^(-3/2); ``INFINITE_COUPLING`` for the pure quartic case."""
    if model.g == 0.0:
        return INFINITE_COUPLING
    return model.g ** -1.5
