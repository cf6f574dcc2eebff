"""Choosing the regulator Z: fastest apparent convergence (FAC), minimum
sensitivity (PMS) and the perturbative-variational objective <H>^(1).

Roots and stationary points are bracketed on a geometric Z grid, then
refined with Brent's method.  Stationary points come from the exact
derivative of the truncated sums, never from finite differences.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import terms
from .model import DomainError, OscillatorModel, check_level

Z_REL_TOL = 1e-10
DEFAULT_SCAN_POINTS = 4000


class Method(str, enum.Enum):
    FAC = "FAC"
    PMS = "PMS"
    VAR0 = "VAR0"
    VAR1 = "VAR1"


class Rule(str, enum.Enum):
    SMALLEST_ROOT = "smallest-root"
    UNIQUE_STATIONARY = "unique-stationary-point"
    LEFT_LOCAL_MIN = "left-local-min"
    LEFTMOST_LOCAL_MIN = "leftmost-local-min"
    GLOBAL_MIN = "global-min"


class SelectionError(RuntimeError):
    def __init__(self, message, window=None):
        super().__init__(message)
        self.window = window


class NoRootError(SelectionError):
    pass


class NoStationaryPointError(SelectionError):
    pass


# -- closed forms at first order ------------------------------------------

def fac_constant(n) -> float:
    """5(n^2+n+1/10) / (4(n+1/2)): the k=1 FAC root at g=0."""
    n = check_level(n)
    return 5 * (n * n + n + 0.1) / (4 * (n + 0.5))


def pms_constant(n) -> float:
    """3(n^2+n+1/2) / (2(n+1/2)): the k=1 PMS point at g=0."""
    n = check_level(n)
    return 3 * (n * n + n + 0.5) / (2 * (n + 0.5))


def _positive_cubic_root(coeffs) -> float:
    roots = np.roots(coeffs)
    real = [r.real for r in roots if abs(r.imag) <= 1e-12 * max(1.0, abs(r)) and r.real > 0]
    if not real:
        raise NoRootError("cubic has no positive real root")
    return max(real)


def fac_closed_form_z(n, model: OscillatorModel) -> float:
    """Root of Z + g Z^(1/3) - C(n) = 0 via the cubic in u = Z^(1/3)."""
    u = _positive_cubic_root([1.0, 0.0, model.g, -fac_constant(n)])
    return u**3


def pms_closed_form_z(n, model: OscillatorModel) -> float:
    """Root of Z - g Z^(1/3) - C(n) = 0 via the cubic in u = Z^(1/3)."""
    u = _positive_cubic_root([1.0, 0.0, -model.g, -pms_constant(n)])
    return u**3


def fac_closed_form_energy(n) -> float:
    """E^(0) at the g=0 first-order FAC point, units of M."""
    n = check_level(n)
    return (4 / 5) ** (2 / 3) * ((n + 0.5) ** 4 / (n * n + n + 0.1)) ** (2 / 3)


def pms_closed_form_energy(n) -> float:
    """E^(0)+E^(1) at the g=0 first-order PMS point, units of M."""
    n = check_level(n)
    return 3 ** (4 / 3) / 2 ** (7 / 3) * ((n + 0.5) ** 2 * (n * n + n + 0.5)) ** (1 / 3)


FAC_ASYMPTOTIC = (4 / 5) ** (2 / 3)
PMS_ASYMPTOTIC = 3 ** (4 / 3) / 2 ** (7 / 3)


# -- search machinery ------------------------------------------------------

@dataclass(frozen=True)
class ZSearchWindow:
    z_min: float
    z_max: float
    points: int = DEFAULT_SCAN_POINTS

    def __post_init__(self):
        if not (0 < self.z_min < self.z_max):
            raise DomainError(f"need 0 < z_min < z_max, got [{self.z_min}, {self.z_max}]")
        if self.points < 2:
            raise DomainError("need at least 2 scan points")

    @classmethod
    def default(cls, n, model: OscillatorModel | None = None) -> "ZSearchWindow":
        # The right-hand minimum of the k=3 sum sits far out for n >= 2
        # (Z ~ 100 at n=2, ~1400 at n=5), hence the (n+1)^4 reach.
        n = check_level(n)
        model = model or OscillatorModel()
        z_min = min(0.02, 0.5 * fac_closed_form_z(n, model))
        z_max = max(10.0 * (n + 1) ** 4, 2.0 * pms_closed_form_z(n, model))
        return cls(z_min, z_max)

    def grid(self):
        return np.geomspace(self.z_min, self.z_max, self.points)


def _refine(f, lo, hi):
    return brentq(f, lo, hi, xtol=1e-14 * lo, rtol=Z_REL_TOL * 1e-2, maxiter=500)


def _sign_change_roots(f, grid, values):
    s = np.sign(values)
    roots = [float(grid[i]) for i in np.flatnonzero(s == 0)]
    for i in np.flatnonzero(s[:-1] * s[1:] < 0):
        roots.append(_refine(f, float(grid[i]), float(grid[i + 1])))
    return sorted(roots)


@dataclass(frozen=True)
class Root:
    z: float
    value: float


@dataclass(frozen=True)
class StationaryPoint:
    z: float
    value: float
    kind: str  # "local-min" or "local-max"
    curvature_sign: str  # "+" or "-", from central differences of the derivative


@dataclass(frozen=True)
class SelectionResult:
    method: Method
    order: int
    n: int
    z_chosen: float
    candidates: tuple
    energy: float
    rule_applied: Rule
    closed_form_z: float | None = None
    spread: float | None = None
    window: ZSearchWindow | None = field(default=None, compare=False)


def _objective(name: str, n, model: OscillatorModel):
    if name in ("k0", "k1", "k2", "k3"):
        k = int(name[1])
        return (lambda z: terms.partial_sum(n, z, model, k),
                lambda z: terms.partial_sum_dz(n, z, model, k))
    if name == "h0":
        return _objective("k1", n, model)
    if name == "h1":
        return (lambda z: terms.h_expect_1(n, z, model),
                lambda z: terms.h_expect_1_dz(n, z, model))
    raise DomainError(f"unknown objective {name!r}")


def stationary_points(name: str, n, model: OscillatorModel, window: ZSearchWindow | None = None):
    """All stationary points of an objective in the window, classified, ascending in Z.

    Values are in units of M.
    """
    n = check_level(n)
    window = window or ZSearchWindow.default(n, model)
    f, df = _objective(name, n, model)
    grid = window.grid()
    dvals = df(grid)
    out = []
    for z in _sign_change_roots(lambda t: float(df(t)), grid, dvals):
        h = 1e-5 * z
        left, right = float(df(z - h)), float(df(z + h))
        curvature = (right - left) / (2 * h)
        kind = "local-min" if right > left else "local-max"
        out.append(StationaryPoint(z, float(f(z)), kind, "+" if curvature > 0 else "-"))
    return out


def _scaled(points, unit):
    if unit == 1.0:
        return tuple(points)
    return tuple(type(p)(**{**p.__dict__, "value": p.value * unit}) for p in points)


def _check_order(k):
    if k not in (1, 2, 3):
        raise DomainError(f"order must be 1, 2 or 3, got {k!r}")


def fac_select(n, model: OscillatorModel, k: int, window: ZSearchWindow | None = None) -> SelectionResult:
    """Smallest Z at which E^(1)+...+E^(k) vanishes; energy is E^(0) there."""
    n = check_level(n)
    _check_order(k)
    window = window or ZSearchWindow.default(n, model)

    def corrections(z):
        return terms.partial_sum(n, z, model, k) - terms.e0(n, z)

    grid = window.grid()
    roots = _sign_change_roots(lambda z: float(corrections(z)), grid, corrections(grid))
    if not roots:
        raise NoRootError(
            f"FAC order {k}, n={n}: no sign change on [{window.z_min:g}, {window.z_max:g}]", window)
    unit = model.energy_unit
    candidates = tuple(Root(z, float(terms.e0(n, z)) * unit) for z in roots)
    chosen = candidates[0]
    return SelectionResult(
        Method.FAC, k, n, chosen.z, candidates, chosen.value, Rule.SMALLEST_ROOT,
        closed_form_z=fac_closed_form_z(n, model) if k == 1 else None, window=window)


def _left_min(points, what, window):
    mins = [p for p in points if p.kind == "local-min"]
    if not mins:
        raise NoStationaryPointError(f"{what}: no local minimum in window", window)
    return mins


def pms_select(n, model: OscillatorModel, k: int, window: ZSearchWindow | None = None) -> SelectionResult:
    """Left-most local minimum of the order-k partial sum."""
    n = check_level(n)
    _check_order(k)
    window = window or ZSearchWindow.default(n, model)
    points = stationary_points(f"k{k}", n, model, window)
    if not points:
        raise NoStationaryPointError(f"PMS order {k}, n={n}: no stationary point in window", window)
    chosen = _left_min(points, f"PMS order {k}, n={n}", window)[0]
    rule = {1: Rule.UNIQUE_STATIONARY, 2: Rule.LEFT_LOCAL_MIN, 3: Rule.LEFTMOST_LOCAL_MIN}[k]
    unit = model.energy_unit
    return SelectionResult(
        Method.PMS, k, n, chosen.z, _scaled(points, unit), chosen.value * unit, rule,
        closed_form_z=pms_closed_form_z(n, model) if k == 1 else None, window=window)


def variational_select(n, model: OscillatorModel, level: int,
                       window: ZSearchWindow | None = None) -> SelectionResult:
    """Minimize <H>_n^(level).

    Level 0 is the first-order PMS point.  At level 1 the global minimum is
    taken for n = 0, 1 (where it is a bound on the exact level) and the left
    local minimum otherwise, with the min-to-min spread attached.
    """
    n = check_level(n)
    if level not in (0, 1):
        raise DomainError(f"variational level must be 0 or 1, got {level!r}")
    window = window or ZSearchWindow.default(n, model)
    name = "h0" if level == 0 else "h1"
    points = stationary_points(name, n, model, window)
    what = f"<H>^({level}), n={n}"
    mins = _left_min(points, what, window)
    unit = model.energy_unit
    spread_value = None
    if level == 0:
        chosen, rule, closed = mins[0], Rule.UNIQUE_STATIONARY, pms_closed_form_z(n, model)
    else:
        closed = None
        if n <= 1:
            chosen, rule = min(mins, key=lambda p: p.value), Rule.GLOBAL_MIN
        else:
            chosen, rule = mins[0], Rule.LEFT_LOCAL_MIN
        if len(mins) >= 2:
            spread_value = _spread_from_points(points) * unit
    return SelectionResult(
        Method.VAR0 if level == 0 else Method.VAR1, level, n, chosen.z,
        _scaled(points, unit), chosen.value * unit, rule,
        closed_form_z=closed, spread=spread_value, window=window)


def _spread_from_points(points):
    mins = [p for p in points if p.kind == "local-min"]
    lo, hi = mins[0].z, mins[-1].z
    inside = [p.value for p in points if lo <= p.z <= hi]
    return max(inside) - min(inside)


SPREAD_OBJECTIVES = {"k3-partial-sum": "k3", "h-expect-1": "h1", "k3": "k3", "h1": "h1"}


def spread(n, model: OscillatorModel, objective: str, window: ZSearchWindow | None = None) -> float:
    """max - min of the objective between its two outermost local minima (caller units)."""
    try:
        name = SPREAD_OBJECTIVES[objective]
    except KeyError:
        raise DomainError(f"unknown spread objective {objective!r}") from None
    n = check_level(n)
    window = window or ZSearchWindow.default(n, model)
    points = stationary_points(name, n, model, window)
    if sum(p.kind == "local-min" for p in points) < 2:
        raise NoStationaryPointError(f"{objective}, n={n}: fewer than two local minima", window)
    return _spread_from_points(points) * model.energy_unit


@dataclass(frozen=True)
class AsymptoticReport:
    fac_constant: float
    pms_constant: float
    n_energy: int
    fac_energy_ratio: float
    pms_energy_ratio: float
    n_z: int
    fac_z_ratio: float
    pms_z_ratio: float


def asymptotic_checks(n_energy: int = 1000, n_z: int = 100) -> AsymptoticReport:
    """Large-n behaviour of the first-order closed forms at g = 0."""
    def leading(n):
        return (n + 0.5) ** (4 / 3)

    return AsymptoticReport(
        fac_constant=FAC_ASYMPTOTIC,
        pms_constant=PMS_ASYMPTOTIC,
        n_energy=n_energy,
        fac_energy_ratio=fac_closed_form_energy(n_energy) / (FAC_ASYMPTOTIC * leading(n_energy)),
        pms_energy_ratio=pms_closed_form_energy(n_energy) / (PMS_ASYMPTOTIC * leading(n_energy)),
        n_z=n_z,
        fac_z_ratio=fac_constant(n_z) / (1.25 * (n_z + 0.5)),
        pms_z_ratio=pms_constant(n_z) / (1.5 * (n_z + 0.5)),
    )
