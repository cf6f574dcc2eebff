"""Machine-checkable acceptance criteria for the whole library.

Each check returns a ``CriterionResult`` with the measured numbers next to
the target; ``run_all`` evaluates every one of them.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import selection, terms
from .model import OscillatorModel
from .oracle import OracleConfig, exact_energies, perturbation_terms
from .rs_series import rs_partial_sum

ORACLE_TOL = 1e-10
PURE_QUARTIC = OscillatorModel(0.0)
SEED = 20240917


@dataclass(frozen=True)
class CriterionResult:
    key: str
    title: str
    passed: bool
    measured: str
    target: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.key:>3} {self.title}: measured {self.measured}; target {self.target}"


def _exact(n_max, g=0.0, **config):
    cfg = OracleConfig(rel_tol=ORACLE_TOL, **config)
    return exact_energies(OscillatorModel(g), n_max, cfg).energies


def variational_ratios() -> CriterionResult:
    exact = _exact(1)
    targets = (1.00076, 1.00066)
    ratios = [selection.variational_select(n, PURE_QUARTIC, 1).energy / exact[n] for n in (0, 1)]
    ok = all(abs(r - t) <= 5e-4 for r, t in zip(ratios, targets))
    return CriterionResult(
        "1", "variational <H>^(1) minimum / exact, n=0,1", ok,
        ", ".join(f"{r:.6f}" for r in ratios), "1.00076, 1.00066 (+-0.0005)")


def fac_first_order() -> CriterionResult:
    exact = _exact(5)
    errs = [abs(selection.fac_select(n, PURE_QUARTIC, 1).energy / exact[n] - 1) for n in range(2, 6)]
    return CriterionResult(
        "2", "FAC k=1 energy vs exact, n=2..5", max(errs) < 0.01,
        f"max |ratio-1| = {max(errs):.3e}", "< 1e-2")


def pms_third_order() -> CriterionResult:
    exact = _exact(5)
    errs = [abs(selection.pms_select(n, PURE_QUARTIC, 3).energy / exact[n] - 1) for n in range(6)]
    return CriterionResult(
        "3", "PMS k=3 left local minimum vs exact, n=0..5", max(errs) < 0.01,
        f"max |ratio-1| = {max(errs):.3e}", "< 1e-2")


def closed_form_constants() -> CriterionResult:
    rep = selection.asymptotic_checks(n_energy=1000)
    ok = (round(rep.fac_constant, 3) == 0.862 and round(rep.pms_constant, 3) == 0.859
          and abs(rep.fac_energy_ratio - 1) <= 1e-3 and abs(rep.pms_energy_ratio - 1) <= 1e-3)
    return CriterionResult(
        "4", "asymptotic constants and n=1000 closed-form ratios", ok,
        f"{rep.fac_constant:.5f}, {rep.pms_constant:.5f}; ratios "
        f"{rep.fac_energy_ratio:.6f}, {rep.pms_energy_ratio:.6f}",
        "0.862, 0.859 to 3 d.p.; ratios within 1e-3 of 1")


def z_scaling() -> CriterionResult:
    n = 100
    z_pms = selection.pms_select(n, PURE_QUARTIC, 1).z_chosen / (n + 0.5)
    z_fac = selection.fac_select(n, PURE_QUARTIC, 1).z_chosen / (n + 0.5)
    ok = abs(z_pms / 1.5 - 1) < 0.01 and abs(z_fac / 1.25 - 1) < 0.01
    return CriterionResult(
        "5", "Z^(1)/(n+1/2) at n=100 (PMS, FAC)", ok,
        f"{z_pms:.6f}, {z_fac:.6f}", "3/2 and 5/4 within 1%")


def negativity_repair() -> CriterionResult:
    right_minima, lowest_h1 = [], []
    for n in range(2, 6):
        window = selection.ZSearchWindow.default(n, PURE_QUARTIC)
        mins = [p for p in selection.stationary_points("k3", n, PURE_QUARTIC, window)
                if p.kind == "local-min"]
        right_minima.append(mins[-1].value if len(mins) >= 2 else np.nan)
        lowest_h1.append(float(np.min(terms.h_expect_1(n, window.grid(), PURE_QUARTIC))))
    ok = all(v < 0 for v in right_minima) and all(v > 0 for v in lowest_h1)
    return CriterionResult(
        "6", "k=3 right minimum negative, <H>^(1) positive, n=2..5", ok,
        "right minima " + ", ".join(f"{v:.4g}" for v in right_minima)
        + "; min <H>^(1) " + ", ".join(f"{v:.4g}" for v in lowest_h1),
        "right minima < 0 and <H>^(1) > 0 on the whole grid")


def spread_reduction() -> CriterionResult:
    pairs = [(selection.spread(n, PURE_QUARTIC, "h-expect-1"),
              selection.spread(n, PURE_QUARTIC, "k3-partial-sum")) for n in range(6)]
    ok = all(h < k for h, k in pairs)
    return CriterionResult(
        "7", "spread of <H>^(1) below spread of k=3 sum, n=0..5", ok,
        "h1/k3 = " + ", ".join(f"{h / k:.3g}" for h, k in pairs), "every ratio < 1")


def harmonic_limit() -> CriterionResult:
    cfg = OracleConfig(basis_omega=1.0, rel_tol=ORACLE_TOL)
    e = exact_energies(OscillatorModel(1.0), 5, cfg, quartic=0.0).energies
    err = max(abs(v - (n + 0.5)) for n, v in enumerate(e))
    return CriterionResult("8a", "oracle harmonic limit", err <= 1e-12,
                           f"max error {err:.2e}", "<= 1e-12")


def basis_independence() -> CriterionResult:
    spectra = [np.array(_exact(5, basis_omega=w)) for w in (0.5, 1.0, 2.0)]
    worst = max(float(np.max(np.abs(a - b) / np.abs(b)))
                for a, b in itertools.combinations(spectra, 2))
    return CriterionResult("8b", "oracle basis-frequency independence (0.5, 1, 2)",
                           worst <= 1e-9, f"max rel diff {worst:.2e}", "<= 1e-9")


def rs_agreement(lam: float = 0.01) -> CriterionResult:
    model = OscillatorModel.from_masses(1.0, lam ** (1 / 3))
    oracle = exact_energies(model, 3, OracleConfig(rel_tol=ORACLE_TOL)).energies
    diffs = [abs(rs_partial_sum(n, lam, 3) - oracle[n]) for n in range(4)]
    bound = 10 * lam**4
    return CriterionResult(
        "8c", f"RS third-order sum vs oracle at lambda={lam:g}, n=0..3",
        all(d <= bound for d in diffs),
        "|diff| = " + ", ".join(f"{d:.3e}" for d in diffs), f"<= {bound:.1e}")


def quartic_scaling() -> CriterionResult:
    e = _exact(40)
    ratio = e[40] / e[20]
    target = (40.5 / 20.5) ** (4 / 3)
    return CriterionResult("8d", "A_0(40)/A_0(20) vs (40.5/20.5)^(4/3)",
                           abs(ratio / target - 1) < 0.02,
                           f"{ratio:.6f} vs {target:.6f}", "within 2%")


def transcription_oracle(points: int = 20) -> CriterionResult:
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(points):
        n = int(rng.integers(0, 6))
        z = float(rng.uniform(0.2, 8.0))
        x = float(rng.uniform(0.0, 1.0))
        ref = perturbation_terms(n, z, x)[:3]
        got = (terms.e1(n, z, x), terms.e2(n, z, x), terms.e3(n, z, x))
        for a, b in zip(got, ref):
            worst = max(worst, abs(a - b) / abs(b))
    return CriterionResult("9", f"E^(1..3) vs brute-force perturbation sums ({points} points)",
                           worst <= 1e-8, f"max rel diff {worst:.2e}", "<= 1e-8")


def variational_bound() -> CriterionResult:
    exact = _exact(1)
    zs = np.linspace(0.05, 10.0, 400)
    slack = [float(np.min(terms.h_expect_1(n, zs, PURE_QUARTIC) - exact[n])) for n in (0, 1)]
    return CriterionResult("10", "<H>^(1) >= exact on 400 points in [0.05, 10], n=0,1",
                           all(s >= -1e-9 for s in slack),
                           "min slack " + ", ".join(f"{s:.3e}" for s in slack), ">= -1e-9")


CRITERIA = (
    variational_ratios, fac_first_order, pms_third_order, closed_form_constants, z_scaling,
    negativity_repair, spread_reduction, harmonic_limit, basis_independence, rs_agreement,
    quartic_scaling, transcription_oracle, variational_bound,
)


def run_check(check) -> CriterionResult:
    """Run one criterion; a numerical exception counts as a failure."""
    try:
        return check()
    except (ArithmeticError, RuntimeError, ValueError) as exc:
        doc = (check.__doc__ or check.__name__).strip()
        return CriterionResult("?", doc, False, f"error: {exc}", "no exception")


def run_all() -> list[CriterionResult]:
    return [run_check(check) for check in CRITERIA]
