import numpy as np
import pytest

from hsosc import selection, terms
from hsosc.model import DomainError, OscillatorModel
from hsosc.selection import (
    Method, NoRootError, NoStationaryPointError, Rule, ZSearchWindow, fac_select, pms_select,
    spread, stationary_points, variational_select,
)

QUARTIC = OscillatorModel(0.0)


def test_fac_first_order_ground_state():
    res = fac_select(0, QUARTIC, 1)
    assert res.z_chosen == pytest.approx(0.25, rel=1e-10)
    assert res.closed_form_z == pytest.approx(0.25, rel=1e-12)
    # (4/5)^(2/3) [(1/2)^4 / (1/10)]^(2/3), mpmath value
    assert res.energy == pytest.approx(0.6299605249474365824, rel=1e-10)
    assert res.energy == pytest.approx(selection.fac_closed_form_energy(0), rel=1e-10)
    assert res.rule_applied is Rule.SMALLEST_ROOT
    assert res.z_chosen in [c.z for c in res.candidates]


@pytest.mark.parametrize("n", range(2, 6))
def test_fac_first_order_within_one_percent(n, quartic_exact):
    assert fac_select(n, QUARTIC, 1).energy / quartic_exact[n] == pytest.approx(1, abs=0.01)


@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("n", range(6))
def test_fac_higher_orders_choose_smallest_root(n, k):
    res = fac_select(n, QUARTIC, k)
    zs = [c.z for c in res.candidates]
    assert res.z_chosen == min(zs)
    assert abs(terms.partial_sum(n, res.z_chosen, QUARTIC, k) - terms.e0(n, res.z_chosen)) < 1e-9


def test_pms_first_order_ground_state():
    res = pms_select(0, QUARTIC, 1)
    assert res.z_chosen == pytest.approx(1.5, rel=1e-10)
    assert res.energy == pytest.approx(0.4292678409574994504, rel=1e-12)
    assert res.rule_applied is Rule.UNIQUE_STATIONARY
    assert len(res.candidates) == 1


@pytest.mark.parametrize("n", range(6))
def test_pms_third_order_within_one_percent(n, quartic_exact):
    res = pms_select(n, QUARTIC, 3)
    assert res.rule_applied is Rule.LEFTMOST_LOCAL_MIN
    assert res.energy / quartic_exact[n] == pytest.approx(1, abs=0.01)


@pytest.mark.parametrize("n", range(6))
def test_stationary_point_counts(n):
    k2 = stationary_points("k2", n, QUARTIC)
    k3 = stationary_points("k3", n, QUARTIC)
    assert [p.kind for p in k2] == ["local-min", "local-max"]
    assert [p.kind for p in k3] == ["local-min", "local-max", "local-min"]
    for p in k2 + k3:
        assert (p.kind == "local-min") == (p.curvature_sign == "+")
        assert abs(terms.partial_sum_dz(n, p.z, QUARTIC, 3 if p in k3 else 2)) < 1e-8


@pytest.mark.parametrize("n", range(2, 6))
def test_third_order_right_minimum_negative(n):
    right = stationary_points("k3", n, QUARTIC)[-1]
    assert right.kind == "local-min" and right.value < 0


def test_closed_forms_match_scan():
    rng = np.random.default_rng(42)
    for _ in range(50):
        n, g = int(rng.integers(0, 11)), float(rng.uniform(0, 10))
        m = OscillatorModel(g)
        fac = fac_select(n, m, 1)
        pms = pms_select(n, m, 1)
        assert fac.z_chosen == pytest.approx(fac.closed_form_z, rel=1e-8)
        assert pms.z_chosen == pytest.approx(pms.closed_form_z, rel=1e-8)


def test_variational_ratios(quartic_exact):
    r0 = variational_select(0, QUARTIC, 1)
    r1 = variational_select(1, QUARTIC, 1)
    assert r0.rule_applied is Rule.GLOBAL_MIN
    assert r0.energy / quartic_exact[0] == pytest.approx(1.00076, abs=5e-4)
    assert r1.energy / quartic_exact[1] == pytest.approx(1.00066, abs=5e-4)
    # the bound holds
    assert r0.energy > quartic_exact[0] and r1.energy > quartic_exact[1]


def test_variational_level0_is_first_order_pms():
    v = variational_select(0, QUARTIC, 0)
    p = pms_select(0, QUARTIC, 1)
    assert v.method is Method.VAR0
    assert (v.z_chosen, v.energy) == (p.z_chosen, p.energy)


def test_variational_excited_uses_left_minimum():
    res = variational_select(3, QUARTIC, 1)
    mins = [c for c in res.candidates if c.kind == "local-min"]
    assert res.rule_applied is Rule.LEFT_LOCAL_MIN
    assert res.z_chosen == mins[0].z
    assert res.spread == pytest.approx(spread(3, QUARTIC, "h-expect-1"))


@pytest.mark.parametrize("n", range(6))
def test_spread_reduction(n):
    h1 = spread(n, QUARTIC, "h-expect-1")
    k3 = spread(n, QUARTIC, "k3-partial-sum")
    assert 0 < h1 < k3


def test_spread_needs_two_minima():
    with pytest.raises(NoStationaryPointError):
        spread(0, QUARTIC, "k3", ZSearchWindow(0.5, 1.6))
    with pytest.raises(DomainError):
        spread(0, QUARTIC, "k7")


def test_no_root_error_carries_window():
    window = ZSearchWindow(2.0, 5.0)
    with pytest.raises(NoRootError) as info:
        fac_select(0, QUARTIC, 1, window)
    assert info.value.window == window


@pytest.mark.parametrize("n", range(6))
def test_h1_positive(n):
    zs = ZSearchWindow.default(n).grid()
    assert np.all(terms.h_expect_1(n, zs, QUARTIC) > 0)


@pytest.mark.parametrize("n", [0, 1])
def test_h1_bounded_below_by_exact(n, quartic_exact):
    zs = np.linspace(0.05, 10, 400)
    assert np.all(terms.h_expect_1(n, zs, QUARTIC) >= quartic_exact[n] - 1e-9)


@pytest.mark.parametrize("select,arg", [(fac_select, 2), (pms_select, 3), (variational_select, 1)])
def test_energy_unit_leaves_z_unchanged(select, arg):
    a = select(2, OscillatorModel(0.4, 1.0), arg)
    b = select(2, OscillatorModel(0.4, 3.5), arg)
    assert a.z_chosen == b.z_chosen
    assert b.energy == pytest.approx(3.5 * a.energy, rel=1e-15)


def test_asymptotic_checks():
    rep = selection.asymptotic_checks()
    assert rep.fac_constant == pytest.approx(0.8617738760127535, rel=1e-14)
    assert rep.pms_constant == pytest.approx(0.8585356819149989, rel=1e-14)
    assert round(rep.fac_constant, 3) == 0.862 and round(rep.pms_constant, 3) == 0.859
    assert abs(rep.fac_energy_ratio - 1) < 1e-3 and abs(rep.pms_energy_ratio - 1) < 1e-3
    assert rep.fac_z_ratio == pytest.approx(1, abs=0.01)
    assert rep.pms_z_ratio == pytest.approx(1, abs=0.01)


def test_selection_is_reproducible():
    assert pms_select(4, QUARTIC, 3) == pms_select(4, QUARTIC, 3)


def test_order_validation():
    with pytest.raises(DomainError):
        fac_select(0, QUARTIC, 0)
    with pytest.raises(DomainError):
        variational_select(0, QUARTIC, 2)
