from __future__ import annotations

import cmath
import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbilines import fuchsian as fg
from orbilines import periods as pr
from orbilines import qseries as qs
from orbilines.exactalg import to_complex
from orbilines.qseries import QSeries

CFG = pr.PeriodConfig(truncation=60, dps=30, tolerance=1e-15)
ETA4 = qs.eta(1, 60) ** 4
ZETA = complex(pr.zeta3())
points = st.builds(complex, st.floats(-1.5, 1.5), st.floats(0.8, 2.0))


def test_config_validation():
    with pytest.raises(ValueError):
        pr.PeriodConfig(truncation=0)
    with pytest.raises(ValueError):
        pr.PeriodConfig(tolerance=0)
    with pytest.raises(ValueError):
        pr.uhp(1, -1)


def test_eval_examples():
    one = QSeries({0: 1}, 24 * 10)
    assert pr.eval_series(one, 0.3 + 1j, CFG).value == 1
    e4 = qs.eisenstein_level1(4, 60)
    assert abs(pr.eval_series(e4, ZETA, CFG).value) < 1e-8
    d = pr.eval_series(qs.eta(1, 60) ** 24, 1j, CFG).value
    assert d.real > 0 and abs(d.imag) < 1e-15
    assert abs(d.real - 0.00178536985064215) < 1e-14


def test_tail_bound_enforced():
    with pytest.raises(ArithmeticError):
        pr.eval_series(qs.eta(1, 3), 0.05j, CFG)


def test_antiderivative_examples():
    base = ZETA + 2
    assert pr.antiderivative(ETA4, base, base, CFG).value == 0
    with pytest.raises(ValueError):
        pr.antiderivative(qs.eisenstein_level1(4, 10), 1j, 2j, CFG)
    lo = pr.antiderivative(qs.eta(1, 40) ** 4, 1j + 2, base, pr.PeriodConfig(40, 30, 1e-12)).value
    hi = pr.antiderivative(qs.eta(1, 80) ** 4, 1j + 2, base, pr.PeriodConfig(80, 30, 1e-12)).value
    assert abs(lo - hi) < 1e-10


def test_gamma3_ratio_step():
    i = 1j
    num = pr.antiderivative(ETA4, i, i + 1, CFG).value
    den = pr.antiderivative(ETA4, i + 1, i + 2, CFG).value
    assert abs(num / den - cmath.exp(-2j * math.pi / 6)) < 1e-10


def test_z0_gamma3():
    z = pr.z0("gamma3", CFG).value
    assert abs(z - complex(3, math.sqrt(3)) / 6) < 1e-10
    assert abs(1 / z - 1 - cmath.exp(-2j * math.pi / 6)) < 1e-10


def test_z0_index4():
    # with the form fixed by the group the split value is 1 to working precision
    z = pr.z0("index4G", CFG).value
    assert abs(z - 1) < 1e-12
    # the listed combination gives a different number
    w = pr.z0("index4G", CFG, variant="listed").value
    assert abs(w - complex(0.6234980507236, 0.8747402450877)) < 1e-10


def test_is_split():
    assert pr.is_split("gamma3", complex(3, math.sqrt(3)) / 6, CFG)
    assert not pr.is_split("gamma3", float("inf"), CFG)
    assert not pr.is_split("index4G", 0, CFG)
    with pytest.raises(ValueError):
        pr.z0("gamma2", CFG)


def test_index4_form_is_modular_and_listed_form_is_not():
    G = fg.builtin_group("index4G")
    expected = {"S0": -1, "S1": -1, "R2": cmath.exp(2j * math.pi / 3)}
    # images of the generators sit near the real axis, hence the long truncation
    cfg = pr.PeriodConfig(400, 30, 1e-12)
    f, g = qs.form_f_index4(400), qs.form_f(400)
    for e in G.generators:
        for tau in (0.3 + 1.1j, -0.2 + 0.9j):
            assert abs(pr.slash_ratio(f, e.matrix, tau, cfg) - expected[e.name]) < 1e-9
    ratios = [pr.slash_ratio(g, G.generators[1].matrix, t, cfg) for t in (0.3 + 1.1j, -0.2 + 0.9j)]
    assert abs(ratios[0] - ratios[1]) > 0.1


@pytest.mark.parametrize("group", ["gamma3", "index4G"])
def test_split_value_transformation_law(group):
    # a = s * int f normalized by the family; F = (a, 1) must transform by rho_{z0}
    d = pr.split_data(group, CFG)
    z = pr.z0(group, CFG).value
    scale = (d.kappa / 2) / pr.antiderivative_mp(d.form, d.den, d.base, CFG)[0]
    a = lambda t: complex(scale * pr.antiderivative_mp(d.form, t, d.base, CFG)[0])
    fam = fg.rank2_family(group).at(z)
    tau = 0.37 + 1.21j
    for e in fg.builtin_group(group).generators:
        (p, k), _ = fam[e.name]
        image = fg.act(e.matrix, tau)
        assert abs(a(image) - (to_complex(p) * a(tau) + to_complex(k))) < 1e-10


def test_level3_eisenstein_against_lattice():
    for cusp, (c, d) in qs.GAMMA3_CUSPS.items():
        for tau in (2j, 0.3 + 0.9j):
            series = pr.eval_series(qs.gamma3_eisenstein(cusp, 60), tau, CFG).value
            assert abs(series - pr.eisenstein2_lattice(3, c, d, tau, CFG)) < 1e-12
    e2 = pr.eval_series(qs.eisenstein_level1(2, 60), 2j, CFG).value
    assert abs(-e2 / 12 - pr.eisenstein2_lattice(1, 0, 0, 2j, CFG)) < 1e-12


def test_json():
    v = pr.Value(1 + 2j, 1e-20)
    assert v.to_json() == {"re": 1.0, "im": 2.0, "tail_bound": 1e-20}


@settings(max_examples=25, deadline=None)
@given(points, points)
def test_base_point_additivity(t1, t2):
    a2 = pr.antiderivative(ETA4, t2, 1j, CFG).value
    a1 = pr.antiderivative(ETA4, t1, 1j, CFG).value
    assert abs((a2 - a1) - pr.antiderivative(ETA4, t2, t1, CFG).value) < 1e-12


@settings(max_examples=20, deadline=None)
@given(points)
def test_truncation_stability(tau):
    small = pr.PeriodConfig(40, 30, 1e-12)
    big = pr.PeriodConfig(80, 30, 1e-12)
    lo = pr.eval_series(qs.eta(1, 40) ** 4, tau, small)
    hi = pr.eval_series(qs.eta(1, 80) ** 4, tau, big)
    assert abs(lo.value - hi.value) <= lo.tail_bound + 1e-15


@settings(max_examples=20, deadline=None)
@given(points)
def test_eta_transformation(tau):
    # eta(-1/tau) = sqrt(-i tau) eta(tau): an independent check of the evaluator
    with mpmath.workdps(30):
        lhs = pr.eval_series(qs.eta(1, 80), -1 / tau, pr.PeriodConfig(80, 30, 1e-10)).value
        rhs = cmath.sqrt(-1j * tau) * pr.eval_series(qs.eta(1, 80), tau, pr.PeriodConfig(80, 30, 1e-10)).value
    assert abs(lhs - rhs) < 1e-9
