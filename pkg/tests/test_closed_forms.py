import math

import numpy as np
import pytest

from gnsharp.closed_forms import (FamilyMismatchError, SobolevCriticalError,
                                  _profile_1d_alternate, barenblatt_profile,
                                  closed_Mc, closed_constant_1d,
                                  delta_mass_1d, dpd_constant,
                                  linfty_profile_q0, nash_constant,
                                  positive_profile, profile_1d_finite_m,
                                  profile_1d_m_infinity, sobolev_constant)
from gnsharp.core import INFINITY, AdmissibilityError, ParamSet
from gnsharp.solver import constant_from_mass

from conftest import load_oracles

ORACLES = load_oracles()


def _pset(entry, d=None):
    return ParamSet(d=int(entry["d"]) if d is None else d,
                    p=float(entry["p"]), q=float(entry["q"]),
                    m=INFINITY if entry["m"] == "inf" else float(entry["m"]))


# ---------------------------------------------------------------------------
# golden values
# ---------------------------------------------------------------------------

def test_golden_constants():
    cases = [
        (ParamSet(d=1, p=2.0, q=0.0, m=3.0),
         (4.0 * math.pi ** 2 / 9.0) ** -0.25),
        (ParamSet(d=1, p=2.0, q=1.0, m=5.0),
         (math.pi ** 2 / 4.0) ** (-1.0 / 6.0)),
        (ParamSet(d=1, p=2.0, q=0.0, m=1.0),
         (16.0 * math.pi ** 2 / 27.0) ** (-1.0 / 6.0)),
    ]
    for ps, expected in cases:
        assert closed_constant_1d(ps).C == pytest.approx(expected, rel=1e-12)
    ps = ParamSet(d=2, p=2.0, q=3.0, m=5.0)
    assert dpd_constant(ps).C == pytest.approx(math.pi ** (-1.0 / 6.0),
                                               rel=1e-12)


# ---------------------------------------------------------------------------
# d = 1, finite m
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("entry", ORACLES["d1_finite_m"])
def test_d1_constant_oracle(entry):
    res = closed_constant_1d(_pset(entry))
    assert res.theta == pytest.approx(entry["theta"], rel=1e-12)
    assert res.C == pytest.approx(entry["C"], rel=1e-12)
    assert res.M_c == pytest.approx(entry["Mc"], rel=1e-12)


@pytest.mark.parametrize("entry",
                         [e for e in ORACLES["d1_finite_m"] if "R" in e])
def test_d1_touchdown_radius_oracle(entry):
    prof = profile_1d_finite_m(_pset(entry))
    assert prof.support_radius == pytest.approx(entry["R"], rel=1e-12)


@pytest.mark.parametrize("entry", ORACLES["d1_finite_m"])
def test_d1_profile_first_integral(entry):
    # (p-1)/p |u'|^p + u^{m+1}/(m+1) - u^{q+1}/(q+1) = 0 along the profile
    ps = _pset(entry)
    prof = profile_1d_finite_m(ps)
    p, q, m = ps.p, ps.q, ps.m
    R = prof.support_radius
    rs = np.linspace(0.0, R * (1.0 - 1e-12) if R else 8.0, 200)
    worst = 0.0
    for r in rs:
        u, du = prof.u(float(r)), prof.du(float(r))
        h = ((p - 1.0) / p * abs(du) ** p + u ** (m + 1.0) / (m + 1.0)
             - u ** (q + 1.0) / (q + 1.0))
        worst = max(worst, abs(h))
    assert worst <= 1e-10


def test_d1_profile_shape():
    prof = profile_1d_finite_m(ParamSet(d=1, p=2.0, q=0.0, m=3.0))
    assert prof.u(0.0) == pytest.approx(prof.peak, rel=1e-12)
    assert prof.du(0.0) == pytest.approx(0.0, abs=1e-8)
    rs = np.linspace(0.0, prof.support_radius, 50)
    us = [prof.u(float(r)) for r in rs]
    assert all(b <= a + 1e-14 for a, b in zip(us, us[1:]))
    assert prof.u(prof.support_radius + 0.5) == 0.0


def test_d1_alternate_representation_agrees():
    ps = ParamSet(d=1, p=3.0, q=1.0, m=4.0)
    prof = profile_1d_finite_m(ps)
    alt = _profile_1d_alternate(ps)
    rs = np.linspace(0.0, prof.support_radius * (1 - 1e-9), 120)
    for r in rs:
        assert alt.u(float(r)) == pytest.approx(prof.u(float(r)),
                                                rel=1e-9, abs=1e-11)


def test_d1_positive_tail_keeps_relative_precision(oracles):
    # deep algebraic tail: u(r) ~ r^{-rate}, still accurate at u ~ 1e-200
    ps = ParamSet(d=1, p=2.0, q=3.0, m=8.0)
    prof = profile_1d_finite_m(ps)
    rate = prof.support.decay.rate
    r1, r2 = 1e40, 1e41
    v1, v2 = prof.u(r1), prof.u(r2)
    assert v1 > 0.0 and v2 > 0.0
    slope = (math.log(v2) - math.log(v1)) / (math.log(r2) - math.log(r1))
    assert slope == pytest.approx(-rate, rel=1e-6)


def test_high_m_touchdown_regression():
    # tiny Beta parameter at large m: inverse evaluations near touchdown
    # must stay finite (log-form derivative)
    prof = profile_1d_finite_m(ParamSet(d=1, p=2.0, q=0.0, m=65.0))
    R = prof.support_radius
    for r in np.linspace(0.0, R * (1.0 - 1e-13), 300):
        v = prof.u(float(r))
        assert math.isfinite(v) and 0.0 <= v <= prof.peak * (1 + 1e-12)


# ---------------------------------------------------------------------------
# d = 1, m = infinity
# ---------------------------------------------------------------------------

M_INF = ORACLES["m_infinity"]


@pytest.mark.parametrize("key", ["d1_p2_q0", "d1_p2_q1", "d1_p2_q2",
                                 "d1_p3_q0", "d1_p3_q1", "d1_p3_q2"])
def test_m_infinity_1d_oracle(key):
    oc = M_INF[key]
    _, p_tag, q_tag = key.split("_")
    ps = ParamSet(d=1, p=float(p_tag[1:]), q=float(q_tag[1:]), m=INFINITY)
    res = closed_constant_1d(ps)
    assert res.theta == pytest.approx(oc["theta"], rel=1e-12)
    assert res.C == pytest.approx(oc["C"], rel=1e-12)
    assert res.M_c == pytest.approx(oc["Mc"], rel=1e-12)
    prof = profile_1d_m_infinity(ps)
    assert prof.peak == 1.0
    if "R" in oc:
        assert prof.support_radius == pytest.approx(oc["R"], rel=1e-12)
    if "decay_rate" in oc:
        assert prof.support.decay.rate == pytest.approx(oc["decay_rate"],
                                                        rel=1e-12)
    if "decay_exponent" in oc:
        assert prof.support.decay.rate == pytest.approx(
            oc["decay_exponent"], rel=1e-12)
        assert prof.form.coefficients["scale"] == pytest.approx(
            oc["prefactor_scale"], rel=1e-12)


def test_m_infinity_1d_first_integral():
    # (p-1)/p |u'|^p = u^{q+1}/(q+1) pointwise, all three regimes
    for p, q in ((2.0, 0.0), (2.0, 1.0), (3.0, 2.0), (2.5, 2.2)):
        ps = ParamSet(d=1, p=p, q=q, m=INFINITY)
        prof = profile_1d_m_infinity(ps)
        R = prof.support_radius
        rs = np.linspace(0.0, R * (1 - 1e-12) if R else 6.0, 150)
        for r in rs:
            u, du = prof.u(float(r)), prof.du(float(r))
            h = (p - 1.0) / p * abs(du) ** p - u ** (q + 1.0) / (q + 1.0)
            assert abs(h) <= 1e-12


@pytest.mark.parametrize("entry", M_INF["delta_mass_d1"])
def test_delta_mass_oracle(entry):
    ps = ParamSet(d=1, p=float(entry["p"]), q=float(entry["q"]), m=INFINITY)
    assert delta_mass_1d(ps) == pytest.approx(entry["a"], rel=1e-12)


def test_delta_mass_equals_profile_integrals(oracles):
    # a = ||u'||_p^p + ||u||_{q+1}^{q+1} of the 1-D extremal
    from gnsharp.solver import gradient_norm_p, radial_norm
    ps = ParamSet(d=1, p=2.0, q=0.0, m=INFINITY)
    prof = profile_1d_m_infinity(ps)
    total = gradient_norm_p(prof, ps.p, 1) + radial_norm(prof, ps.q + 1.0, 1)
    assert total == pytest.approx(delta_mass_1d(ps), rel=1e-10)


# ---------------------------------------------------------------------------
# m = infinity, q = 0, d >= 2
# ---------------------------------------------------------------------------

def test_linfty_q0_profile_oracle():
    oc = M_INF["d2_p3_q0"]
    ps = ParamSet(d=2, p=3.0, q=0.0, m=INFINITY)
    prof = linfty_profile_q0(ps)
    co = prof.form.coefficients
    assert co["a0"] == pytest.approx(oc["a0"], rel=1e-14)
    assert co["b0"] == pytest.approx(oc["b0"], rel=1e-14)
    assert prof.support_radius == pytest.approx(oc["R"], rel=1e-12)
    for r, u_expected in oc["u_samples"]:
        assert prof.u(r) == pytest.approx(u_expected, abs=1e-12)


def test_linfty_q0_radial_equation():
    # (r^{d-1}|u'|^{p-2}u')' = r^{d-1} u^q on u < 1, by centered stencils
    ps = ParamSet(d=2, p=3.0, q=0.0, m=INFINITY)
    prof = linfty_profile_q0(ps)
    d, p, q = 2, 3.0, 0.0
    R = prof.support_radius

    def flux(r):
        du = prof.du(r)
        return r ** (d - 1) * abs(du) ** (p - 2.0) * du

    for r in np.linspace(0.15 * R, 0.9 * R, 30):
        h = 1e-5 * R
        dflux = (-flux(r + 2 * h) + 8 * flux(r + h)
                 - 8 * flux(r - h) + flux(r - 2 * h)) / (12 * h)
        rhs = r ** (d - 1) * prof.u(r) ** q
        assert dflux == pytest.approx(rhs, rel=2e-6)


# ---------------------------------------------------------------------------
# parametric families, d >= 2
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("entry", ORACLES["compact_family_highd"])
def test_barenblatt_family_oracle(entry):
    ps = _pset(entry)
    prof = barenblatt_profile(ps)
    co = prof.form.coefficients
    assert co["K"] == pytest.approx(entry["K"], rel=1e-12)
    assert co["R"] == pytest.approx(entry["R"], rel=1e-12)
    assert co["alpha_exp"] == pytest.approx(entry["alpha_exp"], rel=1e-12)
    assert prof.peak == pytest.approx(entry["u0"], rel=1e-12)
    res = dpd_constant(ps)
    assert res.theta == pytest.approx(entry["theta"], rel=1e-12)
    assert res.C == pytest.approx(entry["C"], rel=1e-12)
    assert res.M_c == pytest.approx(entry["Mc"], rel=1e-12)


@pytest.mark.parametrize("entry", ORACLES["positive_family_highd"])
def test_positive_family_oracle(entry):
    ps = _pset(entry)
    prof = positive_profile(ps)
    co = prof.form.coefficients
    assert co["K"] == pytest.approx(entry["K"], rel=1e-12)
    assert co["L"] == pytest.approx(entry["L"], rel=1e-12)
    assert co["alpha_exp"] == pytest.approx(entry["alpha_exp"], rel=1e-12)
    assert prof.peak == pytest.approx(entry["u0"], rel=1e-12)
    res = dpd_constant(ps)
    assert res.theta == pytest.approx(entry["theta"], rel=1e-12)
    assert res.C == pytest.approx(entry["C"], rel=1e-12)
    assert res.M_c == pytest.approx(entry["Mc"], rel=1e-12)


@pytest.mark.parametrize("entry", ORACLES["compact_family_highd"]
                         + ORACLES["positive_family_highd"])
def test_family_profiles_solve_radial_equation(entry):
    # (r^{d-1}|u'|^{p-2}u')' = r^{d-1}(u^q - u^m) by centered stencils
    ps = _pset(entry)
    fam = barenblatt_profile if ps.regime.value == "compact_support" \
        else positive_profile
    prof = fam(ps)
    d, p, q, m = ps.d, ps.p, ps.q, ps.m
    R = prof.support_radius or 6.0

    def flux(r):
        du = prof.du(r)
        return r ** (d - 1) * abs(du) ** (p - 2.0) * du

    for r in np.linspace(0.1 * R, 0.85 * R, 25):
        h = 1e-5 * R
        dflux = (-flux(r + 2 * h) + 8 * flux(r + h)
                 - 8 * flux(r - h) + flux(r - 2 * h)) / (12 * h)
        u = prof.u(r)
        rhs = r ** (d - 1) * (u ** q - u ** m)
        scale = max(abs(rhs), r ** (d - 1))
        assert abs(dflux - rhs) <= 2e-6 * scale


def test_constant_equivalence_d1_families():
    # the Gamma-ratio route and the 1-D Beta route agree on family members
    cases = [ParamSet(d=1, p=2.0, q=1.0 / 3.0, m=2.0 / 3.0),
             ParamSet(d=1, p=3.0, q=0.5, m=1.0),
             ParamSet(d=1, p=2.0, q=3.0, m=5.0)]
    for ps in cases:
        c_beta = closed_constant_1d(ps)
        c_gamma = dpd_constant(ps)
        assert c_gamma.C == pytest.approx(c_beta.C, rel=1e-10)
        assert c_gamma.M_c == pytest.approx(c_beta.M_c, rel=1e-10)


@pytest.mark.parametrize("entry", ORACLES["compact_family_highd"]
                         + ORACLES["positive_family_highd"])
def test_constant_equivalence_highd(entry):
    # Gamma-ratio constant vs the mass-based route through closed_Mc
    ps = _pset(entry)
    c_direct = dpd_constant(ps).C
    c_mass = constant_from_mass(ps, closed_Mc(ps))
    assert c_mass == pytest.approx(c_direct, rel=1e-8)


def test_family_mismatch_raises():
    with pytest.raises(FamilyMismatchError):
        dpd_constant(ParamSet(d=2, p=2.0, q=0.0, m=3.0))
    with pytest.raises(FamilyMismatchError):
        barenblatt_profile(ParamSet(d=2, p=2.0, q=3.0, m=5.0))
    with pytest.raises(FamilyMismatchError):
        positive_profile(ParamSet(d=2, p=2.0, q=1.0 / 3.0, m=2.0 / 3.0))
    with pytest.raises(AdmissibilityError):
        closed_constant_1d(ParamSet(d=2, p=2.0, q=0.0, m=3.0))


def test_sobolev_critical_family_degenerates():
    ps = ParamSet(d=3, p=2.0, q=3.0, m=5.0)
    with pytest.raises(SobolevCriticalError):
        positive_profile(ps)
    with pytest.raises(SobolevCriticalError):
        dpd_constant(ps)


def test_sobolev_constant_oracle(oracles):
    for key, expected in oracles["sobolev"].items():
        d_tag, p_tag = key.split("_")
        val = sobolev_constant(int(d_tag[1:]), float(p_tag[1:]))
        assert val == pytest.approx(expected, rel=1e-12)


# ---------------------------------------------------------------------------
# nash constants
# ---------------------------------------------------------------------------

def test_nash_constant_oracle(oracles):
    from gnsharp.verify import _first_bessel_zero
    oc = oracles["nash"]
    res1 = nash_constant(ParamSet(d=1, p=2.0, q=0.0, m=1.0))
    assert res1.C == pytest.approx(oc["d1"]["C"], rel=1e-12)
    for d, key in ((2, "d2"), (3, "d3")):
        R = _first_bessel_zero(d / 2.0)
        assert R == pytest.approx(oc[key]["R"], rel=1e-12)
        res = nash_constant(ParamSet(d=d, p=2.0, q=0.0, m=1.0), R=R)
        assert res.C == pytest.approx(oc[key]["C"], rel=1e-12)


def test_nash_constant_guards():
    with pytest.raises(AdmissibilityError):
        nash_constant(ParamSet(d=1, p=2.0, q=1.0, m=1.0))
    with pytest.raises(ValueError):
        nash_constant(ParamSet(d=2, p=2.0, q=0.0, m=1.0))
