import math

import numpy as np
import pytest

from gnsharp.closed_forms import (barenblatt_profile, closed_constant_1d,
                                  linfty_profile_q0, positive_profile,
                                  profile_1d_m_infinity)
from gnsharp.core import INFINITY, AdmissibilityError, ParamSet, validate
from gnsharp.solver import (Method, best_constant_numeric, constant_from_mass,
                            gradient_norm_p, radial_norm, shoot_finite_m,
                            shoot_infinite_m)

from conftest import load_oracles

ORACLES = load_oracles()


def _sup_gap(profile, reference, r_hi, n=800):
    rs = np.linspace(0.0, r_hi, n)
    a = np.asarray(profile.u(rs), dtype=float)
    b = np.array([reference(float(r)) for r in rs])
    return float(np.max(np.abs(a - b)))


# ---------------------------------------------------------------------------
# finite-m shooting
# ---------------------------------------------------------------------------

def test_shoot_positive_family_d2():
    # closed member u = sqrt(3) (1 + 3 r^2)^{-1/2}
    ps = ParamSet(d=2, p=2.0, q=3.0, m=5.0)
    prof = shoot_finite_m(ps)

    def ref(r):
        return math.sqrt(3.0) / math.sqrt(1.0 + 3.0 * r * r)

    assert _sup_gap(prof, ref, 10.0) <= 1e-6


def test_shoot_barenblatt_d3():
    ps = ParamSet(d=3, p=2.0, q=1.0 / 3.0, m=2.0 / 3.0)
    closed = barenblatt_profile(ps)
    prof = shoot_finite_m(ps)
    R = closed.support_radius
    assert _sup_gap(prof, lambda r: closed.u(r), R) <= 1e-6


def test_shoot_d1_matches_beta_inverse_profile():
    from gnsharp.closed_forms import profile_1d_finite_m
    ps = ParamSet(d=1, p=2.0, q=1.0, m=5.0)
    closed = profile_1d_finite_m(ps)
    prof = shoot_finite_m(ps)
    assert _sup_gap(prof, lambda r: closed.u(r), 12.0) <= 1e-7


def test_shoot_rejects_m_infinity():
    with pytest.raises(AdmissibilityError):
        shoot_finite_m(ParamSet(d=1, p=2.0, q=1.0, m=INFINITY))


def test_grid_profile_is_monotone_and_normalized():
    ps = ParamSet(d=2, p=2.0, q=0.0, m=1.0)
    prof = shoot_finite_m(ps)
    g = prof.form
    assert np.all(np.diff(g.nodes) > 0)
    assert np.all(g.values >= 0.0)
    drops = np.diff(g.values)
    assert np.all(drops <= 1e-12 * prof.peak)
    assert prof.u(0.0) == pytest.approx(prof.peak, rel=1e-12)


# ---------------------------------------------------------------------------
# m = infinity shooting
# ---------------------------------------------------------------------------

def test_shoot_infinite_m_d1_critical():
    ps = ParamSet(d=1, p=2.0, q=1.0, m=INFINITY)
    prof = shoot_infinite_m(ps)
    assert _sup_gap(prof, lambda r: math.exp(-r), 14.0) <= 1e-8


def test_shoot_infinite_m_d2_exterior():
    oc = ORACLES["m_infinity"]["d2_p3_q0"]
    ps = ParamSet(d=2, p=3.0, q=0.0, m=INFINITY)
    prof = shoot_infinite_m(ps)
    closed = linfty_profile_q0(ps)
    R = closed.support_radius
    assert _sup_gap(prof, lambda r: closed.u(r), R * 1.05) <= 1e-6
    assert prof.form.meta["touchdown"] == pytest.approx(oc["R"], abs=1e-6)
    for r, u_expected in oc["u_samples"]:
        assert prof.u(r) == pytest.approx(u_expected, abs=1e-6)
    # flux self-consistency: total mass re-enters as the origin flux
    assert prof.form.meta["flux_residual"] <= 1e-6


def test_shoot_infinite_m_rejects_finite_m_and_low_p():
    with pytest.raises(AdmissibilityError):
        shoot_infinite_m(ParamSet(d=1, p=2.0, q=1.0, m=5.0))
    with pytest.raises(AdmissibilityError):
        shoot_infinite_m(ParamSet(d=2, p=2.0, q=0.0, m=INFINITY))


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

def test_norms_match_closed_mass():
    from gnsharp.closed_forms import closed_Mc
    for entry in (ORACLES["compact_family_highd"]
                  + ORACLES["positive_family_highd"]):
        ps = ParamSet(d=int(entry["d"]), p=float(entry["p"]),
                      q=float(entry["q"]), m=float(entry["m"]))
        fam = barenblatt_profile if ps.regime.value == "compact_support" \
            else positive_profile
        prof = fam(ps)
        mass = radial_norm(prof, ps.q + 1.0, ps.d)
        assert mass == pytest.approx(closed_Mc(ps), rel=1e-10)


def test_norms_with_error_estimates():
    ps = ParamSet(d=1, p=2.0, q=1.0, m=INFINITY)
    prof = profile_1d_m_infinity(ps)
    val, err = radial_norm(prof, 2.0, 1, with_error=True)
    # int_0^inf e^{-2r} dr times S_1 = 2
    assert val == pytest.approx(1.0, rel=1e-10)
    assert 0.0 <= err < 1e-8
    gval, gerr = gradient_norm_p(prof, 2.0, 1, with_error=True)
    assert gval == pytest.approx(1.0, rel=1e-10)
    assert 0.0 <= gerr < 1e-8


def test_algebraic_tail_is_not_truncated():
    # analytic tail beyond the window must be included for slow decay
    ps = ParamSet(d=2, p=2.0, q=3.0, m=5.0)
    prof = positive_profile(ps)
    mass = radial_norm(prof, ps.q + 1.0, 2)
    from gnsharp.closed_forms import closed_Mc
    assert mass == pytest.approx(closed_Mc(ps), rel=1e-10)


# ---------------------------------------------------------------------------
# best constant, numeric route
# ---------------------------------------------------------------------------

def test_best_constant_matches_closed_d1():
    ps = ParamSet(d=1, p=2.0, q=0.0, m=3.0)
    num = best_constant_numeric(ps)
    ref = closed_constant_1d(ps)
    assert num.C == pytest.approx(ref.C, rel=1e-8)
    assert num.M_c == pytest.approx(ref.M_c, rel=1e-7)
    assert num.method in (Method.SHOOT_QUAD, Method.EXTERIOR_QUAD)


def test_best_constant_nash_d2_oracle():
    ps = ParamSet(d=2, p=2.0, q=0.0, m=1.0)
    num = best_constant_numeric(ps)
    oc = ORACLES["nash"]["d2"]
    assert num.C == pytest.approx(oc["C"], rel=1e-8)


def test_best_constant_beta_identity():
    # C = beta^{-1/(gamma + p/2)} ties the two reported fields together
    ps = ParamSet(d=2, p=2.0, q=0.0, m=1.0)
    num = best_constant_numeric(ps)
    exps = validate(ps)
    assert num.beta ** (-1.0 / (exps.gamma + ps.p / 2.0)) \
        == pytest.approx(num.C, rel=1e-10)


def test_constant_from_mass_matches_closed_route():
    ps = ParamSet(d=1, p=2.0, q=0.0, m=3.0)
    ref = closed_constant_1d(ps)
    assert constant_from_mass(ps, ref.M_c) == pytest.approx(ref.C, rel=1e-12)


def test_numeric_determinism():
    ps = ParamSet(d=2, p=2.0, q=0.0, m=1.0)
    a = best_constant_numeric(ps)
    b = best_constant_numeric(ps)
    assert a.C == b.C and a.M_c == b.M_c
