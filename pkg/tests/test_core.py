import math

import pytest

from gnsharp.core import (INFINITY, AdmissibilityError, ParamSet, Regime,
                          alpha_peak, theta_exponent, unit_ball_volume,
                          unit_sphere_area, validate)

from conftest import load_oracles

ORACLES = load_oracles()


def _m_of(raw):
    return INFINITY if raw == "inf" else float(raw)


class TestParamSet:
    def test_fields_coerced_to_float(self):
        ps = ParamSet(d=1, p=2, q=0, m=3)
        assert isinstance(ps.p, float) and isinstance(ps.q, float)
        assert ps.m == 3.0

    def test_float_inf_normalizes_to_sentinel(self):
        ps = ParamSet(d=1, p=2.0, q=0.0, m=float("inf"))
        assert ps.m is INFINITY
        assert ps.m_is_infinite

    def test_rejects_bad_fields(self):
        with pytest.raises(AdmissibilityError):
            ParamSet(d=0, p=2.0, q=0.0, m=3.0)
        with pytest.raises(AdmissibilityError):
            ParamSet(d=1, p=1.0, q=0.0, m=3.0)
        with pytest.raises(AdmissibilityError):
            ParamSet(d=1, p=2.0, q=-0.5, m=3.0)
        with pytest.raises(TypeError):
            ParamSet(d=1, p=2.0, q=0.0, m="inf")

    def test_regime_classification(self):
        assert ParamSet(d=1, p=2.0, q=0.0, m=3.0).regime \
            is Regime.COMPACT_SUPPORT
        assert ParamSet(d=1, p=2.0, q=1.0, m=5.0).regime is Regime.CRITICAL
        assert ParamSet(d=1, p=2.0, q=3.0, m=8.0).regime is Regime.POSITIVE


class TestValidate:
    def test_m_infinity_needs_p_above_d(self):
        with pytest.raises(AdmissibilityError):
            validate(ParamSet(d=3, p=2.0, q=0.0, m=INFINITY))
        validate(ParamSet(d=2, p=3.0, q=0.0, m=INFINITY))

    def test_m_below_q_rejected(self):
        with pytest.raises(AdmissibilityError):
            validate(ParamSet(d=1, p=2.0, q=3.0, m=1.0))

    def test_exponent_record_finite_m(self):
        exps = validate(ParamSet(d=1, p=2.0, q=0.0, m=3.0))
        assert exps.theta == pytest.approx(0.5, abs=1e-15)
        assert exps.gamma is not None and exps.ell is not None

    def test_exponent_record_m_infinity(self):
        exps = validate(ParamSet(d=1, p=2.0, q=1.0, m=INFINITY))
        assert exps.gamma is None and exps.eta1 is None


@pytest.mark.parametrize("entry", ORACLES["theta_scaling"])
def test_theta_matches_oracle(entry):
    th = theta_exponent(int(entry["d"]), float(entry["p"]),
                        float(entry["q"]), _m_of(entry["m"]))
    assert th == pytest.approx(entry["theta"], rel=1e-14)


@pytest.mark.parametrize("entry", ORACLES["theta_scaling"])
def test_theta_balances_dilations(entry):
    # u(x/lam) rescales the three norms by lam^{d/(m+1)}, lam^{d/(q+1)}
    # and lam^{d/p - 1}; theta is pinned by that balance
    d, p, q = int(entry["d"]), float(entry["p"]), float(entry["q"])
    m = _m_of(entry["m"])
    th = theta_exponent(d, p, q, m)
    lhs = 0.0 if m is INFINITY else d / (m + 1.0)
    rhs = (1.0 - th) * d / (q + 1.0) + th * (d / p - 1.0)
    assert lhs == pytest.approx(rhs, abs=1e-13)
    assert 0.0 < th <= 1.0


def test_measure_constants():
    assert unit_ball_volume(1) == pytest.approx(2.0, rel=1e-15)
    assert unit_ball_volume(2) == pytest.approx(math.pi, rel=1e-15)
    assert unit_ball_volume(3) == pytest.approx(4.0 * math.pi / 3.0, rel=1e-15)
    assert unit_sphere_area(1) == pytest.approx(2.0, rel=1e-15)
    assert unit_sphere_area(2) == pytest.approx(2.0 * math.pi, rel=1e-15)
    assert unit_sphere_area(3) == pytest.approx(4.0 * math.pi, rel=1e-15)
    for d in (1, 2, 3, 4, 7):
        assert unit_sphere_area(d) == pytest.approx(d * unit_ball_volume(d),
                                                    rel=1e-14)


@pytest.mark.parametrize("entry",
                         [e for e in ORACLES["d1_finite_m"]
                          if "alpha_peak" in e])
def test_alpha_peak_matches_oracle(entry):
    ps = ParamSet(d=1, p=float(entry["p"]), q=float(entry["q"]),
                  m=float(entry["m"]))
    assert alpha_peak(ps) == pytest.approx(entry["alpha_peak"], rel=1e-12)
