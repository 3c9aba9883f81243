"""Closed-form extremal profiles and closed-form best constants.

Covers: the 1-D profile for finite m in all three regimes, the 1-D and the
q=0 profiles for m = infinity, the compact-support polynomial family
(Barenblatt) and the everywhere-positive algebraic family in any dimension,
the exact 1-D constants, the Gamma-ratio constants for the two families, the
closed masses M_c, the 1-D point mass of the m = infinity limit equation,
the Nash-type constant, and the Sobolev (Talenti) constant.
"""

from __future__ import annotations

import math

from .core import (INFINITY, AdmissibilityError, ParamSet, Regime,
                   alpha_peak, unit_ball_volume, validate)
from .profiles import (Algebraic, ClosedForm, Exponential, Finite, Infinite,
                       RadialProfile)
from .solver import BestConstantResult, Method, beta_from_mass
from .specialfn import (beta_complete, beta_incomplete,
                        beta_incomplete_inverse,
                        beta_incomplete_inverse_complement)


class FamilyMismatchError(ValueError):
    """Parameters are not in the closed-form family the operation covers."""


class SobolevCriticalError(ValueError):
    """The positive family degenerates to the Sobolev extremal (m = sigma)."""


_FAMILY_RTOL = 1e-12


def _is_family(value: float, target: float) -> bool:
    return abs(value - target) <= _FAMILY_RTOL * max(1.0, abs(target))


# ---------------------------------------------------------------------------
# 1-D closed forms, finite m
# ---------------------------------------------------------------------------

def _coeffs_1d_finite_m(p: float, q: float, m: float):
    """Scaling constant barC and, for q < p-1, the touchdown radius R."""
    mq = m - q
    barC = ((p / (p - 1.0)) ** (1.0 / p) * mq
            * (m + 1.0) ** ((1.0 + q - p) / (p * mq))
            * (q + 1.0) ** ((p - m - 1.0) / (p * mq)))
    R = None
    if q < p - 1.0:
        a = (p - q - 1.0) / (p * mq)
        R = (((p - 1.0) / p) ** (1.0 / p)
             * (m + 1.0) ** ((p - q - 1.0) / (p * mq))
             * (q + 1.0) ** (1.0 / p - (p - q - 1.0) / (p * mq))
             / mq
             * beta_complete(1.0 - 1.0 / p, a))
    return barC, R


def profile_1d_finite_m(params: ParamSet) -> RadialProfile:
    """The 1-D extremal profile, every regime, via the inverse incomplete Beta."""
    if params.d != 1:
        raise AdmissibilityError("d != 1", "1-D closed form")
    if params.m is INFINITY:
        raise AdmissibilityError("m = inf", "finite m required")
    validate(params)
    p, q, m = params.p, params.q, params.m
    mq = m - q
    alpha_c = alpha_peak(params)
    barC, R = _coeffs_1d_finite_m(p, q, m)
    a_exp = (p - 1.0 - q) / (p * mq)   # sign follows the regime
    b_exp = 1.0 - 1.0 / p

    if q < p - 1.0:
        ratio = (m + 1.0) / (q + 1.0)
        cap = barC * R  # equals the complete Beta(a_exp, b_exp)

        def u(r, _R=R, _barC=barC):
            if r >= _R:
                return 0.0
            y = min(_barC * (_R - r), cap)
            x = beta_incomplete_inverse(y, a_exp, b_exp)
            return (ratio * x) ** (1.0 / mq)

        def du(r, _R=R, _barC=barC):
            if r >= _R:
                return 0.0
            y = min(_barC * (_R - r), cap)
            x = beta_incomplete_inverse(y, a_exp, b_exp)
            if x <= 0.0 or x >= 1.0:
                return 0.0
            dx = -_barC * x ** (1.0 - a_exp) * (1.0 - x) ** (1.0 - b_exp)
            return (ratio ** (1.0 / mq) / mq) * x ** (1.0 / mq - 1.0) * dx

        form = ClosedForm("finite_m_1d", {"barC": barC, "R": R,
                                          "alpha_c": alpha_c}, u, du)
        return RadialProfile(form=form, support=Finite(R), peak=alpha_c,
                             params=params)

    # q >= p-1: positive on [0, inf); work in w = 1 - x so the tail keeps
    # relative precision
    def u(r, _barC=barC):
        w = beta_incomplete_inverse_complement(_barC * r, b_exp, a_exp)
        return alpha_c * w ** (1.0 / mq)

    def du(r, _barC=barC):
        w = beta_incomplete_inverse_complement(_barC * r, b_exp, a_exp)
        if w <= 0.0 or w >= 1.0:
            return 0.0
        # dw/dr = -barC (1-w)^{1-b_exp} w^{1-a_exp}; net w-power stays > 0
        return -(alpha_c / mq) * _barC * (1.0 - w) ** (1.0 - b_exp) \
            * w ** (1.0 / mq - a_exp)

    if q == p - 1.0:
        decay = Exponential((p - 1.0) ** (-1.0 / p))
    else:
        decay = Algebraic(p / (q + 1.0 - p))
    form = ClosedForm("finite_m_1d", {"barC": barC, "alpha_c": alpha_c},
                      u, du)
    return RadialProfile(form=form, support=Infinite(decay), peak=alpha_c,
                         params=params)


def _profile_1d_alternate(params: ParamSet) -> RadialProfile:
    """Reflected representation of the q < p-1 profile; equals
    profile_1d_finite_m pointwise. Kept for the representation-equality
    check."""
    if params.d != 1 or params.m is INFINITY or not params.q < params.p - 1.0:
        raise FamilyMismatchError("alternate form needs d=1, finite m, q < p-1")
    validate(params)
    p, q, m = params.p, params.q, params.m
    mq = m - q
    alpha_c = alpha_peak(params)
    barC, R = _coeffs_1d_finite_m(p, q, m)
    a_exp = (p - 1.0 - q) / (p * mq)
    b_exp = 1.0 - 1.0 / p
    cap = beta_complete(b_exp, a_exp)

    def _one_minus_x(r, _barC=barC):
        # past the Beta midpoint 1-x underflows; invert the complement there
        y = min(_barC * r, cap)
        if y <= 0.5 * cap:
            return 1.0 - beta_incomplete_inverse(y, b_exp, a_exp)
        return beta_incomplete_inverse(cap - y, a_exp, b_exp)

    def u(r, _R=R):
        if r >= _R:
            return 0.0
        return alpha_c * _one_minus_x(r) ** (1.0 / mq)

    def du(r, _R=R, _barC=barC):
        if r >= _R:
            return 0.0
        omx = _one_minus_x(r)
        if omx <= 0.0 or omx >= 1.0:
            return 0.0
        dx = _barC * (1.0 - omx) ** (1.0 - b_exp) * omx ** (1.0 - a_exp)
        return -(alpha_c / mq) * omx ** (1.0 / mq - 1.0) * dx

    form = ClosedForm("finite_m_1d_alt", {"barC": barC, "R": R}, u, du)
    return RadialProfile(form=form, support=Finite(R), peak=alpha_c,
                         params=params)


# ---------------------------------------------------------------------------
# m = infinity closed forms
# ---------------------------------------------------------------------------

def profile_1d_m_infinity(params: ParamSet) -> RadialProfile:
    if params.d != 1:
        raise AdmissibilityError("d != 1", "1-D closed form")
    if params.m is not INFINITY:
        raise AdmissibilityError("m finite", "m = inf required")
    validate(params)
    p, q = params.p, params.q

    if q < p - 1.0:
        R = ((p - 1.0) ** (1.0 / p) * (q + 1.0) ** (1.0 / p)
             / (p ** (1.0 / p - 1.0) * (p - q - 1.0)))
        k = p / (p - q - 1.0)

        def u(r, _R=R, _k=k):
            return (1.0 - r / _R) ** _k if r < _R else 0.0

        def du(r, _R=R, _k=k):
            return -(_k / _R) * (1.0 - r / _R) ** (_k - 1.0) if r < _R else 0.0

        form = ClosedForm("linf_1d", {"R": R, "power": k}, u, du)
        return RadialProfile(form=form, support=Finite(R), peak=1.0,
                             params=params)

    if q == p - 1.0:
        lam = (p - 1.0) ** (-1.0 / p)

        def u(r, _lam=lam):
            return math.exp(-_lam * r)

        def du(r, _lam=lam):
            return -_lam * math.exp(-_lam * r)

        form = ClosedForm("linf_1d", {"rate": lam}, u, du)
        return RadialProfile(form=form, support=Infinite(Exponential(lam)),
                             peak=1.0, params=params)

    c = (p ** (1.0 / p - 1.0) * (q + 1.0 - p)
         / ((p - 1.0) ** (1.0 / p) * (q + 1.0) ** (1.0 / p)))
    k = p / (q + 1.0 - p)

    def u(r, _c=c, _k=k):
        return (1.0 + _c * r) ** (-_k)

    def du(r, _c=c, _k=k):
        return -_k * _c * (1.0 + _c * r) ** (-_k - 1.0)

    form = ClosedForm("linf_1d", {"scale": c, "power": k}, u, du)
    return RadialProfile(form=form, support=Infinite(Algebraic(k)),
                         peak=1.0, params=params)


def linfty_profile_q0(params: ParamSet) -> RadialProfile:
    """m = infinity, q = 0, any d < p: the incomplete-Beta profile with
    u(0) = 1 and compact support."""
    if params.m is not INFINITY:
        raise AdmissibilityError("m finite", "m = inf required")
    if params.q != 0.0:
        raise AdmissibilityError("q != 0")
    validate(params)  # enforces p > d
    d, p = params.d, params.p
    a0 = (p - d) / (d * (p - 1.0))
    b0 = p / (p - 1.0)
    Bc = beta_complete(a0, b0)
    R = d * Bc ** (-(p - 1.0) / p)
    scale = d ** (-p / (p - 1.0)) * R ** (p / (p - 1.0))

    def u(r, _R=R, _scale=scale, _Bc=Bc):
        if r >= _R:
            return 0.0
        x = (r / _R) ** d
        return _scale * (_Bc - beta_incomplete(x, a0, b0))

    def du(r, _R=R, _scale=scale):
        if r >= _R or r == 0.0:
            return 0.0
        x = (r / _R) ** d
        dxdr = d * r ** (d - 1.0) / _R ** d
        return -_scale * x ** (a0 - 1.0) * (1.0 - x) ** (b0 - 1.0) * dxdr

    form = ClosedForm("linf_q0", {"a0": a0, "b0": b0, "R": R}, u, du)
    return RadialProfile(form=form, support=Finite(R), peak=1.0,
                         params=params)


# ---------------------------------------------------------------------------
# Parametric families in any dimension
# ---------------------------------------------------------------------------

def barenblatt_profile(params: ParamSet) -> RadialProfile:
    """Compact-support family m = (q+1)(p-1)/p:
    u = K (R^{p/(p-1)} - r^{p/(p-1)})_+^alpha."""
    p, q, m = params.p, params.q, params.m
    if m is INFINITY or not _is_family(m, (q + 1.0) * (p - 1.0) / p):
        raise FamilyMismatchError(
            f"m={m} is not (q+1)(p-1)/p={(q + 1.0) * (p - 1.0) / p}")
    exps = validate(params)
    d = params.d
    theta = exps.theta
    alpha = (p - 1.0) / (p - m - 1.0)
    pp = p / (p - 1.0)
    R = m ** (-(p - 1.0) / p) * d / ((m + 1.0) * theta)
    K = ((d / ((m + 1.0) * theta)) ** (1.0 / (m - p + 1.0))
         * (p / (p - m - 1.0)) ** ((p - 1.0) / (m - p + 1.0)))
    peak = K * R ** (pp * alpha)

    def u(r, _K=K, _R=R, _a=alpha, _pp=pp):
        base = _R ** _pp - r ** _pp
        return _K * base ** _a if base > 0.0 else 0.0

    def du(r, _K=K, _R=R, _a=alpha, _pp=pp):
        base = _R ** _pp - r ** _pp
        if base <= 0.0 or r == 0.0:
            return 0.0
        return -_K * _a * _pp * r ** (_pp - 1.0) * base ** (_a - 1.0)

    form = ClosedForm("barenblatt", {"K": K, "R": R, "alpha_exp": alpha}, u, du)
    return RadialProfile(form=form, support=Finite(R), peak=peak,
                         params=params)


def positive_profile(params: ParamSet) -> RadialProfile:
    """Everywhere-positive family m = (p(q-1)+1)/(p-1):
    u = K (L + r^{p/(p-1)})^{-alpha}."""
    p, q, m = params.p, params.q, params.m
    if m is INFINITY or not _is_family(m, (p * (q - 1.0) + 1.0) / (p - 1.0)):
        raise FamilyMismatchError(
            f"m={m} is not (p(q-1)+1)/(p-1)={(p * (q - 1.0) + 1.0) / (p - 1.0)}")
    d = params.d
    alpha = (p - 1.0) / (q + 1.0 - p)
    core = (p * q - d * (q + 1.0 - p)) / (q + 1.0 - p)  # = p(alpha+1) - d
    if core == 0.0:
        raise SobolevCriticalError(
            "p(alpha+1) = d: the family degenerates to the Sobolev extremal; "
            "use sobolev_constant")
    validate(params)
    pp = p / (p - 1.0)
    K = ((p / (q + 1.0 - p)) ** (p - 1.0) * core) ** (1.0 / (q + 1.0 - p))
    L = core ** pp / q
    peak = K * L ** (-alpha)

    def u(r, _K=K, _L=L, _a=alpha, _pp=pp):
        return _K * (_L + r ** _pp) ** (-_a)

    def du(r, _K=K, _L=L, _a=alpha, _pp=pp):
        if r == 0.0:
            return 0.0
        return -_K * _a * _pp * r ** (_pp - 1.0) * (_L + r ** _pp) ** (-_a - 1.0)

    form = ClosedForm("positive", {"K": K, "L": L, "alpha_exp": alpha}, u, du)
    rate = pp * alpha  # = p/(q+1-p)
    return RadialProfile(form=form, support=Infinite(Algebraic(rate)),
                         peak=peak, params=params)


# ---------------------------------------------------------------------------
# Closed masses M_c
# ---------------------------------------------------------------------------

def closed_Mc(params: ParamSet) -> float:
    """The mass integral M_c = int u_c^{q+1} dx for the closed-form families."""
    d, p, q, m = params.d, params.p, params.q, params.m

    if m is INFINITY:
        if d != 1:
            raise FamilyMismatchError("closed M_c for m = inf exists at d=1 only")
        validate(params)
        return (2.0 * (p - 1.0) ** (1.0 / p) * (q + 1.0) ** (1.0 / p)
                / (p ** (1.0 / p - 1.0) * (p + (p - 1.0) * (q + 1.0))))

    if d == 1:
        exps = validate(params)
        mq = m - q
        a_M = exps.eta2 / (p * mq)
        return (2.0 * ((p - 1.0) / p) ** (1.0 / p) * (q + 1.0) ** (1.0 / p)
                / mq * ((m + 1.0) / (q + 1.0)) ** a_M
                * beta_complete(a_M, (p - 1.0) / p))

    if _is_family(m, (q + 1.0) * (p - 1.0) / p):
        prof = barenblatt_profile(params)
        K = prof.form.coefficients["K"]
        R = prof.form.coefficients["R"]
        expo = d + m * p * p / ((p - 1.0) * (p - m - 1.0))
        return (d * unit_ball_volume(d) * K ** (q + 1.0) * R ** expo
                * ((p - 1.0) / p)
                * beta_complete(d * (p - 1.0) / p,
                                p * m / (p - m - 1.0) + 1.0))

    if _is_family(m, (p * (q - 1.0) + 1.0) / (p - 1.0)):
        prof = positive_profile(params)
        K = prof.form.coefficients["K"]
        L = prof.form.coefficients["L"]
        alpha = prof.form.coefficients["alpha_exp"]
        dp1p = d * (p - 1.0) / p
        return (d * unit_ball_volume(d) * K ** (q + 1.0)
                * L ** (dp1p - alpha * (q + 1.0))
                * ((p - 1.0) / p)
                * beta_complete(alpha * (q + 1.0) - dp1p, dp1p))

    raise FamilyMismatchError(
        "no closed M_c outside d=1 and the two parametric families")


# ---------------------------------------------------------------------------
# Closed best constants
# ---------------------------------------------------------------------------

def closed_constant_1d(params: ParamSet) -> BestConstantResult:
    """Exact best constant at d = 1, finite m or m = infinity."""
    if params.d != 1:
        raise AdmissibilityError("d != 1", "exact constant exists at d=1 only")
    exps = validate(params)
    p, q, m = params.p, params.q, params.m

    if m is INFINITY:
        s = p + (p - 1.0) * (q + 1.0)
        C = (s / (2.0 * p)) ** (p / s)
        Mc = closed_Mc(params)
        return BestConstantResult(theta=exps.theta, M_c=Mc, C=C, beta=None,
                                  method=Method.CLOSED_FORM, err_estimate=0.0)

    mq = m - q
    e1, e2, ell = exps.eta1, exps.eta2, exps.ell
    log_inner = (p * math.log(2.0) + (1.0 - p) * math.log(p - 1.0)
                 + (e1 / mq) * math.log(e1)
                 - (2.0 * p - 1.0) * math.log(mq)
                 - (e2 / mq) * math.log(e2)
                 + p * math.log(beta_complete(e2 / (p * mq),
                                              (2.0 * p - 1.0) / p)))
    C = math.exp(-ell * log_inner)
    Mc = closed_Mc(params)
    return BestConstantResult(theta=exps.theta, M_c=Mc, C=C,
                              beta=beta_from_mass(params, Mc),
                              method=Method.CLOSED_FORM, err_estimate=0.0)


def dpd_constant(params: ParamSet) -> BestConstantResult:
    """Gamma-ratio best constant on the two parametric families, any d."""
    d, p, q, m = params.d, params.p, params.q, params.m
    if m is INFINITY:
        raise FamilyMismatchError("m = inf has no Gamma-ratio constant here")

    compact = _is_family(m, (q + 1.0) * (p - 1.0) / p)
    positive = _is_family(m, (p * (q - 1.0) + 1.0) / (p - 1.0))
    if not (compact or positive):
        raise FamilyMismatchError(
            "parameters lie in neither closed-constant family")
    if positive and p * q - d * (q + 1.0 - p) == 0.0:
        raise SobolevCriticalError(
            "p(alpha+1) = d: the family degenerates to the Sobolev extremal; "
            "use sobolev_constant")
    exps = validate(params)
    ln_ball_ratio = (math.lgamma(d / 2.0 + 1.0) - math.log(d)
                     - (d / 2.0) * math.log(math.pi))

    if compact:
        th = d * (p - m - 1.0) / ((m + 1.0) * (d * (p - m - 1.0) + p * m))
        eta = d * p - (m + 1.0) * (d - p)
        g1 = p * m / (p - m - 1.0)
        lnC = (th * math.log((p - m - 1.0) / p)
               + (th / p) * math.log(p * (m + 1.0) / (d * (p - m - 1.0)))
               + ((1.0 - th) / (q + 1.0) - th / d)
               * math.log(p * (m + 1.0) / eta)
               + (th / d) * math.log(p / (p - 1.0))
               + (th / d) * ln_ball_ratio
               + (th / d) * (math.lgamma(g1 + d * (p - 1.0) / p + 1.0)
                             - math.lgamma(1.0 + g1)
                             - math.lgamma(d * (p - 1.0) / p)))
    else:
        th = (q + 1.0 - p) * d / (q * (d * p - (d - p) * (q + 1.0)))
        eta = d * p - (d - p) * (q + 1.0)
        g1 = (q + 1.0) * (p - 1.0) / (q + 1.0 - p)
        lnC = (th * math.log((q + 1.0 - p) / p)
               + (th / p) * math.log(p * (q + 1.0) / (d * (q + 1.0 - p)))
               + (1.0 / (m + 1.0)) * math.log(eta / (p * (q + 1.0)))
               + (th / d) * math.log(p / (p - 1.0))
               + (th / d) * ln_ball_ratio
               + (th / d) * (math.lgamma(g1)
                             - math.lgamma(g1 - d * (p - 1.0) / p)
                             - math.lgamma(d * (p - 1.0) / p)))

    C = math.exp(lnC)
    Mc = closed_Mc(params)
    return BestConstantResult(theta=exps.theta, M_c=Mc, C=C,
                              beta=beta_from_mass(params, Mc),
                              method=Method.CLOSED_FORM, err_estimate=0.0)


def delta_mass_1d(params: ParamSet) -> float:
    """Weight a of the point mass at the origin in the 1-D limit equation;
    equals ||u'||_p^p + ||u||_{q+1}^{q+1} of the extremal."""
    if params.d != 1:
        raise AdmissibilityError("d != 1")
    if params.m is not INFINITY:
        raise AdmissibilityError("m finite", "m = inf required")
    validate(params)
    p, q = params.p, params.q
    return 2.0 * (p / ((q + 1.0) * (p - 1.0))) ** ((p - 1.0) / p)


def nash_constant(params: ParamSet, R: float | None = None) -> BestConstantResult:
    """Best constant of the q=0, m=1 inequality.

    Uses M_c = omega_d R^d, so only the touchdown radius R is needed. At
    d = 1 it is closed-form (pi for p = 2); at d >= 2 the caller must pass
    the solver's R (or an eigenvalue-based value).
    """
    if params.q != 0.0 or params.m != 1.0:
        raise AdmissibilityError("(q, m) != (0, 1)")
    exps = validate(params)
    d, p = params.d, params.p
    if R is None:
        if d != 1:
            raise ValueError("R is required for d >= 2 (take it from the solver)")
        if p == 2.0:
            R = math.pi
        else:
            _, R = _coeffs_1d_finite_m(p, 0.0, 1.0)
    th = p * d / (2.0 * (p * d + p - d))
    wd = exps.omega_d
    C = (th ** (-th / p) * (1.0 - th) ** (th / p - 0.5)
         * R ** (-th) * wd ** (-th / d))
    Mc = wd * R ** d
    return BestConstantResult(theta=exps.theta, M_c=Mc, C=C,
                              beta=beta_from_mass(params, Mc),
                              method=Method.CLOSED_FORM, err_estimate=0.0)


def sobolev_constant(d: int, p: float) -> float:
    """Sharp Sobolev constant (Talenti), 1 < p < d."""
    if not p > 1:
        raise AdmissibilityError("p <= 1")
    if not p < d:
        raise AdmissibilityError("p >= d", "Sobolev constant needs p < d")
    lg = math.lgamma
    gamma_part = (lg(1.0 + d / 2.0) + lg(float(d))
                  - lg(d / p) - lg(1.0 + d - d / p)) / d
    return (math.pi ** -0.5 * d ** (-1.0 / p)
            * ((p - 1.0) / (d - p)) ** (1.0 - 1.0 / p)
            * math.exp(gamma_part))
