"""Independent checks of the identities behind the sharp constants.

Each function measures residuals with quadrature that is separate from the
solver's own integration machinery, so agreement is evidence rather than
tautology. Reports are plain frozen dataclasses; nothing here mutates its
inputs. Random test functions are deterministic for a given seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq
from scipy.special import jv

from .core import (INFINITY, AdmissibilityError, ParamSet, alpha_peak,
                   theta_exponent, unit_ball_volume, unit_sphere_area,
                   validate)
from .closed_forms import (closed_constant_1d, dpd_constant,
                           profile_1d_finite_m, profile_1d_m_infinity)
from .profiles import Algebraic, Exponential, Finite, Grid, Infinite, RadialProfile
from .solver import (best_constant_numeric, gradient_norm_p, radial_norm,
                     shoot_finite_m)


class InsufficientTail(RuntimeError):
    """The profile is truncated (or compact) where a decay fit needs a tail."""


# ---------------------------------------------------------------------------
# Test functions and norms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TestFunction:
    """Radial bump with exact derivative, for quadrature-based checks."""

    descriptor: str
    u: Callable[[float], float]
    du: Callable[[float], float]
    r_max: float | None          # support bound, None = all of [0, inf)
    kinks: tuple = ()            # interior radii where u' jumps


@dataclass(frozen=True)
class VerificationSample:
    descriptor: str
    norms: tuple        # (||u||_{m+1} or sup, ||u||_{q+1}, ||grad u||_p)
    ratio: float
    slack: float        # C - ratio


def _gaussian(amp, width):
    def u(r):
        return amp * math.exp(-((r / width) ** 2))

    def du(r):
        return -2.0 * amp * r / width ** 2 * math.exp(-((r / width) ** 2))

    return TestFunction("gaussian A=%.6g w=%.6g" % (amp, width), u, du, None)


def _poly_bump(amp, width, k):
    def u(r):
        t = 1.0 - (r / width) ** 2
        return amp * t ** k if t > 0.0 else 0.0

    def du(r):
        t = 1.0 - (r / width) ** 2
        if t <= 0.0:
            return 0.0
        return -2.0 * amp * k * r / width ** 2 * t ** (k - 1.0)

    return TestFunction("poly A=%.6g w=%.6g k=%d" % (amp, width, k),
                        u, du, width)


def _tent(amp, width):
    def u(r):
        return amp * (1.0 - r / width) if r < width else 0.0

    def du(r):
        return -amp / width if r < width else 0.0

    return TestFunction("tent A=%.6g w=%.6g" % (amp, width), u, du, width)


def _radial_integral(fn, d, r_max, kinks=(), scale=1.0):
    """int_0^{r_max} r^{d-1} fn(r) dr by adaptive quadrature."""
    pts = [k for k in kinks if r_max is None or k < r_max]
    if r_max is None:
        hi = max(scale * 60.0, 60.0)
        val, _ = quad(lambda r: r ** (d - 1) * fn(r), 0.0, hi,
                      points=pts or None, limit=300,
                      epsabs=1e-14, epsrel=1e-12)
    else:
        val, _ = quad(lambda r: r ** (d - 1) * fn(r), 0.0, r_max,
                      points=pts or None, limit=300,
                      epsabs=1e-14, epsrel=1e-12)
    return val


def function_norms(tf: TestFunction, params: ParamSet):
    """(left, ||u||_{q+1}, ||grad u||_p) of a test function.

    left is ||u||_{m+1} for finite m and the essential sup for m = inf,
    taken as the max over a grid refined toward the origin.
    """
    d, p, q, m = params.d, params.p, params.q, params.m
    Sd = unit_sphere_area(d)
    scale = tf.r_max or 1.0
    uq = (Sd * _radial_integral(lambda r: tf.u(r) ** (q + 1.0), d, tf.r_max,
                                tf.kinks, scale)) ** (1.0 / (q + 1.0))
    gp = (Sd * _radial_integral(lambda r: abs(tf.du(r)) ** p, d, tf.r_max,
                                tf.kinks, scale)) ** (1.0 / p)
    if m is INFINITY:
        hi = tf.r_max if tf.r_max is not None else scale * 60.0
        rs = np.concatenate([[0.0], np.geomspace(hi * 1e-9, hi, 3000)])
        left = float(max(tf.u(float(r)) for r in rs))
    else:
        left = (Sd * _radial_integral(lambda r: tf.u(r) ** (m + 1.0), d,
                                      tf.r_max, tf.kinks, scale)
                ) ** (1.0 / (m + 1.0))
    return left, uq, gp


def inequality_ratio(tf: TestFunction, params: ParamSet):
    """(norms, ratio) with ratio = left / (||u||_{q+1}^{1-theta} ||grad u||_p^theta)."""
    th = theta_exponent(params.d, params.p, params.q, params.m)
    left, uq, gp = function_norms(tf, params)
    ratio = left / (uq ** (1.0 - th) * gp ** th)
    return (left, uq, gp), ratio


def _default_constant(params: ParamSet) -> float:
    if params.d == 1:
        return closed_constant_1d(params).C
    try:
        return dpd_constant(params).C
    except Exception:
        return best_constant_numeric(params).C


def sample_test_functions(sample_family: str, n: int, seed: int = 0):
    """Seeded bump draws; sample_family is gaussian / poly / tent / mixed."""
    rng = np.random.default_rng(seed)
    families = {"gaussian": ("gaussian",), "poly": ("poly",),
                "tent": ("tent",),
                "mixed": ("gaussian", "poly", "tent")}[sample_family]
    out = []
    for i in range(n):
        fam = families[i % len(families)]
        amp = float(rng.uniform(0.5, 2.0))
        width = float(np.exp(rng.uniform(np.log(0.5), np.log(2.0))))
        if fam == "gaussian":
            out.append(_gaussian(amp, width))
        elif fam == "poly":
            out.append(_poly_bump(amp, width, int(rng.integers(2, 5))))
        else:
            out.append(_tent(amp, width))
    return out


def check_inequality(sample_family: str, n_samples: int, params: ParamSet,
                     C: float | None = None, seed: int = 0):
    """Try the inequality on seeded random bumps; returns VerificationSamples.

    sample_family is one of gaussian / poly / tent / mixed. Every sample
    must come out with ratio <= C up to quadrature noise; callers assert
    slack >= -1e-8 C.
    """
    validate(params)
    if C is None:
        C = _default_constant(params)
    out = []
    for tf in sample_test_functions(sample_family, n_samples, seed):
        norms, ratio = inequality_ratio(tf, params)
        out.append(VerificationSample(descriptor=tf.descriptor, norms=norms,
                                      ratio=ratio, slack=C - ratio))
    return out


def profile_as_test_function(profile: RadialProfile) -> TestFunction:
    """Wrap a RadialProfile so the quadrature-based checks can consume it."""
    R = profile.support_radius
    return TestFunction("profile d=%d" % profile.params.d,
                        lambda r: float(profile.u(r)),
                        lambda r: float(profile.du(r)),
                        R)


def extremal_ratio(profile: RadialProfile, params: ParamSet) -> float:
    """Inequality ratio of a profile, with tail-corrected norms.

    Unlike inequality_ratio this keeps the analytic tail contributions of
    infinite supports, which the window quadrature would truncate.
    """
    d, p, q, m = params.d, params.p, params.q, params.m
    th = theta_exponent(d, p, q, m)
    uq = radial_norm(profile, q + 1.0, d) ** (1.0 / (q + 1.0))
    gp = gradient_norm_p(profile, p, d) ** (1.0 / p)
    if m is INFINITY:
        if isinstance(profile.form, Grid):
            left = float(np.max(profile.form.values))
        else:
            left = profile.peak
    else:
        left = radial_norm(profile, m + 1.0, d) ** (1.0 / (m + 1.0))
    return left / (uq ** (1.0 - th) * gp ** th)


# ---------------------------------------------------------------------------
# Energy identities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EnergyReport:
    H_samples: np.ndarray        # rows (r, H(r))
    dissipation_residual: float  # max |H(r2)-H(r1) + int (d-1)/r |u'|^p|
    F_value: float | None        # finite-m functional, None for m = inf
    G_value: float | None        # m = inf functional, None for finite m
    contact_term: float
    grad_scale: float = field(default=0.0)   # ||grad u||_p^p, for tolerances

    @property
    def h_residual(self) -> float:
        h = self.H_samples[:, 1]
        return float(np.max(np.abs(h)))


def _h_values(profile: RadialProfile, rs):
    p, q, m = profile.params.p, profile.params.q, profile.params.m
    u = np.asarray(profile.u(rs), dtype=float)
    du = np.asarray(profile.du(rs), dtype=float)
    h = (p - 1.0) / p * np.abs(du) ** p - u ** (q + 1.0) / (q + 1.0)
    if m is not INFINITY:
        h = h + u ** (m + 1.0) / (m + 1.0)
    return h


def _sample_radii(profile: RadialProfile, n):
    g = profile.form
    if isinstance(g, Grid):
        idx = np.unique(np.linspace(0, len(g.nodes) - 1, n).astype(int))
        return g.nodes[idx]
    R = profile.support_radius
    if R is not None:
        return np.linspace(0.0, R, n)[:-1]
    return np.linspace(0.0, 12.0, n)


def energy_report(profile: RadialProfile, params: ParamSet) -> EnergyReport:
    """Pointwise first-integral samples plus the integral identities.

    H(r) = (p-1)/p |u'|^p + u^{m+1}/(m+1) - u^{q+1}/(q+1) obeys
    dH/dr = -(d-1)/r |u'|^p; at d = 1 it is constant (zero on extremals).
    The functional F (finite m) or G (m = inf) vanishes on extremals and
    equals a contact term at touchdown radii.
    """
    d, p, q, m = params.d, params.p, params.q, params.m
    rs = np.asarray(_sample_radii(profile, 400), dtype=float)
    hs = _h_values(profile, rs)
    H_samples = np.column_stack([rs, hs])

    # dissipation along a coarse partition; the inner integral by 10-point
    # Gauss-Legendre per interval
    xg, wg = np.polynomial.legendre.leggauss(10)
    r_pos = rs[rs > 0.0]
    if m is INFINITY and d >= 2:
        # H diverges at the origin flux singularity; check away from the cap
        u_pos = np.asarray(profile.u(r_pos), dtype=float)
        inside = r_pos[u_pos <= 0.95 * profile.peak]
        r_lo = inside[0] if len(inside) else r_pos[0]
    else:
        r_lo = r_pos[0] if len(r_pos) else 0.0
    sub = np.geomspace(r_lo, r_pos[-1], 33) if len(r_pos) > 1 else []
    resid = 0.0
    for r1, r2 in zip(sub[:-1], sub[1:]):
        mid, half = 0.5 * (r1 + r2), 0.5 * (r2 - r1)
        rq = mid + half * xg
        duq = np.asarray(profile.du(rq), dtype=float)
        diss = half * float(np.sum(wg * (d - 1.0) / rq * np.abs(duq) ** p))
        h1 = float(_h_values(profile, np.array([r1]))[0])
        h2 = float(_h_values(profile, np.array([r2]))[0])
        # normalized per interval so steep-H regions do not drown flat ones
        scale = max(1.0, abs(h1), abs(h2))
        resid = max(resid, abs(h2 - h1 + diss) / scale)

    gp = gradient_norm_p(profile, p, d)
    uq = radial_norm(profile, q + 1.0, d)
    if m is INFINITY:
        F_value = None
        G_value = (p - d) / p * gp - d / (q + 1.0) * uq
    else:
        um = radial_norm(profile, m + 1.0, d)
        F_value = ((d * (p - 1.0) + p) / p * gp
                   - d * m / (m + 1.0) * um + d * q / (q + 1.0) * uq)
        G_value = None

    R = profile.support_radius
    if R is None:
        contact = 0.0
    else:
        # limit of r^d |u'|^p at the boundary, through the last grid node
        if isinstance(profile.form, Grid):
            r_b = float(profile.form.nodes[-2])
        else:
            r_b = R * (1.0 - 1e-9)
        slope = float(profile.du(r_b))
        if m is INFINITY:
            contact = (p - 1.0) * unit_sphere_area(d) / p \
                * r_b ** d * abs(slope) ** p
        else:
            contact = d * (p - 1.0) * unit_ball_volume(d) / p \
                * R ** d * abs(slope) ** p
    return EnergyReport(H_samples=H_samples, dissipation_residual=resid,
                        F_value=F_value, G_value=G_value,
                        contact_term=contact, grad_scale=gp)


# ---------------------------------------------------------------------------
# Decay law
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DecayReport:
    kind: str                 # algebraic / exponential / exponential-envelope
    fitted_rate: float
    target_rate: float | None
    rel_err: float | None
    window: tuple
    n_points: int


def decay_check(profile: RadialProfile, params: ParamSet) -> DecayReport:
    """Fit the tail decay over the last sampled decade and compare rates.

    Algebraic (q > p-1): log u vs log r, slope -p/(q+1-p). Exponential
    (q = p-1, m = inf): log u vs r, rate (p-1)^{-1/p}. The finite-m
    critical case only checks a positive-rate exponential envelope; its
    prefactor is m-dependent and not a sharp rate.
    """
    p, q, m = params.p, params.q, params.m
    if not isinstance(profile.support, Infinite):
        raise InsufficientTail("compact support leaves no tail to fit")

    if isinstance(profile.form, Grid):
        r_all = profile.form.nodes
        u_all = profile.form.values
    else:
        R_hi = 40.0 if q <= p - 1.0 else 2.0e4
        r_all = np.geomspace(1e-2, R_hi, 4000)
        u_all = np.asarray(profile.u(r_all), dtype=float)
    keep = u_all > 1e-280
    r_all, u_all = r_all[keep], u_all[keep]
    # drop the last 5% of nodes: truncation artifacts live there
    n_cut = max(1, int(0.05 * len(r_all)))
    r_all, u_all = r_all[:-n_cut], u_all[:-n_cut]
    r_hi = r_all[-1]
    window = r_all >= r_hi / 10.0
    if np.count_nonzero(window) < 12:
        raise InsufficientTail("fewer than 12 tail nodes in the last decade")
    r_w, u_w = r_all[window], u_all[window]

    decay = profile.support.decay
    if isinstance(decay, Algebraic):
        slope = np.polyfit(np.log(r_w), np.log(u_w), 1)[0]
        target = p / (q + 1.0 - p)
        return DecayReport("algebraic", -float(slope), target,
                           abs(-slope - target) / target,
                           (float(r_w[0]), float(r_w[-1])), len(r_w))
    slope = np.polyfit(r_w, np.log(u_w), 1)[0]
    if m is INFINITY:
        target = (p - 1.0) ** (-1.0 / p)
        return DecayReport("exponential", -float(slope), target,
                           abs(-slope - target) / target,
                           (float(r_w[0]), float(r_w[-1])), len(r_w))
    return DecayReport("exponential-envelope", -float(slope), None, None,
                       (float(r_w[0]), float(r_w[-1])), len(r_w))


# ---------------------------------------------------------------------------
# m -> infinity limit study (d = 1)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LimitReport:
    m_list: tuple
    C_values: tuple
    R_values: tuple            # entries None when support is infinite
    sup_gaps: tuple            # sup |u_{c,m} - u_{c,inf}| on the fixed grid
    C_target: float
    R_target: float | None
    C_gaps: tuple
    R_gaps: tuple | None
    tail_monotone: bool        # every gap series shrinks over its last entries
    final_gap: float
    threshold: float

    @property
    def converged(self) -> bool:
        return self.tail_monotone and self.final_gap < self.threshold


def limit_study(params_base: ParamSet, m_list, threshold: float = 1e-2
                ) -> LimitReport:
    """Track C_m, R_m and the profile gap toward their m = inf targets."""
    if params_base.d != 1:
        raise AdmissibilityError("d != 1", "the limit result is d = 1 only")
    p, q = params_base.p, params_base.q
    m_list = tuple(float(m) for m in m_list)
    if len(m_list) < 3 or any(b <= a for a, b in zip(m_list, m_list[1:])):
        raise ValueError("m_list must be increasing with >= 3 entries")

    inf_params = ParamSet(d=1, p=p, q=q, m=INFINITY)
    target = closed_constant_1d(inf_params)
    prof_inf = profile_1d_m_infinity(inf_params)
    R_target = prof_inf.support_radius
    grid_hi = R_target * 1.25 if R_target is not None else 12.0
    grid = np.linspace(0.0, grid_hi, 600)
    u_inf = np.asarray(prof_inf.u(grid), dtype=float)

    Cs, Rs, gaps = [], [], []
    for m in m_list:
        params = ParamSet(d=1, p=p, q=q, m=m)
        Cs.append(closed_constant_1d(params).C)
        prof = profile_1d_finite_m(params)
        Rs.append(prof.support_radius)
        gaps.append(float(np.max(np.abs(
            np.asarray(prof.u(grid), dtype=float) - u_inf))))

    C_gaps = tuple(abs(c - target.C) for c in Cs)
    R_gaps = None
    if R_target is not None and all(r is not None for r in Rs):
        R_gaps = tuple(abs(r - R_target) for r in Rs)

    def tail_decreasing(seq):
        return all(b < a for a, b in zip(seq[-3:], seq[-2:]))

    series = [C_gaps, tuple(gaps)] + ([R_gaps] if R_gaps else [])
    ok = all(tail_decreasing(s) for s in series)
    final = max(s[-1] for s in series)
    return LimitReport(m_list=m_list, C_values=tuple(Cs), R_values=tuple(Rs),
                       sup_gaps=tuple(gaps), C_target=target.C,
                       R_target=R_target, C_gaps=C_gaps, R_gaps=R_gaps,
                       tail_monotone=ok, final_gap=final, threshold=threshold)


# ---------------------------------------------------------------------------
# Scaling reduction between the quotient and sum-form functionals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScalingReport:
    lhs: float                 # K I_1(u)^a
    rhs: float                 # min over lambda of I_2(u_lambda)
    rel_err: float
    lambda_star: float         # golden-section minimizer
    lambda_analytic: float


def scaling_reduction_check(tf: TestFunction, params: ParamSet
                            ) -> ScalingReport:
    """K I_1(u)^a = min_lambda I_2(u_lambda), u_lambda = lambda^{-d/(m+1)} u(x/lambda).

    I_1 is the inverted inequality quotient, I_2 the sum-form functional.
    The minimum is located by golden-section search and cross-checked
    against the stationary-point formula.
    """
    d, p, q, m = params.d, params.p, params.q, params.m
    if m is INFINITY:
        raise AdmissibilityError("m = inf", "finite m required")
    validate(params)
    th = theta_exponent(d, p, q, m)
    left, uq, gp = function_norms(tf, params)
    Du = gp ** p
    Uq = uq ** (q + 1.0)

    a = (m + 1.0) * (d * p + (p - d) * (q + 1.0)) \
        / (d * p + p * (m + 1.0) - d * (q + 1.0))
    al = p * d / (m + 1.0) + p - d
    be = d - (q + 1.0) * d / (m + 1.0)
    # exponent bookkeeping behind the identity; fails only on a typo
    assert abs(p * be / (al + be) - a * th) < 1e-10
    assert abs(al * (q + 1.0) / (al + be) - a * (1.0 - th)) < 1e-10

    I1 = gp ** th * uq ** (1.0 - th) / left
    K = (al + be) / (p * be) * (al * (q + 1.0) / (p * be)) ** (-al / (al + be))
    lhs = K * I1 ** a

    def f(lam):
        return (lam ** (-al) * Du / p + lam ** be * Uq / (q + 1.0)) \
            / left ** a

    lam_hat = (al * (q + 1.0) * Du / (p * be * Uq)) ** (1.0 / (al + be))
    lo, hi = lam_hat * 1e-3, lam_hat * 1e3
    gr = (math.sqrt(5.0) - 1.0) / 2.0
    x1, x2 = hi - gr * (hi - lo), lo + gr * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(200):
        if hi - lo < 1e-14 * lam_hat:
            break
        if f1 > f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + gr * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - gr * (hi - lo)
            f1 = f(x1)
    lam_star = 0.5 * (lo + hi)
    rhs = f(lam_star)
    return ScalingReport(lhs=lhs, rhs=rhs,
                         rel_err=abs(lhs - rhs) / abs(rhs),
                         lambda_star=lam_star, lambda_analytic=lam_hat)


# ---------------------------------------------------------------------------
# Radial sup bound (d >= 2)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StraussReport:
    nu: float
    constant: float
    radii: tuple
    margins: tuple       # bound(r) - u(r), all must be >= 0
    all_hold: bool


def strauss_bound_check(tf: TestFunction, params: ParamSet,
                        radii=None) -> StraussReport:
    """|u(r)| <= nu^{1/nu} r^{(1-d)/nu} ||u||_{q+1}^{(nu-1)/nu} ||grad u||_p^{1/nu}."""
    d, p, q = params.d, params.p, params.q
    if d < 2:
        raise AdmissibilityError("d < 2", "radial bound needs d >= 2")
    nu = (q + 1.0) * (p - 1.0) / p + 1.0
    const = nu ** (1.0 / nu)
    _, uq, gp = function_norms(tf, params)
    r_hi = tf.r_max if tf.r_max is not None else 30.0
    if radii is None:
        radii = np.geomspace(r_hi * 1e-4, r_hi * 0.999, 20)
    bound = const * np.asarray(radii) ** ((1.0 - d) / nu) \
        * uq ** ((nu - 1.0) / nu) * gp ** (1.0 / nu)
    uvals = np.array([tf.u(float(r)) for r in radii])
    margins = bound - uvals
    return StraussReport(nu=nu, constant=const, radii=tuple(float(r) for r in radii),
                         margins=tuple(float(x) for x in margins),
                         all_hold=bool(np.all(margins >= 0.0)))


# ---------------------------------------------------------------------------
# Neumann eigenvalue reading of the p=2, q=0, m=1 profile
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NashReport:
    R: float
    eigenvalue: float          # R^2
    bessel_value: float        # independent first root of J_{d/2}
    eigen_rel_err: float
    equation_residual: float   # integral form of Delta v + R^2 v = 0 on [0,1]
    boundary_slope: float      # v'(1), must vanish


def _first_bessel_zero(order: float) -> float:
    xs = np.linspace(0.05, 25.0, 2500)
    vals = jv(order, xs)
    for i in range(len(xs) - 1):
        if vals[i] > 0.0 and vals[i + 1] <= 0.0:
            return float(brentq(lambda x: jv(order, x), xs[i], xs[i + 1],
                                xtol=1e-14, rtol=1e-15))
    raise RuntimeError("no sign change found for J_%g" % order)


def nash_eigen_check(params: ParamSet) -> NashReport:
    """v(s) = 1 - u_c(R s) solves the radial Neumann eigenproblem on B_1.

    Checked in integral form, s^{d-1} v'(s) = -R^2 int_0^s t^{d-1} v dt,
    which needs no differencing; the eigenvalue R^2 is compared against
    the square of the first positive zero of J_{d/2}.
    """
    d, p, q, m = params.d, params.p, params.q, params.m
    if not (p == 2.0 and q == 0.0 and m == 1.0):
        raise AdmissibilityError("(p,q,m) != (2,0,1)",
                                 "eigenvalue reading needs p=2, q=0, m=1")
    prof = profile_1d_finite_m(params) if d == 1 else shoot_finite_m(params)
    R = prof.support_radius

    def v(s):
        return 1.0 - np.asarray(prof.u(np.asarray(s) * R), dtype=float)

    def dv(s):
        return -R * np.asarray(prof.du(np.asarray(s) * R), dtype=float)

    xg, wg = np.polynomial.legendre.leggauss(24)
    s_checks = np.linspace(0.05, 1.0, 20)
    resid = 0.0
    scale = R * R * float(np.max(np.abs(v(s_checks))))
    for s in s_checks:
        t = 0.5 * s * (xg + 1.0)
        integral = 0.5 * s * float(np.sum(wg * t ** (d - 1) * v(t)))
        lhs = s ** (d - 1) * float(dv(s))
        resid = max(resid, abs(lhs + R * R * integral) / scale)

    bessel = _first_bessel_zero(d / 2.0)
    return NashReport(R=R, eigenvalue=R * R, bessel_value=bessel,
                      eigen_rel_err=abs(R - bessel) / bessel,
                      equation_residual=resid,
                      boundary_slope=float(dv(1.0)))
