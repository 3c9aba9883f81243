"""Radial shooting solver and quadrature-based best constants.

The profile equation is (r^{d-1} |u'|^{p-2} u')' = r^{d-1} (u^q - u^m) with
u'(0) = 0 and u(0) = alpha. The state is y = (u, w) where
w = r^{d-1} |u'|^{p-2} u' is the flux, so

    u' = sign(w) (|w| / r^{d-1})^{1/(p-1)}

and the degenerate factor |u'|^{p-2} never appears explicitly. By convention
u^q is 1 where u > 0 and 0 where u <= 0 when q = 0.

For finite m the peak alpha is found by bisection at d >= 2 (at d = 1 the
first integral pins alpha = ((m+1)/(q+1))^{1/(m-q)} exactly). For m = infinity
the peak is 1 and the free parameter is the flux carried into the origin; at
d = 1 the equation is autonomous and a single integration from r = 0 is
exact, at d >= 2 the problem is solved on [r0, inf) for a decreasing sequence
of r0 and extrapolated to r0 = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.interpolate import CubicHermiteSpline
from scipy.special import gammaincc

from .core import (INFINITY, AdmissibilityError, ParamSet, Regime,
                   alpha_peak, unit_sphere_area, validate)
from .profiles import (Algebraic, Exponential, Finite, Grid, Infinite,
                       RadialProfile)


class Method(Enum):
    CLOSED_FORM = "closed_form"
    SHOOT_QUAD = "shoot_quad"
    EXTERIOR_QUAD = "exterior_quad"


class SolverError(RuntimeError):
    pass


class BracketError(SolverError):
    """The shooting bracket does not straddle the critical parameter."""


class NonConvergence(SolverError):
    pass


class ExtrapolationDivergence(SolverError):
    """The r0 -> 0 sequence does not behave like a power law."""


class NonIntegrable(SolverError):
    """Requested norm diverges for the declared tail decay."""


@dataclass(frozen=True)
class ShootingConfig:
    alpha_bracket: tuple | None = None
    bisection_tol: float = 1e-12
    ode_rel_tol: float = 1e-12
    ode_abs_tol: float = 1e-14
    r_start_fraction: float = 1e-4
    r_max: float | None = None
    r0_sequence: tuple | None = None
    grid_points: int = 1600


@dataclass(frozen=True)
class BestConstantResult:
    theta: float
    M_c: float
    C: float
    beta: float | None
    method: Method
    err_estimate: float


_DEFAULT_CONFIG = ShootingConfig()


def constant_from_mass(params: ParamSet, Mc: float) -> float:
    """C from theta and the extremal mass M_c."""
    exps = validate(params)
    th, p = exps.theta, params.p
    if params.m is INFINITY:
        e = th / p
    else:
        e = th / p - 1.0 / (params.m + 1.0)
    return th ** (-th / p) * (1.0 - th) ** e * Mc ** (-th / params.d)


def beta_from_mass(params: ParamSet, Mc: float) -> float | None:
    """Rescaled Lagrange multiplier; C = beta^{-1/(gamma + p/2)}."""
    if params.m is INFINITY:
        return None
    exps = validate(params)
    g, p, d = exps.gamma, params.p, params.d
    A = (g + p / 2.0) / (params.m + 1.0)
    return (p * (g - p / 2.0) ** (A - 1.0) * (g + p / 2.0) ** (-A)
            * Mc ** (p / d))


# ---------------------------------------------------------------------------
# ODE plumbing
# ---------------------------------------------------------------------------

def _make_rhs(d: int, p: float, q: float, m):
    """m is a float for the finite equation, None for the exterior
    (m = infinity) equation where the u^m term is absent."""
    dm1 = float(d - 1)
    inv = 1.0 / (p - 1.0)

    def rhs(r, y):
        u, w = y
        up = u if u > 0.0 else 0.0
        if q == 0.0:
            uq = 1.0 if up > 0.0 else 0.0
        else:
            uq = up ** q
        src = uq if m is None else uq - up ** m
        rd = r ** dm1
        du = math.copysign((abs(w) / rd) ** inv, w) if w != 0.0 else 0.0
        return (du, src * rd)

    return rhs


def _event(fn, direction):
    fn.terminal = True
    fn.direction = direction
    return fn


def _ev_touch():
    return _event(lambda r, y: y[0], -1)


def _ev_turn():
    return _event(lambda r, y: y[1], 1)


def _ev_floor(level):
    return _event(lambda r, y: y[0] - level, -1)


def _integrate(rhs, r_lo, r_hi, y0, cfg, events, dense=False):
    return solve_ivp(rhs, (r_lo, r_hi), y0, method="DOP853",
                     rtol=cfg.ode_rel_tol, atol=cfg.ode_abs_tol,
                     events=events, dense_output=dense)


def _series_start(d, p, q, m, alpha, r_s):
    """Two-term expansion at the origin: u = alpha - c r^{p/(p-1)},
    w = f0 r^d / d with f0 = alpha^q - alpha^m < 0."""
    if q == 0.0:
        f0 = 1.0 - alpha ** m
    else:
        f0 = alpha ** q - alpha ** m
    c = ((p - 1.0) / p) * (abs(f0) / d) ** (1.0 / (p - 1.0))
    u_s = alpha - c * r_s ** (p / (p - 1.0))
    w_s = f0 * r_s ** d / d
    return u_s, w_s, f0


def _speed(p, q, m, u):
    """|u'| as a function of u on the zero-energy curve (the d = 1 first
    integral). m = None drops the u^m term."""
    if u <= 0.0:
        return 0.0
    val = u ** (q + 1.0) / (q + 1.0)
    if m is not None:
        val -= u ** (m + 1.0) / (m + 1.0)
    if val <= 0.0:
        return 0.0
    return (p / (p - 1.0) * val) ** (1.0 / p)


def _touchdown_distance(p, q, m, u_top):
    """Radial distance from u = u_top down to the contact point u = 0 along
    the zero-energy curve. Regularized by u = u_top t^{p/(p-q-1)}: the
    transformed integrand is smooth."""
    k = p / (p - q - 1.0)

    def g(t):
        t = max(t, 1e-300)
        u = u_top * t ** k
        return u_top * k * t ** (k - 1.0) / _speed(p, q, m, u)

    val, _ = quad(g, 0.0, 1.0, epsabs=1e-13, epsrel=1e-12, limit=200)
    return val


def _zero_energy_tail(r_f, u_f, p, q, m, compact, n_levels=320):
    """d = 1 continuation from (r_f, u_f): the first integral is exact in one
    dimension, so the remaining curve is quadrature rather than ODE time.
    The ODE itself cannot be trusted here; its energy drift (~rtol) swamps
    F(u) once u is small and shifts the contact point.

    Returns (nodes, values, flux, R_hat), R_hat None for infinite support."""
    if compact:
        R_hat = r_f + _touchdown_distance(p, q, m, u_f)
        levels = u_f * np.geomspace(1.0, 1e-7, n_levels)[1:]
        rs = [R_hat - _touchdown_distance(p, q, m, float(ul))
              for ul in levels]
        us = list(levels)
        rs.append(R_hat)
        us.append(0.0)
    else:
        levels = u_f * np.geomspace(1.0, 1e-6, n_levels)
        rs, us = [], []
        r_acc = r_f
        for u_hi, u_lo in zip(levels[:-1], levels[1:]):
            seg, _ = quad(lambda uu: 1.0 / _speed(p, q, m, uu),
                          float(u_lo), float(u_hi),
                          epsabs=1e-14, epsrel=1e-12, limit=200)
            r_acc += seg
            rs.append(r_acc)
            us.append(float(u_lo))
        R_hat = None
    us = np.array(us)
    ws = -_speed_arr(p, q, m, us) ** (p - 1.0)
    return np.array(rs), us, ws, R_hat


def _speed_arr(p, q, m, u):
    out = np.empty_like(u)
    for i, ui in enumerate(u):
        out[i] = _speed(p, q, m, float(ui))
    return out


def _compact_extension(r_f, u_f, d, p, q, m, n_levels=24):
    """Continue a compact-support solution from (r_f, u_f) to its touchdown
    using the zero-energy curve; valid because the dissipation term is
    O(u_f) relative there. Returns (nodes, values, flux, R_hat)."""
    dR = _touchdown_distance(p, q, m, u_f)
    R_hat = r_f + dR
    levels = u_f * np.geomspace(1.0, 1e-6, n_levels)[1:]
    rs, us, ws = [], [], []
    for ul in levels:
        r = R_hat - _touchdown_distance(p, q, m, float(ul))
        rs.append(r)
        us.append(float(ul))
        ws.append(-(r ** (d - 1)) * _speed(p, q, m, float(ul)) ** (p - 1.0))
    rs.append(R_hat)
    us.append(0.0)
    ws.append(0.0)
    return np.array(rs), np.array(us), np.array(ws), R_hat


def _decay_for(params: ParamSet):
    p, q = params.p, params.q
    if params.regime is Regime.CRITICAL:
        return Exponential((p - 1.0) ** (-1.0 / p))
    return Algebraic(p / (q + 1.0 - p))


def _dedupe(nodes, *arrays):
    keep = np.concatenate([[True], np.diff(nodes) > 1e-13 * max(nodes[-1], 1.0)])
    return (nodes[keep],) + tuple(a[keep] for a in arrays)


# ---------------------------------------------------------------------------
# Finite m
# ---------------------------------------------------------------------------

def _classify(rhs, y0, r_lo, cfg, r_max0):
    """'over' if u crosses zero, 'under' if the flux turns back first.
    Expands the integration window when neither happens."""
    r_hi = r_max0
    for _ in range(6):
        sol = _integrate(rhs, r_lo, r_hi, y0, cfg,
                         [_ev_touch(), _ev_turn()])
        touched = sol.t_events[0].size > 0
        turned = sol.t_events[1].size > 0
        if touched and turned:
            return ("over", sol.t_events[0][0]) \
                if sol.t_events[0][0] < sol.t_events[1][0] \
                else ("under", sol.t_events[1][0])
        if touched:
            return "over", sol.t_events[0][0]
        if turned:
            return "under", sol.t_events[1][0]
        if cfg.r_max is not None and r_hi >= cfg.r_max:
            break
        r_hi *= 2.0
    raise NonConvergence("no touchdown or turnback before r = %g" % r_hi)


def _find_alpha(params: ParamSet, cfg: ShootingConfig):
    """Critical peak by bisection (d >= 2). Returns (alpha, half_width,
    touchdown radius seen from the over side)."""
    d, p, q, m = params.d, params.p, params.q, params.m
    rhs = _make_rhs(d, p, q, m)
    a_c = alpha_peak(params)
    r_s = cfg.r_start_fraction
    r_max0 = cfg.r_max or 48.0

    def cls(alpha):
        u_s, w_s, _ = _series_start(d, p, q, m, alpha, r_s)
        return _classify(rhs, (u_s, w_s), r_s, cfg, r_max0)

    if cfg.alpha_bracket is not None:
        lo, hi = cfg.alpha_bracket
    else:
        lo, hi = a_c * (1.0 + 1e-9), 10.0 * a_c
    kind_lo, _ = cls(lo)
    if kind_lo != "under":
        lo = a_c * (1.0 + 1e-12)
        kind_lo, _ = cls(lo)
        if kind_lo != "under":
            raise BracketError("lower end alpha=%g does not turn back" % lo)
    kind_hi, r_hi_ev = cls(hi)
    if kind_hi != "over":
        hi *= 10.0
        kind_hi, r_hi_ev = cls(hi)
        if kind_hi != "over":
            raise BracketError("no touchdown up to alpha = %g" % hi)

    r_over = r_hi_ev
    while hi - lo > cfg.bisection_tol * a_c:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        try:
            kind, r_ev = cls(mid)
        except NonConvergence:
            # slow algebraic tails separate trajectories only polynomially;
            # once the window cannot split the bracket, alpha is as sharp
            # as it gets and the half-width below reports that honestly
            break
        if kind == "over":
            hi, r_over = mid, r_ev
        else:
            lo = mid
    return 0.5 * (lo + hi), 0.5 * (hi - lo), r_over


def shoot_finite_m(params: ParamSet, config: ShootingConfig | None = None
                   ) -> RadialProfile:
    """Ground-state profile of the finite-m equation as a sampled grid."""
    if params.m is INFINITY:
        raise AdmissibilityError("m = inf", "use shoot_infinite_m")
    validate(params)
    cfg = config or _DEFAULT_CONFIG
    d, p, q, m = params.d, params.p, params.q, params.m
    regime = params.regime
    if regime is Regime.POSITIVE:
        # mass integrability of the algebraic tail
        assert (q + 1.0) * p / (q + 1.0 - p) > d
    rhs = _make_rhs(d, p, q, m)

    if d == 1:
        alpha, half_w, r_over = alpha_peak(params), 0.0, None
    else:
        alpha, half_w, r_over = _find_alpha(params, cfg)

    compact = regime is Regime.COMPACT_SUPPORT
    if d == 1:
        # hand off early: the exact first integral finishes the tail
        u_floor = 1e-2 * alpha
    else:
        u_floor = (1e-9 if compact else 1e-7) * alpha
    if cfg.r_max is not None:
        r_stop = cfg.r_max
    elif compact:
        r_stop = 1.3 * r_over + 5.0 if r_over is not None else 48.0
    elif regime is Regime.CRITICAL:
        r_stop = 40.0 * (p - 1.0) ** (1.0 / p) + 10.0
    else:
        rho = p / (q + 1.0 - p)
        r_stop = min(10.0 * (alpha / u_floor) ** (1.0 / rho), 1e5)

    r_s = cfg.r_start_fraction
    u_s, w_s, f0 = _series_start(d, p, q, m, alpha, r_s)
    sol = _integrate(rhs, r_s, r_stop, (u_s, w_s), cfg,
                     [_ev_floor(u_floor), _ev_touch(), _ev_turn()],
                     dense=True)
    ends = [ev[0] for ev in sol.t_events if ev.size > 0]
    r_end = min(ends) if ends else sol.t[-1]

    # node layout: a short series patch below r_s, then the dense solution
    n = max(cfg.grid_points, 200)
    n_lin = int(0.7 * n)
    t = np.unique(np.concatenate([
        np.linspace(r_s, r_end, n_lin),
        np.geomspace(r_s, r_end, n - n_lin),
    ]))
    uu, ww = sol.sol(t)
    below = np.linspace(0.0, r_s, 9)[:-1]
    c_ser = ((p - 1.0) / p) * (abs(f0) / d) ** (1.0 / (p - 1.0))
    u_below = alpha - c_ser * below ** (p / (p - 1.0))
    w_below = f0 * below ** d / d

    nodes = np.concatenate([below, t])
    values = np.concatenate([u_below, uu])
    flux = np.concatenate([w_below, ww])

    meta = {"alpha": alpha, "alpha_half_width": half_w}
    if d == 1:
        u_last = max(float(values[-1]), 1e-300)
        ext_r, ext_u, ext_w, R_hat = _zero_energy_tail(
            float(nodes[-1]), u_last, p, q, m, compact)
        nodes = np.concatenate([nodes, ext_r])
        values = np.concatenate([values, ext_u])
        flux = np.concatenate([flux, ext_w])
        if compact:
            support = Finite(R_hat)
            meta["touchdown"] = R_hat
        else:
            support = Infinite(_decay_for(params))
    elif compact:
        u_last = max(float(values[-1]), 1e-300)
        ext_r, ext_u, ext_w, R_hat = _compact_extension(
            float(nodes[-1]), u_last, d, p, q, m)
        nodes = np.concatenate([nodes, ext_r])
        values = np.concatenate([values, ext_u])
        flux = np.concatenate([flux, ext_w])
        support = Finite(R_hat)
        meta["touchdown"] = R_hat
    else:
        support = Infinite(_decay_for(params))

    values = np.maximum(values, 0.0)
    nodes, values, flux = _dedupe(nodes, values, flux)
    grid = Grid(nodes, values, flux, meta=meta)
    return RadialProfile(form=grid, support=support, peak=alpha,
                         params=params)


# ---------------------------------------------------------------------------
# m = infinity
# ---------------------------------------------------------------------------

def _exterior_run(params: ParamSet, r0: float, cfg: ShootingConfig):
    """Solve the exterior problem shooting on the origin flux z = |w(0+)|.
    Initial data at r0 follow the the origin asymptotics
    u = 1 - z^{1/(p-1)} r^kappa / kappa, w = -z + r^d/d, so the truncation
    error is o(r0^kappa) rather than O(r0^kappa).
    Returns (dense solution, r_end, z_star)."""
    d, p, q = params.d, params.p, params.q
    rhs = _make_rhs(d, p, q, None)
    compact = q < p - 1.0
    r_max0 = cfg.r_max or 48.0
    z_ref = (p / ((q + 1.0) * (p - 1.0))) ** ((p - 1.0) / p)
    kappa = (p - d) / (p - 1.0)

    def ics(z):
        c = z ** (1.0 / (p - 1.0)) / kappa
        return (1.0 - c * r0 ** kappa, -z + r0 ** d / d)

    def cls(z):
        return _classify(rhs, ics(z), r0, cfg, r_max0)

    lo, hi = 1e-3 * z_ref, 1e3 * z_ref
    kind_lo, _ = cls(lo)
    if kind_lo != "under":
        lo *= 1e-3
        kind_lo, _ = cls(lo)
        if kind_lo != "under":
            raise BracketError("flux lower end does not turn back")
    kind_hi, _ = cls(hi)
    if kind_hi != "over":
        hi *= 1e3
        kind_hi, _ = cls(hi)
        if kind_hi != "over":
            raise BracketError("flux upper end does not touch down")
    while hi - lo > 1e-13 * z_ref:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if cls(mid)[0] == "over":
            hi = mid
        else:
            lo = mid
    z_star = 0.5 * (lo + hi)

    u_floor = 1e-9 if compact else 1e-7
    if compact or cfg.r_max is not None:
        r_stop = r_max0 * 4.0 if cfg.r_max is None else cfg.r_max
    elif q == p - 1.0:
        r_stop = 40.0 * (p - 1.0) ** (1.0 / p) + 10.0
    else:
        r_stop = min(10.0 * (1.0 / u_floor) ** ((q + 1.0 - p) / p), 1e5)
    sol = _integrate(rhs, r0, r_stop, ics(z_star), cfg,
                     [_ev_floor(u_floor), _ev_touch(), _ev_turn()],
                     dense=True)
    ends = [ev[0] for ev in sol.t_events if ev.size > 0]
    r_end = min(ends) if ends else sol.t[-1]
    return sol, r_end, z_star


def _richardson(v1, v2, v3):
    """Two-level elimination with an order fitted from the data. The error
    model is c1 h^k + c2 h^{2k} with h halved between runs."""
    num = v1 - v2
    den = v2 - v3
    gscale = max(float(np.max(np.abs(v3))), 1e-30)
    if np.max(np.abs(num)) <= 1e-10 * gscale and np.max(np.abs(den)) <= 1e-10 * gscale:
        # runs already agree to roundoff: nothing left to extrapolate
        return v3, np.abs(den), float("nan")
    scale = np.maximum(np.abs(v3), 1e-30)
    valid = (num * den > 0) & (np.abs(den) > 1e-14 * scale)
    if np.count_nonzero(valid) < max(3, 0.2 * np.size(v1)):
        raise ExtrapolationDivergence("refinement differences do not shrink")
    ratios = num[valid] / den[valid]
    k = float(np.median(np.log2(ratios)))
    if not (k > 0.0):
        raise ExtrapolationDivergence("refinement order is not positive")
    k = min(max(k, 0.2), 4.0)
    f1 = 2.0 ** k - 1.0
    u12 = v2 + (v2 - v1) / f1
    u23 = v3 + (v3 - v2) / f1
    f2 = 2.0 ** (2.0 * k) - 1.0
    out = u23 + (u23 - u12) / f2
    return out, np.abs(u23 - u12), k


def shoot_infinite_m(params: ParamSet, config: ShootingConfig | None = None
                     ) -> RadialProfile:
    """Profile of the m = infinity problem (peak 1, singular flux at the
    origin for d >= 2)."""
    if params.m is not INFINITY:
        raise AdmissibilityError("m finite", "use shoot_finite_m")
    validate(params)
    cfg = config or _DEFAULT_CONFIG
    d, p, q = params.d, params.p, params.q
    compact = q < p - 1.0
    n = max(cfg.grid_points, 200)

    if d == 1:
        # autonomous: one exact integration from the origin, handed off to
        # the first-integral tail before the ODE's energy drift can matter
        rhs = _make_rhs(1, p, q, None)
        slope = (p / ((p - 1.0) * (q + 1.0))) ** (1.0 / p)
        z0 = slope ** (p - 1.0)
        u_floor = 1e-2
        r_stop = cfg.r_max or 48.0
        sol = _integrate(rhs, 0.0, r_stop, (1.0, -z0), cfg,
                         [_ev_floor(u_floor), _ev_touch(), _ev_turn()],
                         dense=True)
        ends = [ev[0] for ev in sol.t_events if ev.size > 0]
        r_end = min(ends) if ends else sol.t[-1]
        t = np.unique(np.concatenate([
            [0.0],
            np.linspace(0.0, r_end, int(0.7 * n))[1:],
            np.geomspace(max(r_end * 1e-6, 1e-9), r_end, n - int(0.7 * n)),
        ]))
        uu, ww = sol.sol(t)
        u_last = max(float(uu[-1]), 1e-300)
        ext_r, ext_u, ext_w, R_hat = _zero_energy_tail(
            float(t[-1]), u_last, p, q, None, compact)
        nodes = np.concatenate([t, ext_r])
        values = np.concatenate([uu, ext_u])
        flux = np.concatenate([ww, ext_w])
        meta = {"flux_at_origin": -z0}
        if compact:
            support = Finite(R_hat)
            meta["touchdown"] = R_hat
        elif q == p - 1.0:
            support = Infinite(Exponential((p - 1.0) ** (-1.0 / p)))
        else:
            support = Infinite(Algebraic(p / (q + 1.0 - p)))
    else:
        base = (cfg.r0_sequence or (1e-5, 5e-6, 2.5e-6))
        if len(base) != 3:
            raise ValueError("r0_sequence must have three entries")
        runs = [_exterior_run(params, float(r0), cfg) for r0 in base]
        r0b = float(base[0])
        r_stop = min(r for _, r, _ in runs)
        core = np.geomspace(r0b, r_stop, n)
        if compact:
            # the contact cusp u ~ (R - r)^{p/(p-1)} changes on a scale the
            # log grid cannot resolve; refine the final interval toward it
            tail_gap = r_stop - core[-5]
            cluster = r_stop - tail_gap * np.geomspace(1.0, 1e-7, 128)[1:]
            core = np.unique(np.concatenate([core, cluster]))
        vals = [sol.sol(core) for sol, _, _ in runs]
        u_r, u_err, khat = _richardson(vals[0][0], vals[1][0], vals[2][0])
        w_r, _, _ = _richardson(vals[0][1], vals[1][1], vals[2][1])
        u_r = np.minimum.accumulate(np.minimum(u_r, 1.0))

        # bridge to the origin: u = 1 - c r^kappa, flux -> constant; run it
        # deep enough that clamping to the peak below the first node is
        # already below roundoff of the profile
        kappa = (p - d) / (p - 1.0)
        c_fit = float(np.median((1.0 - u_r[:8]) / core[:8] ** kappa))
        w0 = float(w_r[0]) - core[0] ** d / d
        r_bot = min((1e-13 / max(c_fit, 1e-300)) ** (1.0 / kappa), r0b * 1e-4)
        n_b = max(25, int(12.0 * math.log10(r0b / r_bot)))
        rb = np.geomspace(r_bot, r0b, n_b, endpoint=False)
        ub = 1.0 - c_fit * rb ** kappa
        wb = w0 + rb ** d / d

        nodes = np.concatenate([rb, core])
        values = np.concatenate([ub, u_r])
        flux = np.concatenate([wb, w_r])
        Sd = unit_sphere_area(d)
        mass_err = Sd * float(np.trapezoid(
            core ** (d - 1) * (q + 1.0) * (vals[2][0] ** q if q > 0 else 1.0)
            * u_err, core))
        meta = {"khat": khat, "r0_sequence": tuple(base),
                "mass_err_extra": mass_err,
                "flux_at_origin": w0}

        if compact:
            u_last = max(float(values[-1]), 1e-300)
            ext_r, ext_u, ext_w, R_hat = _compact_extension(
                float(nodes[-1]), u_last, d, p, q, None)
            nodes = np.concatenate([nodes, ext_r])
            values = np.concatenate([values, ext_u])
            flux = np.concatenate([flux, ext_w])
            support = Finite(R_hat)
            meta["touchdown"] = R_hat
        elif q == p - 1.0:
            support = Infinite(Exponential((p - 1.0) ** (-1.0 / p)))
        else:
            support = Infinite(Algebraic(p / (q + 1.0 - p)))

    values = np.maximum(values, 0.0)
    nodes, values, flux = _dedupe(nodes, values, flux)
    grid = Grid(nodes, values, flux, meta=meta)
    prof = RadialProfile(form=grid, support=support, peak=1.0, params=params)

    resid = _flux_residual(prof)
    if resid > 1e-6:
        raise NonConvergence("flux self-consistency residual %.3e" % resid)
    meta["flux_residual"] = resid
    return prof


def _flux_residual(profile: RadialProfile) -> float:
    """Relative mismatch between |w(r_c)| and int_{r_c} r^{d-1} u^q dr, an
    exact identity for the exterior equation."""
    params = profile.params
    d, p, q = params.d, params.p, params.q
    g = profile.form
    # checkpoint where the flux is well-scaled; far out it sinks into the
    # integrator's absolute-error floor
    peak = float(np.max(g.values))
    i_mid = int(np.argmin(np.abs(g.values - 0.3 * peak)))
    i_mid = min(max(i_mid, 1), len(g.nodes) - 2)
    r_c = float(g.nodes[i_mid])
    lhs = abs(float(g.flux[i_mid]))

    interp = profile._grid_interp()

    def f(r):
        u = max(float(interp(r)), 0.0)
        if q == 0.0:
            uq = 1.0 if u > 0.0 else 0.0
        else:
            uq = u ** q
        return r ** (d - 1) * uq

    rhs_int, _ = quad(f, r_c, float(g.nodes[-1]), limit=300)
    if isinstance(profile.support, Infinite):
        decay = profile.support.decay
        r_T = float(g.nodes[-1])
        u_T = max(float(g.values[-1]), 0.0)
        if q > 0.0 and u_T > 0.0:
            if isinstance(decay, Algebraic):
                rq = decay.rate * q
                if rq > d:
                    rhs_int += u_T ** q * r_T ** d / (rq - d)
            else:
                lam = decay.rate * q
                x = lam * r_T
                rhs_int += u_T ** q * math.exp(
                    min(x + math.log(max(gammaincc(d, x), 1e-300)), 700.0)
                ) * math.gamma(d) / lam ** d
    return abs(lhs - rhs_int) / max(lhs, 1e-300)


# ---------------------------------------------------------------------------
# Norms
# ---------------------------------------------------------------------------

_GL_X, _GL_W = np.polynomial.legendre.leggauss(10)


def _composite_gl(nodes, f):
    a, b = nodes[:-1], nodes[1:]
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    pts = mid[:, None] + half[:, None] * _GL_X[None, :]
    vals = f(pts.ravel()).reshape(pts.shape)
    return float(np.sum(half[:, None] * _GL_W[None, :] * vals))


def _half_indices(n):
    idx = list(range(0, n, 2))
    if idx[-1] != n - 1:
        idx.append(n - 1)
    return np.array(idx)


def _flux_slopes(profile: RadialProfile) -> np.ndarray:
    """Exact w' at the grid nodes straight from the equation."""
    params = profile.params
    d, q = params.d, params.q
    m = None if params.m is INFINITY else params.m
    r, u = profile.form.nodes, profile.form.values
    if q == 0.0:
        uq = np.where(u > 0.0, 1.0, 0.0)
    else:
        uq = u ** q
    s = uq if m is None else uq - u ** m
    return r ** (d - 1) * s


def _tail_integral(kind, rate, scale_val, r_T, s, d):
    """int_{r_T}^inf r^{d-1} v(r)^s dr for v matched to scale_val at r_T and
    decaying at the declared rate."""
    if kind == "alg":
        e = rate * s
        if e <= d:
            raise NonIntegrable("algebraic tail: s * rate = %g <= d" % e)
        return scale_val ** s * r_T ** d / (e - d)
    lam = rate * s
    x = lam * r_T
    gi = gammaincc(d, x)
    if gi <= 0.0 or scale_val <= 0.0:
        return 0.0
    ln_t = (s * math.log(scale_val) + x + math.log(gi)
            + math.lgamma(d) - d * math.log(lam))
    return math.exp(min(ln_t, 700.0))


def radial_norm(profile: RadialProfile, s: float, d: int,
                with_error: bool = False):
    """S_d int r^{d-1} u(r)^s dr. Finite supports integrate exactly to R;
    infinite tails use substitution (closed forms) or rate-matched analytic
    tails (grids)."""
    if s <= 0.0:
        raise ValueError("s must be positive")
    Sd = unit_sphere_area(d)
    if isinstance(profile.support, Infinite):
        decay = profile.support.decay
        if isinstance(decay, Algebraic) and decay.rate * s <= d:
            raise NonIntegrable(
                "s * rate = %g <= d = %d" % (decay.rate * s, d))

    if profile.is_closed_form:
        u = profile.form.u
        if isinstance(profile.support, Finite):
            R = profile.support.R
            val, err = quad(lambda r: Sd * r ** (d - 1) * max(u(r), 0.0) ** s,
                            0.0, R, limit=300, epsabs=1e-14, epsrel=1e-11)
            return (val, abs(err)) if with_error else val
        decay = profile.support.decay
        if isinstance(decay, Algebraic):
            r1 = 1.0
            while u(r1) > 1e-4 * profile.peak and r1 < 1e8:
                r1 *= 2.0
            main, e1 = quad(lambda r: Sd * r ** (d - 1) * u(r) ** s,
                            0.0, r1, limit=300, epsabs=1e-14, epsrel=1e-11)

            def far(t):
                if t <= 0.0:
                    return 0.0
                return Sd * t ** (-d - 1) * u(1.0 / t) ** s

            tail, e2 = quad(far, 0.0, 1.0 / r1, limit=300,
                            epsabs=1e-14, epsrel=1e-11)
            return (main + tail, abs(e1) + abs(e2)) if with_error \
                else main + tail
        # exponential: accumulate fixed windows until negligible
        lam = decay.rate
        total, err, a = 0.0, 0.0, 0.0
        step = 10.0 / (lam * s) + 1.0
        for _ in range(60):
            seg, e = quad(lambda r: Sd * r ** (d - 1) * u(r) ** s,
                          a, a + step, limit=200, epsabs=1e-15, epsrel=1e-11)
            total += seg
            err += abs(e)
            a += step
            if seg < 1e-15 * max(total, 1e-300):
                break
        return (total, err + abs(seg)) if with_error else total

    g = profile.form
    interp = profile._grid_interp()
    slopes = profile._node_slopes()

    def f_from(itp):
        def f(r):
            uu = np.clip(itp(r), 0.0, None)
            return Sd * r ** (d - 1) * uu ** s
        return f

    I_main = _composite_gl(g.nodes, f_from(interp))
    ih = _half_indices(len(g.nodes))
    interp_h = CubicHermiteSpline(g.nodes[ih], g.values[ih], slopes[ih])
    I_half = _composite_gl(g.nodes[ih], f_from(interp_h))

    bridge = 0.0
    err = abs(I_main - I_half)
    if g.nodes[0] > 0.0:
        bridge = Sd * profile.peak ** s * g.nodes[0] ** d / d
        deficit = max(profile.peak - g.values[0], 0.0)
        err += s * deficit / max(profile.peak, 1e-300) * bridge

    tail = 0.0
    if isinstance(profile.support, Infinite):
        decay = profile.support.decay
        r_T = float(g.nodes[-1])
        u_T = max(float(g.values[-1]), 0.0)
        if u_T > 0.0:
            kind = "alg" if isinstance(decay, Algebraic) else "exp"
            tail = Sd * _tail_integral(kind, decay.rate, u_T, r_T, s, d)
            err += 0.1 * tail

    val = I_main + bridge + tail
    return (val, err) if with_error else val


def gradient_norm_p(profile: RadialProfile, p: float, d: int,
                    with_error: bool = False):
    """S_d int r^{d-1} |u'(r)|^p dr, flux-based on grids so the p-Laplacian
    degeneracy never enters."""
    Sd = unit_sphere_area(d)
    sing = (d - 1.0) / (p - 1.0)

    if profile.is_closed_form:
        du = profile.form.du
        if isinstance(profile.support, Finite):
            R = profile.support.R
            val, err = quad(lambda r: Sd * r ** (d - 1) * abs(du(r)) ** p,
                            0.0, R, limit=300, epsabs=1e-14, epsrel=1e-11)
            return (val, abs(err)) if with_error else val
        decay = profile.support.decay
        if isinstance(decay, Algebraic):
            if (decay.rate + 1.0) * p <= d:
                raise NonIntegrable("gradient tail not integrable")
            u = profile.form.u
            r1 = 1.0
            while u(r1) > 1e-4 * profile.peak and r1 < 1e8:
                r1 *= 2.0
            main, e1 = quad(lambda r: Sd * r ** (d - 1) * abs(du(r)) ** p,
                            0.0, r1, limit=300, epsabs=1e-14, epsrel=1e-11)

            def far(t):
                if t <= 0.0:
                    return 0.0
                return Sd * t ** (-d - 1) * abs(du(1.0 / t)) ** p

            tail, e2 = quad(far, 0.0, 1.0 / r1, limit=300,
                            epsabs=1e-14, epsrel=1e-11)
            return (main + tail, abs(e1) + abs(e2)) if with_error \
                else main + tail
        lam = decay.rate
        total, err, a = 0.0, 0.0, 0.0
        step = 10.0 / (lam * p) + 1.0
        for _ in range(60):
            seg, e = quad(lambda r: Sd * r ** (d - 1) * abs(du(r)) ** p,
                          a, a + step, limit=200, epsabs=1e-15, epsrel=1e-11)
            total += seg
            err += abs(e)
            a += step
            if seg < 1e-15 * max(total, 1e-300):
                break
        return (total, err + abs(seg)) if with_error else total

    g = profile.form
    pp = p / (p - 1.0)
    w_slopes = _flux_slopes(profile)
    w_interp = CubicHermiteSpline(g.nodes, g.flux, w_slopes)

    def f_from(itp):
        def f(r):
            w = np.abs(itp(r))
            return Sd * w ** pp * r ** (-sing)
        return f

    I_main = _composite_gl(g.nodes, f_from(w_interp))
    ih = _half_indices(len(g.nodes))
    w_half = CubicHermiteSpline(g.nodes[ih], g.flux[ih], w_slopes[ih])
    I_half = _composite_gl(g.nodes[ih], f_from(w_half))

    bridge = 0.0
    err = abs(I_main - I_half)
    if g.nodes[0] > 0.0 and d >= 2:
        # constant-flux stub on [0, r_b]
        w_b = abs(float(g.flux[0]))
        expo = 1.0 - sing
        bridge = Sd * w_b ** pp * g.nodes[0] ** expo / expo
        err += 0.01 * bridge

    tail = 0.0
    if isinstance(profile.support, Infinite):
        decay = profile.support.decay
        r_T = float(g.nodes[-1])
        w_T = abs(float(g.flux[-1]))
        v_T = (w_T / r_T ** (d - 1)) ** (1.0 / (p - 1.0))
        if v_T > 0.0:
            if isinstance(decay, Algebraic):
                tail = Sd * _tail_integral("alg", decay.rate + 1.0, v_T,
                                           r_T, p, d)
            else:
                tail = Sd * _tail_integral("exp", decay.rate, v_T, r_T, p, d)
            err += 0.1 * tail

    val = I_main + bridge + tail
    return (val, err) if with_error else val


# ---------------------------------------------------------------------------
# Best constant
# ---------------------------------------------------------------------------

def best_constant_numeric(params: ParamSet,
                          config: ShootingConfig | None = None
                          ) -> BestConstantResult:
    """Shoot, integrate the mass, and assemble C (and beta for finite m)."""
    exps = validate(params)
    d, p, q = params.d, params.p, params.q
    if params.m is INFINITY:
        prof = shoot_infinite_m(params, config)
        method = Method.EXTERIOR_QUAD
    else:
        prof = shoot_finite_m(params, config)
        method = Method.SHOOT_QUAD

    Mc, errM = radial_norm(prof, q + 1.0, d, with_error=True)
    meta = getattr(prof.form, "meta", None) or {}
    errM += meta.get("mass_err_extra", 0.0)

    C = constant_from_mass(params, Mc)
    beta = beta_from_mass(params, Mc)
    if beta is not None:
        gm = exps.gamma
        assert abs(C - beta ** (-1.0 / (gm + p / 2.0))) <= 1e-10 * C
    err_C = C * (exps.theta / d) * (errM / Mc)
    return BestConstantResult(theta=exps.theta, M_c=Mc, C=C, beta=beta,
                              method=method, err_estimate=err_C)
