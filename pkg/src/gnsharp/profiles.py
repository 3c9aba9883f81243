"""Radial profile containers: closed-form descriptors and sampled grids.

A RadialProfile is the common currency between the closed-form module, the
shooting solver, and the verification suite. Closed forms evaluate lazily
from a coefficient record; grids carry (nodes, values, flux) where
flux = r^{d-1} |u'|^{p-2} u', from which u' is recovered without
differencing the values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from .core import ParamSet


@dataclass(frozen=True)
class Finite:
    R: float


@dataclass(frozen=True)
class Algebraic:
    rate: float  # u ~ C r^{-rate}


@dataclass(frozen=True)
class Exponential:
    rate: float  # u ~ C e^{-rate r}


@dataclass(frozen=True)
class Infinite:
    decay: object  # Algebraic | Exponential


@dataclass(frozen=True)
class ClosedForm:
    """family tag + coefficient record + evaluators u(r), u'(r) (scalar)."""

    family: str
    coefficients: dict
    u: Callable[[float], float]
    du: Callable[[float], float]


@dataclass(frozen=True)
class Grid:
    nodes: np.ndarray   # strictly increasing, >= 0
    values: np.ndarray  # u at nodes, non-negative, non-increasing
    flux: np.ndarray    # r^{d-1} |u'|^{p-2} u' at nodes
    meta: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        n = np.asarray(self.nodes, dtype=float)
        v = np.asarray(self.values, dtype=float)
        w = np.asarray(self.flux, dtype=float)
        if not (n.ndim == 1 and n.shape == v.shape == w.shape):
            raise ValueError("grid arrays must be 1-d and equally sized")
        if not np.all(np.diff(n) > 0):
            raise ValueError("grid nodes must be strictly increasing")
        object.__setattr__(self, "nodes", n)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "flux", w)


@dataclass(frozen=True)
class RadialProfile:
    form: object          # ClosedForm | Grid
    support: object       # Finite | Infinite
    peak: float           # u(0)
    params: ParamSet
    # grid-only extras, filled by the solver
    _interp: object = field(default=None, repr=False, compare=False)
    _dinterp: object = field(default=None, repr=False, compare=False)

    @property
    def is_closed_form(self) -> bool:
        return isinstance(self.form, ClosedForm)

    @property
    def support_radius(self) -> float | None:
        return self.support.R if isinstance(self.support, Finite) else None

    def _node_slopes(self):
        g = self.form
        d, p = self.params.d, self.params.p
        r = g.nodes
        w = g.flux
        with np.errstate(divide="ignore", invalid="ignore"):
            du = np.sign(w) * (np.abs(w) / r ** (d - 1)) ** (1.0 / (p - 1.0))
        if d > 1:
            # r = 0 is a symmetry point only when the flux vanishes there
            du = np.where(r > 0, du, 0.0)
        return du

    def _grid_interp(self):
        # Hermite with flux-derived slopes: exact derivatives at the nodes,
        # fourth-order between them (Pchip on values alone is only third)
        if self._interp is None:
            g = self.form
            interp = CubicHermiteSpline(g.nodes, g.values,
                                        self._node_slopes(),
                                        extrapolate=False)
            object.__setattr__(self, "_interp", interp)
        return self._interp

    def _grid_dinterp(self):
        if self._dinterp is None:
            dinterp = self._grid_interp().derivative()
            object.__setattr__(self, "_dinterp", dinterp)
        return self._dinterp

    def u(self, r):
        """Profile value(s); accepts scalar or array, 0 beyond finite support."""
        if self.is_closed_form:
            f = self.form.u
            if np.ndim(r) == 0:
                return f(float(r))
            return np.array([f(float(ri)) for ri in np.ravel(r)]).reshape(np.shape(r))
        interp = self._grid_interp()
        rr = np.asarray(r, dtype=float)
        out = interp(np.clip(rr, self.form.nodes[0], self.form.nodes[-1]))
        out = np.asarray(out)
        if isinstance(self.support, Finite):
            out = np.where(rr >= self.support.R, 0.0, out)
        out = np.where(rr <= self.form.nodes[0], self._near_origin(rr), out)
        out = np.maximum(out, 0.0)
        return float(out) if np.ndim(r) == 0 else out

    def _near_origin(self, rr):
        # below the first grid node the profile is flat to leading order
        return np.full(np.shape(rr), self.peak)

    def du(self, r):
        """Radial derivative u'(r); exact for closed forms, flux-based on grids."""
        if self.is_closed_form:
            f = self.form.du
            if np.ndim(r) == 0:
                return f(float(r))
            return np.array([f(float(ri)) for ri in np.ravel(r)]).reshape(np.shape(r))
        dinterp = self._grid_dinterp()
        rr = np.asarray(r, dtype=float)
        out = np.asarray(dinterp(np.clip(rr, self.form.nodes[0], self.form.nodes[-1])))
        if isinstance(self.support, Finite):
            out = np.where(rr >= self.support.R, 0.0, out)
        return float(out) if np.ndim(r) == 0 else out

    def sample(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """(r, u) arrays with n points covering the support (or a few decay
        lengths of an infinite tail)."""
        if isinstance(self.support, Finite):
            r = np.linspace(0.0, self.support.R, n)
        else:
            decay = self.support.decay
            if isinstance(decay, Exponential):
                horizon = 30.0 / decay.rate
            else:
                # far enough for u to fall by ~1e6 under the declared rate
                horizon = min(max(50.0, 10.0 ** (6.0 / max(decay.rate, 0.5))), 1e6)
            if not self.is_closed_form:
                horizon = min(horizon, float(self.form.nodes[-1]))
            r = np.linspace(0.0, horizon, n)
        return r, self.u(r)


def assert_non_increasing(profile: RadialProfile, n: int = 200,
                          tol: float = 1e-9) -> None:
    r, u = profile.sample(n)
    drops = np.diff(u)
    if np.any(drops > tol * max(profile.peak, 1.0)):
        raise AssertionError("profile is not non-increasing")
