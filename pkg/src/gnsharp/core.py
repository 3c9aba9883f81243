"""Parameter validation, regime classification, and shared exponent arithmetic.

The inequality under study is

    ||u||_{m+1} <= C ||u||_{q+1}^{1-theta} ||grad u||_p^theta

on R^d, with two admissible parameter families: finite m and m = infinity.
Everything downstream (closed forms, shooting, verification) consumes the
ParamSet / Exponents pair built here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class _Infinity:
    """Sentinel for m = infinity. A distinct variant, not a large float."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())

    # Comparisons against reals behave like +inf so generic code can sort.
    def __gt__(self, other):
        return True

    def __lt__(self, other):
        return False

    def __ge__(self, other):
        return True

    def __le__(self, other):
        return other is self

    def __float__(self):
        return math.inf


INFINITY = _Infinity()


class AdmissibilityError(ValueError):
    """Raised when (d, p, q, m) falls outside the admissible ranges.

    The message names the violated constraint, e.g. "m >= sigma".
    """

    def __init__(self, constraint: str, detail: str = ""):
        self.constraint = constraint
        msg = constraint if not detail else f"{constraint}: {detail}"
        super().__init__(msg)


class Regime(Enum):
    COMPACT_SUPPORT = "compact_support"  # q < p-1
    CRITICAL = "critical"                # q = p-1
    POSITIVE = "positive"                # q > p-1


def _normalize_m(m):
    if m is INFINITY:
        return INFINITY
    if isinstance(m, str):
        raise TypeError("m must be a real number or INFINITY")
    m = float(m)
    if math.isinf(m):
        if m < 0:
            raise AdmissibilityError("m = -inf")
        return INFINITY
    if math.isnan(m):
        raise AdmissibilityError("m is NaN")
    return m


@dataclass(frozen=True)
class ParamSet:
    """The tuple (d, p, q, m).

    d: positive integer dimension; p > 1 gradient exponent; q >= 0 low norm
    exponent (the norm is L^{q+1}); m finite real or INFINITY (norm L^{m+1}).
    Field-level constraints are enforced here; the range constraints coupling
    the four values live in validate().
    """

    d: int
    p: float
    q: float
    m: object  # float or INFINITY

    def __post_init__(self):
        if not isinstance(self.d, int) or isinstance(self.d, bool):
            raise TypeError("d must be an integer")
        if self.d < 1:
            raise AdmissibilityError("d < 1")
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "q", float(self.q))
        object.__setattr__(self, "m", _normalize_m(self.m))
        if not self.p > 1:
            raise AdmissibilityError("p <= 1")
        if math.isinf(self.p) or math.isnan(self.p):
            raise AdmissibilityError("p not finite")
        if not self.q >= 0:
            raise AdmissibilityError("q < 0")
        if math.isinf(self.q) or math.isnan(self.q):
            raise AdmissibilityError("q not finite")

    @property
    def m_is_infinite(self) -> bool:
        return self.m is INFINITY

    @property
    def regime(self) -> Regime:
        # Pure function of (p, q); exact comparison by design, the critical
        # regime must be requested bit-exactly.
        if self.q < self.p - 1:
            return Regime.COMPACT_SUPPORT
        if self.q == self.p - 1:
            return Regime.CRITICAL
        return Regime.POSITIVE


@dataclass(frozen=True)
class Exponents:
    """Derived scalars for a validated ParamSet.

    gamma, ell, eta1 are None for m = INFINITY (they involve m+1); ell is
    additionally None for d != 1.
    """

    theta: float
    sigma: object          # float or INFINITY
    gamma: float | None
    ell: float | None
    eta1: float | None
    eta2: float
    S_d: float
    omega_d: float


def unit_ball_volume(d: int) -> float:
    return math.pi ** (d / 2.0) / math.gamma(d / 2.0 + 1.0)


def unit_sphere_area(d: int) -> float:
    return d * unit_ball_volume(d)


def sigma_exponent(d: int, p: float):
    """Upper admissibility limit for m: ((p-1)d+p)/(d-p) if p<d else INFINITY."""
    if p < d:
        return ((p - 1.0) * d + p) / (d - p)
    return INFINITY


def theta_exponent(d: int, p: float, q: float, m) -> float:
    if m is INFINITY:
        return p * d / (p * d + (q + 1.0) * (p - d))
    return (p * d * (m - q)
            / ((m + 1.0) * (d * (p - q - 1.0) + p * (q + 1.0))))


def validate(params: ParamSet) -> Exponents:
    """Check the range constraints and return all derived exponents.

    Raises AdmissibilityError naming the violated constraint. Strict
    inequalities are checked exactly; boundary parameters are rejected.
    """
    d, p, q, m = params.d, params.p, params.q, params.m

    if m is INFINITY:
        if not p > d:
            raise AdmissibilityError(
                "p <= d with m=inf", f"p={p}, d={d}")
        sigma = sigma_exponent(d, p)  # INFINITY here since p > d
        theta = theta_exponent(d, p, q, m)
        eta2 = (p - 1.0) * (q + 1.0) + p
        return Exponents(theta=theta, sigma=sigma, gamma=None, ell=None,
                         eta1=None, eta2=eta2,
                         S_d=unit_sphere_area(d), omega_d=unit_ball_volume(d))

    p_floor = max(1.0, 2.0 * d / (d + 2.0))
    if not p > p_floor:
        raise AdmissibilityError(
            "p <= max(1, 2d/(d+2))", f"p={p}, floor={p_floor}")
    sigma = sigma_exponent(d, p)
    if sigma is not INFINITY:
        if not q < sigma - 1.0:
            raise AdmissibilityError("q >= sigma-1", f"q={q}, sigma={sigma}")
        if not m < sigma:
            raise AdmissibilityError("m >= sigma", f"m={m}, sigma={sigma}")
    if not m > q:
        raise AdmissibilityError("m <= q", f"m={m}, q={q}")

    theta = theta_exponent(d, p, q, m)
    gamma = p / theta - p / 2.0
    eta1 = (p - 1.0) * (m + 1.0) + p
    eta2 = (p - 1.0) * (q + 1.0) + p
    ell = (m - q) / ((m + 1.0) * eta2) if d == 1 else None
    return Exponents(theta=theta, sigma=sigma, gamma=gamma, ell=ell,
                     eta1=eta1, eta2=eta2,
                     S_d=unit_sphere_area(d), omega_d=unit_ball_volume(d))


def alpha_peak(params: ParamSet) -> float:
    """Peak value alpha_c = ((m+1)/(q+1))^{1/(m-q)} of the extremal profile.

    This is the value where u^{m+1}/(m+1) = u^{q+1}/(q+1); in d=1 the profile
    starts exactly here, in d >= 2 strictly above it.
    """
    if params.m is INFINITY:
        raise AdmissibilityError("m = inf in alpha_peak", "finite m required")
    validate(params)
    m, q = params.m, params.q
    return ((m + 1.0) / (q + 1.0)) ** (1.0 / (m - q))
