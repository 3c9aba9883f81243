"""Gamma / Beta kernel used by all closed-form profile and constant formulas.

The incomplete Beta function here is UNNORMALIZED,

    B(x; a, b) = integral_0^x t^{a-1} (1-t)^{b-1} dt,

and b may be zero or negative (then the integral only exists for x < 1).
The closed-form profiles need exactly this extension: their second Beta
parameter is negative in the whole q > p-1 regime.
"""

from __future__ import annotations

import math
from functools import lru_cache

from scipy import special as _sp
from scipy import integrate as _integrate


class DomainError(ValueError):
    pass


def ln_gamma(x: float) -> float:
    if not x > 0:
        raise DomainError(f"ln_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def beta_complete(a: float, b: float) -> float:
    if not (a > 0 and b > 0):
        raise DomainError(f"beta_complete requires a,b > 0, got a={a}, b={b}")
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def _binom_series_tail(a: float, b: float, u_lo: float, u_hi: float) -> float:
    """integral_{u_lo}^{u_hi} (1-u)^{a-1} u^{b-1} du for 0 <= u_lo <= u_hi <= 1/2.

    Expands (1-u)^{a-1} = sum_k c_k u^k with c_0 = 1,
    c_{k+1} = c_k (k - (a-1)) / (k+1), and integrates each power of u
    analytically. On [0, 1/2] the terms shrink at least geometrically.
    A k with b + k = 0 integrates to a logarithm.
    """
    total = 0.0
    c = 1.0
    k = 0
    while True:
        e = b + k
        if e == 0.0:
            term = c * (math.log(u_hi) - math.log(u_lo))
        else:
            term = c * (u_hi ** e - u_lo ** e) / e
        total += term
        if k > 4 and abs(term) <= 1e-17 * abs(total):
            return total
        if k > 500:
            raise ArithmeticError("beta tail series failed to converge")
        c = c * (k - (a - 1.0)) / (k + 1.0)
        k += 1


def _beta_nonpositive_b(x: float, a: float, b: float) -> float:
    # Split at t = 1/2: the left piece has only the t^{a-1} endpoint factor
    # (handled by weighted quadrature), the right piece is pushed through
    # u = 1-t where (1-t)^{b-1} = u^{b-1} integrates in closed form against
    # the binomial series of (1-u)^{a-1}. No quadrature ever crosses t=1.
    cut = min(x, 0.5)
    left, _ = _integrate.quad(
        lambda t: (1.0 - t) ** (b - 1.0), 0.0, cut,
        weight="alg", wvar=(a - 1.0, 0.0), epsabs=1e-14, epsrel=1e-13,
        limit=200)
    if x <= 0.5:
        return left
    return left + _binom_series_tail(a, b, 1.0 - x, 0.5)


def beta_incomplete(x: float, a: float, b: float) -> float:
    """Unnormalized incomplete Beta B(x; a, b), b of any sign.

    For b <= 0 the integrand is non-integrable at t=1, so x must be < 1.
    """
    if not a > 0:
        raise DomainError(f"beta_incomplete requires a > 0, got a={a}")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"beta_incomplete requires x in [0,1], got x={x}")
    if b <= 0 and x == 1.0:
        raise DomainError("beta_incomplete diverges at x=1 for b <= 0")
    if x == 0.0:
        return 0.0
    if b > 0:
        if x == 1.0:
            return beta_complete(a, b)
        return float(_sp.betainc(a, b, x)) * beta_complete(a, b)
    return _beta_nonpositive_b(x, a, b)


def _beta_derivative(x: float, a: float, b: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return math.inf
    # log form: x**(a-1) alone can overflow for denormal x with a < 1
    t = (a - 1.0) * math.log(x) + (b - 1.0) * math.log1p(-x)
    return math.exp(t) if t < 709.0 else math.inf


@lru_cache(maxsize=256)
def _beta_at_half(a: float, b: float) -> float:
    return beta_incomplete(0.5, a, b)


def beta_incomplete_inverse_complement(y: float, a: float, b: float) -> float:
    """Solve B(1 - w; a, b) = y for w, accurate when x = 1 - w is near 1.

    The plain inverse cannot resolve 1 - x below machine epsilon; profile
    tails live exactly there. b > 0 reflects onto the plain inverse. b <= 0
    bisects g(s) = B(1 - e^s; a, b) - y in s = log w, where the forward
    value comes from the series in w and never forms 1 - w. Returns 0.0
    when the true w underflows double precision.
    """
    if not a > 0:
        raise DomainError(f"inverse requires a > 0, got a={a}")
    if y < 0:
        raise DomainError(f"inverse requires y >= 0, got y={y}")
    if b > 0:
        total = beta_complete(a, b)
        if y >= total:
            return 0.0
        return beta_incomplete_inverse(total - y, b, a)

    half = _beta_at_half(a, b)
    if y <= half:
        return 1.0 - beta_incomplete_inverse(y, a, b)

    def g(s: float) -> float:
        try:
            return half + _binom_series_tail(a, b, math.exp(s), 0.5) - y
        except OverflowError:
            return math.inf

    # g decreases in s; g(log 1/2) = half - y < 0 already holds here
    s_hi = math.log(0.5)
    if b < 0:
        s_lo = min(s_hi, math.log(-b * y) / b) - 4.0
    else:
        s_lo = s_hi - (y - half) - 4.0
    floor_s = -744.0
    s_lo = max(floor_s, s_lo)
    span = 8.0
    while g(s_lo) < 0.0:
        if s_lo <= floor_s:
            return 0.0
        s_lo = max(floor_s, s_lo - span)
        span *= 2.0
    for _ in range(220):
        if s_hi - s_lo <= 1e-15 * max(1.0, -s_lo):
            break
        s_mid = 0.5 * (s_lo + s_hi)
        if g(s_mid) >= 0.0:
            s_lo = s_mid
        else:
            s_hi = s_mid
    return math.exp(0.5 * (s_lo + s_hi))


def beta_incomplete_inverse(y: float, a: float, b: float) -> float:
    """Solve B(x; a, b) = y for x in [0, 1].

    b > 0 needs y in [0, B(a,b)]; b <= 0 accepts any y >= 0 (the forward map
    covers [0, inf) on [0, 1)). Bracketed bisection seeded by the regularized
    inverse where available, polished by Newton with the exact derivative.
    """
    if not a > 0:
        raise DomainError(f"inverse requires a > 0, got a={a}")
    if y < 0:
        raise DomainError(f"inverse requires y >= 0, got y={y}")
    if y == 0.0:
        return 0.0

    if b > 0:
        total = beta_complete(a, b)
        if y > total * (1.0 + 1e-12):
            raise DomainError(f"y={y} exceeds complete Beta {total}")
        if y >= total:
            return 1.0
        x = float(_sp.betaincinv(a, b, y / total))
        lo, hi = 0.0, 1.0
    else:
        if y > _beta_at_half(a, b):
            # solved in the complement variable; 1 - w may round to 1.0,
            # which is then the nearest representable answer
            return 1.0 - beta_incomplete_inverse_complement(y, a, b)
        lo, hi = 0.0, 0.5
        x = 0.25

    fx = beta_incomplete(x, a, b) - y
    for _ in range(200):
        if fx > 0:
            hi = x
        else:
            lo = x
        if abs(fx) <= 1e-15 * max(y, 1.0):
            break
        d = _beta_derivative(x, a, b)
        x_new = x - fx / d if math.isfinite(d) and d > 0 else 0.5 * (lo + hi)
        if not (lo < x_new < hi):
            x_new = 0.5 * (lo + hi)
        if x_new == x:
            break
        x = x_new
        fx = beta_incomplete(x, a, b) - y
    return x


def _beta_regularized(x: float, a: float, b: float) -> float:
    # internal accessor, b > 0 only
    return float(_sp.betainc(a, b, x))
