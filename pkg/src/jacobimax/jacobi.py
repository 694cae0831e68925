"""Orthonormal Jacobi polynomials and weighted squares in log-scaled arithmetic.

Conventions: the weight is w(x) = (1-x)^alpha (1+x)^beta on [-1, 1] with
alpha, beta > -1, and P_k always means the orthonormal polynomial, i.e. the
classical one divided by the square root of

    h_k = 2^(a+b+1) / (2k+a+b+1) * G(k+a+1) G(k+b+1) / (G(k+a+b+1) k!)

where G is the gamma function.  The weighted square over a window [d_m, d_M]
is

    M(x) = sqrt((x - d_m) (d_M - x)) * w(x) * P_k(x)^2,

the object whose extrema the rest of the package studies.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from . import _kernels
from .gammafn import log_beta, log_gamma
from .scaled import ScaledReal

__all__ = [
    "ALPHA_FLOOR",
    "Params",
    "Window",
    "WeightedValue",
    "log_norm",
    "eval_orthonormal",
    "eval_orthonormal_parts",
    "eval_orthonormal_deriv",
    "eval_orthonormal_deriv_parts",
    "value_at_zero_even",
    "weighted_M",
    "weighted_ln_parts",
    "ode_residual",
]

_LN2 = math.log(2.0)
_LN_FLOAT_MAX = math.log(np.finfo(float).max)

# smallest alpha for which the cube-root bounds below are claimed
ALPHA_FLOOR = (1.0 + math.sqrt(2.0)) / 4.0


@dataclass(frozen=True)
class Params:
    """Degree and weight exponents for one polynomial family member."""

    k: int
    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if isinstance(self.k, bool) or not isinstance(self.k, (int, np.integer)):
            raise ValueError("k must be an integer")
        object.__setattr__(self, "k", int(self.k))
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if not v > -1.0 or math.isinf(v):
                raise ValueError(f"{name} must be finite and > -1, got {v}")

    @property
    def is_ultraspherical(self) -> bool:
        return self.alpha == self.beta

    @property
    def thm1_applicable(self) -> bool:
        return self.k >= 6 and self.is_ultraspherical and self.alpha >= ALPHA_FLOOR

    @property
    def thm3_applicable(self) -> bool:
        return self.k >= 6 and self.alpha >= self.beta >= ALPHA_FLOOR

    @property
    def thm4_applicable(self) -> bool:
        return self.k >= 1 and self.is_ultraspherical and self.alpha >= 0.5


@dataclass(frozen=True)
class Window:
    """Closed interval [d_m, d_M] inside [-1, 1] over which M is formed."""

    d_m: float
    d_M: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "d_m", float(self.d_m))
        object.__setattr__(self, "d_M", float(self.d_M))
        if not (math.isfinite(self.d_m) and math.isfinite(self.d_M)):
            raise ValueError("window endpoints must be finite")
        if not (-1.0 <= self.d_m < self.d_M <= 1.0):
            raise ValueError(f"window must satisfy -1 <= d_m < d_M <= 1, got [{self.d_m}, {self.d_M}]")

    @classmethod
    def full(cls) -> "Window":
        return cls(-1.0, 1.0)

    @classmethod
    def symmetric(cls, d: float) -> "Window":
        if not 0.0 < d <= 1.0:
            raise ValueError(f"symmetric window needs 0 < d <= 1, got {d}")
        return cls(-d, d)

    @property
    def is_full(self) -> bool:
        return self.d_m == -1.0 and self.d_M == 1.0

    @property
    def is_symmetric(self) -> bool:
        return self.d_m == -self.d_M

    @property
    def width(self) -> float:
        return self.d_M - self.d_m


class WeightedValue(NamedTuple):
    value: float
    ln_value: float


@lru_cache(maxsize=4096)
def _recurrence_coeffs(k: int, alpha: float, beta: float):
    s = alpha + beta
    b = np.zeros(max(k, 1))
    a = np.ones(max(k, 1))
    if k > 0:
        b[0] = (beta - alpha) / (s + 2.0)
        a[0] = math.sqrt(4.0 * (1.0 + alpha) * (1.0 + beta) / ((s + 2.0) ** 2 * (s + 3.0)))
        if k > 1:
            n = np.arange(1.0, k)
            t = 2.0 * n + s
            b[1:] = (beta - alpha) * (beta + alpha) / (t * (t + 2.0))
            a[1:] = (2.0 / (t + 2.0)) * np.sqrt(
                (n + 1.0)
                * (n + 1.0 + alpha)
                * (n + 1.0 + beta)
                * (n + 1.0 + s)
                / ((t + 1.0) * (t + 3.0))
            )
    ln_p0 = -0.5 * ((s + 1.0) * _LN2 + log_beta(alpha + 1.0, beta + 1.0))
    b.setflags(write=False)
    a.setflags(write=False)
    return b, a, ln_p0


def log_norm(p: Params) -> float:
    """ln h_k, the log of the squared weighted L2 norm of the classical polynomial."""
    s = p.alpha + p.beta
    if p.k == 0:
        return (s + 1.0) * _LN2 + log_beta(p.alpha + 1.0, p.beta + 1.0)
    return (
        (s + 1.0) * _LN2
        - math.log(2.0 * p.k + s + 1.0)
        + log_gamma(p.k + p.alpha + 1.0)
        + log_gamma(p.k + p.beta + 1.0)
        - log_gamma(p.k + s + 1.0)
        - log_gamma(p.k + 1.0)
    )


def eval_orthonormal_parts(p: Params, x) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized evaluation as (significand, ln offset) arrays.

    P_k(x[i]) = val[i] * exp(off[i]); significands never overflow because the
    recurrence renormalizes by exact powers of two.
    """
    xs = np.ascontiguousarray(x, dtype=float).ravel()
    if xs.size and (np.min(xs) < -1.0 or np.max(xs) > 1.0 or not np.all(np.isfinite(xs))):
        raise ValueError("evaluation points must lie in [-1, 1]")
    b, a, ln_p0 = _recurrence_coeffs(p.k, p.alpha, p.beta)
    return _kernels.recurrence(xs, b, a, ln_p0, p.k)


def eval_orthonormal(p: Params, x: float) -> ScaledReal:
    """Orthonormal P_k(x) as a ScaledReal, overflow-free for any degree."""
    val, off = eval_orthonormal_parts(p, np.array([float(x)]))
    return ScaledReal.from_parts(float(val[0]), float(off[0]))


def _deriv_ln_prefactor(p: Params) -> float:
    # P_k' = c * Q_{k-1} with Q orthonormal for (alpha+1, beta+1)
    inner = Params(p.k - 1, p.alpha + 1.0, p.beta + 1.0)
    return math.log(0.5 * (p.k + p.alpha + p.beta + 1.0)) + 0.5 * (log_norm(inner) - log_norm(p))


def eval_orthonormal_deriv_parts(p: Params, x) -> tuple[np.ndarray, np.ndarray]:
    xs = np.ascontiguousarray(x, dtype=float).ravel()
    if p.k == 0:
        return np.zeros(xs.shape[0]), np.zeros(xs.shape[0])
    inner = Params(p.k - 1, p.alpha + 1.0, p.beta + 1.0)
    val, off = eval_orthonormal_parts(inner, xs)
    off = off + _deriv_ln_prefactor(p)
    return val, off


def eval_orthonormal_deriv(p: Params, x: float) -> ScaledReal:
    """d/dx of the orthonormal P_k at x."""
    val, off = eval_orthonormal_deriv_parts(p, np.array([float(x)]))
    return ScaledReal.from_parts(float(val[0]), float(off[0]))


def value_at_zero_even(k: int, alpha: float) -> ScaledReal:
    """Closed-form orthonormal P_k(0) for even k and equal exponents alpha."""
    if k % 2:
        raise ValueError("closed form at the origin needs even k")
    p = Params(k, alpha, alpha)
    half = k // 2
    ln_classical = (
        log_gamma(k + alpha + 1.0)
        - k * _LN2
        - log_gamma(half + 1.0)
        - log_gamma(half + alpha + 1.0)
    )
    sign = -1 if half % 2 else 1
    return ScaledReal(sign, ln_classical - 0.5 * log_norm(p))


def _exp_saturating(ln: float) -> float:
    if ln == -math.inf:
        return 0.0
    if ln > _LN_FLOAT_MAX:
        return math.inf
    return math.exp(ln)


def weighted_M(p: Params, x: float, w: Window) -> WeightedValue:
    """M(x) = sqrt((x-d_m)(d_M-x)) (1-x)^alpha (1+x)^beta P_k(x)^2.

    Returns (value, ln_value); value saturates to inf/0.0 when exp would
    overflow/underflow while ln_value stays exact.  At a window endpoint the
    one-sided limit is returned; a divergent limit raises ValueError.
    """
    x = float(x)
    if not (w.d_m <= x <= w.d_M):
        raise ValueError(f"x = {x} outside window [{w.d_m}, {w.d_M}]")
    if x == w.d_M:
        if x == 1.0:
            net = p.alpha + 0.5
            if net > 0.0:
                return WeightedValue(0.0, -math.inf)
            if net < 0.0:
                raise ValueError("M diverges at x = 1 for alpha < -1/2")
            y = eval_orthonormal(p, 1.0)
            ln = 0.5 * math.log(1.0 - w.d_m) + p.beta * _LN2 + 2.0 * y.ln_mag
            return WeightedValue(_exp_saturating(ln), ln)
        return WeightedValue(0.0, -math.inf)
    if x == w.d_m:
        if x == -1.0:
            net = p.beta + 0.5
            if net > 0.0:
                return WeightedValue(0.0, -math.inf)
            if net < 0.0:
                raise ValueError("M diverges at x = -1 for beta < -1/2")
            y = eval_orthonormal(p, -1.0)
            ln = 0.5 * math.log(w.d_M + 1.0) + p.alpha * _LN2 + 2.0 * y.ln_mag
            return WeightedValue(_exp_saturating(ln), ln)
        return WeightedValue(0.0, -math.inf)
    y = eval_orthonormal(p, x)
    if y.is_zero():
        return WeightedValue(0.0, -math.inf)
    ln = (
        0.5 * (math.log(x - w.d_m) + math.log(w.d_M - x))
        + p.alpha * math.log1p(-x)
        + p.beta * math.log1p(x)
        + 2.0 * y.ln_mag
    )
    return WeightedValue(_exp_saturating(ln), ln)


def weighted_ln_parts(p: Params, x, w: Window) -> np.ndarray:
    """ln M at strictly interior points, vectorized; -inf where P_k vanishes."""
    xs = np.ascontiguousarray(x, dtype=float).ravel()
    if xs.size and (np.min(xs) <= w.d_m or np.max(xs) >= w.d_M):
        raise ValueError("points must lie strictly inside the window")
    val, off = eval_orthonormal_parts(p, xs)
    with np.errstate(divide="ignore"):
        ln_p = np.log(np.abs(val)) + off
    return (
        0.5 * (np.log(xs - w.d_m) + np.log(w.d_M - xs))
        + p.alpha * np.log1p(-xs)
        + p.beta * np.log1p(xs)
        + 2.0 * ln_p
    )


def ode_residual(p: Params, x: float) -> float:
    """Relative residual of (1-x^2) y'' - ((a+b+2)x + a-b) y' + k(k+a+b+1) y = 0.

    The second derivative comes from chaining the first-derivative reduction
    twice, so this cross-checks the evaluation and derivative routes at once.
    """
    x = float(x)
    if not -1.0 < x < 1.0:
        raise ValueError("residual is defined for -1 < x < 1")
    s = p.alpha + p.beta
    y = eval_orthonormal(p, x)
    yp = eval_orthonormal_deriv(p, x)
    if p.k >= 2:
        c1 = _deriv_ln_prefactor(p)
        c2 = _deriv_ln_prefactor(Params(p.k - 1, p.alpha + 1.0, p.beta + 1.0))
        ypp = eval_orthonormal(Params(p.k - 2, p.alpha + 2.0, p.beta + 2.0), x) * ScaledReal(1, c1 + c2)
    else:
        ypp = ScaledReal.zero()
    t1 = ypp * (1.0 - x * x)
    t2 = yp * (-((s + 2.0) * x + (p.alpha - p.beta)))
    t3 = y * (p.k * (p.k + s + 1.0))
    num = (t1 + t2) + t3
    den = t3.abs() + yp.abs() + ScaledReal(1, 0.0)
    if num.is_zero():
        return 0.0
    return _exp_saturating(num.ln_mag - den.ln_mag)
