"""Locate every local extremum of the weighted square M over a window.

Interior maxima of M = f^2 are the zeros of f' and interior minima are the
zeros of f, where f = u y is the transformed solution from the envelope
frame.  Both sign patterns are sampled on an angle-uniform grid, cross-checked
at four times the density, bracketed, and refined by bisection.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .envelope import Geometry
from .jacobi import Params, Window, eval_orthonormal_deriv_parts, eval_orthonormal_parts, weighted_M, weighted_ln_parts

__all__ = [
    "ExtremumRecord",
    "GridTooCoarseError",
    "StructureReport",
    "scan_extrema",
    "global_max",
    "structure_checks",
]

_LN2 = math.log(2.0)
_LN_FLOAT_MAX = math.log(np.finfo(float).max)


class GridTooCoarseError(RuntimeError):
    """Raised when refining the scan grid changes the number of sign changes."""


@dataclass(frozen=True)
class ExtremumRecord:
    """One interior critical point of M, left-to-right index order."""

    index: int
    x: float
    M: float
    ln_M: float
    kind: str  # "max" or "min"


def _band_halfwidth(p: Params) -> float:
    # oscillation band in x: all sign activity of y and f' lives well inside
    # 1.5 cos(tau - |omega|) + 2/(k+1); beyond it both are monotone
    s = 2.0 * p.k + p.alpha + p.beta + 1.0
    sin_tau = (p.alpha + p.beta + 1.0) / s
    if not 0.0 <= sin_tau <= 1.0:
        return 1.0
    sin_om = max(-1.0, min(1.0, (p.alpha - p.beta) / s))
    inner = max(math.asin(sin_tau) - abs(math.asin(sin_om)), 0.0)
    return min(1.0, 1.5 * math.cos(inner) + 2.0 / (p.k + 1.0))


def _scan_points(p: Params, w: Window, n: int) -> np.ndarray:
    lo_t = math.acos(w.d_M)
    hi_t = math.acos(w.d_m)
    thetas = [np.linspace(lo_t, hi_t, n + 2)[1:-1]]
    bx = _band_halfwidth(p)
    b_lo = math.acos(min(bx, w.d_M))
    b_hi = math.acos(max(-bx, w.d_m))
    if (b_lo > lo_t or b_hi < hi_t) and b_lo < b_hi:
        thetas.append(np.linspace(b_lo, b_hi, n + 2)[1:-1])
    xs = np.unique(np.cos(np.concatenate(thetas)))
    return xs[(xs > w.d_m) & (xs < w.d_M)]


def _y_signs(p: Params, xs: np.ndarray) -> np.ndarray:
    val, _ = eval_orthonormal_parts(p, xs)
    return np.sign(val)


def _q_signs(p: Params, w: Window, xs: np.ndarray) -> np.ndarray:
    # q = y' + y * (ln u)'; shares interior zeros with the slope of sqrt(M)
    g = (
        0.25 * (1.0 / (xs - w.d_m) - 1.0 / (w.d_M - xs))
        - 0.5 * p.alpha / (1.0 - xs)
        + 0.5 * p.beta / (1.0 + xs)
    )
    yv, yo = eval_orthonormal_parts(p, xs)
    if p.k == 0:
        return np.sign(yv * g)
    dv, do = eval_orthonormal_deriv_parts(p, xs)
    om = np.maximum(do, yo)
    return np.sign(dv * np.exp(do - om) + yv * g * np.exp(yo - om))


def _root_structure(xs: np.ndarray, s: np.ndarray):
    """Node-exact roots plus brackets between adjacent opposite-sign nodes."""
    exact = xs[s == 0.0]
    nz = np.flatnonzero(s != 0.0)
    if nz.size < 2:
        return exact, np.empty(0), np.empty(0), np.empty(0)
    left = nz[:-1]
    right = nz[1:]
    flip = (right == left + 1) & (s[left] * s[right] < 0.0)
    return exact, xs[left[flip]], xs[right[flip]], s[left[flip]]


def _count_roots(xs: np.ndarray, s: np.ndarray) -> int:
    exact, lo, _, _ = _root_structure(xs, s)
    return exact.size + lo.size


def _bisect(signfn: Callable[[np.ndarray], np.ndarray], lo, hi, s_lo, tol: float) -> np.ndarray:
    if lo.size == 0:
        return np.empty(0)
    lo = lo.copy()
    hi = hi.copy()
    for _ in range(200):
        if np.max(hi - lo) <= tol:
            break
        mid = 0.5 * (lo + hi)
        sm = signfn(mid)
        same = sm == s_lo
        hit = sm == 0.0
        lo = np.where(same, mid, lo)
        hi = np.where(same, hi, mid)
        lo = np.where(hit, mid, lo)
        hi = np.where(hit, mid, hi)
    return 0.5 * (lo + hi)


def scan_extrema(
    p: Params, w: Window, nodes_per_degree: int = 12, refine_tol: float = 1e-13
) -> list[ExtremumRecord]:
    """All interior critical points of M on the window, sorted by x.

    Samples sign patterns on a theta-uniform grid of max(64, nodes_per_degree
    * (k+2)) interior nodes (plus a denser pass over the oscillation band when
    the weight pushes all activity toward the center), verifies the root count
    against a 4x-density pass, and bisects each bracket to refine_tol.
    """
    if nodes_per_degree < 4:
        raise ValueError("nodes_per_degree must be at least 4")
    n = max(64, nodes_per_degree * (p.k + 2))
    xs = _scan_points(p, w, n)
    xs4 = _scan_points(p, w, 4 * n)
    sy, sq = _y_signs(p, xs), _q_signs(p, w, xs)
    sy4, sq4 = _y_signs(p, xs4), _q_signs(p, w, xs4)
    if _count_roots(xs, sy) != _count_roots(xs4, sy4) or _count_roots(xs, sq) != _count_roots(xs4, sq4):
        raise GridTooCoarseError(
            f"sign-change count changed under 4x refinement for k={p.k}, "
            f"alpha={p.alpha}, beta={p.beta}; increase nodes_per_degree"
        )
    ye, ylo, yhi, ysl = _root_structure(xs4, sy4)
    qe, qlo, qhi, qsl = _root_structure(xs4, sq4)
    y_roots = np.concatenate([ye, _bisect(lambda z: _y_signs(p, z), ylo, yhi, ysl, refine_tol)])
    q_roots = np.concatenate([qe, _bisect(lambda z: _q_signs(p, w, z), qlo, qhi, qsl, refine_tol)])
    roots = np.sort(np.concatenate([y_roots, q_roots]))
    if roots.size == 0:
        return []

    edges = np.concatenate([[w.d_m], roots, [w.d_M]])
    gap = np.minimum(np.diff(edges)[:-1], np.diff(edges)[1:])
    h = np.minimum(1e-6 * w.width, 0.25 * gap)
    ln_c = weighted_ln_parts(p, roots, w)
    ln_m = weighted_ln_parts(p, roots - h, w)
    ln_p = weighted_ln_parts(p, roots + h, w)
    # sign of M(x-h) + M(x+h) - 2 M(x) decides the kind, computed in log space
    top = np.maximum(ln_m, ln_p)
    side = top + np.log(np.exp(ln_m - top) + np.exp(ln_p - top))
    is_min = side > _LN2 + ln_c

    records = []
    for i in range(roots.size):
        ln_v = float(ln_c[i])
        val = 0.0 if ln_v == -math.inf else (math.inf if ln_v > _LN_FLOAT_MAX else math.exp(ln_v))
        records.append(
            ExtremumRecord(
                index=i,
                x=float(roots[i]),
                M=val,
                ln_M=ln_v,
                kind="min" if is_min[i] else "max",
            )
        )
    for a, b in zip(records, records[1:]):
        if a.kind == b.kind:
            raise GridTooCoarseError(
                f"non-alternating extrema near x={a.x:.6g} and x={b.x:.6g} for "
                f"k={p.k}, alpha={p.alpha}, beta={p.beta}"
            )
    return records


def _endpoint_record(p: Params, w: Window, side: str) -> ExtremumRecord:
    x = w.d_M if side == "right" else w.d_m
    if x == 1.0:
        net = p.alpha + 0.5
    elif x == -1.0:
        net = p.beta + 0.5
    else:
        net = 1.0  # sqrt factor vanishes, weight finite
    if net < 0.0:
        return ExtremumRecord(index=-1, x=x, M=math.inf, ln_M=math.inf, kind="max")
    val = weighted_M(p, x, w)
    return ExtremumRecord(index=-1, x=x, M=val.value, ln_M=val.ln_value, kind="max")


def global_max(
    p: Params, w: Window, nodes_per_degree: int = 12, refine_tol: float = 1e-13
) -> ExtremumRecord:
    """The record with the largest M among interior maxima and endpoint limits.

    Ties break toward smaller |x|.  Endpoint candidates carry index -1 and
    their one-sided limit value (0, finite, or inf per the weight exponents).
    """
    records = scan_extrema(p, w, nodes_per_degree, refine_tol)
    cands = [r for r in records if r.kind == "max"]
    cands.append(_endpoint_record(p, w, "left"))
    cands.append(_endpoint_record(p, w, "right"))
    return max(cands, key=lambda r: (r.ln_M, -abs(r.x), r.x))


@dataclass(frozen=True)
class StructureReport:
    """Raw structural verdicts; entries are None when geometry lacks the input.

    Verdicts are plain comparisons on the records given; deciding whether a
    claim's hypotheses hold for the parameters is the caller's job.
    """

    unimodal_about_x0: Optional[bool]
    x0_split: Optional[tuple[int, int]]
    eta_containment: Optional[bool]
    eta_margin: Optional[float]
    delta_containment: Optional[bool]
    delta_margin: Optional[float]
    nonneg_maxima_decreasing: bool
    min_consecutive_drop: Optional[float]


def structure_checks(records: list[ExtremumRecord], geom: Geometry) -> StructureReport:
    """Compare extremum records against the closed-form landmarks in geom.

    Checks, each skipped (None) when its landmark is absent: maxima heights
    fall strictly before x0 and rise strictly after it; all extrema lie in
    (eta_minus, eta_plus); all maxima satisfy |x| < delta.  The decreasing
    check on nonnegative-x maxima is always computed.
    """
    maxima = [r for r in records if r.kind == "max"]

    unimodal = None
    split = None
    if geom.x0 is not None and maxima:
        left = [r for r in maxima if r.x < geom.x0]
        right = [r for r in maxima if r.x > geom.x0]
        ok = all(a.ln_M > b.ln_M for a, b in zip(left, left[1:]))
        ok = ok and all(a.ln_M < b.ln_M for a, b in zip(right, right[1:]))
        unimodal = ok
        split = (len(left), len(right))

    eta_ok = None
    eta_margin = None
    if geom.eta_minus is not None and geom.eta_plus is not None and records:
        lo = min(r.x for r in records)
        hi = max(r.x for r in records)
        eta_margin = min(geom.eta_plus - hi, lo - geom.eta_minus)
        eta_ok = eta_margin > 0.0

    delta_ok = None
    delta_margin = None
    if geom.delta is not None and maxima:
        delta_margin = geom.delta - max(abs(r.x) for r in maxima)
        delta_ok = delta_margin > 0.0

    nonneg = [r for r in maxima if r.x > -1e-12]
    drops = [a.ln_M - b.ln_M for a, b in zip(nonneg, nonneg[1:])]
    decreasing = all(d > 0.0 for d in drops)
    min_drop = min(drops) if drops else None

    return StructureReport(
        unimodal_about_x0=unimodal,
        x0_split=split,
        eta_containment=eta_ok,
        eta_margin=eta_margin,
        delta_containment=delta_ok,
        delta_margin=delta_margin,
        nonneg_maxima_decreasing=decreasing,
        min_consecutive_drop=min_drop,
    )
