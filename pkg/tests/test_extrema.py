"""Extremum scanning: counts, locations, refinement stability, structure verdicts."""

import math

import numpy as np
import pytest

from jacobimax.envelope import Geometry, geometry, sonin_S
from jacobimax.extrema import (
    ExtremumRecord,
    GridTooCoarseError,
    _endpoint_record,
    global_max,
    scan_extrema,
    structure_checks,
)
from jacobimax.jacobi import Params, Window


def test_chebyshev_equioscillation():
    # flat weight exponents leave k-1 interior maxima; endpoints carry the
    # same height, so the global maximum is 2/pi for every degree
    w = Window.full()
    for k in range(1, 9):
        recs = scan_extrema(Params(k, -0.5, -0.5), w)
        maxima = [r for r in recs if r.kind == "max"]
        assert len(maxima) == k - 1
        for r in maxima:
            np.testing.assert_allclose(r.M, 2.0 / math.pi, rtol=1e-12)
        gm = global_max(Params(k, -0.5, -0.5), w)
        np.testing.assert_allclose(gm.M, 2.0 / math.pi, rtol=1e-12)


def test_legendre_degree_one_closed_form():
    recs = scan_extrema(Params(1, 0.0, 0.0), Window.full())
    maxima = [r for r in recs if r.kind == "max"]
    assert len(maxima) == 2
    np.testing.assert_allclose(sorted(abs(r.x) for r in maxima), [math.sqrt(2.0 / 3.0)] * 2, rtol=1e-12)
    for r in maxima:
        np.testing.assert_allclose(r.M, 1.0 / math.sqrt(3.0), rtol=1e-12)


def test_interior_extremum_count():
    # 2k+1 critical points of the weighted square when both exponents exceed -1/2
    rng = np.random.default_rng(61)
    for k in [1, 2, 5, 13, 34, 60]:
        alpha = float(rng.uniform(-0.4, 5.0))
        beta = float(rng.uniform(-0.4, 5.0))
        recs = scan_extrema(Params(k, alpha, beta), Window.full())
        assert len(recs) == 2 * k + 1, (k, alpha, beta, len(recs))


def test_kinds_alternate_starting_and_ending_with_max():
    recs = scan_extrema(Params(7, 1.0, 2.0), Window.full())
    kinds = [r.kind for r in recs]
    assert kinds[0] == "max" and kinds[-1] == "max"
    assert all(a != b for a, b in zip(kinds, kinds[1:]))
    assert [r.index for r in recs] == list(range(len(recs)))


def test_refinement_grid_independence():
    p = Params(21, 1.7, 0.9)
    w = Window.full()
    coarse = scan_extrema(p, w, nodes_per_degree=12)
    fine = scan_extrema(p, w, nodes_per_degree=24)
    assert len(coarse) == len(fine)
    for a, b in zip(coarse, fine):
        assert abs(a.x - b.x) < 1e-10
        # minima sit at polynomial zeros where M is quadratically small, so
        # an absolute floor is needed alongside the relative check
        np.testing.assert_allclose(a.M, b.M, rtol=1e-9, atol=1e-20)


def test_ultraspherical_mirror_symmetry():
    recs = scan_extrema(Params(10, 2.5, 2.5), Window.full())
    xs = np.array([r.x for r in recs])
    np.testing.assert_allclose(xs, -xs[::-1], atol=1e-11)


def test_maxima_lie_on_envelope():
    for p in [Params(8, 1.0, 1.0), Params(15, 0.7, 2.2)]:
        w = Window.full()
        for r in scan_extrema(p, w):
            if r.kind == "max":
                np.testing.assert_allclose(sonin_S(p, r.x, w), r.M, rtol=1e-8)


def test_extreme_parameters_scan_cleanly():
    recs = scan_extrema(Params(400, 1e6, 1e6), Window.full(), nodes_per_degree=4)
    assert len(recs) == 2 * 400 + 1
    assert all(math.isfinite(r.ln_M) for r in recs if r.kind == "max")


def test_unresolvable_grid_raises():
    with pytest.raises(GridTooCoarseError):
        scan_extrema(Params(150, 3e4, 3e4), Window(0.001, 0.99), nodes_per_degree=4)


def test_nodes_per_degree_floor():
    with pytest.raises(ValueError):
        scan_extrema(Params(5, 1.0, 1.0), Window.full(), nodes_per_degree=3)


def test_endpoint_record_exponent_cases():
    w = Window.full()
    flat = _endpoint_record(Params(3, -0.5, -0.5), w, "right")
    np.testing.assert_allclose(flat.M, 2.0 / math.pi, rtol=1e-12)
    assert flat.index == -1
    vanishing = _endpoint_record(Params(3, 0.5, 0.5), w, "right")
    assert vanishing.M == 0.0 and vanishing.ln_M == -math.inf
    divergent = _endpoint_record(Params(3, -0.75, 0.0), w, "right")
    assert divergent.M == math.inf
    # interior window edge: sqrt factor vanishes but the weight stays finite
    interior = _endpoint_record(Params(3, 1.0, 1.0), Window(-0.5, 0.5), "right")
    assert interior.M == 0.0


def test_global_max_reports_divergent_endpoint():
    gm = global_max(Params(4, -0.75, 0.0), Window.full())
    assert gm.x == 1.0 and gm.M == math.inf and gm.index == -1


def test_global_max_matches_scan():
    p = Params(12, 0.8, 1.9)
    w = Window.full()
    best = max((r for r in scan_extrema(p, w) if r.kind == "max"), key=lambda r: r.ln_M)
    gm = global_max(p, w)
    assert gm.x == best.x and gm.M == best.M


def _rec(i, x, m, kind):
    return ExtremumRecord(index=i, x=x, M=m, ln_M=math.log(m), kind=kind)


def _geom(eta_minus=None, eta_plus=None, delta=None, x0=None):
    return Geometry(
        r=10.0, sin_tau=0.1, tau=0.1, sin_omega=0.0, omega=0.0,
        eta_minus=eta_minus, eta_plus=eta_plus, eta_sym=None, delta=delta, x0=x0, xi0=None,
    )


def test_structure_checks_valley_about_center():
    recs = [
        _rec(0, -0.8, 0.9, "max"), _rec(1, -0.5, 0.1, "min"), _rec(2, -0.3, 0.7, "max"),
        _rec(3, 0.0, 0.05, "min"), _rec(4, 0.3, 0.75, "max"), _rec(5, 0.6, 0.1, "min"),
        _rec(6, 0.8, 0.95, "max"),
    ]
    rep = structure_checks(recs, _geom(eta_minus=-0.85, eta_plus=0.9, delta=0.85, x0=0.0))
    assert rep.unimodal_about_x0 is True
    assert rep.x0_split == (2, 2)
    assert rep.eta_containment is True
    np.testing.assert_allclose(rep.eta_margin, 0.05, rtol=1e-12)
    assert rep.delta_containment is True
    np.testing.assert_allclose(rep.delta_margin, 0.05, rtol=1e-12)
    assert rep.nonneg_maxima_decreasing is False


def test_structure_checks_detects_broken_ordering():
    recs = [
        _rec(0, -0.8, 0.5, "max"), _rec(1, -0.3, 0.9, "max"),
        _rec(2, 0.3, 0.7, "max"), _rec(3, 0.8, 0.9, "max"),
    ]
    rep = structure_checks(recs, _geom(x0=0.0))
    assert rep.unimodal_about_x0 is False


def test_structure_checks_skips_missing_landmarks():
    recs = [_rec(0, 0.2, 0.9, "max"), _rec(1, 0.6, 0.8, "max")]
    rep = structure_checks(recs, _geom())
    assert rep.unimodal_about_x0 is None
    assert rep.x0_split is None
    assert rep.eta_containment is None
    assert rep.delta_containment is None
    assert rep.nonneg_maxima_decreasing is True
    np.testing.assert_allclose(rep.min_consecutive_drop, math.log(0.9) - math.log(0.8), rtol=1e-12)


def test_structure_checks_flags_escaping_extremum():
    recs = [_rec(0, -0.95, 0.9, "max"), _rec(1, 0.5, 0.8, "max")]
    rep = structure_checks(recs, _geom(eta_minus=-0.9, eta_plus=0.99))
    assert rep.eta_containment is False
    assert rep.eta_margin < 0.0


def test_structure_checks_against_live_scan():
    p = Params(9, 1.2, 0.4)
    recs = scan_extrema(p, Window.full())
    rep = structure_checks(recs, geometry(p))
    assert rep.eta_containment is True
    assert rep.eta_margin > 0.0
