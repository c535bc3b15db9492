import math
import os

import numpy as np
import pytest

import oracles
from qcharm import (
    DomainError,
    VerifyConfig,
    dilatation,
    gradient,
    make_scenario,
    scenario_catalog,
    verify,
)
from qcharm.scenarios import worker_count

TWO_PI = 2.0 * math.pi

# pinned by tests/oracles.py (dense-grid dilatation scan)
HARMONIC_GRAPH_K = 1.0198039027185546


# ---------------------------------------------------------------------------
# catalog construction


def test_affine_exact_fields(affine_scenario):
    assert abs(affine_scenario.k_exact - 1.5) < 1e-15
    assert abs(affine_scenario.sup_grad_exact - 1.2) < 1e-15
    assert abs(float(affine_scenario.jacobian_exact(0.3 + 0.1j)) - 0.96) < 1e-15
    assert abs(affine_scenario.area_exact - 0.96 * math.pi) < 1e-15


def test_affine_rejects_large_coefficient():
    with pytest.raises(DomainError):
        make_scenario("affine", c=1.0)


def test_conformal_poly_dilatation_one(poly_scenario):
    for z in (0.1 + 0.2j, -0.8j, 0.55):
        g = gradient(poly_scenario.boundary, z)
        assert abs(dilatation(g) - 1.0) < 1e-9


def test_conformal_poly_rejects_large_eps():
    with pytest.raises(DomainError):
        make_scenario("conformal_poly", eps=0.5, m=2)


def test_harmonic_graph_k_oracle(graph_scenario):
    assert abs(graph_scenario.k_exact - math.sqrt(1.04)) < 1e-15
    assert abs(graph_scenario.k_exact - HARMONIC_GRAPH_K) < 1e-6


def test_harmonic_graph_rejects_large_eps():
    with pytest.raises(DomainError):
        make_scenario("harmonic_graph", eps=0.6, m=2)


def test_unknown_scenario():
    with pytest.raises(DomainError):
        make_scenario("spiral")


def test_catalog_listing():
    names = [entry["name"] for entry in scenario_catalog()]
    assert names == ["identity", "affine", "conformal_poly", "harmonic_graph", "fourier"]


def test_exact_data_consistent_with_numeric(catalog_scenarios):
    for sc in catalog_scenarios:
        if sc.jacobian_exact is None:
            continue
        for z in (0.3 + 0.1j, -0.45j):
            g = gradient(sc.boundary, z)
            from qcharm import jacobian

            assert abs(jacobian(g) - float(sc.jacobian_exact(z))) < 1e-8


# ---------------------------------------------------------------------------
# normalization witness


def test_identity_witness_thirds(identity_scenario):
    w = identity_scenario.normalization
    expected = np.array([0.0, TWO_PI / 3.0, 2.0 * TWO_PI / 3.0])
    assert np.max(np.abs(w.preimage_angles - expected)) < 1e-9
    assert np.max(np.abs(w.arc_lengths - TWO_PI / 3.0)) < 1e-6


def test_affine_witness_corrected(affine_scenario):
    w = affine_scenario.normalization
    total = w.arc_lengths.sum()
    assert np.max(np.abs(w.arc_lengths - total / 3.0)) < 1e-6
    # the corrected preimages are not the cube roots of unity
    plain = np.array([0.0, TWO_PI / 3.0, 2.0 * TWO_PI / 3.0])
    assert np.max(np.abs(w.preimage_angles - plain)) > 1e-3
    # and the cube roots themselves do not split the ellipse evenly
    from qcharm.curves import PeriodicAntiderivative

    bm = affine_scenario.boundary
    t = TWO_PI * np.arange(4096) / 4096
    speed = np.linalg.norm(bm.derivative(t), axis=1)
    cum = PeriodicAntiderivative(speed)
    arcs = np.diff([cum(a) for a in plain] + [total])
    assert np.max(np.abs(arcs - total / 3.0)) > 1e-3


# ---------------------------------------------------------------------------
# the verification pipeline


def test_all_catalog_scenarios_pass(catalog_reports):
    for name, rep in catalog_reports.items():
        assert rep.all_passed, f"{name}: worst margin {rep.worst_margin}"


def test_identity_equality_margins(catalog_reports):
    rep = catalog_reports["identity"]
    by_name = {rec.name: rec for rec in rep.checks}
    assert abs(by_name["angular_derivative"].margin) < 1e-12
    assert abs(by_name["boundary_jacobian"].margin) < 1e-9
    assert abs(by_name["isoperimetric"].margin) < 1e-8
    assert abs(by_name["quasiconformality"].margin) < 1e-10


def test_affine_equality_margins(catalog_reports):
    rep = catalog_reports["affine"]
    by_name = {rec.name: rec for rec in rep.checks}
    assert abs(by_name["quasiconformality"].margin) < 1e-10
    assert abs(by_name["boundary_jacobian"].margin) < 1e-9


def test_dilatation_estimates_match_exact(catalog_reports, catalog_scenarios):
    for sc in catalog_scenarios:
        rep = catalog_reports[sc.name]
        assert abs(rep.k_estimate - sc.k_exact) < 1e-6


def test_sup_gradient_estimates(catalog_reports, catalog_scenarios):
    for sc in catalog_scenarios:
        rep = catalog_reports[sc.name]
        assert abs(rep.sup_grad_extrapolated - sc.sup_grad_exact) < 1e-6
        assert rep.sup_grad_extrapolated <= sc.sup_grad_exact + 1e-6


def test_fourier_scenario_numeric_only():
    cos_c = np.zeros((4, 2))
    sin_c = np.zeros((4, 2))
    cos_c[1] = [1.0, 0.0]
    sin_c[1] = [0.0, 1.0]
    cos_c[3] = [0.05, 0.0]
    sin_c[3] = [0.0, -0.05]
    sc = make_scenario("fourier", cos_coeffs=cos_c, sin_coeffs=sin_c)
    assert sc.k_exact is None
    rep = verify(sc, VerifyConfig())
    assert rep.all_passed
    assert rep.k_estimate > 1.0


def test_affine_extreme_reports_log_bound():
    sc = make_scenario("affine", c=0.99)
    rep = verify(sc, VerifyConfig())
    assert rep.all_passed
    assert math.isfinite(rep.bound.log_value)
    assert rep.bound.value == float("inf")
    assert abs(rep.k_estimate - 199.0) < 1e-5


def test_worker_count_env(monkeypatch):
    monkeypatch.delenv("QCH_THREADS", raising=False)
    assert worker_count(3) == 3
    monkeypatch.setenv("QCH_THREADS", "2")
    assert worker_count() == 2
    monkeypatch.setenv("QCH_THREADS", "zero")
    with pytest.raises(DomainError):
        worker_count()


def test_verify_sequential_matches_parallel(identity_scenario):
    seq = verify(identity_scenario, VerifyConfig(workers=1))
    par = verify(identity_scenario, VerifyConfig(workers=4))
    assert seq.all_passed and par.all_passed
    for a, b in zip(seq.checks, par.checks):
        assert a.name == b.name
        assert a.margin == b.margin
