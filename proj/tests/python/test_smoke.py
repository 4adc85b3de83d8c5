import json
import math

import numpy as np
import pytest

import tdrd


@pytest.fixture
def ex5():
    return tdrd.datasets.ex5_params()


def test_eigenvalues_match_dense_solver(ex5):
    A = tdrd.build_matrix(ex5, transposed=True)
    dense = np.sort(np.linalg.eigvals(A).real)[::-1]
    np.testing.assert_allclose(tdrd.eigenvalues(ex5), dense, atol=1e-10)
    np.testing.assert_allclose(tdrd.eigenvalues(ex5), [1.9913, 1.7248, 1.0, 0.77516, 0.50871], atol=1e-3)


def test_beta_and_zeros(ex5):
    beta = math.sqrt(ex5.beta2 * ex5.gamma2 / (ex5.beta1 * ex5.gamma1))
    assert tdrd.derived_constants(ex5).beta == pytest.approx(beta, abs=1e-14)
    np.testing.assert_allclose(tdrd.zeros_p(2), [1.0, -1.0], atol=1e-12)


def test_eigenvectors_are_eigenvectors(ex5):
    sp = tdrd.spectrum(ex5)
    AT = tdrd.build_matrix(ex5, transposed=True)
    V = sp.eigenvectors
    np.testing.assert_allclose(AT @ V, V * np.array(sp.eigenvalues), atol=1e-10)


def test_parabolicity_ratio(ex5):
    rep = tdrd.check_parabolicity(ex5)
    assert rep.ratio == pytest.approx(1.2892, abs=1e-4)
    assert rep.threshold == pytest.approx(math.cos(math.pi / 6), abs=1e-12)
    assert rep.satisfied


def test_transform_reaction_matches_numpy(ex5):
    sys = tdrd.datasets.ex5_tables()
    P = tdrd.datasets.ex5_printed_P()
    G = tdrd.transform_reaction(P, sys)
    rng = np.random.default_rng(3)
    R = np.linalg.inv(P.T)
    for _ in range(5):
        w = rng.uniform(0, 2, 5)
        np.testing.assert_allclose(G(w), P.T @ sys(R @ w), atol=1e-10)


def test_diagonal_system_a3_constant():
    rep = tdrd.check_A3(tdrd.datasets.ex5_diagonal_system(), np.ones(5))
    assert rep.ok
    assert rep.C2 == pytest.approx(0.65, abs=1e-12)


def test_simulation_commutes_with_change_of_variables(ex5):
    r = tdrd.simulate(ex5, tdrd.datasets.ex5_consistent_system(), tdrd.datasets.ex5_signature(),
                      tdrd.datasets.ex5_initial(), t_final=1.0)
    assert r["discrepancy"] < 1e-8
    assert r["invariant"]
    P = np.asarray(r["P"])
    U = np.asarray(r["original"]["states"][-1])
    W = np.asarray(r["diagonal"]["states"][-1])
    np.testing.assert_allclose(P.T @ U, W, atol=1e-8)


def test_theta_search_satisfies_positivity(ex5):
    lam = tdrd.eigenvalues(ex5)
    spec = tdrd.search_theta(lam, [0, 0, 0, 0], 2)
    assert spec is not None
    assert tdrd.check_condition_1_12(lam, spec).satisfied


def test_cli_spectrum_roundtrip():
    code, out, err = tdrd.run_cli(["spectrum", "--example", "paper-ex5"])
    assert code == 0, err
    assert len(json.loads(out)["eigenvalues"]) == 5


def test_bad_config_is_value_error():
    with pytest.raises(ValueError):
        tdrd.ToeplitzParams(alpha1=-1, alpha2=1, beta1=1, gamma1=1, beta2=1, gamma2=1, m=3)
