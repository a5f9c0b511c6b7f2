import numpy as np
import pytest

from biharmonic import (
    BipartiteGraphError,
    ConvergenceError,
    complete_graph,
    estimate_gamma2,
    estimate_lambda,
    spectral_info,
)
from biharmonic.spectral import LAMBDA_CEIL

from conftest import dense_lambda, dense_laplacian_eigs

TOL = 1e-6


class TestLambda:
    def test_triangle(self, k3):
        # walk-matrix eigenvalues of K3 are {1, -1/2, -1/2}
        assert estimate_lambda(k3) == pytest.approx(0.5, rel=TOL)

    def test_five_cycle(self, c5):
        # eigenvalues cos(2*pi*k/5); radius is |cos(4*pi/5)|
        assert estimate_lambda(c5) == pytest.approx(0.8090169943749475, rel=1e-6)

    @pytest.mark.parametrize("n", [4, 7, 12])
    def test_complete(self, n):
        assert estimate_lambda(complete_graph(n)) == pytest.approx(1.0 / (n - 1), rel=TOL)

    def test_matches_dense_on_zoo(self, non_bipartite_zoo):
        for g in non_bipartite_zoo:
            ref = dense_lambda(g)
            est = estimate_lambda(g, tol=TOL)
            assert abs(est - ref) / ref <= TOL, f"n={g.n}"

    def test_bipartite_rejected(self, p3):
        with pytest.raises(BipartiteGraphError):
            estimate_lambda(p3)

    def test_disconnected_rejected(self):
        from biharmonic import EdgeList, build_graph

        g = build_graph(EdgeList([(0, 1), (1, 2), (2, 0), (5, 6)]))
        with pytest.raises(ValueError):
            estimate_gamma2(g)


class TestGamma2:
    def test_triangle(self, k3):
        assert estimate_gamma2(k3) == pytest.approx(3.0, rel=TOL)

    def test_path3(self, p3):
        # Laplacian spectrum of the 3-path is {0, 1, 3}
        assert estimate_gamma2(p3) == pytest.approx(1.0, rel=TOL)

    @pytest.mark.parametrize("n", [4, 6, 9])
    def test_complete(self, n):
        assert estimate_gamma2(complete_graph(n)) == pytest.approx(float(n), rel=TOL)

    def test_matches_dense_and_bounded(self, graph_zoo):
        for g in graph_zoo:
            ref = float(dense_laplacian_eigs(g)[1])
            est = estimate_gamma2(g, tol=TOL)
            assert abs(est - ref) / ref <= TOL
            assert est <= g.n + 1e-9


class TestSpectralInfo:
    def test_inflation(self, c5):
        raw = estimate_lambda(c5)
        info = spectral_info(c5)
        assert info.lam == pytest.approx(raw * 1.01, rel=1e-12)
        assert info.lam < 1.0

    def test_inflation_clamped_below_one(self, c5):
        info = spectral_info(c5, lam=0.999999999999)
        assert info.lam == LAMBDA_CEIL

    def test_overrides_bypass_estimation(self, p3):
        # the bipartite path never reaches the estimators with overrides
        info = spectral_info(p3, lam=0.9, gamma2=1.0)
        assert info.lam == 0.9
        assert info.gamma2 == 1.0

    def test_phi_uses_squared_connectivity(self, k3):
        info = spectral_info(k3)
        assert info.phi == pytest.approx(2.0 / info.gamma2**2, rel=1e-12)

    def test_bad_overrides(self, k3):
        with pytest.raises(ValueError):
            spectral_info(k3, lam=-0.5)
        with pytest.raises(ValueError):
            spectral_info(k3, gamma2=0.0)


def test_non_convergence_carries_state(c5):
    with pytest.raises(ConvergenceError) as exc:
        estimate_lambda(c5, tol=1e-14, max_iter=1)
    assert exc.value.last_vector.shape == (5,)
    assert exc.value.residual > 0.0


def test_deterministic_per_seed(er40):
    assert estimate_lambda(er40, seed=3) == estimate_lambda(er40, seed=3)
    assert estimate_gamma2(er40, seed=3) == estimate_gamma2(er40, seed=3)
