import numpy as np
import pytest

from biharmonic import (
    OracleSizeError,
    build_oracle,
    complete_graph,
    erdos_renyi,
    exact_nodal,
    exact_pair,
    largest_connected_component,
    path_graph,
)

from conftest import dense_laplacian_eigs


class TestClosedForms:
    @pytest.mark.parametrize("n", [3, 4, 10])
    def test_complete_graph_pairs(self, n):
        # every pair of K_n is at 2/n^2
        oracle = build_oracle(complete_graph(n))
        for s, t in [(0, 1), (0, n - 1), (1, 2)]:
            assert exact_pair(oracle, s, t) == pytest.approx(2.0 / n**2, abs=1e-10)

    def test_path3_pairs(self, p3):
        oracle = build_oracle(p3)
        assert exact_pair(oracle, 0, 1) == pytest.approx(2.0 / 3.0, abs=1e-10)
        assert exact_pair(oracle, 1, 2) == pytest.approx(2.0 / 3.0, abs=1e-10)
        assert exact_pair(oracle, 0, 2) == pytest.approx(2.0, abs=1e-10)

    def test_path3_nodal(self, p3):
        oracle = build_oracle(p3)
        assert exact_nodal(oracle, 0) == pytest.approx(8.0 / 3.0, abs=1e-10)
        assert exact_nodal(oracle, 1) == pytest.approx(4.0 / 3.0, abs=1e-10)

    def test_k3_nodal(self, k3):
        oracle = build_oracle(k3)
        assert exact_nodal(oracle, 0) == pytest.approx(4.0 / 9.0, abs=1e-10)

    def test_k3_pseudoinverse_entries(self, k3):
        # L = 3I - J acts as 3I orthogonally to the constant vector
        oracle = build_oracle(k3)
        expected = (np.eye(3) - np.ones((3, 3)) / 3.0) / 3.0
        assert np.allclose(oracle.lpinv, expected, atol=1e-12)


class TestOracleInvariants:
    def test_rows_sum_to_zero(self, er40_oracle, er40):
        assert np.all(np.abs(er40_oracle.lpinv.sum(axis=1)) <= 1e-8 * er40.n)

    def test_symmetric(self, er40_oracle):
        assert np.array_equal(er40_oracle.lpinv, er40_oracle.lpinv.T)

    def test_trace_consistent(self, er40_oracle):
        assert er40_oracle.trace_lpinv2 == pytest.approx(
            float(er40_oracle.lpinv2_diag.sum()), rel=1e-12
        )
        assert er40_oracle.trace_lpinv2 >= 0.0

    def test_pair_symmetry_exact(self, er40, er40_oracle):
        rng = np.random.default_rng(0)
        for _ in range(1000):
            s, t = rng.integers(0, er40.n, size=2)
            if s == t:
                continue
            assert exact_pair(er40_oracle, int(s), int(t)) == exact_pair(
                er40_oracle, int(t), int(s)
            )

    def test_values_within_spectral_bounds(self, graph_zoo):
        for g in graph_zoo:
            eigs = dense_laplacian_eigs(g)
            gamma2, gamma_n = float(eigs[1]), float(eigs[-1])
            lo, hi = 2.0 / gamma_n**2, 2.0 / gamma2**2
            oracle = build_oracle(g)
            for s in range(g.n):
                for t in range(s + 1, g.n):
                    beta = exact_pair(oracle, s, t)
                    assert lo - 1e-8 <= beta <= hi + 1e-8
                    assert beta > 0.0

    def test_nodal_equals_pairwise_sum(self):
        rng = np.random.default_rng(42)
        for rep in range(20):
            n = int(rng.integers(5, 61))
            g = largest_connected_component(erdos_renyi(n, 0.25, seed=1000 + rep))
            oracle = build_oracle(g)
            for s in range(g.n):
                brute = sum(exact_pair(oracle, s, t) for t in range(g.n) if t != s)
                assert exact_nodal(oracle, s) == pytest.approx(brute, abs=1e-8 * g.n)


class TestErrors:
    def test_same_node_rejected(self, k3):
        oracle = build_oracle(k3)
        with pytest.raises(ValueError):
            exact_pair(oracle, 1, 1)

    def test_size_limit(self):
        g = path_graph(12)
        with pytest.raises(OracleSizeError):
            build_oracle(g, size_limit=11)
        assert build_oracle(g, size_limit=12).n == 12
