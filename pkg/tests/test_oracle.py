import numpy as np
import pytest

from maxpoly.bounds import bound_report
from maxpoly.oracle import (
    EnumerationTooLarge,
    oracle_B,
    oracle_B_point,
    oracle_B_point_lp,
)
from maxpoly.polycore import alternating_poly, lebesgue_function
from maxpoly.remez import compute_B
from maxpoly.weights import NodeSet, generate_nodes, preset


class TestOracleBPoint:
    def test_single_subset_when_square(self):
        nodes = generate_nodes(preset("U"), 4)
        x = 0.5 * (nodes.points[1] + nodes.points[2])
        val, idx = oracle_B_point(nodes, 4, x)
        assert list(idx) == [0, 1, 2, 3, 4]
        assert val == pytest.approx(lebesgue_function(nodes.points, x), rel=1e-12)

    def test_grid_point_gives_one(self):
        nodes = generate_nodes(preset("C2"), 6)
        for x in nodes.points:
            val, _ = oracle_B_point(nodes, 3, float(x))
            assert val == pytest.approx(1.0, abs=1e-12)

    def test_constant_degree(self):
        nodes = generate_nodes(preset("U"), 6)
        val, _ = oracle_B_point(nodes, 0, 0.1)
        assert val == 1.0

    def test_frozen_equispaced_value(self):
        nodes = NodeSet.from_points(np.linspace(-1, 1, 7))
        val, idx = oracle_B_point(nodes, 3, 0.4)
        assert val == pytest.approx(1.112, rel=1e-10)
        assert list(idx) == [0, 1, 4, 5]

    def test_cross_check_vertex_enumeration(self):
        nodes = NodeSet.from_points(np.linspace(-1, 1, 7))
        for x in (0.4, -0.15, 0.92):
            val, _ = oracle_B_point(nodes, 3, x)
            assert oracle_B_point_lp(nodes, 3, x) == pytest.approx(val, rel=1e-8)

    def test_dominates_closed_form_lower_bound(self):
        nodes = generate_nodes(preset("C2"), 8)
        rep = bound_report(nodes, 4)
        val, _ = oracle_B_point(nodes, 4, 0.97)
        assert np.log(val) >= rep.log_lower - 1e-9

    def test_minimizing_subset_satisfies_constraints(self):
        nodes = generate_nodes(preset("UC"), 7)
        x = 0.5 * (nodes.points[5] + nodes.points[6])
        _, idx = oracle_B_point(nodes, 4, x)
        Y = nodes.points[idx]
        n_anchor = int(np.nonzero(idx == 5)[0][0])
        p = alternating_poly(Y, n_anchor)
        assert np.max(np.abs(p(nodes.points))) <= 1.0 + 1e-10

    def test_enumeration_guard(self):
        nodes = generate_nodes(preset("U"), 200)
        with pytest.raises(EnumerationTooLarge):
            oracle_B_point(nodes, 100, 0.005)


class TestOracleB:
    def test_hand_value(self):
        nodes = NodeSet.from_points(np.array([-1.0, 0.0, 1.0]))
        assert oracle_B(nodes, 2) == pytest.approx(1.25, rel=1e-10)

    def test_constant_degree(self):
        nodes = generate_nodes(preset("U"), 4)
        assert oracle_B(nodes, 0) == 1.0

    def test_agrees_with_exchange_solver(self):
        nodes = generate_nodes(preset("C2"), 6)
        assert oracle_B(nodes, 3) == pytest.approx(compute_B(nodes, 3).B, rel=1e-9)

    def test_frozen_clustered_value(self):
        nodes = generate_nodes(preset("C2"), 6)
        assert oracle_B(nodes, 3) == pytest.approx(1.2317688644191873, rel=1e-10)
