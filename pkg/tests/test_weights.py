import json
import math

import numpy as np
import pytest

from maxpoly.weights import (
    DomainError,
    NodeSet,
    WeightSpec,
    cdf,
    cdf_quadrature,
    generate_nodes,
    preset,
)

PRESET_NAMES = ["U", "C1", "C2", "UC", "OC"]


class TestPresets:
    def test_uniform(self):
        w = preset("U")
        assert w.alpha == 0.0 and w.beta == 0.0
        assert w.norm_constant == pytest.approx(0.5, abs=1e-14)

    def test_first_kind(self):
        w = preset("C1")
        assert w.alpha == -0.5 and w.beta == -0.5
        # density is 1/(pi*sqrt(1-x^2))
        assert w.density(0.0) == pytest.approx(1.0 / math.pi, rel=1e-12)
        assert w.density(0.6) == pytest.approx(1.0 / (math.pi * 0.8), rel=1e-12)

    def test_second_kind(self):
        w = preset("C2")
        assert w.alpha == 0.5 and w.beta == 0.5
        # density is (2/pi)*sqrt(1-x^2)
        assert w.density(0.0) == pytest.approx(2.0 / math.pi, rel=1e-12)
        assert w.density(0.6) == pytest.approx(2.0 / math.pi * 0.8, rel=1e-12)

    def test_gamma_parameter(self):
        assert preset("U").gamma == 0.0
        assert preset("C1").gamma == -0.5
        assert preset("C2").gamma == 0.5
        assert preset("UC").gamma == -0.25
        assert preset("OC").gamma == -0.5

    def test_unknown_preset(self):
        with pytest.raises(ValueError):
            preset("nope")

    def test_nonintegrable_exponent_rejected(self):
        with pytest.raises(ValueError):
            WeightSpec(alpha=-1.0, beta=0.0)
        with pytest.raises(ValueError):
            WeightSpec(alpha=0.0, beta=-1.5)


class TestCdf:
    def test_uniform_midpoint(self):
        assert cdf(preset("U"), 0.0) == pytest.approx(0.5, abs=1e-14)

    def test_uniform_linear(self):
        w = preset("U")
        for x in (-1.0, -0.4, 0.3, 1.0):
            assert cdf(w, x) == pytest.approx((1.0 + x) / 2.0, abs=1e-13)

    def test_arccosine_closed_form(self):
        w = preset("C1")
        for x in (-0.9, -0.2, 0.0, 0.5, 0.99):
            assert cdf(w, x) == pytest.approx(math.acos(-x) / math.pi, abs=1e-13)

    def test_against_quadrature(self):
        # frozen value computed by the substitution-based composite quadrature
        assert cdf(preset("C2"), 0.5) == pytest.approx(0.8044988905221149, abs=1e-10)
        assert cdf(preset("C2"), 0.5) == pytest.approx(
            cdf_quadrature(preset("C2"), 0.5), abs=1e-10
        )
        assert cdf(preset("UC"), -0.3) == pytest.approx(0.373833708188096, abs=1e-10)
        for name in PRESET_NAMES:
            w = preset(name)
            for x in (-0.7, 0.1, 0.85):
                assert cdf(w, x) == pytest.approx(cdf_quadrature(w, x), abs=1e-10)

    def test_endpoints(self):
        for name in PRESET_NAMES:
            w = preset(name)
            assert cdf(w, -1.0) == pytest.approx(0.0, abs=1e-13)
            assert cdf(w, 1.0) == pytest.approx(1.0, abs=1e-13)

    def test_outside_domain(self):
        with pytest.raises(DomainError):
            cdf(preset("U"), 1.5)
        with pytest.raises(DomainError):
            cdf(preset("C2"), -1.0001)


class TestGenerateNodes:
    def test_chebyshev_closed_form_small(self):
        pts = generate_nodes(preset("C1"), 4).points
        expected = [-1.0, -math.sqrt(2) / 2, 0.0, math.sqrt(2) / 2, 1.0]
        np.testing.assert_allclose(pts, expected, atol=1e-12)

    def test_equispaced(self):
        pts = generate_nodes(preset("U"), 4).points
        np.testing.assert_allclose(pts, [-1.0, -0.5, 0.0, 0.5, 1.0], atol=1e-13)

    def test_chebyshev_closed_form_large(self):
        M = 64
        pts = generate_nodes(preset("C1"), M).points
        expected = -np.cos(np.arange(M + 1) * math.pi / M)
        np.testing.assert_allclose(pts, expected, atol=1e-12)

    def test_endpoint_gap_quartic_clustering(self):
        # 1+x_1 = Theta(M^-4) for alpha=beta=-3/4: the scaled gap is stable
        vals = []
        for M in (100, 200, 400):
            x1 = generate_nodes(preset("OC"), M).points[1]
            vals.append((1.0 + x1) * M**4)
        assert max(vals) <= 2.0 * min(vals)

    @pytest.mark.parametrize("name,expo", [("C2", -2.0 / 3.0), ("OC", -4.0)])
    def test_endpoint_gap_slope(self, name, expo):
        # log-log slope of 1+x_1 vs M matches -1/(1+beta) within 10%
        Ms = np.array([100, 200, 400, 800], dtype=float)
        gaps = [1.0 + generate_nodes(preset(name), int(M)).points[1] for M in Ms]
        slope = np.polyfit(np.log(Ms), np.log(gaps), 1)[0]
        assert slope == pytest.approx(expo, rel=0.10)

    @pytest.mark.parametrize("name", PRESET_NAMES)
    def test_symmetry(self, name):
        nodes = generate_nodes(preset(name), 17)
        np.testing.assert_allclose(nodes.points, -nodes.points[::-1], atol=1e-12)
        assert nodes.is_symmetric()

    @pytest.mark.parametrize("name", PRESET_NAMES)
    def test_equidistribution(self, name):
        w = preset(name)
        nodes = generate_nodes(w, 12)
        for m, x in enumerate(nodes.points):
            assert cdf(w, x) == pytest.approx(m / 12.0, abs=1e-12)

    def test_angles_match_points(self):
        nodes = generate_nodes(preset("UC"), 9)
        np.testing.assert_allclose(nodes.angles, np.arccos(-nodes.points), atol=1e-12)
        assert nodes.angles[0] == 0.0 and nodes.angles[-1] == math.pi


class TestNodeSet:
    def test_from_points_requires_sorted_distinct(self):
        with pytest.raises(ValueError):
            NodeSet.from_points([0.0, 0.0, 1.0])
        with pytest.raises(ValueError):
            NodeSet.from_points([1.0, 0.0])

    def test_bracketing_interval(self):
        nodes = generate_nodes(preset("U"), 4)
        assert nodes.bracketing_interval(-0.7) == 0
        assert nodes.bracketing_interval(0.1) == 2
        assert nodes.bracketing_interval(0.9) == 3

    def test_csv_roundtrip(self, tmp_path):
        nodes = generate_nodes(preset("C2"), 6)
        path = tmp_path / "nodes.csv"
        nodes.to_csv(path)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "m,x,theta"
        assert len(lines) == 8
        xs = np.array([float(l.split(",")[1]) for l in lines[1:]])
        np.testing.assert_array_equal(xs, nodes.points)

    def test_json_provenance(self, tmp_path):
        nodes = generate_nodes(preset("UC"), 5)
        path = tmp_path / "nodes.json"
        nodes.to_json(path)
        doc = json.loads(path.read_text())
        assert doc["provenance"]["alpha"] == -0.25
        assert doc["provenance"]["beta"] == -0.25
        assert doc["provenance"]["M"] == 5
        np.testing.assert_allclose(doc["points"], nodes.points)
