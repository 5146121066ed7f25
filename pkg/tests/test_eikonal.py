import math

import numpy as np
import pytest

from shapesplit import ArrivalField, ValidationError, argmax_field, descend, fast_march

from conftest import make_blob
from oracles import sweep_arrival


def unit_strip(n=5):
    domain = np.ones((1, n), dtype=bool)
    return fast_march(np.ones((1, n)), domain, (0, 0))


class TestFastMarch:
    def test_unit_speed_strip(self):
        field = unit_strip()
        assert field.values.tolist() == [[0.0, 1.0, 2.0, 3.0, 4.0]]
        assert field.source == (0, 0)

    def test_3x3_center_source(self):
        field = fast_march(np.ones((3, 3)), np.ones((3, 3), dtype=bool), (1, 1))
        u = field.values
        assert u[1, 1] == 0.0
        for y, x in [(0, 1), (1, 0), (1, 2), (2, 1)]:
            assert u[y, x] == 1.0
        corner = 1.0 + 1.0 / math.sqrt(2.0)
        for y, x in [(0, 0), (0, 2), (2, 0), (2, 2)]:
            assert abs(u[y, x] - corner) <= 1e-12

    def test_source_outside_domain(self):
        domain = np.zeros((3, 3), dtype=bool)
        domain[0, 0] = True
        with pytest.raises(ValidationError):
            fast_march(np.ones((3, 3)), domain, (2, 2))

    def test_nonpositive_potential_rejected(self):
        domain = np.ones((2, 2), dtype=bool)
        pot = np.ones((2, 2))
        pot[0, 1] = 0.0
        with pytest.raises(ValidationError):
            fast_march(pot, domain, (0, 0))

    def test_infinite_potential_rejected(self):
        domain = np.ones((2, 2), dtype=bool)
        pot = np.ones((2, 2))
        pot[1, 1] = np.inf
        with pytest.raises(ValidationError):
            fast_march(pot, domain, (0, 0))

    def test_infinite_outside_domain(self):
        domain = make_blob(3, size=24, min_area=40)
        sy, sx = map(int, np.argwhere(domain)[0])
        field = fast_march(np.ones(domain.shape), domain, (sx, sy))
        assert np.isfinite(field.values[domain]).all()
        assert np.isinf(field.values[~domain]).all()

    @pytest.mark.parametrize("seed", range(3))
    def test_matches_sweeping_fixed_point(self, seed):
        rng = np.random.default_rng(200 + seed)
        pot = rng.uniform(0.2, 5.0, (32, 32))
        src = (int(rng.integers(32)), int(rng.integers(32)))
        domain = np.ones((32, 32), dtype=bool)
        got = fast_march(pot, domain, src).values
        want = sweep_arrival(pot, domain, src)
        assert np.abs(got - want).max() <= 1e-9

    def test_causality_bounds_unit_potential(self):
        domain = np.ones((32, 32), dtype=bool)
        sx, sy = 5, 9
        u = fast_march(np.ones((32, 32)), domain, (sx, sy)).values
        yy, xx = np.mgrid[0:32, 0:32]
        chebyshev = np.maximum(np.abs(xx - sx), np.abs(yy - sy))
        manhattan = np.abs(xx - sx) + np.abs(yy - sy)
        assert (u >= chebyshev - 1e-12).all()
        assert (u <= manhattan + 1e-12).all()

    def test_scaling_covariance(self):
        rng = np.random.default_rng(42)
        pot = rng.uniform(0.5, 3.0, (16, 16))
        domain = np.ones((16, 16), dtype=bool)
        base = fast_march(pot, domain, (2, 3)).values
        for c in (0.5, 3.0):
            scaled = fast_march(c * pot, domain, (2, 3)).values
            assert np.allclose(scaled, c * base, rtol=1e-12, atol=0.0)

    def test_deterministic(self):
        rng = np.random.default_rng(9)
        pot = rng.uniform(0.1, 2.0, (20, 20))
        domain = rng.random((20, 20)) < 0.9
        domain[4, 4] = True
        a = fast_march(pot, domain, (4, 4)).values
        b = fast_march(pot, domain, (4, 4)).values
        assert np.array_equal(a, b)


class TestArgmaxField:
    def test_strip(self):
        assert argmax_field(unit_strip()) == (4, 0)

    def test_constant_field_row_major_tie(self):
        field = ArrivalField(values=np.ones((3, 3)), source=(0, 0))
        assert argmax_field(field) == (0, 0)

    def test_3x3_corner_tie(self):
        field = fast_march(np.ones((3, 3)), np.ones((3, 3), dtype=bool), (1, 1))
        assert argmax_field(field) == (0, 0)

    def test_all_infinite_rejected(self):
        field = ArrivalField(values=np.full((2, 2), np.inf), source=(0, 0))
        with pytest.raises(ValidationError):
            argmax_field(field)


class TestDescend:
    def test_strip(self):
        path = descend(unit_strip(), (4, 0))
        assert path == [(4, 0), (3, 0), (2, 0), (1, 0), (0, 0)]

    def test_start_at_source(self):
        assert descend(unit_strip(), (0, 0)) == [(0, 0)]

    def test_l_shaped_domain(self):
        domain = np.zeros((10, 10), dtype=bool)
        domain[:, 0:2] = True
        domain[8:10, :] = True
        field = fast_march(np.ones((10, 10)), domain, (0, 0))
        start = argmax_field(field)
        path = descend(field, start)
        assert path[0] == start
        assert path[-1] == (0, 0)
        assert len(path) <= int(domain.sum())
        u = field.values
        for (x, y) in path:
            assert domain[y, x]
        vals = [u[y, x] for x, y in path]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_stuck_at_local_minimum(self):
        values = np.full((2, 2), np.inf)
        values[1, 1] = 5.0
        field = ArrivalField(values=values, source=(0, 0))
        with pytest.raises(ValidationError, match="stuck at non-source local minimum"):
            descend(field, (1, 1))

    def test_infinite_start_rejected(self):
        field = unit_strip()
        values = field.values.copy()
        values[0, 2] = np.inf
        with pytest.raises(ValidationError):
            descend(ArrivalField(values=values, source=(0, 0)), (2, 0))
