import numpy as np
import pytest

from shapesplit import ValidationError, euclidean_distance_map

from conftest import make_blob, make_c_annulus, random_mask
from oracles import brute_force_distance_map


def test_single_voxel_grid():
    # nearest background is the off-grid ring
    out = euclidean_distance_map(np.ones((1, 1), dtype=bool))
    assert out.tolist() == [[1.0]]


def test_all_true_3x3():
    out = euclidean_distance_map(np.ones((3, 3), dtype=bool))
    assert out.tolist() == [[1, 1, 1], [1, 2, 1], [1, 1, 1]]


def test_empty_mask_rejected():
    with pytest.raises(ValidationError, match="empty region"):
        euclidean_distance_map(np.zeros((4, 4), dtype=bool))


@pytest.mark.parametrize("seed", range(8))
def test_matches_brute_force_exactly(seed):
    mask = random_mask(seed, size=64)
    got = euclidean_distance_map(mask)
    want = brute_force_distance_map(mask)
    assert np.array_equal(got, want)


@pytest.mark.parametrize("mask_fn", [lambda: make_blob(0), make_c_annulus])
def test_matches_brute_force_on_shapes(mask_fn):
    mask = mask_fn()
    assert np.array_equal(euclidean_distance_map(mask), brute_force_distance_map(mask))


def test_zero_iff_background():
    mask = random_mask(1, size=48)
    mask[0, 0] = True  # keep nonempty
    d = euclidean_distance_map(mask)
    assert (d[mask] >= 1.0).all()
    assert (d[~mask] == 0.0).all()


def test_lipschitz_on_sampled_pairs():
    mask = random_mask(2, size=48)
    mask[3, 3] = True
    d = euclidean_distance_map(mask)
    rng = np.random.default_rng(0)
    ys = rng.integers(0, 48, size=200)
    xs = rng.integers(0, 48, size=200)
    vals = d[ys, xs]
    dy = ys[:, None] - ys[None, :]
    dx = xs[:, None] - xs[None, :]
    dist = np.hypot(dx, dy)
    gap = np.abs(vals[:, None] - vals[None, :])
    assert (gap <= dist + 1e-9).all()


def test_accepts_numeric_mask():
    out = euclidean_distance_map(np.array([[0, 5], [0, 0]]))
    assert out.tolist() == [[0.0, 1.0], [0.0, 0.0]]
