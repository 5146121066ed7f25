"""Shared mask generators and fixtures."""

from __future__ import annotations

import numpy as np
import pytest

from shapesplit import EqualAreaSubdivider
from shapesplit.grid import connected_components

C_ANNULUS_SIZE = 128
C_ANNULUS_OUTER = 28.0
C_ANNULUS_INNER = 16.0
C_ANNULUS_NOTCH_DEG = 20.0


def make_c_annulus(
    size: int = C_ANNULUS_SIZE,
    outer: float = C_ANNULUS_OUTER,
    inner: float = C_ANNULUS_INNER,
    notch_deg: float = C_ANNULUS_NOTCH_DEG,
) -> np.ndarray:
    """Ring of inner..outer radius around the grid center, minus a wedge.

    The notch is centered on the positive x direction; its removal turns
    the ring into a C so the region has two ends.
    """
    c = (size - 1) / 2.0
    yy, xx = np.mgrid[0:size, 0:size]
    r = np.hypot(xx - c, yy - c)
    ang = np.degrees(np.arctan2(yy - c, xx - c))
    return (r >= inner) & (r <= outer) & (np.abs(ang) > notch_deg / 2.0)


def annulus_radii(size: int = C_ANNULUS_SIZE) -> np.ndarray:
    c = (size - 1) / 2.0
    yy, xx = np.mgrid[0:size, 0:size]
    return np.hypot(xx - c, yy - c)


def make_blob(seed: int, size: int = 48, min_area: int = 150) -> np.ndarray:
    """Single-component blob from thresholded smoothed noise, deterministic."""
    for attempt in range(32):
        rng = np.random.default_rng(seed * 1000 + attempt)
        field = rng.standard_normal((size, size))
        kernel = np.ones(7) / 7.0
        for _ in range(3):
            field = np.apply_along_axis(lambda r: np.convolve(r, kernel, mode="same"), 1, field)
            field = np.apply_along_axis(lambda col: np.convolve(col, kernel, mode="same"), 0, field)
        mask = field > np.quantile(field, 0.62)
        labels, count = connected_components(mask, 4)
        if count == 0:
            continue
        areas = np.bincount(labels.ravel())
        best = int(np.argmax(areas[1:])) + 1
        blob = labels == best
        if blob.sum() >= min_area:
            return blob
    raise RuntimeError(f"could not generate a blob for seed {seed}")


def random_mask(seed: int, size: int = 64, density: float = 0.5) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.random((size, size)) < density


@pytest.fixture(scope="session")
def c_annulus_mask() -> np.ndarray:
    return make_c_annulus()


@pytest.fixture(scope="session")
def fitted_annulus(c_annulus_mask) -> EqualAreaSubdivider:
    return EqualAreaSubdivider(n_regions=16).fit(c_annulus_mask)
