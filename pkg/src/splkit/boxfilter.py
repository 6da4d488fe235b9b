"""Windowed sums and statistics over square windows clipped to the image.

Border policy is "shrinking windows": the (2r+1)x(2r+1) window around
each pixel is intersected with the image and statistics are normalized
by the actual pixel count. Accumulation is double precision throughout.
"""

from dataclasses import dataclass

import numpy as np


@dataclass
class WindowStats:
    """Per-pixel windowed first/second moments of a plane pair."""

    mean_p: np.ndarray
    mean_q: np.ndarray
    var_p: np.ndarray
    cov_pq: np.ndarray
    count: np.ndarray


def _box_sum_axis(arr, radius, axis):
    n = arr.shape[axis]
    pad = [(0, 0)] * arr.ndim
    pad[axis] = (1, 0)
    c = np.cumsum(np.pad(arr, pad), axis=axis)
    idx = np.arange(n)
    hi = np.minimum(idx + radius + 1, n)
    lo = np.maximum(idx - radius, 0)
    return np.take(c, hi, axis=axis) - np.take(c, lo, axis=axis)


def box_sum(plane, radius):
    """Sum of each clipped (2r+1)x(2r+1) window, per pixel.

    Separable 1-D running sums; differences over all-zero spans are
    exactly zero, so zero regions of the input stay exactly zero in
    the output beyond `radius` of any nonzero value.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    plane = np.asarray(plane, dtype=np.float64)
    if radius == 0:
        return plane.copy()
    out = _box_sum_axis(plane, radius, 1)
    return _box_sum_axis(out, radius, 0)


def _axis_counts(n, radius):
    idx = np.arange(n)
    return (np.minimum(idx + radius + 1, n) - np.maximum(idx - radius, 0)).astype(
        np.float64
    )


def box_count(width, height, radius):
    """Per-pixel count of in-bounds window pixels (exact, no summation)."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    return np.outer(_axis_counts(height, radius), _axis_counts(width, radius))


def window_stats(p, q, radius):
    """Windowed means, variance of p, and cov(p, q) with shrinking windows."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise ValueError(f"shape mismatch: {p.shape} vs {q.shape}")
    h, w = p.shape
    n = box_count(w, h, radius)
    mean_p = box_sum(p, radius) / n
    mean_q = box_sum(q, radius) / n
    var_p = np.maximum(box_sum(p * p, radius) / n - mean_p * mean_p, 0.0)
    cov_pq = box_sum(p * q, radius) / n - mean_p * mean_q
    return WindowStats(mean_p=mean_p, mean_q=mean_q, var_p=var_p, cov_pq=cov_pq, count=n)
