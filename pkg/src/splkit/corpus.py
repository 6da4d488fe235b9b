"""Synthetic photo-like test images.

Generates textured RGB images (smooth shading + fine texture + a few
hard-edged shapes) used by the benchmark scripts and the test suite.
The fine texture is tanh-bounded and dominates local contrast, so
window variance stays well above the loss regularizer almost
everywhere and affine tone edits of these images score near zero.
"""

import numpy as np
from scipy import ndimage


def make_image(seed, size=128):
    """One deterministic (size, size, 3) image in [0.01, 0.99]."""
    rng = np.random.default_rng(seed)
    h = w = size
    yy, xx = np.mgrid[0:h, 0:w] / size

    # smooth large-scale shading
    base = np.zeros((h, w))
    for _ in range(3):
        fy, fx = rng.uniform(0.5, 3.0, size=2)
        phase = rng.uniform(0, 2 * np.pi, size=2)
        base += rng.uniform(0.4, 1.0) * 0.08 * np.sin(
            2 * np.pi * (fy * yy + phase[0])
        ) * np.cos(2 * np.pi * (fx * xx + phase[1]))

    # bounded high-contrast fine texture
    raw = ndimage.gaussian_filter(rng.standard_normal((h, w)), 1.2)
    tex = 0.22 * np.tanh(1.5 * raw / raw.std())

    # a few hard-edged shapes
    shapes = np.zeros((h, w))
    gy, gx = np.mgrid[0:h, 0:w]
    for _ in range(rng.integers(2, 5)):
        cy, cx = rng.uniform(0.15, 0.85, size=2) * size
        r = rng.uniform(0.08, 0.22) * size
        disk = (gy - cy) ** 2 + (gx - cx) ** 2 <= r * r
        shapes += rng.uniform(-0.08, 0.08) * disk

    lum = 0.5 + np.clip(base, -0.12, 0.12) + tex + np.clip(shapes, -0.12, 0.12)

    # multiplicative per-channel tint plus a gentle color field
    img = np.empty((h, w, 3))
    for c in range(3):
        tint = rng.uniform(0.88, 1.0)
        color = 0.02 * ndimage.gaussian_filter(rng.standard_normal((h, w)), size / 8.0)
        img[:, :, c] = lum * tint + color
    return np.clip(img, 0.01, 0.99)


def make_corpus(count=12, size=128, seed=0):
    """List of (name, image) pairs, deterministic in seed."""
    return [(f"synth_{seed + i:03d}", make_image(seed + i, size)) for i in range(count)]
