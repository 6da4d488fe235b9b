"""Distortion generators and the metric-comparison benchmark.

Five distortion kinds, split into non-structural (color_change,
darken) and structural (lens_blur, white_noise, jitter). The
benchmark scores every (image, distortion) pair with SPL, SSIM, MSE,
and PSNR and checks that SPL ranks the non-structural kinds below
every structural kind.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .image_io import rgb_to_intensity
from .losses import SplParams, spl

NON_STRUCTURAL = ("color_change", "darken")
STRUCTURAL = ("lens_blur", "white_noise", "jitter")
KINDS = NON_STRUCTURAL + STRUCTURAL

DEFAULT_STRENGTHS = {
    "color_change": 0.5,
    "darken": 0.6,
    "lens_blur": 3.0,
    "white_noise": 0.1,
    "jitter": 3.0,
}

# Intensity-preserving channel remix: blend toward the cyclic R->G->B
# permutation, which keeps R+G+B (and thus the SPL intensity plane)
# unchanged while rotating hue.
_REMIX = np.array(
    [
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [1.0, 0.0, 0.0],
    ]
)


@dataclass
class DistortionSpec:
    kind: str
    strength: float
    seed: int = 0


def apply_distortion(img, spec):
    """Apply one deterministic distortion to a 3-channel image."""
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 3 or img.shape[2] != 3:
        raise ValueError("apply_distortion expects an (H, W, 3) image")

    if spec.kind == "darken":
        if not 0.0 < spec.strength <= 1.0:
            raise ValueError("darken strength must be in (0, 1]")
        return img * spec.strength
    if spec.kind == "color_change":
        if not 0.0 <= spec.strength <= 1.0:
            raise ValueError("color_change strength must be in [0, 1]")
        m = (1.0 - spec.strength) * np.eye(3) + spec.strength * _REMIX
        return img @ m.T
    if spec.kind == "lens_blur":
        radius = int(round(spec.strength))
        if radius < 1:
            raise ValueError("lens_blur radius must be >= 1")
        yy, xx = np.mgrid[-radius : radius + 1, -radius : radius + 1]
        kernel = (yy * yy + xx * xx <= radius * radius).astype(np.float64)
        kernel /= kernel.sum()
        out = np.empty_like(img)
        for c in range(3):
            out[:, :, c] = ndimage.convolve(img[:, :, c], kernel, mode="reflect")
        return out
    if spec.kind == "white_noise":
        if spec.strength < 0:
            raise ValueError("white_noise sigma must be >= 0")
        rng = np.random.default_rng(spec.seed)
        noise = rng.normal(0.0, spec.strength, size=img.shape)
        return np.clip(img + noise, 0.0, 1.0)
    if spec.kind == "jitter":
        if spec.strength < 0:
            raise ValueError("jitter amplitude must be >= 0")
        rng = np.random.default_rng(spec.seed)
        h, w = img.shape[:2]
        dy = rng.uniform(-spec.strength, spec.strength, size=(h, w))
        dx = rng.uniform(-spec.strength, spec.strength, size=(h, w))
        yy, xx = np.mgrid[0:h, 0:w]
        sy = np.clip(np.rint(yy + dy).astype(np.intp), 0, h - 1)
        sx = np.clip(np.rint(xx + dx).astype(np.intp), 0, w - 1)
        return img[sy, sx]
    raise ValueError(f"unknown distortion kind: {spec.kind!r}")


def _gaussian_kernel(size=11, sigma=1.5):
    half = size // 2
    yy, xx = np.mgrid[-half : half + 1, -half : half + 1]
    k = np.exp(-(yy * yy + xx * xx) / (2.0 * sigma * sigma))
    return k / k.sum()


def ssim(a, b):
    """Single-scale SSIM: Gaussian 11x11 sigma 1.5, K1=0.01, K2=0.03,
    dynamic range 1. Mean over map positions with a full window."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 2:
        raise ValueError("ssim expects matching (H, W) planes")
    if min(a.shape) < 11:
        raise ValueError("ssim needs images at least 11x11")
    k = _gaussian_kernel()
    c1 = 0.01**2
    c2 = 0.03**2

    def filt(x):
        return ndimage.correlate(x, k, mode="constant")[5:-5, 5:-5]

    mu_a = filt(a)
    mu_b = filt(b)
    var_a = filt(a * a) - mu_a * mu_a
    var_b = filt(b * b) - mu_b * mu_b
    cov = filt(a * b) - mu_a * mu_b
    num = (2 * mu_a * mu_b + c1) * (2 * cov + c2)
    den = (mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2)
    return float((num / den).mean())


def mse_psnr(a, b):
    """Mean squared difference over all samples and PSNR for unit range.

    Identical inputs give (0.0, inf)."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    mse = float(((a - b) ** 2).mean())
    psnr = math.inf if mse == 0.0 else 10.0 * math.log10(1.0 / mse)
    return mse, psnr


def default_specs(seed=0):
    """One spec per kind at the default strengths, seeds derived from seed."""
    return [
        DistortionSpec(kind=k, strength=DEFAULT_STRENGTHS[k], seed=seed + i)
        for i, k in enumerate(KINDS)
    ]


def run_bench(images, specs, params=None):
    """Score every (image, spec) pair; images is a list of (name, rgb).

    Returns a JSON-ready report: per-pair records (sorted by image
    name then kind), per-kind metric means, and the ordering flag
    (mean SPL of each non-structural kind below every structural one).
    """
    if not images or not specs:
        raise ValueError("bench needs at least one image and one distortion")
    if params is None:
        params = SplParams()

    records = []
    for name, img in sorted(images, key=lambda t: t[0]):
        src_int = rgb_to_intensity(img)
        for spec in sorted(specs, key=lambda s: KINDS.index(s.kind)):
            distorted = apply_distortion(img, spec)
            dist_int = rgb_to_intensity(distorted)
            spl_val, _ = spl(dist_int, src_int, params)
            ssim_val = ssim(dist_int, src_int)
            mse, psnr = mse_psnr(distorted, img)
            records.append(
                {
                    "image": name,
                    "kind": spec.kind,
                    "strength": spec.strength,
                    "seed": spec.seed,
                    "spl": spl_val,
                    "ssim": ssim_val,
                    "mse": mse,
                    "psnr": None if math.isinf(psnr) else psnr,
                }
            )

    kinds_present = sorted({r["kind"] for r in records}, key=KINDS.index)
    summary = {"mean": {}, "ordering_pass": True}
    for kind in kinds_present:
        rows = [r for r in records if r["kind"] == kind]
        summary["mean"][kind] = {
            "spl": sum(r["spl"] for r in rows) / len(rows),
            "ssim": sum(r["ssim"] for r in rows) / len(rows),
            "mse": sum(r["mse"] for r in rows) / len(rows),
        }
    for ns in NON_STRUCTURAL:
        for st in STRUCTURAL:
            if ns in summary["mean"] and st in summary["mean"]:
                if not summary["mean"][ns]["spl"] < summary["mean"][st]["spl"]:
                    summary["ordering_pass"] = False
    return {"records": records, "summary": summary}
