"""Guided filtering and iterative guided mask upsampling.

A coarse attention-derived mask is binarized, then repeatedly doubled
in resolution and sharpened with a guided filter against the reference
image resized to the current scale, growing the filter radius each
level. The result is a soft full-resolution edit mask.
"""

from dataclasses import dataclass

import numpy as np

from .boxfilter import box_count, box_sum
from .image_io import resize_bilinear, rgb_to_intensity


@dataclass
class UpsampleConfig:
    binarize_threshold: float = 0.4
    initial_radius: int = 2
    radius_increment: int = 2
    guided_eps: float = 1e-4
    target_size: int | None = None

    def validate(self):
        if not 0.0 < self.binarize_threshold < 1.0:
            raise ValueError("binarize_threshold must be in (0, 1)")
        if self.initial_radius < 1:
            raise ValueError("initial_radius must be >= 1")
        if self.radius_increment < 0:
            raise ValueError("radius_increment must be >= 0")
        if self.guided_eps <= 0:
            raise ValueError("guided_eps must be > 0")


def guided_filter(inp, guide, radius, eps):
    """Edge-preserving filter of inp steered by guide.

    Fits inp ~ a*guide + b per clipped window (regularizer eps), then
    averages the coefficients of all windows covering each pixel.
    """
    inp = np.asarray(inp, dtype=np.float64)
    guide = np.asarray(guide, dtype=np.float64)
    if inp.shape != guide.shape or inp.ndim != 2:
        raise ValueError("input and guide must be matching (H, W) planes")
    h, w = inp.shape
    n = box_count(w, h, radius)
    mean_g = box_sum(guide, radius) / n
    mean_i = box_sum(inp, radius) / n
    var_g = np.maximum(box_sum(guide * guide, radius) / n - mean_g * mean_g, 0.0)
    cov = box_sum(guide * inp, radius) / n - mean_g * mean_i
    den = var_g + eps
    safe = np.where(den > 0, den, 1.0)
    a = np.where(den > 0, cov / safe, 0.0)
    b = mean_i - a * mean_g
    a_bar = box_sum(a, radius) / n
    b_bar = box_sum(b, radius) / n
    return a_bar * guide + b_bar


def binarize(mask, threshold):
    """1 where mask >= threshold, else 0."""
    if not 0.0 < threshold < 1.0:
        raise ValueError("threshold must be in (0, 1)")
    return (np.asarray(mask, dtype=np.float64) >= threshold).astype(np.float64)


def upsample_mask(coarse, guide, config):
    """Iteratively double the binarized coarse mask up to target size,
    guided-filtering against the resized guide intensity at each level.

    The target size must be the coarse size times a power of two. The
    output is soft (not re-binarized), clamped to [0, 1].
    """
    config.validate()
    coarse = np.asarray(coarse, dtype=np.float64)
    if coarse.ndim != 2:
        raise ValueError("coarse mask must be (H, W)")
    guide = np.asarray(guide, dtype=np.float64)
    guide_int = rgb_to_intensity(guide) if guide.ndim == 3 else guide

    ch, cw = coarse.shape
    target_w = config.target_size if config.target_size is not None else guide_int.shape[1]
    if target_w < cw or target_w % cw != 0:
        raise ValueError(f"target size {target_w} is not a multiple of coarse width {cw}")
    factor = target_w // cw
    if factor & (factor - 1) != 0:
        raise ValueError(f"target size {target_w} is not coarse width x 2^m")
    target_h = ch * factor
    gh, gw = guide_int.shape
    if gh * cw != gw * ch:
        raise ValueError("coarse mask aspect ratio does not match guide")

    mask = binarize(coarse, config.binarize_threshold)
    radius = config.initial_radius
    cur_h, cur_w = ch, cw
    while cur_w < target_w:
        cur_h, cur_w = cur_h * 2, cur_w * 2
        mask = resize_bilinear(mask, cur_w, cur_h)
        level_guide = resize_bilinear(guide_int, cur_w, cur_h)
        mask = guided_filter(mask, level_guide, radius, config.guided_eps)
        radius += config.radius_increment
    assert (cur_h, cur_w) == (target_h, target_w)
    return np.clip(mask, 0.0, 1.0)
