"""Structure and color preservation losses and their analytic gradient.

The structure loss is built on a per-window local linear model: inside
each clipped square window the target image is fitted as an affine
function a*base + b of the base image. The windowed mean squared
residual of that fit, evaluated in both directions and averaged over
all windows, is the structure preservation loss (SPL). The color
preservation loss (CPL) is the mean squared Cb/Cr difference.
"""

from dataclasses import dataclass

import numpy as np

from .boxfilter import box_count, box_sum
from .image_io import CB_ROW, CR_ROW, rgb_to_cbcr, rgb_to_intensity


@dataclass
class SplParams:
    """Window radius (window size = 2*radius+1), fit regularizer rho,
    and CPL weight. Defaults: 11x11 windows, rho = 1e-4, lambda = 1e-4."""

    radius: int = 5
    rho: float = 1e-4
    lambda_cpl: float = 1e-4

    def validate(self):
        if self.radius < 1:
            raise ValueError("radius must be >= 1")
        if self.rho < 0:
            raise ValueError("rho must be >= 0")
        if self.lambda_cpl < 0:
            raise ValueError("lambda_cpl must be >= 0")


@dataclass
class LlmCoefficients:
    """Per-pixel scale/offset maps of the local linear fit."""

    a: np.ndarray
    b: np.ndarray


@dataclass
class LossReport:
    spl: float
    cpl: float
    total: float
    spl_map: np.ndarray
    cpl_map: np.ndarray


class _FitStats:
    """Windowed statistics and fit coefficients for one direction.

    base is the image being scaled (denominator variance), target the
    image being approximated as a*base + b.
    """

    __slots__ = ("n", "mean_b", "mean_t", "var_b", "var_t", "cov", "den", "a", "b")

    def __init__(self, base, target, radius, rho):
        h, w = base.shape
        self.n = box_count(w, h, radius)
        self.mean_b = box_sum(base, radius) / self.n
        self.mean_t = box_sum(target, radius) / self.n
        self.var_b = np.maximum(
            box_sum(base * base, radius) / self.n - self.mean_b * self.mean_b, 0.0
        )
        self.var_t = np.maximum(
            box_sum(target * target, radius) / self.n - self.mean_t * self.mean_t, 0.0
        )
        self.cov = box_sum(base * target, radius) / self.n - self.mean_b * self.mean_t
        self.den = self.var_b + rho
        # cov vanishes wherever var_b does, so a -> 0 is the natural
        # limit of the degenerate (flat base window, rho = 0) fit.
        safe = np.where(self.den > 0, self.den, 1.0)
        self.a = np.where(self.den > 0, self.cov / safe, 0.0)
        self.b = self.mean_t - self.a * self.mean_b

    def residual(self):
        # windowed mean of (a*base + b - target)^2, via the moment identity
        return self.a * self.a * self.var_b - 2.0 * self.a * self.cov + self.var_t


def _check_plane_pair(x, y):
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 2 or y.ndim != 2:
        raise ValueError("expected single-channel (H, W) planes")
    if x.shape != y.shape:
        raise ValueError(f"shape mismatch: {x.shape} vs {y.shape}")
    return x, y


def _mask_weights(mask, shape):
    """Per-center weights and normalizer for masked/unmasked means."""
    if mask is None:
        return None, float(shape[0] * shape[1])
    mask = np.asarray(mask, dtype=np.float64)
    if mask.shape != shape:
        raise ValueError(f"mask shape {mask.shape} does not match image {shape}")
    total = float(mask.sum())
    if total <= 0.0:
        raise ValueError("mask has zero mass")
    return mask, total


def _weighted_mean(plane, mask, norm):
    if mask is None:
        return float(plane.mean())
    return float((mask * plane).sum() / norm)


def llm_fit(target, base, params):
    """Closed-form local linear fit of target from base over each window."""
    params.validate()
    target, base = _check_plane_pair(target, base)
    s = _FitStats(base, target, params.radius, params.rho)
    return LlmCoefficients(a=s.a, b=s.b)


def directional_difference(edit, source, params):
    """Windowed residual of approximating source as an affine map of edit.

    Returns (scalar mean, per-pixel map). Asymmetric: a flat base
    window fits any target trivially (a = 0, b = window mean), so both
    directions are needed to capture structural differences.
    """
    params.validate()
    edit, source = _check_plane_pair(edit, source)
    s = _FitStats(edit, source, params.radius, params.rho)
    d_map = s.residual()
    return float(d_map.mean()), d_map


def spl(edit, source, params, mask=None):
    """Bidirectional structure preservation loss on intensity planes.

    Returns (scalar, per-pixel map). The map is the sum of the two
    directional residual maps; the scalar is its (mask-weighted) mean.
    """
    params.validate()
    edit, source = _check_plane_pair(edit, source)
    w, norm = _mask_weights(mask, edit.shape)
    fwd = _FitStats(edit, source, params.radius, params.rho).residual()
    rev = _FitStats(source, edit, params.radius, params.rho).residual()
    spl_map = fwd + rev
    return _weighted_mean(spl_map, w, norm), spl_map


def cpl(edit, source, mask=None):
    """Mean squared Cb/Cr difference. Returns (scalar, per-pixel map)."""
    if edit.shape != source.shape:
        raise ValueError(f"shape mismatch: {edit.shape} vs {source.shape}")
    d = rgb_to_cbcr(edit) - rgb_to_cbcr(source)
    cpl_map = d[:, :, 0] ** 2 + d[:, :, 1] ** 2
    w, norm = _mask_weights(mask, cpl_map.shape)
    return _weighted_mean(cpl_map, w, norm), cpl_map


def total_loss(edit, source, params, mask=None):
    """SPL + lambda * CPL. 3-channel inputs are reduced to intensity for
    SPL and chroma for CPL; single-channel inputs have CPL = 0."""
    params.validate()
    if edit.shape != source.shape:
        raise ValueError(f"shape mismatch: {edit.shape} vs {source.shape}")
    if edit.ndim == 3:
        spl_val, spl_map = spl(
            rgb_to_intensity(edit), rgb_to_intensity(source), params, mask
        )
        cpl_val, cpl_map = cpl(edit, source, mask)
    else:
        spl_val, spl_map = spl(edit, source, params, mask)
        cpl_val = 0.0
        cpl_map = np.zeros_like(spl_map)
    return LossReport(
        spl=spl_val,
        cpl=cpl_val,
        total=spl_val + params.lambda_cpl * cpl_val,
        spl_map=spl_map,
        cpl_map=cpl_map,
    )


def _grad_wrt_base(base, target, radius, rho, wn):
    """Gradient of the weighted directional residual sum w.r.t. base.

    wn is the per-center weight divided by (normalizer * window count).
    Differentiates through a and b: with den = var_b + rho,
      dR/dcov  = -2a (1 + rho/den)
      dR/dvar  =  a^2 (var_b + 3 rho) / den
    chained through dcov/dbase_i = (target_i - mean_t)/n and
    dvar/dbase_i = 2 (base_i - mean_b)/n.
    """
    s = _FitStats(base, target, radius, rho)
    safe = np.where(s.den > 0, s.den, 1.0)
    ok = s.den > 0
    g_cov = np.where(ok, -2.0 * s.a * (1.0 + rho / safe), 0.0) * wn
    g_var = np.where(ok, s.a * s.a * (s.var_b + 3.0 * rho) / safe, 0.0) * wn
    return (
        target * box_sum(g_cov, radius)
        - box_sum(g_cov * s.mean_t, radius)
        + 2.0 * base * box_sum(g_var, radius)
        - 2.0 * box_sum(g_var * s.mean_b, radius)
    )


def _grad_wrt_target(base, target, radius, rho, wn):
    """Gradient of the weighted directional residual sum w.r.t. target.

    The target enters through cov (dR/dcov as above) and through its
    own variance (dR/dvar_t = 1).
    """
    s = _FitStats(base, target, radius, rho)
    safe = np.where(s.den > 0, s.den, 1.0)
    ok = s.den > 0
    g_cov = np.where(ok, -2.0 * s.a * (1.0 + rho / safe), 0.0) * wn
    return (
        base * box_sum(g_cov, radius)
        - box_sum(g_cov * s.mean_b, radius)
        + 2.0 * target * box_sum(wn, radius)
        - 2.0 * box_sum(wn * s.mean_t, radius)
    )


def _spl_gradient_plane(edit, source, params, mask):
    edit, source = _check_plane_pair(edit, source)
    w, norm = _mask_weights(mask, edit.shape)
    h, wd = edit.shape
    n = box_count(wd, h, params.radius)
    wn = (1.0 if w is None else w) / (norm * n)
    return _grad_wrt_base(edit, source, params.radius, params.rho, wn) + _grad_wrt_target(
        source, edit, params.radius, params.rho, wn
    )


def loss_gradient(edit, source, params, mask=None):
    """Exact gradient of total_loss with respect to every sample of edit.

    Differentiates through the fit coefficients and, for 3-channel
    inputs, through the intensity and chroma conversions.
    """
    params.validate()
    if edit.shape != source.shape:
        raise ValueError(f"shape mismatch: {edit.shape} vs {source.shape}")
    if edit.ndim == 2:
        return _spl_gradient_plane(edit, source, params, mask)

    g_int = _spl_gradient_plane(
        rgb_to_intensity(edit), rgb_to_intensity(source), params, mask
    )
    grad = np.repeat(g_int[:, :, None] / 3.0, 3, axis=2)

    if params.lambda_cpl > 0.0:
        d = rgb_to_cbcr(edit) - rgb_to_cbcr(source)
        w, norm = _mask_weights(mask, edit.shape[:2])
        scale = (2.0 * params.lambda_cpl / norm) if w is None else (
            2.0 * params.lambda_cpl * w / norm
        )
        for c in range(3):
            grad[:, :, c] += scale * (d[:, :, 0] * CB_ROW[c] + d[:, :, 1] * CR_ROW[c])
    return grad
