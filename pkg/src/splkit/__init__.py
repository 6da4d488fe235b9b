"""Structure/color preservation losses, image refinement, guided mask
upsampling, and a distortion benchmark."""

from .bench import (
    DistortionSpec,
    apply_distortion,
    default_specs,
    mse_psnr,
    run_bench,
    ssim,
)
from .boxfilter import WindowStats, box_count, box_sum, window_stats
from .image_io import (
    load_image,
    resize_bilinear,
    rgb_to_cbcr,
    rgb_to_intensity,
    save_image,
)
from .losses import (
    LlmCoefficients,
    LossReport,
    SplParams,
    cpl,
    directional_difference,
    llm_fit,
    loss_gradient,
    spl,
    total_loss,
)
from .mask_upsample import UpsampleConfig, binarize, guided_filter, upsample_mask
from .refine import RefineConfig, RefineTrace, momentum_step, refine

__all__ = [
    "DistortionSpec",
    "LlmCoefficients",
    "LossReport",
    "RefineConfig",
    "RefineTrace",
    "SplParams",
    "UpsampleConfig",
    "WindowStats",
    "apply_distortion",
    "binarize",
    "box_count",
    "box_sum",
    "cpl",
    "default_specs",
    "directional_difference",
    "guided_filter",
    "llm_fit",
    "load_image",
    "loss_gradient",
    "momentum_step",
    "mse_psnr",
    "refine",
    "resize_bilinear",
    "rgb_to_cbcr",
    "rgb_to_intensity",
    "run_bench",
    "save_image",
    "spl",
    "ssim",
    "total_loss",
    "upsample_mask",
    "window_stats",
]
