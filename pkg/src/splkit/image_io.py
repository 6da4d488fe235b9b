"""Image buffers, PNG I/O, color conversions, and bilinear resampling.

Images are float64 numpy arrays in the nominal range [0, 1]:
shape (H, W) for grayscale, (H, W, 3) for RGB. Masks are (H, W)
arrays in [0, 1].
"""

import numpy as np
from PIL import Image

# Full-range BT.601 (JPEG convention) chroma rows; +0.5 offset keeps
# Cb/Cr in [0, 1].
CB_ROW = np.array([-0.168736, -0.331264, 0.5])
CR_ROW = np.array([0.5, -0.418688, -0.081312])


def load_image(path):
    """Load an 8-bit PNG as a float64 array scaled to [0, 1].

    Grayscale files yield (H, W); color files (H, W, 3). An alpha
    channel, if present, is dropped.
    """
    with Image.open(path) as im:
        if im.mode in ("L", "I;16", "1"):
            im = im.convert("L")
            arr = np.asarray(im, dtype=np.float64)
            return arr / 255.0
        im = im.convert("RGB")
        arr = np.asarray(im, dtype=np.float64)
        return arr / 255.0


def save_image(img, path):
    """Clamp to [0, 1], quantize round-to-nearest to 8 bits, write PNG."""
    img = np.asarray(img, dtype=np.float64)
    if img.ndim == 3 and img.shape[2] == 1:
        img = img[:, :, 0]
    if img.ndim not in (2, 3) or (img.ndim == 3 and img.shape[2] != 3):
        raise ValueError(f"expected 1- or 3-channel image, got shape {img.shape}")
    q = np.rint(np.clip(img, 0.0, 1.0) * 255.0).astype(np.uint8)
    mode = "L" if q.ndim == 2 else "RGB"
    Image.fromarray(q, mode=mode).save(path, format="PNG")


def num_channels(img):
    return 1 if img.ndim == 2 else img.shape[2]


def rgb_to_intensity(img):
    """HSI intensity: the unweighted mean of R, G, B."""
    if img.ndim != 3 or img.shape[2] != 3:
        raise ValueError("rgb_to_intensity expects an (H, W, 3) image")
    return (img[:, :, 0] + img[:, :, 1] + img[:, :, 2]) / 3.0


def rgb_to_cbcr(img):
    """Full-range BT.601 chroma planes, shape (H, W, 2), offset to [0, 1]."""
    if img.ndim != 3 or img.shape[2] != 3:
        raise ValueError("rgb_to_cbcr expects an (H, W, 3) image")
    cb = img @ CB_ROW + 0.5
    cr = img @ CR_ROW + 0.5
    return np.stack([cb, cr], axis=-1)


def resize_bilinear(img, out_w, out_h):
    """Bilinear resample with half-pixel-center alignment.

    A resize to the input size returns a bit-identical copy.
    """
    if out_w < 1 or out_h < 1:
        raise ValueError("output size must be >= 1")
    img = np.asarray(img, dtype=np.float64)
    in_h, in_w = img.shape[:2]
    if (out_h, out_w) == (in_h, in_w):
        return img.copy()

    def axis_coords(n_out, n_in):
        # half-pixel centers: x_src = (i + 0.5) * n_in / n_out - 0.5
        x = (np.arange(n_out) + 0.5) * (n_in / n_out) - 0.5
        x = np.clip(x, 0.0, n_in - 1.0)
        lo = np.floor(x).astype(np.intp)
        lo = np.minimum(lo, n_in - 2) if n_in > 1 else np.zeros(n_out, dtype=np.intp)
        frac = x - lo
        return lo, frac

    ylo, fy = axis_coords(out_h, in_h)
    xlo, fx = axis_coords(out_w, in_w)
    yhi = np.minimum(ylo + 1, in_h - 1)
    xhi = np.minimum(xlo + 1, in_w - 1)

    if img.ndim == 3:
        fy = fy[:, None, None]
        fx = fx[None, :, None]
    else:
        fy = fy[:, None]
        fx = fx[None, :]

    top = img[np.ix_(ylo, xlo)] * (1 - fx) + img[np.ix_(ylo, xhi)] * fx
    bot = img[np.ix_(yhi, xlo)] * (1 - fx) + img[np.ix_(yhi, xhi)] * fx
    return top * (1 - fy) + bot * fy
