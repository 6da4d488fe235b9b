"""Independent brute-force reference implementations used as oracles.

Everything here is written as plain double loops over clipped windows,
deliberately sharing no code with the library's box-filter fast paths.
"""

import numpy as np


def window_indices(shape, cy, cx, radius):
    h, w = shape
    y0, y1 = max(0, cy - radius), min(h, cy + radius + 1)
    x0, x1 = max(0, cx - radius), min(w, cx + radius + 1)
    return y0, y1, x0, x1


def naive_box_sum(plane, radius):
    h, w = plane.shape
    out = np.zeros((h, w))
    for cy in range(h):
        for cx in range(w):
            y0, y1, x0, x1 = window_indices((h, w), cy, cx, radius)
            out[cy, cx] = plane[y0:y1, x0:x1].sum()
    return out


def naive_window_stats(p, q, radius):
    h, w = p.shape
    mean_p = np.zeros((h, w))
    mean_q = np.zeros((h, w))
    var_p = np.zeros((h, w))
    cov_pq = np.zeros((h, w))
    count = np.zeros((h, w))
    for cy in range(h):
        for cx in range(w):
            y0, y1, x0, x1 = window_indices((h, w), cy, cx, radius)
            pw = p[y0:y1, x0:x1].ravel()
            qw = q[y0:y1, x0:x1].ravel()
            mean_p[cy, cx] = pw.mean()
            mean_q[cy, cx] = qw.mean()
            var_p[cy, cx] = pw.var()
            cov_pq[cy, cx] = ((pw - pw.mean()) * (qw - qw.mean())).mean()
            count[cy, cx] = pw.size
    return mean_p, mean_q, var_p, cov_pq, count


def naive_directional_map(edit, source, radius, rho):
    """Per-window regularized least-squares residual of fitting source
    as a*edit + b, residual averaged over the same clipped window."""
    h, w = edit.shape
    out = np.zeros((h, w))
    for cy in range(h):
        for cx in range(w):
            y0, y1, x0, x1 = window_indices((h, w), cy, cx, radius)
            e = edit[y0:y1, x0:x1].ravel()
            s = source[y0:y1, x0:x1].ravel()
            var = e.var()
            cov = ((e - e.mean()) * (s - s.mean())).mean()
            den = var + rho
            a = cov / den if den > 0 else 0.0
            b = s.mean() - a * e.mean()
            out[cy, cx] = ((a * e + b - s) ** 2).mean()
    return out


def naive_guided_filter(inp, guide, radius, eps):
    h, w = inp.shape
    a = np.zeros((h, w))
    b = np.zeros((h, w))
    for cy in range(h):
        for cx in range(w):
            y0, y1, x0, x1 = window_indices((h, w), cy, cx, radius)
            g = guide[y0:y1, x0:x1].ravel()
            v = inp[y0:y1, x0:x1].ravel()
            var = g.var()
            cov = ((g - g.mean()) * (v - v.mean())).mean()
            den = var + eps
            ak = cov / den if den > 0 else 0.0
            a[cy, cx] = ak
            b[cy, cx] = v.mean() - ak * g.mean()
    out = np.zeros((h, w))
    for cy in range(h):
        for cx in range(w):
            y0, y1, x0, x1 = window_indices((h, w), cy, cx, radius)
            out[cy, cx] = (
                a[y0:y1, x0:x1].mean() * guide[cy, cx] + b[y0:y1, x0:x1].mean()
            )
    return out


def naive_bilinear(img, out_w, out_h):
    in_h, in_w = img.shape[:2]
    out_shape = (out_h, out_w) + img.shape[2:]
    out = np.zeros(out_shape)
    for oy in range(out_h):
        for ox in range(out_w):
            sy = min(max((oy + 0.5) * in_h / out_h - 0.5, 0.0), in_h - 1.0)
            sx = min(max((ox + 0.5) * in_w / out_w - 0.5, 0.0), in_w - 1.0)
            y0 = min(int(np.floor(sy)), in_h - 2) if in_h > 1 else 0
            x0 = min(int(np.floor(sx)), in_w - 2) if in_w > 1 else 0
            fy, fx = sy - y0, sx - x0
            y1 = min(y0 + 1, in_h - 1)
            x1 = min(x0 + 1, in_w - 1)
            out[oy, ox] = (
                img[y0, x0] * (1 - fy) * (1 - fx)
                + img[y0, x1] * (1 - fy) * fx
                + img[y1, x0] * fy * (1 - fx)
                + img[y1, x1] * fy * fx
            )
    return out


def naive_ssim(a, b):
    """Direct-formula SSIM at every full-window position."""
    half, sigma = 5, 1.5
    yy, xx = np.mgrid[-half : half + 1, -half : half + 1]
    k = np.exp(-(yy * yy + xx * xx) / (2 * sigma * sigma))
    k /= k.sum()
    c1, c2 = 0.01**2, 0.03**2
    h, w = a.shape
    vals = []
    for cy in range(half, h - half):
        for cx in range(half, w - half):
            wa = a[cy - half : cy + half + 1, cx - half : cx + half + 1]
            wb = b[cy - half : cy + half + 1, cx - half : cx + half + 1]
            mu_a = (k * wa).sum()
            mu_b = (k * wb).sum()
            va = (k * wa * wa).sum() - mu_a**2
            vb = (k * wb * wb).sum() - mu_b**2
            cov = (k * wa * wb).sum() - mu_a * mu_b
            vals.append(
                ((2 * mu_a * mu_b + c1) * (2 * cov + c2))
                / ((mu_a**2 + mu_b**2 + c1) * (va + vb + c2))
            )
    return float(np.mean(vals))


def fd_gradient(loss_fn, x, coords, h=1e-4):
    """Central finite differences of a scalar loss at selected coords."""
    out = {}
    for idx in coords:
        xp = x.copy()
        xp[idx] += h
        xm = x.copy()
        xm[idx] -= h
        out[idx] = (loss_fn(xp) - loss_fn(xm)) / (2 * h)
    return out
