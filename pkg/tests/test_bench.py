import math

import numpy as np
import pytest

from splkit import (
    DistortionSpec,
    SplParams,
    apply_distortion,
    default_specs,
    mse_psnr,
    run_bench,
    spl,
    ssim,
)
from splkit.corpus import make_corpus, make_image

from helpers import naive_ssim


def test_darken_full_strength_is_identity():
    img = make_image(0, 32)
    out = apply_distortion(img, DistortionSpec("darken", 1.0))
    assert np.array_equal(out, img)


def test_white_noise_deterministic():
    img = make_image(1, 32)
    a = apply_distortion(img, DistortionSpec("white_noise", 0.1, seed=7))
    b = apply_distortion(img, DistortionSpec("white_noise", 0.1, seed=7))
    c = apply_distortion(img, DistortionSpec("white_noise", 0.1, seed=8))
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_jitter_deterministic():
    img = make_image(2, 32)
    a = apply_distortion(img, DistortionSpec("jitter", 3.0, seed=1))
    b = apply_distortion(img, DistortionSpec("jitter", 3.0, seed=1))
    assert np.array_equal(a, b)


def test_lens_blur_preserves_constants():
    img = np.full((24, 24, 3), 0.4)
    out = apply_distortion(img, DistortionSpec("lens_blur", 3.0))
    assert np.abs(out - 0.4).max() < 1e-12


def test_color_change_preserves_intensity():
    img = make_image(3, 32)
    out = apply_distortion(img, DistortionSpec("color_change", 0.5))
    assert np.abs(out.sum(axis=2) - img.sum(axis=2)).max() < 1e-12


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        apply_distortion(make_image(4, 16), DistortionSpec("sepia", 0.5))


def test_ssim_self_is_one():
    img = make_image(5, 32).mean(axis=2)
    assert ssim(img, img) == pytest.approx(1.0, abs=1e-9)


def test_ssim_matches_direct_formula():
    rng = np.random.default_rng(6)
    a = rng.random((16, 16))
    b = rng.random((16, 16))
    assert ssim(a, b) == pytest.approx(naive_ssim(a, b), abs=1e-6)


def test_ssim_penalizes_brightness_but_spl_does_not():
    img = make_image(7, 64).mean(axis=2)
    s = ssim(0.5 * img, img)
    assert s < 0.9
    assert spl(0.5 * img, img, SplParams())[0] < 1e-4


def test_mse_psnr_examples():
    a = np.zeros((4, 4, 3))
    assert mse_psnr(a, a) == (0.0, math.inf)
    mse, psnr = mse_psnr(np.zeros((4, 4)), np.ones((4, 4)))
    assert mse == pytest.approx(1.0)
    assert psnr == pytest.approx(0.0)
    mse, psnr = mse_psnr(np.full((4, 4), 0.1), np.zeros((4, 4)))
    assert mse == pytest.approx(0.01)
    assert psnr == pytest.approx(20.0)


def test_run_bench_single_constant_image():
    img = np.full((32, 32, 3), 0.5)
    report = run_bench([("const", img)], default_specs(0))
    assert len(report["records"]) == 5
    for rec in report["records"]:
        assert set(rec) == {
            "image",
            "kind",
            "strength",
            "seed",
            "spl",
            "ssim",
            "mse",
            "psnr",
        }
    by_kind = {r["kind"]: r for r in report["records"]}
    assert by_kind["darken"]["spl"] < 1e-9
    assert by_kind["color_change"]["spl"] < 1e-9


def test_run_bench_ordering_and_determinism():
    corpus = make_corpus(4, 64, seed=20)
    r1 = run_bench(corpus, default_specs(3))
    r2 = run_bench(corpus, default_specs(3))
    assert r1 == r2
    means = {k: v["spl"] for k, v in r1["summary"]["mean"].items()}
    for ns in ("color_change", "darken"):
        for st_kind in ("lens_blur", "white_noise", "jitter"):
            assert means[ns] < means[st_kind]
    assert r1["summary"]["ordering_pass"]


def test_run_bench_empty_rejected():
    with pytest.raises(ValueError):
        run_bench([], default_specs(0))
