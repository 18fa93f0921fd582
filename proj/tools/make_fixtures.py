#!/usr/bin/env python3
"""Regenerates the natural-image fixture pairs under tests/data/natural.

References are 512x512 8-bit grayscale center crops of scikit-image's bundled
sample images. Inputs are 128x128 bicubic (antialiased, pixel-center aligned)
downscales of the references, which is how imresize-style tools build
low-resolution inputs.

Also prints the scikit-image SSIM of each reference against the NNI ceil
upscale of its input; tests/metrics_test.cpp freezes those numbers.
"""
import pathlib

import numpy as np
from PIL import Image
from skimage import data
from skimage.metrics import structural_similarity

NAMES = [
    "astronaut", "brick", "camera", "chelsea", "coffee", "coins",
    "grass", "gravel", "hubble_deep_field", "moon", "retina", "rocket",
]

ROOT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data" / "natural"


def write_pgm(path, arr):
    h, w = arr.shape
    path.write_bytes(b"P5\n%d %d\n255\n" % (w, h) + arr.astype(np.uint8).tobytes())


def reference(name):
    im = Image.fromarray(getattr(data, name)())
    if im.mode != "L":
        im = im.convert("L")
    w, h = im.size
    s = min(w, h)
    left, top = (w - s) // 2, (h - s) // 2
    return im.crop((left, top, left + s, top + s)).resize((512, 512), Image.BICUBIC)


def main():
    (ROOT / "ref").mkdir(parents=True, exist_ok=True)
    (ROOT / "input").mkdir(parents=True, exist_ok=True)
    for name in NAMES:
        ref = reference(name)
        inp = ref.resize((128, 128), Image.BICUBIC)
        write_pgm(ROOT / "ref" / f"{name}.pgm", np.asarray(ref))
        write_pgm(ROOT / "input" / f"{name}.pgm", np.asarray(inp))

        idx = np.ceil(np.arange(1, 513) / 4).astype(int) - 1
        up = np.asarray(inp)[np.ix_(idx, idx)].astype(float)
        score = structural_similarity(
            np.asarray(ref).astype(float), up, data_range=255,
            gaussian_weights=True, sigma=1.5, use_sample_covariance=False)
        print(f"{name} ssim(ref, nni-dr) = {score:.10f}")


if __name__ == "__main__":
    main()
