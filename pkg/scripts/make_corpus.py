"""Write a synthetic photo-like corpus as PNGs for benchmark runs.

Usage: python scripts/make_corpus.py OUT_DIR [--count N] [--size S] [--seed K]
"""

import argparse
from pathlib import Path

from splkit import save_image
from splkit.corpus import make_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out_dir")
    ap.add_argument("--count", type=int, default=12)
    ap.add_argument("--size", type=int, default=128)
    ap.add_argument("--seed", type=int, default=100)
    args = ap.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, img in make_corpus(args.count, args.size, args.seed):
        save_image(img, out / f"{name}.png")
        print(f"wrote {out / (name + '.png')}")


if __name__ == "__main__":
    main()
