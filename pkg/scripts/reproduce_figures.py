"""Regenerate the figure series (CSV, SVG, metadata) for several seeds.

    python scripts/reproduce_figures.py --figures 2 3 5 6 8 --seeds 0 1 2 --out out/figures
"""
import argparse
import time
from pathlib import Path

from spinbath.scenario import FIGURES, reproduce_figure


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--figures", type=int, nargs="+", default=sorted(FIGURES))
    ap.add_argument("--seeds", type=int, nargs="+", default=[0])
    ap.add_argument("--pair-sign", choices=("equal", "opposite"), default="equal")
    ap.add_argument("--out", default="out/figures")
    args = ap.parse_args()
    for fig in args.figures:
        for seed in args.seeds:
            start = time.perf_counter()
            paths = reproduce_figure(fig, seed, Path(args.out) / f"seed{seed}",
                                     pair_sign=args.pair_sign)
            print(f"fig {fig} seed {seed}: {time.perf_counter() - start:.1f} s -> "
                  + ", ".join(str(p) for p in paths))


if __name__ == "__main__":
    main()
