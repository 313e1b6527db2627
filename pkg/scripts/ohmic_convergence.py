"""Convergence of discretized Ohmic baths toward the continuum power laws.

Prints, for each closed-form variant, the max relative error of the
m-mode product on t in [0, 50] as m grows.

    python scripts/ohmic_convergence.py --eta 0.1 --omega-c 1
"""
import argparse

import numpy as np

from spinbath import kernels as K
from spinbath.model import OhmicSpec, ohmic_discretize


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--eta", type=float, default=0.1)
    ap.add_argument("--omega-c", type=float, default=1.0)
    ap.add_argument("--modes", type=int, nargs="+", default=[100, 1000, 10000, 100000])
    args = ap.parse_args()
    spec = OhmicSpec(args.eta, args.omega_c)
    t = np.linspace(0.0, 50.0, 501)
    print("variant          modes   max rel err")
    for variant in ("local_mixed", "pairs_equal", "pairs_opposite"):
        exact = K.ohmic_closed_form(spec, variant, t)
        for m in args.modes:
            modes = ohmic_discretize(spec, m, 10.0 * args.omega_c).baths[0].modes
            if variant == "local_mixed":
                f = K.local_f_mixed(modes, t)
            else:
                f = K.local_f_pairs(modes, variant.split("_")[1], t)
            print(f"{variant:<15} {m:>6}   {np.max(np.abs(f.real / exact - 1)):.2e}")


if __name__ == "__main__":
    main()
