"""Cross-check the kernels engine against the exact oracle.

Part 1 reports the max concurrence and RDM differences between the two
engines on the small-bath figure configurations (2, 3, 5, 6).

Part 2 evaluates the pure global bath from a separable start two ways:
exactly (lower coherence coefficient from ``global_g_lower``) and with the
naive choice conj(g) in that slot. The naive states are not positive, which
is where an apparent 0.4 entanglement generation comes from.

    python scripts/engine_crosscheck.py [--seeds 3]
"""
import argparse
import dataclasses

import numpy as np

from spinbath import kernels as K
from spinbath.entanglement import concurrence_series
from spinbath.rdm import rdm_global
from spinbath.scenario import build_bath, figure_configs, run_scenario


def engines(seeds):
    print("figure family     seed  max|dC|    max|d rho|")
    for fig in (2, 3, 5, 6):
        for seed in range(seeds):
            for family, cfg in figure_configs(fig, seed).items():
                a = run_scenario(cfg)
                b = run_scenario(dataclasses.replace(cfg, engine="oracle"))
                dc = np.abs(a.concurrence.c - b.concurrence.c).max()
                dr = np.abs(a.rdms - b.rdms).max()
                print(f"{fig:>6} {family:<10} {seed:>4}  {dc:.2e}   {dr:.2e}")


def naive_lower(fig, seed, t_max=5.0):
    cfg = figure_configs(fig, seed)["pure"]
    t = cfg.times[cfg.times <= t_max]
    modes = build_bath(cfg).baths[0].modes
    f, g = K.global_fg_pure(modes, t)
    rows = []
    for label, lower in (("exact", K.global_g_lower(modes, t)), ("naive conj(g)", np.conj(g))):
        rho = rdm_global(cfg.rho0, f, g, cfg.omega_s, t, g_lower=lower)
        c = concurrence_series(0.5 * (rho + np.swapaxes(rho.conj(), -1, -2)), xstate=False)
        min_eig = np.linalg.eigvalsh(0.5 * (rho + np.swapaxes(rho.conj(), -1, -2))).min()
        rows.append((label, c.max(), min_eig))
    return len(modes), rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=3)
    args = ap.parse_args()
    engines(args.seeds)
    print()
    print("pure global bath, separable start, t <= 5, seed 0")
    for fig in (5, 8):
        n, rows = naive_lower(fig, 0)
        for label, peak, min_eig in rows:
            print(f"  {n:>4} modes  {label:<14} peak C {peak:.3f}  min eigenvalue {min_eig:+.3f}")


if __name__ == "__main__":
    main()
